#include <catch2/catch_amalgamated.hpp>

#include <deque>
#include <map>
#include <set>

#include "qzrp/tabchain.hpp"

using namespace qzrp;

namespace {

// The corrected-transition worked example: shape (3,2,2,2,2,2,1), n = 3.
Filling xi_example() {
    return parse_filling("2 ; 3 1 3 1 2 3 ; 2 1 2 2 1 1 2", 3);
}

}  // namespace

TEST_CASE("chain top") {
    // Five-column example with n = 4: the chain from (2,2) tops out in row 4.
    Filling sigma = parse_filling("1 4 3 ; 2 1 4 ; 1 4 2 3 2 ; 1 3 2 4 1 ; 2 2 1 3 3", 4);
    REQUIRE(sigma.shape() == Partition::parse("5,5,5,3,3"));
    REQUIRE(chain_top(sigma, Cell{2, 2}) == 4);

    Filling ringed = ring(sigma, Cell{2, 2});
    REQUIRE(ringed == parse_filling("1 4 3 ; 2 2 4 ; 1 1 2 3 2 ; 1 4 2 4 1 ; 2 2 1 3 3", 4));

    // A full-column increasing chain runs to the top of the column.
    Filling col = parse_filling("3 ; 2 ; 1", 3);
    REQUIRE(chain_top(col, Cell{1, 1}) == 3);

    // No chain when the cell above does not continue the cycle.
    Filling flat = parse_filling("1 ; 1 ; 1", 3);
    REQUIRE(chain_top(flat, Cell{1, 1}) == 1);
}

TEST_CASE("ring and ring inverse on the worked (3,2,1) example") {
    Filling sigma = parse_filling("1 ; 1 3 ; 3 2 3", 3);

    // R_{(1,1)}: bottom-left 3 -> 1 with the chain through (2,1).
    Filling r11 = ring(sigma, Cell{1, 1});
    REQUIRE(r11 == parse_filling("1 ; 2 3 ; 1 2 3", 3));
    REQUIRE(proj(r11) == ZrpConfig::parse("3|2|1"));
    REQUIRE(rate(sigma, Cell{1, 1}) == LaurentPoly::variable(3, 3, -1));

    // R_{(3,1)} fixes sigma (equal content below).
    REQUIRE(ring(sigma, Cell{3, 1}) == sigma);
    REQUIRE(ring_inverse(sigma, Cell{2, 1}) == sigma);

    // R^{-1}_{(3,1)} turns the top 1 into a 3.
    REQUIRE(ring_inverse(sigma, Cell{3, 1}) == parse_filling("3 ; 1 3 ; 3 2 3", 3));

    // R^{-1}_{(2,2)} reaches the state (2|.|31).
    Filling inv22 = ring_inverse(sigma, Cell{2, 2});
    REQUIRE(inv22 == parse_filling("1 ; 1 2 ; 3 1 3", 3));
    REQUIRE(proj(inv22) == ZrpConfig::parse("2|.|31"));
    auto [back, trigger] = ring_inverse_with_trigger(sigma, Cell{2, 2});
    REQUIRE(trigger == Cell{1, 2});
    REQUIRE(ring(back, trigger) == sigma);
}

TEST_CASE("ring round trip wherever the trigger is eligible") {
    for (const char* shape : {"2,1", "2,2", "3,2,1"}) {
        auto dg = std::make_shared<Diagram>(Partition::parse(shape));
        for_each_filling(dg, 3, [&](const Filling& xi) {
            for (const Cell& u : dg->reading_order()) {
                if (!clock_attached(xi, u)) continue;
                Filling sigma = ring(xi, u);
                Cell y{chain_top(xi, u), u.col};
                auto [back, trig] = ring_inverse_with_trigger(sigma, y);
                REQUIRE(back == xi);
                REQUIRE(trig == u);
                REQUIRE(sigma.at(y) != sigma.north_content(y.row, y.col));
            }
        });
    }
}

TEST_CASE("tau on the two-column example") {
    // Columns of height 5 holding (1,3,2,2,3) and (3,4,3,3,4) bottom-up;
    // r_max = 3 and rows 3..5 swap.
    Filling sigma = parse_filling("3 4 ; 2 3 ; 2 3 ; 3 4 ; 1 3", 4);
    REQUIRE(tau_rmax(sigma, 1) == 3);
    Filling swapped = tau(sigma, 1);
    REQUIRE(swapped == parse_filling("4 3 ; 3 2 ; 3 2 ; 3 4 ; 1 3", 4));

    // Equal columns are fixed with quinv delta 0.
    Filling eq = parse_filling("2 2 ; 1 1", 3);
    REQUIRE(tau(eq, 1) == eq);
    REQUIRE_THROWS_AS(tau(parse_filling("1 ; 1 1", 2), 1), ContractViolation);
}

TEST_CASE("tau quinv step law, exhaustive") {
    for (const char* shape : {"2,2", "2,2,1", "1,1,1"}) {
        Partition lam = Partition::parse(shape);
        auto dg = std::make_shared<Diagram>(lam);
        for_each_filling(dg, 3, [&](const Filling& sigma) {
            for (int j = 1; j < lam.length(); ++j) {
                if (lam.part(j) != lam.part(j + 1)) continue;
                int k = lam.part(j);
                long delta = quinv(tau(sigma, j)) - quinv(sigma);
                int a = sigma.at(k, j), b = sigma.at(k, j + 1);
                REQUIRE(delta == (a > b ? 1 : a < b ? -1 : 0));
            }
        });
    }
}

TEST_CASE("corrected transition on the degenerate-segment example") {
    Filling xi = xi_example();
    Cell u{1, 3};
    REQUIRE(quinv(xi) == 12);
    DownUp du = down_up(xi, u);
    REQUIRE(du.down.has_value());
    REQUIRE(*du.down == 1);

    RingPrimeResult rp = ring_prime(xi, u);
    REQUIRE(rp.y == Cell{2, 3});
    REQUIRE(rp.y_prime == Cell{2, 5});
    REQUIRE(rp.result == parse_filling("2 ; 3 1 1 2 1 3 ; 2 1 3 1 2 1 2", 3));
    REQUIRE(quinv(rp.result) == 13);
    DownUp du_y = down_up(rp.result, rp.y_prime);
    REQUIRE(du_y.up.has_value());
    REQUIRE(*du_y.up == 0);
    // quinv(xi) - quinv(sigma') = up(sigma', y') - down(xi, u).
    REQUIRE(quinv(xi) - quinv(rp.result) == *du_y.up - *du.down);
}

TEST_CASE("ring_prime is plain ring for strict shapes") {
    Partition lam = Partition::parse("3,2,1");
    auto dg = std::make_shared<Diagram>(lam);
    for_each_filling(dg, 3, [&](const Filling& xi) {
        for (const Cell& u : dg->reading_order()) {
            if (!clock_attached(xi, u)) continue;
            RingPrimeResult rp = ring_prime(xi, u);
            REQUIRE(rp.result == ring(xi, u));
            REQUIRE(rp.y_prime == rp.y);
        }
    });
}

TEST_CASE("single-row corrected transitions mirror the wrapped letter") {
    // On one row the whole row is one degenerate segment: ringing an n at
    // position v removes it and re-inserts the resulting 1 at the mirrored
    // position m+1-v, shifting the letters in between.
    Filling word = parse_filling("3 1 2", 3);
    RingPrimeResult rp = ring_prime(word, Cell{1, 1});
    REQUIRE(rp.result == parse_filling("1 2 1", 3));
    REQUIRE(rp.y_prime == Cell{1, 3});

    // A middle n stays put (its mirror is itself).
    Filling mid = parse_filling("1 3 2", 3);
    RingPrimeResult rp2 = ring_prime(mid, Cell{1, 2});
    REQUIRE(rp2.result == parse_filling("1 1 2", 3));
    REQUIRE(rp2.y_prime == Cell{1, 2});

    // Entries below n never trigger the correction.
    Filling plain = parse_filling("2 1 2", 3);
    REQUIRE(ring_prime(plain, Cell{1, 3}).result == parse_filling("2 1 3", 3));
}

TEST_CASE("rates") {
    // Bottom-row cell: i-th leftmost among equal contents gets t^{i-1}.
    Filling row = parse_filling("2 1 2 2", 3);
    REQUIRE(rate(row, Cell{1, 1}) == LaurentPoly::variable(3, 2, -1));
    REQUIRE(rate(row, Cell{1, 3}) ==
            LaurentPoly::variable(3, 2, -1) * LaurentPoly::t_power(3, 1));
    REQUIRE(rate(row, Cell{1, 4}) ==
            LaurentPoly::variable(3, 2, -1) * LaurentPoly::t_power(3, 2));
    REQUIRE_THROWS_AS(rate(parse_filling("1 ; 1", 2), Cell{2, 1}), ContractViolation);
}

TEST_CASE("generator construction") {
    std::vector<Transition> gen = build_generator(Partition::parse("1"), 2);
    REQUIRE(gen.size() == 2);
    for (const auto& tr : gen) REQUIRE_FALSE(tr.from == tr.to);

    // Every state of (2,1,1), n = 3 has between 1 and 4 outgoing transitions.
    std::map<std::vector<int>, int> outdeg;
    for (const Transition& tr : build_generator(Partition::parse("2,1,1"), 3))
        ++outdeg[tr.from.entries()];
    REQUIRE(outdeg.size() == 81);
    for (const auto& [k, d] : outdeg) {
        REQUIRE(d >= 1);
        REQUIRE(d <= 4);
    }
}

TEST_CASE("transition rates are Laurent monomials of x-degree -1") {
    for (const Transition& tr : build_generator(Partition::parse("2,2"), 3)) {
        REQUIRE(tr.rate.is_monomial());
        const auto& [e, c] = *tr.rate.terms().begin();
        REQUIRE(c == 1);
        REQUIRE(e.t_exp >= 0);
        int neg = 0, nonzero = 0;
        for (int v : e.x) {
            if (v != 0) ++nonzero;
            if (v == -1) ++neg;
        }
        REQUIRE(neg == 1);
        REQUIRE(nonzero == 1);
        // The trigger carries a clock.
        REQUIRE(clock_attached(tr.from, tr.trigger));
    }
}

TEST_CASE("in-transitions agree with brute force") {
    // (2,2,2) and (3,3) exercise multi-step tau reflections across
    // degenerate segments of width three and two.
    for (const char* shape : {"2,1", "2,2", "2,2,1", "2,2,2", "3,3"}) {
        Partition lam = Partition::parse(shape);
        auto dg = std::make_shared<Diagram>(lam);
        // Brute force: map target entries -> set of (source entries, trigger).
        std::map<std::vector<int>, std::set<std::pair<std::vector<int>, std::pair<int, int>>>> bf;
        std::vector<Filling> all;
        for_each_filling(dg, 3, [&](const Filling& f) { all.push_back(f); });
        for (const Filling& xi : all)
            for (const Cell& u : dg->reading_order()) {
                if (!clock_attached(xi, u)) continue;
                Filling target = ring_prime(xi, u).result;
                bf[target.entries()].insert({xi.entries(), {u.row, u.col}});
            }
        for (const Filling& sigma : all) {
            std::set<std::pair<std::vector<int>, std::pair<int, int>>> constructive;
            for (const InEdge& e : in_transitions(sigma))
                constructive.insert({e.from.entries(), {e.trigger.row, e.trigger.col}});
            REQUIRE(constructive == bf[sigma.entries()]);
        }
    }
}

TEST_CASE("balance at every state") {
    // Two-state cycle: wt(1) x1^{-1} = wt(2) x2^{-1}.
    auto dg1 = std::make_shared<Diagram>(Partition::parse("1"));
    for_each_filling(dg1, 2, [&](const Filling& f) { REQUIRE(verify_balance(f)); });

    for (const char* shape : {"2,1,1", "2,2"}) {
        auto dg = std::make_shared<Diagram>(Partition::parse(shape));
        for_each_filling(dg, 3, [&](const Filling& f) { REQUIRE(verify_balance(f)); });
    }
}

TEST_CASE("irreducibility") {
    REQUIRE(verify_irreducibility(Partition::parse("1"), 2));
    REQUIRE(verify_irreducibility(Partition::parse("3,2,2"), 3));
    REQUIRE(verify_irreducibility(Partition::parse("2,1"), 2, /*t0=*/true));

    // The reduction walk of the irreducibility proof: from the worked
    // starting state, repeatedly ring the rightmost entry exceeding 1 in the
    // lowest row holding one; the walk must reach the all-ones filling.
    Filling sigma = parse_filling("1 ; 3 1 3 ; 3 2 1", 3);
    auto dg = sigma.diagram_ptr();
    Filling cur = sigma;
    Filling ones = Filling::constant(dg, 3, 1);
    int steps = 0;
    while (!(cur == ones) && steps < 100) {
        Cell pick{0, 0};
        for (int r = 1; r <= dg->nrows() && pick.row == 0; ++r)
            for (int c = dg->row_len(r); c >= 1; --c)
                if (cur.at(r, c) > 1) {
                    pick = Cell{r, c};
                    break;
                }
        REQUIRE(pick.row != 0);
        REQUIRE(clock_attached(cur, pick));
        cur = ring_prime(cur, pick).result;
        ++steps;
    }
    REQUIRE(cur == ones);

    // And the all-ones filling reaches sigma again (strong connectivity is
    // checked wholesale above; here we pin one explicit path existence via
    // breadth-first search).
    std::map<std::vector<int>, int> dist;
    std::deque<Filling> queue{ones};
    dist[ones.entries()] = 0;
    while (!queue.empty()) {
        Filling f = queue.front();
        queue.pop_front();
        if (f == sigma) break;
        for (const Cell& u : dg->reading_order()) {
            if (!clock_attached(f, u)) continue;
            Filling next = ring_prime(f, u).result;
            if (dist.emplace(next.entries(), dist[f.entries()] + 1).second)
                queue.push_back(next);
        }
    }
    REQUIRE(dist.count(sigma.entries()) == 1);
}

TEST_CASE("lumping") {
    REQUIRE(verify_lumping(Partition::parse("3,1,1"), 3, 1));
    REQUIRE(verify_lumping(Partition::parse("2,1"), 2, 1));
    REQUIRE_THROWS_AS(verify_lumping(Partition::parse("1,1"), 2, 1), ContractViolation);
    REQUIRE_THROWS_AS(verify_lumping(Partition::parse("2,1"), 2, 2), ContractViolation);
}
