#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qzrp/multiline.hpp"

using namespace qzrp;

namespace {

// The worked (4,3,1) example on five sites.
Filling worked_sigma() { return parse_filling("3 ; 2 2 ; 5 1 ; 3 4 4", 5); }

MultilineDiagram worked_diagram() {
    MultilineDiagram m;
    m.shape = Partition::parse("4,3,1");
    m.rows = {ZrpConfig::parse(".|.|4|.|."), ZrpConfig::parse(".|43|.|.|."),
              ZrpConfig::parse("3|.|.|.|4"), ZrpConfig::parse(".|.|4|31|.")};
    return m;
}

}  // namespace

TEST_CASE("cyclic betweenness truth table") {
    // Reference: walk clockwise from a; b must appear strictly before c,
    // where reaching c means stopping (and a = c != b counts as between).
    auto reference = [](int a, int b, int c, int n) {
        if (b == a || b == c) return false;
        for (int step = 1; step <= n; ++step) {
            int pos = (a - 1 + step) % n + 1;
            if (pos == b) return true;
            if (pos == c) return false;
        }
        return false;
    };
    for (int n : {3, 4, 5})
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                for (int c = 1; c <= n; ++c)
                    REQUIRE(cyclic_between(a, b, c, n) == reference(a, b, c, n));
    // The convention includes a = c != b.
    REQUIRE(cyclic_between(2, 4, 2, 5));
    REQUIRE_FALSE(cyclic_between(2, 2, 2, 5));
}

TEST_CASE("the worked multiline diagram") {
    Filling sigma = worked_sigma();
    MultilineDiagram m = worked_diagram();
    REQUIRE(to_multiline(sigma) == m);
    REQUIRE(from_multiline(m, 5) == sigma);

    REQUIRE(refusals_between(m, 4, 5) == 0);
    REQUIRE(refusals_between(m, 3, 5) == 1);
    REQUIRE(refusals_between(m, 2, 5) == 2);
    REQUIRE(refusals(m, 5) == 3);
    REQUIRE(quinv(sigma) == 3);

    Exponent e{3, {1, 2, 2, 2, 1}};
    REQUIRE(multiline_weight(m, 5) == LaurentPoly::monomial(5, 1, e));
    REQUIRE(multiline_weight(m, 5) == weight(sigma));
}

TEST_CASE("single-row diagrams project directly") {
    Filling row = parse_filling("2 1 2", 3);  // shape (1,1,1)
    MultilineDiagram m = to_multiline(row);
    REQUIRE(m.levels() == 1);
    REQUIRE(m.row(1) == proj(row));
    REQUIRE(refusals(m, 3) == 0);
}

TEST_CASE("the all-ones filling stacks every particle at site 1") {
    auto dg = std::make_shared<Diagram>(Partition::parse("3,2,1"));
    MultilineDiagram m = to_multiline(Filling::constant(dg, 3, 1));
    for (int k = 1; k <= m.levels(); ++k)
        for (int s = 2; s <= 3; ++s) REQUIRE(m.row(k).sites[s - 1].empty());
}

TEST_CASE("round trip over all fillings of a strict shape") {
    Partition lam = Partition::parse("2,1");
    auto dg = std::make_shared<Diagram>(lam);
    for_each_filling(dg, 3, [&](const Filling& sigma) {
        MultilineDiagram m = to_multiline(sigma);
        REQUIRE(from_multiline(m, 3) == sigma);
        REQUIRE(multiline_weight(m, 3) == weight(sigma));
        REQUIRE(refusals(m, 3) == quinv(sigma));
    });
}

TEST_CASE("round trip on random strict fillings") {
    Partition lam = Partition::parse("4,2,1");
    auto dg = std::make_shared<Diagram>(lam);
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> pick(1, 4);
    for (int round = 0; round < 100; ++round) {
        std::vector<int> entries(dg->cell_count());
        for (auto& v : entries) v = pick(rng);
        Filling sigma(dg, 4, entries);
        REQUIRE(from_multiline(to_multiline(sigma), 4) == sigma);
    }
}

TEST_CASE("jump dynamics conjugate to the tableau chain") {
    Partition lam = Partition::parse("3,2,1");
    auto dg = std::make_shared<Diagram>(lam);
    for_each_filling(dg, 3, [&](const Filling& sigma) {
        MultilineDiagram m = to_multiline(sigma);
        for (const Cell& u : dg->reading_order()) {
            int species = lam.part(u.col);
            int site = sigma.at(u);
            auto jump = multiline_jump(m, 3, u.row, site, species);
            if (!clock_attached(sigma, u)) {
                REQUIRE_FALSE(jump.has_value());
                continue;
            }
            REQUIRE(jump.has_value());
            REQUIRE(jump->result == to_multiline(ring(sigma, u)));
            REQUIRE(jump->rate == rate(sigma, u));
            // Bottom-row jumps reproduce the ZRP transition on proj(M).
            if (u.row == 1) {
                ZrpConfig moved = proj(sigma).moved(site, species);
                REQUIRE(jump->result.row(1) == moved);
            }
        }
    });
}

TEST_CASE("blocked jumps") {
    // Same label directly below forbids the jump.
    Filling sigma = parse_filling("1 ; 1 2", 2);  // shape (2,1), column 1 has 1 above 1
    MultilineDiagram m = to_multiline(sigma);
    REQUIRE_FALSE(multiline_jump(m, 2, 2, 1, 2).has_value());
    REQUIRE_THROWS_AS(multiline_jump(m, 2, 1, 2, 5), ContractViolation);
}

TEST_CASE("non-strict shapes expose only the fiber weight") {
    Partition lam = Partition::parse("2,2");
    auto dg = std::make_shared<Diagram>(lam);
    Filling sigma = Filling::constant(dg, 2, 1);
    MultilineDiagram m = to_multiline(sigma);
    REQUIRE_THROWS_AS(from_multiline(m, 2), ContractViolation);
    REQUIRE_THROWS_AS(refusals(m, 2), ContractViolation);
    // The fiber weight sums tableau weights over the preimage.
    LaurentPoly fiber = multiline_weight_fiber(m, 2);
    LaurentPoly expect(2);
    for_each_filling(dg, 2, [&](const Filling& f) {
        if (to_multiline(f) == m) expect += weight(f);
    });
    REQUIRE(fiber == expect);
    REQUIRE_FALSE(fiber.is_zero());
}
