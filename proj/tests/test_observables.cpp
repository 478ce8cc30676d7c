#include <catch2/catch_amalgamated.hpp>

#include "qzrp/observables.hpp"
#include "qzrp/verify.hpp"

using namespace qzrp;

TEST_CASE("exact density of the two-state chain") {
    RationalFunction d = density_exact(Partition::parse("1"), 2, 1, 1);
    RationalFunction expect(LaurentPoly::variable(2, 1),
                            LaurentPoly::variable(2, 1) + LaurentPoly::variable(2, 2));
    REQUIRE(d == expect);
}

TEST_CASE("density formula small cases") {
    // Single species, one particle: x1 / (x1 + x2).
    RationalFunction f = density_formula(Partition::parse("1"), 2, 1, 1);
    REQUIRE(f == RationalFunction(LaurentPoly::variable(2, 1),
                                  LaurentPoly::variable(2, 1) + LaurentPoly::variable(2, 2)));

    // <1^2> on two sites: numerator 2x1^2 + (1+t) x1 x2 over H~_<1^2>.
    RationalFunction g = density_formula(Partition::parse("1,1"), 2, 1, 1);
    LaurentPoly x1 = LaurentPoly::variable(2, 1), x2 = LaurentPoly::variable(2, 2);
    LaurentPoly one = LaurentPoly::one(2), t = LaurentPoly::t_power(2, 1);
    LaurentPoly h = x1 * x1 + (one + t) * x1 * x2 + x2 * x2;
    REQUIRE(g == RationalFunction(BigInt(2) * x1 * x1 + (one + t) * x1 * x2, h));
}

TEST_CASE("density formula equals exact densities") {
    for (const char* shape : {"1", "1,1", "2,1", "2,2,1"}) {
        Partition lam = Partition::parse(shape);
        int n = 3;
        auto vm = lam.value_multiplicities();
        for (std::size_t i = 0; i < vm.size(); ++i)
            for (int site = 1; site <= n; ++site)
                REQUIRE(density_exact(lam, n, vm[i].first, site) ==
                        density_formula(lam.compressed(), n, static_cast<int>(i) + 1, site));
    }
    // Non-compressed shapes against their compression's formula.
    Partition lam = Partition::parse("3,1");
    REQUIRE(density_exact(lam, 2, 3, 1) == density_formula(lam.compressed(), 2, 2, 1));
    Partition lam2 = Partition::parse("3,1,1");
    REQUIRE(density_exact(lam2, 3, 3, 1) == density_formula(lam2.compressed(), 3, 2, 1));
    REQUIRE(density_exact(lam2, 3, 1, 2) == density_formula(lam2.compressed(), 3, 1, 2));
}

TEST_CASE("density conservation") {
    REQUIRE(check_density_conservation(Partition::parse("2,1"), 3, 1));
    REQUIRE(check_density_conservation(Partition::parse("2,1"), 3, 2));
    REQUIRE(check_density_conservation(Partition::parse("2,2,1"), 2, 2));
}

TEST_CASE("current formula small cases") {
    // One particle: J = 1 / (x1 + x2).
    RationalFunction j1 = current_formula(Partition::parse("1"), 2, 1);
    REQUIRE(j1 == RationalFunction(LaurentPoly::one(2),
                                   LaurentPoly::variable(2, 1) + LaurentPoly::variable(2, 2)));

    // <1^2>: J = (1+t)(x1+x2) / H~_<1^2>.
    RationalFunction j2 = current_formula(Partition::parse("1,1"), 2, 1);
    LaurentPoly x1 = LaurentPoly::variable(2, 1), x2 = LaurentPoly::variable(2, 2);
    LaurentPoly one = LaurentPoly::one(2), t = LaurentPoly::t_power(2, 1);
    REQUIRE(j2 == RationalFunction((one + t) * (x1 + x2),
                                   x1 * x1 + (one + t) * x1 * x2 + x2 * x2));
}

TEST_CASE("current formula equals the exact bond flux") {
    ZrpParams params({BigRational(2), BigRational(3), BigRational(5)}, BigRational(1, 3));
    Partition lam = Partition::parse("3,1,1");
    Partition lc = lam.compressed();  // (2,1,1)
    auto vm = lam.value_multiplicities();
    for (std::size_t i = 0; i < vm.size(); ++i) {
        RationalFunction f = current_formula(lc, 3, static_cast<int>(i) + 1);
        REQUIRE(f.evaluate(params.x, params.t) == current_exact(lam, 3, vm[i].first, params));
    }
}

TEST_CASE("restricted weights") {
    Partition lam = Partition::parse("2,1");
    int n = 3;
    // ell = 0: the full partition function.
    REQUIRE(restricted_weight(lam, n, 0, {}) == htilde_q1_tableaux(lam, n).poly);
    // ell = n: a full configuration's fiber weight.
    ZrpConfig w = ZrpConfig::parse("1|2|.");
    REQUIRE(restricted_weight(lam, n, 3, w.sites) == tazrp_weight(lam, n, w));
    // Consistency with the sum over extensions of the restriction.
    std::vector<std::vector<int>> head{{1}};
    LaurentPoly direct = restricted_weight(lam, n, 1, head);
    LaurentPoly by_configs(n);
    for (const auto& [cfg, poly] : all_tazrp_weights(lam, n))
        if (cfg.sites[0] == std::vector<int>{1}) by_configs += poly;
    REQUIRE(direct == by_configs);
}

TEST_CASE("restricted symmetry") {
    REQUIRE(check_restricted_symmetry(Partition::parse("1"), 3, 1));
    REQUIRE(check_restricted_symmetry(Partition::parse("2,1"), 3, 1));
    REQUIRE(check_restricted_symmetry(Partition::parse("2,1"), 3, 2));
}

TEST_CASE("top-of-diagram consistency") {
    REQUIRE(check_top_consistency(Partition::parse("2,1"), 2, 0));
    REQUIRE(check_top_consistency(Partition::parse("2,1"), 2, 1));
    REQUIRE(check_top_consistency(Partition::parse("3,2,2"), 2, 1));
    REQUIRE(check_top_consistency(Partition::parse("3,2,2"), 2, 2));
}

TEST_CASE("kolmogorov-smirnov behaves") {
    std::vector<double> a, b, c;
    for (int i = 0; i < 2000; ++i) {
        double u = (i + 0.5) / 2000.0;
        a.push_back(u);
        b.push_back(u);
        c.push_back(u * 0.5);
    }
    REQUIRE(ks_two_sample(a, b).statistic == 0.0);
    REQUIRE_FALSE(ks_two_sample(a, b).reject);
    REQUIRE(ks_two_sample(a, c).reject);
}

TEST_CASE("simulation reproducibility and conservation") {
    Partition lam = Partition::parse("2,1");
    ZrpParams params({BigRational(1), BigRational(2), BigRational(3)}, BigRational(0));
    Trajectory t1 = simulate(lam, 3, params, 99, 50.0);
    Trajectory t2 = simulate(lam, 3, params, 99, 50.0);
    REQUIRE(t1.events.size() == t2.events.size());
    for (std::size_t i = 0; i < t1.events.size(); ++i) {
        REQUIRE(t1.events[i].time == t2.events[i].time);
        REQUIRE(t1.events[i].site == t2.events[i].site);
    }
    for (std::size_t i = 1; i < t1.events.size(); ++i)
        REQUIRE(t1.events[i].time > t1.events[i - 1].time);
    // Occupation times sum to horizon x particle count per species.
    double occ1 = 0, occ2 = 0;
    for (const auto& [key, v] : t1.occupation_time)
        (key.second == 1 ? occ1 : occ2) += v;
    REQUIRE(std::abs(occ1 - 50.0) < 1e-6);
    REQUIRE(std::abs(occ2 - 50.0) < 1e-6);
}

TEST_CASE("single particle splits time evenly at equal rates") {
    ZrpParams params({BigRational(1), BigRational(1)}, BigRational(0));
    SimulationReport rep = simulate_report(Partition::parse("1"), 2, params, 4242, 20000.0);
    Estimate est = rep.density.at({1, 1});
    REQUIRE(std::abs(est.mean - 0.5) <= 4 * est.se);
}

TEST_CASE("pathwise symmetry probe") {
    Partition lam = Partition::parse("2,1");
    ZrpParams params({BigRational(1), BigRational(4), BigRational(9)}, BigRational(0));
    // Permuting the tail (swap x2, x3) must not shift the site-1 statistics.
    PathwiseReport rep = pathwise_symmetry_mc(lam, 3, 1, {3, 2}, params, 11, 8.0, 1500);
    REQUIRE_FALSE(rep.ks.reject);

    // Identity permutation with identical seeds is identical by construction.
    PathwiseReport same = pathwise_symmetry_mc(lam, 3, 1, {2, 3}, params, 11, 8.0, 400);
    REQUIRE(same.ks.statistic == 0.0);

    REQUIRE_THROWS_AS(pathwise_symmetry_mc(lam, 3, 1, {3, 2},
                                           ZrpParams({BigRational(1), BigRational(1), BigRational(1)},
                                                     BigRational(1, 2)),
                                           11, 8.0, 10),
                      ContractViolation);

    // Negative control: swapping a head parameter with a tail one is
    // detectable for strongly asymmetric rates.
    std::vector<BigRational> swapped{BigRational(9), BigRational(4), BigRational(1)};
    ZrpParams bad(swapped, BigRational(0));
    ZrpConfig start;
    start.sites.assign(3, {});
    for (int p : lam.parts) start.sites[0].push_back(p);
    std::vector<double> s1, s2;
    for (int i = 0; i < 1200; ++i) {
        Trajectory tr1 = simulate(lam, 3, params, split_seed(7, 1 + i), 8.0, -1, &start);
        Trajectory tr2 = simulate(lam, 3, bad, split_seed(7, 2000000 + i), 8.0, -1, &start);
        s1.push_back(site_empty_fraction(tr1, 3, 8.0));
        s2.push_back(site_empty_fraction(tr2, 3, 8.0));
    }
    REQUIRE(ks_two_sample(s1, s2).reject);
}
