#include <catch2/catch_amalgamated.hpp>

#include "qzrp/shapes.hpp"

using namespace qzrp;

TEST_CASE("conjugate") {
    REQUIRE(Partition().conjugate() == Partition());
    REQUIRE(Partition::parse("3,2,1,1").conjugate() == Partition::parse("4,2,1"));
    REQUIRE(Partition::parse("5,4,2,1,1").conjugate() == Partition::parse("5,3,2,2,1"));
}

TEST_CASE("conjugate is an involution") {
    for (int m = 0; m <= 10; ++m)
        for (const Partition& lam : (m ? partitions_of(m) : std::vector<Partition>{Partition()}))
            REQUIRE(lam.conjugate().conjugate() == lam);
}

TEST_CASE("compress") {
    REQUIRE(Partition::parse("7,4,4,2,2,2,1").compressed() == Partition::parse("4,3,3,2,2,2,1"));
    REQUIRE(Partition::parse("3,2,1").compressed() == Partition::parse("3,2,1"));
    REQUIRE(Partition::parse("5,5,2").compressed() == Partition::parse("2,2,1"));
}

TEST_CASE("compress is idempotent and size-contracting") {
    for (int m = 1; m <= 8; ++m)
        for (const Partition& lam : partitions_of(m)) {
            Partition lc = lam.compressed();
            REQUIRE(lc.compressed() == lc);
            REQUIRE(lc.size() <= lam.size());
            if (lc.size() == lam.size()) REQUIRE(lc == lam);
        }
}

TEST_CASE("reading order") {
    Diagram dg(Partition::parse("3,2,1,1"));
    // The cell labelled 5 (1-based reading position) has coordinates (1,3).
    REQUIRE(dg.reading_order()[4] == Cell{1, 3});

    Diagram single(Partition::parse("1"));
    REQUIRE(single.reading_order() == std::vector<Cell>{Cell{1, 1}});

    Diagram sq(Partition::parse("2,2"));
    std::vector<Cell> expect{{2, 2}, {2, 1}, {1, 2}, {1, 1}};
    REQUIRE(sq.reading_order() == expect);
}

TEST_CASE("arms") {
    Diagram one(Partition::parse("1"));
    REQUIRE(one.lower_arm(Cell{1, 1}).empty());
    REQUIRE(one.upper_arm(Cell{1, 1}).empty());

    Diagram sq(Partition::parse("2,2"));
    REQUIRE(sq.lower_arm(Cell{2, 1}) == std::vector<Cell>{Cell{1, 2}});
    REQUIRE(sq.upper_arm(Cell{2, 1}) == std::vector<Cell>{Cell{2, 2}});

    REQUIRE_THROWS_AS(sq.lower_arm(Cell{3, 1}), ContractViolation);
}

TEST_CASE("arm duality") {
    for (int m = 1; m <= 8; ++m)
        for (const Partition& lam : partitions_of(m)) {
            Diagram dg(lam);
            for (const Cell& u : dg.reading_order())
                for (const Cell& v : dg.reading_order()) {
                    auto lower = dg.lower_arm(u);
                    auto upper = dg.upper_arm(v);
                    bool v_in_lower = std::find(lower.begin(), lower.end(), v) != lower.end();
                    bool u_in_upper = std::find(upper.begin(), upper.end(), u) != upper.end();
                    REQUIRE(v_in_lower == u_in_upper);
                }
        }
}

TEST_CASE("degenerate segments") {
    Diagram dg(Partition::parse("3,2,2,2,2,2,1"));
    REQUIRE(dg.degenerate_segment(Cell{2, 3}) == std::make_pair(2, 6));

    Diagram one(Partition::parse("1"));
    REQUIRE(one.degenerate_segment(Cell{1, 1}) == std::make_pair(1, 1));

    Diagram dg2(Partition::parse("2,2,1"));
    REQUIRE(dg2.degenerate_segment(Cell{2, 2}) == std::make_pair(1, 2));
    REQUIRE_THROWS_AS(dg2.degenerate_segment(Cell{1, 1}), ContractViolation);
}

TEST_CASE("partition parsing rejects bad input") {
    REQUIRE_THROWS_AS(Partition::parse("1,2"), ContractViolation);
    REQUIRE_THROWS_AS(Partition::parse("0"), ContractViolation);
    REQUIRE(Partition::parse("").empty());
}
