#include <doctest.h>

#include "kleinian/curve.hpp"
#include "kleinian/schur.hpp"

using namespace kleinian;

TEST_CASE("weierstrass partitions") {
    CHECK(weierstrass_partition(2, 3) == std::vector<int>{1});
    CHECK(weierstrass_partition(2, 5) == std::vector<int>{2, 1});
    CHECK(weierstrass_partition(2, 7) == std::vector<int>{3, 2, 1});
    CHECK(weierstrass_partition(3, 4) == std::vector<int>{3, 1, 1});
    CHECK(weierstrass_partition(4, 5) == std::vector<int>{6, 3, 3, 1, 1, 1});
}

TEST_CASE("schur polynomials of the gap partitions") {
    {
        CurveSpec c{2, 3, CurveClass::Cyclic, {}, {}};
        Ring r = curve_ring(c);
        GradedPoly sw = schur_weierstrass(2, 3, r);
        CHECK(sw == GradedPoly::variable(r, "u1"));
    }
    {
        CurveSpec c{2, 5, CurveClass::Cyclic, {}, {}};
        Ring r = curve_ring(c);
        GradedPoly sw = schur_weierstrass(2, 5, r);
        GradedPoly expect = GradedPoly::variable(r, "u1") -
                            GradedPoly::variable(r, "u2").pow(3).scaled(Rational(1, 3));
        CHECK(sw == expect);
    }
    // weight = sigma weight, for several curves
    for (auto [n, s] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {2, 7}, {3, 4}, {4, 5}}) {
        CurveSpec c{n, s, CurveClass::Cyclic, {}, {}};
        Ring r = curve_ring(c);
        GradedPoly sw = schur_weierstrass(n, s, r);
        CHECK(!sw.is_zero());
        CHECK(sw.homogeneous_weight() == sigma_weight(n, s));
        // parity: all u-degrees share the parity of the sigma weight
        for (const Term& t : sw.terms()) CHECK(exp_degree(t.e) % 2 == sigma_weight(n, s) % 2);
    }
}
