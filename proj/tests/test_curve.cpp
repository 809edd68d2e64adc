#include <doctest.h>

#include <numeric>

#include "kleinian/curve.hpp"

using namespace kleinian;

TEST_CASE("gap sequences") {
    CHECK(gap_sequence(2, 5).gaps == std::vector<int>{1, 3});
    CHECK(gap_sequence(3, 4).gaps == std::vector<int>{1, 2, 5});
    CHECK(gap_sequence(2, 3).gaps == std::vector<int>{1});
    CHECK_THROWS(gap_sequence(2, 4));
}

TEST_CASE("gap count and closure for all small curves") {
    for (int n = 2; n <= 9; ++n)
        for (int s = n + 1; s <= 25; ++s) {
            if (std::gcd(n, s) != 1) continue;
            int g = (n - 1) * (s - 1) / 2;
            if (g > 10 || g < 1) continue;
            GapSequence gs = gap_sequence(n, s);
            CHECK(int(gs.gaps.size()) == g);
            CHECK(gs.gaps.front() == 1);
            // nongaps closed under +n and +s
            int frob = n * s - n - s;
            for (int m = 0; m <= frob; ++m) {
                bool nongap = (m == 0) || !gs.is_gap(m);
                if (nongap) {
                    bool a = (m + n > frob) || !gs.is_gap(m + n);
                    bool b = (m + s > frob) || !gs.is_gap(m + s);
                    CHECK(a);
                    CHECK(b);
                }
            }
        }
}

TEST_CASE("weight tables") {
    CurveSpec c25{2, 5, CurveClass::Cyclic, {}, {}};
    WeightTable t = weight_table(c25);
    CHECK(t.wt_x == -2);
    CHECK(t.wt_y == -5);
    CHECK(t.wt_lambda == std::vector<int>{-10, -8, -6, -4, -2});
    CHECK(t.wt_u == std::vector<int>{3, 1});
    CHECK(t.wt_sigma == 3);

    CHECK(sigma_weight(4, 5) == 15);
    CHECK(sigma_weight(2, 7) == 6);

    CurveSpec c23{2, 3, CurveClass::Cyclic, {}, {}};
    WeightTable t23 = weight_table(c23);
    CHECK(t23.wt_u == std::vector<int>{1});
    CHECK(t23.wt_sigma == 1);
}

TEST_CASE("curve polynomial is weight homogeneous") {
    for (auto [n, s] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {2, 7}, {3, 4}, {4, 5}}) {
        CurveSpec c{n, s, CurveClass::Cyclic, {}, {}};
        WeightTable t = weight_table(c);
        std::vector<Symbol> syms{{"x", t.wt_x, true}};
        for (int j = 0; j < s; ++j) syms.push_back({lambda_name(j), t.wt_lambda[size_t(j)], false});
        Ring ring{syms};
        GradedPoly f = curve_rhs_poly(c, ring, "x");
        CHECK(f.homogeneous_weight() == -n * s);
    }
}

TEST_CASE("monomial order matches the pole-order staircase") {
    auto names = [](const std::vector<XYMonomial>& v) {
        std::vector<std::pair<int, int>> out;
        for (const auto& m : v) out.push_back({m.i, m.j});
        return out;
    };
    CHECK(names(monomial_order(2, 5, 6)) ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {3, 0}, {1, 1}});
    CHECK(names(monomial_order(3, 4, 5)) ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}});
    CHECK(names(monomial_order(2, 3, 3)) ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}});
}

TEST_CASE("dimension tables") {
    auto rows25 = rr_dimension_table(2, 5, 10);
    std::vector<int> h0;
    for (const auto& r : rows25) h0.push_back(r.h0);
    CHECK(h0 == std::vector<int>{1, 1, 2, 2, 3, 4, 5, 6, 7, 8, 9});
    // h1 column of the genus-2 table
    std::vector<int> h1;
    for (const auto& r : rows25) h1.push_back(r.h1);
    CHECK(h1 == std::vector<int>{2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0});

    auto rows34 = rr_dimension_table(3, 4, 12);
    CHECK(rows34[12].h0 == 10);
    std::vector<int> h0_34;
    for (const auto& r : rows34) h0_34.push_back(r.h0);
    CHECK(h0_34 == std::vector<int>{1, 1, 1, 2, 3, 3, 4, 5, 6, 7, 8, 9, 10});

    // k = 0 row is (1, g); every row satisfies h0 - h1 = 1 - g + k
    for (auto [n, s] : std::vector<std::pair<int, int>>{{2, 5}, {3, 4}, {2, 7}, {4, 5}}) {
        int g = (n - 1) * (s - 1) / 2;
        auto rows = rr_dimension_table(n, s, 2 * n * s);
        CHECK(rows[0].h0 == 1);
        CHECK(rows[0].h1 == g);
        for (const auto& r : rows) CHECK(r.h0 - r.h1 == 1 - g + r.k);
    }
}

TEST_CASE("first relation appears at ns") {
    CHECK(first_relation_point(2, 5) == 10);
    CHECK(first_relation_point(3, 4) == 12);
    CHECK(first_relation_point(2, 7) == 14);
    CHECK(first_relation_point(4, 5) == 20);
}

TEST_CASE("differential basis monomials") {
    CurveSpec c25{2, 5, CurveClass::Cyclic, {}, {}};
    auto b25 = differential_basis(c25);
    REQUIRE(b25.size() == 2);
    CHECK(b25[0].i == 0);
    CHECK(b25[0].j == 0);
    CHECK(b25[1].i == 1);
    CHECK(b25[1].j == 0);

    CurveSpec c23{2, 3, CurveClass::Cyclic, {}, {}};
    CHECK(differential_basis(c23).size() == 1);

    CurveSpec c34{3, 4, CurveClass::Cyclic, {}, {}};
    auto b34 = differential_basis(c34);
    REQUIRE(b34.size() == 3);
    CHECK((b34[0].i == 0 && b34[0].j == 0));
    CHECK((b34[1].i == 1 && b34[1].j == 0));
    CHECK((b34[2].i == 0 && b34[2].j == 1));
}

TEST_CASE("curve file parsing") {
    CurveSpec c = parse_curve_file("n = 2\ns = 5\nclass = cyclic\nlambda.4 = 0\nlambda.1 = 3/2\n");
    CHECK(c.n == 2);
    CHECK(c.s == 5);
    CHECK(c.values.at(4) == Rational(0));
    CHECK(c.values.at(1) == Rational(3, 2));
    CHECK(c.values.count(0) == 0);

    CHECK_THROWS_WITH_AS(parse_curve_file("n = 2\ns = 5\nbogus = 1\n"),
                         doctest::Contains("line 3"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_curve_file("n = 2\ns = 5\nlambda.1 = x\n"),
                         doctest::Contains("line 3"), std::invalid_argument);
    CHECK_THROWS(parse_curve_file("n = 2\n"));

    // round trip
    CurveSpec c2 = parse_curve_file(curve_file_text(c));
    CHECK(c2.n == c.n);
    CHECK(c2.values == c.values);
}
