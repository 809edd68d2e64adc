#include <doctest.h>

#include <random>

#include "kleinian/graded_poly.hpp"
#include "kleinian/poly_json.hpp"
#include "kleinian/series.hpp"
#include "oracles.hpp"

using namespace kleinian;

namespace {

Ring test_ring() {
    return Ring({{"u1", 3, true}, {"u2", 1, true}, {"lam0", -10, false}, {"lam4", -2, false}});
}

}  // namespace

TEST_CASE("basic products") {
    Ring r = test_ring();
    GradedPoly u1 = GradedPoly::variable(r, "u1");
    GradedPoly u2 = GradedPoly::variable(r, "u2");

    CHECK(GradedPoly::mul(u1, u1) == u1.pow(2));
    CHECK((u1 * GradedPoly(r)).is_zero());
    CHECK((u1 * GradedPoly(r)).terms().empty());

    // (u1 - u2^3/3)^2 against the schoolbook oracle
    GradedPoly p = u1 - u2.pow(3).scaled(Rational(1, 3));
    CHECK(GradedPoly::mul(p, p) == oracles::naive_mul(p, p));
}

TEST_CASE("ring mismatch is an error") {
    Ring a = test_ring();
    Ring b({{"v", 1, true}});
    CHECK_THROWS(GradedPoly::mul(GradedPoly::variable(a, "u1"), GradedPoly::variable(b, "v")));
}

TEST_CASE("differentiation") {
    Ring r = test_ring();
    GradedPoly u1 = GradedPoly::variable(r, "u1");
    GradedPoly u2 = GradedPoly::variable(r, "u2");
    GradedPoly p = u1 - u2.pow(3).scaled(Rational(1, 3));

    CHECK(p.diff("u2") == -u2.pow(2));
    CHECK(GradedPoly::variable(r, "lam0").diff("u1").is_zero());
    CHECK_THROWS(p.diff("nope"));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        GradedPoly q = oracles::random_poly(r, rng);
        CHECK(q.diff("u1").diff("u2") == q.diff("u2").diff("u1"));
    }
}

TEST_CASE("ring axioms on random triples") {
    Ring r = test_ring();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        GradedPoly a = oracles::random_poly(r, rng);
        GradedPoly b = oracles::random_poly(r, rng);
        GradedPoly c = oracles::random_poly(r, rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == oracles::naive_mul(a, b));
    }
}

TEST_CASE("homogeneity bookkeeping") {
    Ring r = test_ring();
    GradedPoly u1 = GradedPoly::variable(r, "u1");
    GradedPoly u2 = GradedPoly::variable(r, "u2");
    GradedPoly lam4 = GradedPoly::variable(r, "lam4");

    GradedPoly h = u1 * u2.pow(2) + u2.pow(5) * lam4 * GradedPoly::constant(r, Rational(2));
    // 3+2 = 5 and 5 + (-2) + 2... u2^5 lam4 has weight 5 - 2 = 3 != 5, so not homogeneous
    CHECK(!h.homogeneous_weight().has_value());

    GradedPoly h2 = u1 * u2.pow(2) + u2.pow(7) * lam4;
    CHECK(h2.homogeneous_weight() == 5);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        GradedPoly a = oracles::random_poly(r, rng, 3, 2);
        GradedPoly b = oracles::random_poly(r, rng, 3, 2);
        auto wa = a.homogeneous_weight(), wb = b.homogeneous_weight();
        if (wa && wb && !a.is_zero() && !b.is_zero()) {
            auto wab = (a * b).homogeneous_weight();
            if (!(a * b).is_zero()) CHECK(*wab == *wa + *wb);
        }
    }
}

TEST_CASE("series caps are exact below the cap") {
    Ring r = test_ring();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        GradedPoly a = oracles::random_poly(r, rng, 4, 2);
        GradedPoly b = oracles::random_poly(r, rng, 4, 2);
        int cap = a.max_capweight() + b.max_capweight();
        Series sa(a, cap), sb(b, cap);
        // all terms fully below the cap: series ops equal poly ops
        Series prod = sa * sb;
        CHECK((prod.poly() - GradedPoly::mul(a, b).truncated(prod.cap())).is_zero());
        Series sum = sa + sb;
        CHECK(sum.poly() == (a + b).truncated(sum.cap()));
    }
}

TEST_CASE("series product cap rises with valuation") {
    Ring r = test_ring();
    GradedPoly u2 = GradedPoly::variable(r, "u2");
    Series s(u2 + u2.pow(2), 5);  // exact through weight 5
    Series p = s * s;             // valuation 1 each: product certified to 6
    CHECK(p.cap() == 6);
    CHECK(p.poly().coeff([&] {
              ExpVec e = zero_exps();
              e[size_t(r.require("u2"))] = 2;
              return e;
          }()) == Rational(1));
}

TEST_CASE("compose: substitution and truncation commute") {
    Ring r = test_ring();
    Ring xi({{"xi1", 1, true}, {"lam0", -10, false}, {"lam4", -2, false}});
    GradedPoly x = GradedPoly::variable(xi, "xi1");

    // u1 <- xi^3/3, u2 <- xi: the weight-3 Schur polynomial pulls back to 0
    GradedPoly u1 = GradedPoly::variable(r, "u1");
    GradedPoly u2 = GradedPoly::variable(r, "u2");
    GradedPoly sw = u1 - u2.pow(3).scaled(Rational(1, 3));
    std::map<int, Series> sub;
    sub.emplace(r.require("u1"), Series(x.pow(3).scaled(Rational(1, 3)), 20));
    sub.emplace(r.require("u2"), Series(x, 20));
    CHECK(compose(sw, 20, xi, sub).is_zero());

    // identity assignment returns the input
    std::map<int, Series> id;
    id.emplace(r.require("u1"), Series(GradedPoly::variable(r, "u1"), 50));
    id.emplace(r.require("u2"), Series(GradedPoly::variable(r, "u2"), 50));
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        GradedPoly p = oracles::random_poly(r, rng, 4, 3);
        Series out = compose(p, 40, r, id);
        CHECK(out.poly() == p.truncated(out.cap()));
    }

    // compose-then-truncate equals truncate-then-compose
    for (int trial = 0; trial < 10; ++trial) {
        GradedPoly p = oracles::random_poly(r, rng, 4, 3);
        Series full = compose(p, 60, xi, sub);
        for (int cap = 0; cap <= 12; cap += 3) {
            Series lo = compose(p, cap, xi, sub);
            CHECK(lo.poly() == full.poly().truncated(lo.cap()));
        }
    }

    // zero-valuation substitution is rejected
    std::map<int, Series> bad;
    bad.emplace(r.require("u1"), Series(GradedPoly::constant(xi, Rational(1)), 20));
    bad.emplace(r.require("u2"), Series(x, 20));
    CHECK_THROWS(compose(sw, 20, xi, bad));
}

TEST_CASE("json round trip preserves order and values") {
    Ring r = test_ring();
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        GradedPoly p = oracles::random_poly(r, rng);
        auto j = poly_to_json(p);
        CHECK(poly_from_json(j) == p);
        CHECK(poly_to_json(poly_from_json(j)) == j);
    }
    Series s(oracles::random_poly(r, rng), 9);
    CHECK(series_from_json(series_to_json(s)).cap() == 9);
}
