#include <doctest.h>

#include <random>

#include "kleinian/local_expansion.hpp"
#include "oracles.hpp"

using namespace kleinian;

namespace {

// Newton iteration for z with z^n = 1 + w, as an independent route to the
// branch expansion.
GradedPoly newton_nth_root(const GradedPoly& one_plus_w, int n, int cap) {
    const Ring& r = one_plus_w.ring();
    GradedPoly z = GradedPoly::constant(r, Rational(1));
    // z <- z - (z^n - (1+w)) / (n z^{n-1}); with unit leading term the update
    // can divide by n and multiply by the inverse unit series of z^{n-1}.
    for (int iter = 0; iter < 8; ++iter) {
        GradedPoly zn = z.pow(unsigned(n), cap);
        GradedPoly res = zn - one_plus_w.truncated(cap);
        if (res.is_zero()) break;
        // invert z^{n-1} = 1 + v by geometric series
        GradedPoly zn1 = z.pow(unsigned(n - 1), cap);
        GradedPoly v = zn1 - GradedPoly::constant(r, Rational(1));
        GradedPoly inv = GradedPoly::constant(r, Rational(1));
        GradedPoly vp = GradedPoly::constant(r, Rational(1));
        int vv = std::max(v.min_capweight(cap + 1), 1);
        for (int k = 1; k * vv <= cap; ++k) {
            vp = GradedPoly::mul(vp, v, cap);
            inv = (k % 2 == 0) ? inv + vp : inv - vp;
        }
        z = z - GradedPoly::mul(res, inv, cap).scaled(Rational(1, n));
    }
    return z;
}

}  // namespace

TEST_CASE("monomial curve expansion is exact") {
    CurveSpec c{2, 3, CurveClass::Cyclic, {{0, Rational(0)}, {1, Rational(0)}, {2, Rational(0)}}, {}};
    PuiseuxPoint p = puiseux_y(c, 10);
    CHECK(p.y_unit.poly() == GradedPoly::constant(p.y_unit.ring(), Rational(1)));
}

TEST_CASE("branch expansion against the Newton oracle, residual vanishes") {
    CurveSpec c{2, 5, CurveClass::Cyclic, {}, {}};
    const int cap = 14;
    PuiseuxPoint p = puiseux_y(c, cap);
    const Ring& r = p.y_unit.ring();

    // leading correction: y = xi^{-5} (1 + lam4 xi^2 / 2 + ...)
    ExpVec e = zero_exps();
    e[size_t(r.require("xi1"))] = 2;
    e[size_t(r.require("lam4"))] = 1;
    CHECK(p.y_unit.poly().coeff(e) == Rational(1, 2));

    // Newton oracle on the same unit equation
    GradedPoly xi = GradedPoly::variable(r, "xi1");
    GradedPoly w(r);
    for (int j = 0; j < 5; ++j)
        w = w + GradedPoly::mul(xi.pow(unsigned(2 * (5 - j))),
                                GradedPoly::variable(r, lambda_name(j)), cap);
    GradedPoly one_plus_w = GradedPoly::constant(r, Rational(1)) + w;
    CHECK(newton_nth_root(one_plus_w, 2, cap) == p.y_unit.poly());

    // residual: y_unit^2 - (1+w) = 0 through the cap
    CHECK(GradedPoly::mul(p.y_unit.poly(), p.y_unit.poly(), cap) == one_plus_w.truncated(cap));
}

TEST_CASE("residual vanishes at random rational coefficients") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        CurveSpec c{3, 4, CurveClass::Cyclic, {}, {}};
        for (int j = 0; j < 4; ++j) c.values[j] = oracles::random_rational(rng);
        const int cap = 12;
        PuiseuxPoint p = puiseux_y(c, cap);
        const Ring& r = p.y_unit.ring();
        GradedPoly xi = GradedPoly::variable(r, "xi1");
        GradedPoly w(r);
        for (int j = 0; j < 4; ++j)
            w = w + xi.pow(unsigned(3 * (4 - j))).scaled(c.values[j]);
        CHECK(p.y_unit.poly().pow(3, cap) ==
              (GradedPoly::constant(r, Rational(1)) + w).truncated(cap));
    }
}

TEST_CASE("abel series leading orders and homogeneity") {
    CurveSpec c{2, 5, CurveClass::Cyclic, {}, {}};
    AbelSeries a = abel_series(c, 11);
    const Ring& r = a.u[0].ring();
    int xi = r.require("xi1");

    auto exp_at = [&](int k) {
        ExpVec e = zero_exps();
        e[size_t(xi)] = uint8_t(k);
        return e;
    };
    // u1 = xi^3/3 + O(xi^5), u2 = xi + O(xi^3)
    CHECK(a.u[0].poly().coeff(exp_at(3)) == Rational(1, 3));
    CHECK(a.u[1].poly().coeff(exp_at(1)) == Rational(1));
    for (const Term& t : a.u[0].poly().terms()) CHECK(t.e[size_t(xi)] >= 3);
    for (const Term& t : a.u[1].poly().terms()) CHECK(t.e[size_t(xi)] >= 1);

    // joint (xi, lambda) homogeneity of weight w_i
    CHECK(a.u[0].poly().homogeneous_weight() == 3);
    CHECK(a.u[1].poly().homogeneous_weight() == 1);

    // derivative consistency: d u_i / d xi equals the integrand recomputed
    // via the defining relation y^2 = f(x): check (du2/dxi)^2 * y^2 * 4 = (dx/dxi)^2 * x^2
    // indirectly by weight bookkeeping; the direct residual check lives in
    // the puiseux test above.
}

TEST_CASE("abel series on the monomial curve collapses to single terms") {
    CurveSpec c{2, 5, CurveClass::Cyclic, {}, {}};
    for (int j = 0; j < 5; ++j) c.values[j] = Rational(0);
    AbelSeries a = abel_series(c, 9);
    const Ring& r = a.u[0].ring();
    GradedPoly xi = GradedPoly::variable(r, "xi1");
    CHECK(a.u[0].poly() == xi.pow(3).scaled(Rational(1, 3)));
    CHECK(a.u[1].poly() == xi);
}

TEST_CASE("genus-1 abel series has only lambda corrections past the linear term") {
    CurveSpec c{2, 3, CurveClass::Cyclic, {}, {}};
    AbelSeries a = abel_series(c, 9);
    const Ring& r = a.u[0].ring();
    int xi = r.require("xi1");
    for (const Term& t : a.u[0].poly().terms()) {
        if (t.e[size_t(xi)] == 1) continue;  // leading xi
        CHECK(exp_degree(t.e) > t.e[size_t(xi)]);  // some lambda present
    }
}

TEST_CASE("strata embeddings are symmetric") {
    CurveSpec c{2, 7, CurveClass::Cyclic, {}, {}};
    StrataEmbedding emb = strata_embedding(c, 2, 9);
    const Ring& r = emb.ring;
    // swap xi1 <-> xi2 leaves every component fixed
    std::map<int, Series> swap;
    swap.emplace(r.require("xi1"), Series(GradedPoly::variable(r, "xi2"), 50));
    swap.emplace(r.require("xi2"), Series(GradedPoly::variable(r, "xi1"), 50));
    for (const Series& ui : emb.u) {
        Series swapped = compose(ui, r, swap);
        CHECK(swapped.poly() == ui.poly().truncated(swapped.cap()));
    }
    CHECK_THROWS(strata_embedding(c, 9, 9));
}
