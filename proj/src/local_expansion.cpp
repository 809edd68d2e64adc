#include "kleinian/local_expansion.hpp"

#include <algorithm>
#include <stdexcept>

namespace kleinian {

namespace {

// Binomial series (1+w)^alpha for rational alpha, w a series with val >= 1.
Series binomial_series(const Series& w, const Rational& alpha, int cap) {
    const Ring& ring = w.ring();
    Series acc(GradedPoly::constant(ring, Rational(1)), cap);
    Series wpow(GradedPoly::constant(ring, Rational(1)), cap + 1);
    Rational coeff(1);
    int v = w.val_bound();
    if (v <= 0) throw std::invalid_argument("binomial_series: valuation must be positive");
    for (int k = 1; k * v <= cap; ++k) {
        coeff *= (alpha - Rational(k - 1)) / Rational(k);
        wpow = Series(GradedPoly::mul(wpow.poly(), w.poly(), cap), cap);
        acc = acc + wpow.scaled(coeff);
    }
    return Series(acc.poly(), cap);
}

}  // namespace

Series nth_root_unit(const Series& one_plus_w, int n) {
    const Ring& ring = one_plus_w.ring();
    GradedPoly w = one_plus_w.poly() - GradedPoly::constant(ring, Rational(1));
    return binomial_series(Series(w, one_plus_w.cap()), Rational(1, n), one_plus_w.cap());
}

PuiseuxPoint puiseux_y(const CurveSpec& c, int cap) {
    c.validate();
    if (c.cls != CurveClass::Cyclic)
        throw std::invalid_argument("puiseux_y: only cyclic curves are supported");
    if (cap < 1) throw std::invalid_argument("puiseux_y: cap must be >= 1");
    Ring ring = xi_ring(c, 1);
    // x = xi^{-n}: y^n = x^s (1 + sum_j lambda_j xi^{n(s-j)}).
    GradedPoly w(ring);
    GradedPoly xi = GradedPoly::variable(ring, "xi1");
    for (int j = 0; j < c.s; ++j) {
        int e = c.n * (c.s - j);
        if (e > cap) continue;
        GradedPoly xie = xi.pow(unsigned(e), cap);
        auto it = c.values.find(j);
        if (it != c.values.end())
            w = w + xie.scaled(it->second);
        else
            w = w + GradedPoly::mul(xie, GradedPoly::variable(ring, lambda_name(j)), cap);
    }
    PuiseuxPoint p;
    p.cap = cap;
    p.y_unit = binomial_series(Series(w, cap), Rational(1, c.n), cap);
    return p;
}

AbelSeries abel_series(const CurveSpec& c, int cap) {
    WeightTable wt = weight_table(c);
    const int g = c.genus();
    if (cap < wt.wt_u[0]) throw std::invalid_argument("abel_series: cap below the largest gap");
    PuiseuxPoint p = puiseux_y(c, cap + c.n + 1);
    const Ring& ring = p.y_unit.ring();

    // Inverse unit powers for y^{b-n+1} with b < n.
    GradedPoly one = GradedPoly::constant(ring, Rational(1));
    int icap = p.y_unit.cap();
    // 1/y_unit by geometric series on (y_unit - 1).
    GradedPoly v = p.y_unit.poly() - one;
    GradedPoly inv = one;
    {
        GradedPoly vp = one;
        int vv = std::max(v.min_capweight(icap + 1), 1);
        for (int k = 1; k * vv <= icap; ++k) {
            vp = GradedPoly::mul(vp, v, icap);
            inv = (k % 2 == 0) ? inv + vp : inv - vp;
        }
    }
    // check: inv * y_unit == 1 through icap
    if (!(GradedPoly::mul(inv, p.y_unit.poly(), icap) - one).is_zero())
        throw std::logic_error("abel_series: unit inversion failed");

    std::vector<XYMonomial> basis = differential_basis(c);
    AbelSeries out;
    out.cap = cap;
    int xi_idx = ring.require("xi1");
    for (int i = 0; i < g; ++i) {
        const XYMonomial& h = basis[size_t(i)];
        // du/dxi = -x^a y^{b-n+1} xi^{-n-1}
        //        = -xi^{e0} * y_unit^{-(n-1-b)},  e0 = 2g-2 - pole_order(h).
        int e0 = 2 * c.genus() - 2 - h.pole_order;
        if (e0 < 0) throw std::logic_error("abel_series: non-holomorphic basis element");
        int upow = c.n - 1 - h.j;
        GradedPoly unit = one;
        for (int k = 0; k < upow; ++k) unit = GradedPoly::mul(unit, inv, icap);
        GradedPoly integrand(ring);
        {
            ExpVec shift = zero_exps();
            shift[size_t(xi_idx)] = uint8_t(e0);
            integrand = GradedPoly::mul(unit, GradedPoly::monomial(ring, shift, Rational(-1)), cap - 1 < 0 ? 0 : cap - 1);
        }
        // integrate in xi term by term; a xi^{-1} term cannot appear once
        // e0 >= 0, which is exactly holomorphy of the differential
        std::vector<Term> terms;
        for (const Term& t : integrand.terms()) {
            int m = t.e[size_t(xi_idx)];
            Term nt = t;
            nt.e[size_t(xi_idx)] = uint8_t(m + 1);
            nt.c = t.c / Rational(m + 1);
            terms.push_back(nt);
        }
        GradedPoly u(ring, std::move(terms));
        u = u.truncated(cap);
        // Normalize the orientation sign: leading coefficient +1/w_i.
        int w = wt.wt_u[size_t(i)];
        ExpVec lead = zero_exps();
        lead[size_t(xi_idx)] = uint8_t(w);
        Rational lc = u.coeff(lead);
        if (lc == Rational(-1, w)) u = -u;
        else if (lc != Rational(1, w))
            throw std::logic_error("abel_series: unexpected leading coefficient");
        out.u.push_back(Series(u, cap));
    }
    return out;
}

StrataEmbedding strata_embedding(const CurveSpec& c, int k, int cap) {
    const int g = c.genus();
    if (k < 0 || k > std::max(g - 1, 0))
        throw std::invalid_argument("strata_embedding: arity out of range");
    return multi_point_sum(c, k, cap);
}

StrataEmbedding multi_point_sum(const CurveSpec& c, int k, int cap) {
    if (k < 0) throw std::invalid_argument("multi_point_sum: negative arity");
    const int g = c.genus();
    StrataEmbedding out;
    out.arity = k;
    out.cap = cap;
    out.ring = xi_ring(c, std::max(k, 1));
    AbelSeries a = abel_series(c, cap);
    const Ring& src = a.u.empty() ? out.ring : a.u[0].ring();
    int xi_src = src.require("xi1");
    for (int i = 0; i < g; ++i) {
        GradedPoly sum(out.ring);
        for (int j = 1; j <= k; ++j) {
            std::map<int, GradedPoly> m;
            m.emplace(xi_src, GradedPoly::variable(out.ring, "xi" + std::to_string(j)));
            sum = sum + a.u[size_t(i)].poly().substituted(out.ring, m, cap);
        }
        out.u.push_back(Series(sum, cap));
    }
    return out;
}

}  // namespace kleinian
