#pragma once

// Independent reference implementations used to pin expected values before
// the production paths existed. Deliberately naive.

#include <map>
#include <random>
#include <vector>

#include "kleinian/graded_poly.hpp"
#include "kleinian/linear_solver.hpp"

namespace oracles {

using kleinian::ExpVec;
using kleinian::GradedPoly;
using kleinian::Rational;
using kleinian::Ring;
using kleinian::Term;

// Schoolbook product: every pair of terms, accumulated in a map.
inline GradedPoly naive_mul(const GradedPoly& a, const GradedPoly& b) {
    std::map<ExpVec, Rational> acc;
    for (const Term& ta : a.terms())
        for (const Term& tb : b.terms()) {
            ExpVec e{};
            for (size_t i = 0; i < e.size(); ++i) e[i] = uint8_t(ta.e[i] + tb.e[i]);
            acc[e] += ta.c * tb.c;
        }
    std::vector<Term> ts;
    for (auto& [e, c] : acc)
        if (!c.is_zero()) ts.push_back({e, c});
    return GradedPoly(a.ring(), std::move(ts));
}

// Plain rational Gauss-Jordan elimination, no fraction-free tricks.
// Returns false when singular/inconsistent.
inline bool naive_solve(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs,
                        std::vector<Rational>& out) {
    const size_t n = m.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t r = col; r < n; ++r)
            if (!m[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv == n) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        Rational inv = m[col][col].inv();
        for (size_t j = 0; j < n; ++j) m[col][j] *= inv;
        rhs[col] *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (size_t j = 0; j < n; ++j) m[r][j] -= f * m[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    out = rhs;
    return true;
}

inline Rational random_rational(std::mt19937_64& rng, int num_range = 9, int den_range = 4) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return Rational(num(rng), den(rng));
}

inline GradedPoly random_poly(const Ring& ring, std::mt19937_64& rng, int max_terms = 6,
                              int max_exp = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> expd(0, max_exp);
    std::vector<Term> ts;
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        ExpVec e{};
        for (size_t i = 0; i < ring.size(); ++i) e[i] = uint8_t(expd(rng));
        Rational c = random_rational(rng);
        if (!c.is_zero()) ts.push_back({e, c});
    }
    return GradedPoly(ring, std::move(ts));
}

}  // namespace oracles
