#pragma once

#include <vector>

#include "kleinian/curve.hpp"
#include "kleinian/series.hpp"

namespace kleinian {

// Expansion data at infinity in the local parameter xi = x^{-1/n}.
// x = xi^{-n} and y = xi^{-s} * y_unit, so only the unit parts are stored;
// negative powers are handled by explicit regularization at use sites.
struct PuiseuxPoint {
    Series y_unit;  // in (xi | lam) ring; y = xi^{-s} * y_unit, y_unit(0) = 1
    int cap = 0;
};

struct AbelSeries {
    std::vector<Series> u;  // u[i] has leading term xi^{w_i} / w_i
    int cap = 0;
};

struct StrataEmbedding {
    int arity = 0;
    Ring ring;              // (xi_1..xi_k | lam)
    std::vector<Series> u;  // u[i](xi_1..xi_k) = sum_j u_i(xi_j)
    int cap = 0;
};

// y(xi) from Newton/binomial expansion of (1 + sum lam_j xi^{n(s-j)})^{1/n};
// the residual f(x(xi), y(xi)) vanishes through the cap.
PuiseuxPoint puiseux_y(const CurveSpec& c, int cap);

// u_i(xi) = integral of h_i dx / f_y, sign-normalized so the leading
// coefficient is +1/w_i. Throws if a xi^{-1} term appears in any integrand.
AbelSeries abel_series(const CurveSpec& c, int cap);

// Componentwise k-point sum in xi_1..xi_k, any arity.
StrataEmbedding multi_point_sum(const CurveSpec& c, int k, int cap);

// The k-th strata parametrization, 1 <= k <= g-1 (genus 1: k = 0 is the
// origin and has no parameters).
StrataEmbedding strata_embedding(const CurveSpec& c, int k, int cap);

// (1 + w)^(1/n) with val(w) >= 1, exact binomial series through cap.
Series nth_root_unit(const Series& one_plus_w, int n);

}  // namespace kleinian
