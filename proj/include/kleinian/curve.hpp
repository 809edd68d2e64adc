#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kleinian/graded_poly.hpp"
#include "kleinian/rational.hpp"
#include "kleinian/ring.hpp"

namespace kleinian {

enum class CurveClass { Cyclic, General };

// A cyclic (n,s)-curve y^n = x^s + lambda_{s-1} x^{s-1} + ... + lambda_0,
// gcd(n,s) = 1, s > n. Coefficients are symbolic unless assigned.
struct CurveSpec {
    int n = 2;
    int s = 3;
    CurveClass cls = CurveClass::Cyclic;
    // lambda_j -> value; absent key means symbolic.
    std::map<int, Rational> values;
    std::optional<int> truncation_weight;

    int genus() const { return (n - 1) * (s - 1) / 2; }
    void validate() const;
    bool is_hyperelliptic() const { return n == 2; }
};

struct GapSequence {
    std::vector<int> gaps;  // ascending, size g
    bool is_gap(int m) const;
};

struct WeightTable {
    int wt_x = 0;
    int wt_y = 0;
    std::vector<int> wt_lambda;  // index j = 0..s-1, value -n(s-j)
    std::vector<int> wt_u;       // descending, u1 heaviest
    int wt_sigma = 0;
};

struct XYMonomial {
    int i = 0, j = 0;  // x^i y^j
    int pole_order = 0;
};

struct RRRow {
    int k = 0;
    int h0 = 0;
    int h1 = 0;
};

GapSequence gap_sequence(int n, int s);
WeightTable weight_table(const CurveSpec& c);
int sigma_weight(int n, int s);

// Monomials x^i y^j (0 <= j < n) by increasing pole order at infinity.
std::vector<XYMonomial> monomial_order(int n, int s, int count);

std::vector<RRRow> rr_dimension_table(int n, int s, int max_multiple);

// Smallest k at which the monomial count (allowing j = n) exceeds dim H^0.
int first_relation_point(int n, int s);

// Numerator monomials h_i of the holomorphic differentials h_i dx/f_y,
// ordered so that u_i carries gap weight wt_u[i] (descending).
std::vector<XYMonomial> differential_basis(const CurveSpec& c);

// Ring (u_1..u_g | lam_0..lam_{s-1}) with Sato weights; u's capped.
Ring curve_ring(const CurveSpec& c);
// Ring (xi_1..xi_k | lam_0..lam_{s-1}); xi's capped with weight 1.
Ring xi_ring(const CurveSpec& c, int k);

std::string lambda_name(int j);
std::string u_name(int i);

// x^s + sum_j lambda_j x^j as a polynomial in `x_sym` over `ring`;
// assigned coefficients substituted, symbolic ones kept.
GradedPoly curve_rhs_poly(const CurveSpec& c, const Ring& ring, const std::string& x_sym);

// Plain-text key/value curve file: n, s, class, lambda.j, truncation_weight.
CurveSpec parse_curve_file(const std::string& text);
std::string curve_file_text(const CurveSpec& c);

}  // namespace kleinian
