#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kleinian/rational.hpp"
#include "kleinian/ring.hpp"

namespace kleinian {

using ExpVec = std::array<uint8_t, kMaxRingSymbols>;

inline ExpVec zero_exps() { ExpVec e{}; return e; }

inline int exp_degree(const ExpVec& e) {
    int d = 0;
    for (uint8_t x : e) d += x;
    return d;
}

// Graded-lex term order: total degree first, then exponent vector in the
// declared symbol order. Fixed once so serialization is reproducible.
inline bool exp_less(const ExpVec& a, const ExpVec& b) {
    int da = exp_degree(a), db = exp_degree(b);
    if (da != db) return da < db;
    return std::memcmp(a.data(), b.data(), a.size()) < 0;
}

struct Term {
    ExpVec e;
    Rational c;
};

// Sparse multivariate polynomial over Rational in a weighted symbol ring.
// Terms are kept sorted in the graded-lex order with no zero coefficients.
class GradedPoly {
public:
    GradedPoly() = default;
    explicit GradedPoly(Ring ring) : ring_(std::move(ring)) {}
    GradedPoly(Ring ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
        normalize(terms_);
    }

    static GradedPoly constant(const Ring& ring, const Rational& c) {
        GradedPoly p(ring);
        if (!c.is_zero()) p.terms_.push_back({zero_exps(), c});
        return p;
    }
    static GradedPoly variable(const Ring& ring, const std::string& name, const Rational& c = Rational(1)) {
        GradedPoly p(ring);
        if (c.is_zero()) return p;
        ExpVec e = zero_exps();
        e[static_cast<size_t>(ring.require(name))] = 1;
        p.terms_.push_back({e, c});
        return p;
    }
    static GradedPoly monomial(const Ring& ring, const ExpVec& e, const Rational& c) {
        GradedPoly p(ring);
        if (!c.is_zero()) p.terms_.push_back({e, c});
        return p;
    }

    const Ring& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    // Weight of one monomial: sum of exponent * symbol weight.
    int term_weight(const ExpVec& e) const {
        int w = 0;
        for (size_t i = 0; i < ring_.size(); ++i) w += int(e[i]) * ring_.at(i).weight;
        return w;
    }
    // Same but restricted to capped symbols.
    int term_capweight(const ExpVec& e) const {
        int w = 0;
        for (size_t i = 0; i < ring_.size(); ++i)
            if (ring_.at(i).capped) w += int(e[i]) * ring_.at(i).weight;
        return w;
    }

    // Weight if homogeneous (all term weights equal), else nullopt.
    std::optional<int> homogeneous_weight() const;

    // Least capped-weight among stored terms; `empty_value` if none.
    int min_capweight(int empty_value = std::numeric_limits<int>::max() / 4) const;
    int max_capweight() const;  // 0 if empty

    Rational coeff(const ExpVec& e) const;
    Rational constant_term() const { return coeff(zero_exps()); }

    GradedPoly operator-() const;
    friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) { return add_scaled(a, b, Rational(1)); }
    friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) { return add_scaled(a, b, Rational(-1)); }

    // a + s*b
    static GradedPoly add_scaled(const GradedPoly& a, const GradedPoly& b, const Rational& s);

    GradedPoly scaled(const Rational& s) const;

    // Product, discarding result terms of capped-weight > cap.
    static GradedPoly mul(const GradedPoly& a, const GradedPoly& b,
                          int cap = std::numeric_limits<int>::max() / 4);
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) { return mul(a, b); }

    GradedPoly pow(unsigned k, int cap = std::numeric_limits<int>::max() / 4) const;

    // Exact partial derivative.
    GradedPoly diff(int sym_index) const;
    GradedPoly diff(const std::string& name) const { return diff(ring_.require(name)); }

    // Drop terms with capped-weight > cap.
    GradedPoly truncated(int cap) const;

    // Keep only terms whose exponents vanish on all symbols in `mask_out`.
    GradedPoly without_symbols(const std::vector<int>& mask_out) const;

    // Substitute each mapped symbol by a polynomial over `target`; unmapped
    // symbols must exist in `target` by name. Result truncated at `cap`.
    GradedPoly substituted(const Ring& target, const std::map<int, GradedPoly>& map,
                           int cap = std::numeric_limits<int>::max() / 4) const;

    // Substitute a symbol by a rational constant.
    GradedPoly with_value(int sym_index, const Rational& value) const;

    // Split terms by the exponents on `group_syms`: exponent pattern -> the
    // co-factor polynomial in the remaining symbols (same ring, zeros on
    // grouped symbols).
    std::map<ExpVec, GradedPoly> grouped_by(const std::vector<int>& group_syms) const;

    std::string str() const;

    bool operator==(const GradedPoly& o) const;
    bool operator!=(const GradedPoly& o) const { return !(*this == o); }

    static void normalize(std::vector<Term>& ts);

private:
    Ring ring_;
    std::vector<Term> terms_;
};

}  // namespace kleinian
