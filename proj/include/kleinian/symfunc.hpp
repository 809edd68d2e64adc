#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "kleinian/graded_poly.hpp"

namespace kleinian {

// Symmetric series in k variables, monomial-symmetric basis m_mu with
// lambda-monomial coefficients. Partitions stored descending, at most
// kMaxParts parts. Multiplication is only ever by lambda-scaled power sums,
// which keeps strata compositions cheap in any number of points.
inline constexpr int kMaxParts = 8;

struct SymKey {
    std::array<uint8_t, kMaxParts> parts{};  // descending
    ExpVec lam{};                            // exponents in the parameter ring

    bool operator<(const SymKey& o) const {
        if (parts != o.parts) return parts < o.parts;
        return lam < o.lam;
    }
    bool operator==(const SymKey& o) const { return parts == o.parts && lam == o.lam; }
};

class SymPoly {
public:
    SymPoly(int nvars, Ring lam_ring) : nvars_(nvars), lam_ring_(std::move(lam_ring)) {}

    static SymPoly constant(int nvars, const Ring& lam_ring, const Rational& c);

    const std::map<SymKey, Rational>& terms() const { return terms_; }
    int nvars() const { return nvars_; }
    const Ring& lam_ring() const { return lam_ring_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const SymKey& k, const Rational& c);

    SymPoly& operator+=(const SymPoly& o);
    SymPoly scaled(const Rational& c) const;

    // this * (c * lam^gamma * p_w), truncating partitions of weight > cap and
    // lambda monomials of |weight| > lam_depth.
    SymPoly times_power_sum(int w, const ExpVec& gamma, const Rational& c, int cap,
                            int lam_depth) const;

    int lam_weight(const ExpVec& e) const;  // negative or zero

private:
    int nvars_;
    Ring lam_ring_;
    std::map<SymKey, Rational> terms_;
};

// A series of the shape sum_m c_m * lam^gamma_m * p_m (m >= 1), the form the
// multi-point Abel sums take.
struct PowerSumSeries {
    struct Item {
        int m;
        ExpVec lam;
        Rational c;
    };
    std::vector<Item> items;
};

// prod_i base_i^{e_i} over SymPoly, with shared power tables.
class PowerSumComposer {
public:
    PowerSumComposer(int nvars, Ring lam_ring, std::vector<PowerSumSeries> bases, int cap,
                     int lam_depth);

    // Composition of the monomial prod base_i^{e[i]}.
    const SymPoly& monomial(const std::vector<int>& e);

private:
    int nvars_;
    Ring lam_ring_;
    std::vector<PowerSumSeries> bases_;
    int cap_;
    int lam_depth_;
    std::map<std::vector<int>, SymPoly> memo_;
};

}  // namespace kleinian
