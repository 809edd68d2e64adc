#pragma once

#include <map>

#include "kleinian/graded_poly.hpp"

namespace kleinian {

// A graded polynomial known exactly through capped-weight <= cap; terms above
// the cap are unknown and never stored. The cap is data, not a global: it
// rises under multiplication by the factor valuations, so cleared numerators
// keep track of exactly how far they are certified.
class Series {
public:
    Series() : cap_(0) {}
    Series(GradedPoly p, int cap) : poly_(p.truncated(cap)), cap_(cap) {}

    // A polynomial known exactly at every weight.
    static Series exact(GradedPoly p) {
        return Series(std::move(p), std::numeric_limits<int>::max() / 8);
    }

    const GradedPoly& poly() const { return poly_; }
    const Ring& ring() const { return poly_.ring(); }
    int cap() const { return cap_; }
    bool is_zero() const { return poly_.is_zero(); }

    // Valuation used for cap propagation; empty series act as "everything
    // above the cap", which is the exact bound for products.
    int val_bound() const { return poly_.is_zero() ? cap_ + 1 : poly_.min_capweight(); }

    friend Series operator+(const Series& a, const Series& b) {
        int cap = std::min(a.cap_, b.cap_);
        return Series(a.poly_ + b.poly_, cap);
    }
    friend Series operator-(const Series& a, const Series& b) {
        int cap = std::min(a.cap_, b.cap_);
        return Series(a.poly_ - b.poly_, cap);
    }
    Series operator-() const { return Series(-poly_, cap_); }
    Series scaled(const Rational& s) const {
        if (s.is_zero()) return Series(GradedPoly(ring()), cap_);
        return Series(poly_.scaled(s), cap_);
    }

    friend Series operator*(const Series& a, const Series& b) {
        long cap = std::min(long(a.cap_) + b.val_bound(), long(b.cap_) + a.val_bound());
        cap = std::min(cap, long(std::numeric_limits<int>::max() / 8));
        return Series(GradedPoly::mul(a.poly_, b.poly_, int(cap)), int(cap));
    }

    Series mul_poly(const GradedPoly& p) const {
        // Multiplication by an exact polynomial (cap shifts by its valuation).
        if (p.is_zero()) return Series(GradedPoly(ring()), std::numeric_limits<int>::max() / 8);
        int cap = cap_ + p.min_capweight();
        return Series(GradedPoly::mul(poly_, p, cap), cap);
    }

    Series pow(unsigned k) const {
        Series acc = Series(GradedPoly::constant(ring(), Rational(1)),
                            std::numeric_limits<int>::max() / 8);
        Series base = *this;
        unsigned kk = k;
        while (kk > 0) {
            if (kk & 1u) acc = acc * base;
            kk >>= 1u;
            if (kk) base = base * base;
        }
        return acc;
    }

    Series diff(int sym_index) const {
        const Symbol& s = ring().at(size_t(sym_index));
        int cap = s.capped ? cap_ - s.weight : cap_;
        return Series(poly_.diff(sym_index), cap);
    }
    Series diff(const std::string& name) const { return diff(ring().require(name)); }

    Series truncated(int cap) const { return Series(poly_, std::min(cap, cap_)); }

    bool agrees_through_cap(const Series& o) const {
        int cap = std::min(cap_, o.cap_);
        return (poly_ - o.poly_).truncated(cap).is_zero();
    }

private:
    GradedPoly poly_;
    int cap_;
};

// Substitution of capped symbols by series with positive valuation.
// Unmapped symbols pass through by name into the target ring.
Series compose(const GradedPoly& f, int f_cap, const Ring& target,
               const std::map<int, Series>& map);

inline Series compose(const Series& f, const Ring& target, const std::map<int, Series>& map) {
    return compose(f.poly(), f.cap(), target, map);
}

}  // namespace kleinian
