#include "kleinian/symfunc.hpp"

#include <algorithm>
#include <stdexcept>

namespace kleinian {

SymPoly SymPoly::constant(int nvars, const Ring& lam_ring, const Rational& c) {
    SymPoly p(nvars, lam_ring);
    if (!c.is_zero()) p.terms_.emplace(SymKey{}, c);
    return p;
}

void SymPoly::add_term(const SymKey& k, const Rational& c) {
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

SymPoly SymPoly::scaled(const Rational& c) const {
    SymPoly r(nvars_, lam_ring_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

int SymPoly::lam_weight(const ExpVec& e) const {
    int w = 0;
    for (size_t i = 0; i < lam_ring_.size(); ++i) w += int(e[i]) * lam_ring_.at(i).weight;
    return w;
}

SymPoly SymPoly::times_power_sum(int w, const ExpVec& gamma, const Rational& c, int cap,
                                 int lam_depth) const {
    SymPoly r(nvars_, lam_ring_);
    if (c.is_zero()) return r;
    int gw = lam_weight(gamma);
    for (const auto& [key, coeff] : terms_) {
        // lambda part
        ExpVec lam = key.lam;
        bool overflow = false;
        for (size_t i = 0; i < lam.size(); ++i) {
            int v = int(lam[i]) + int(gamma[i]);
            if (v > 250) { overflow = true; break; }
            lam[i] = uint8_t(v);
        }
        if (overflow) throw std::overflow_error("SymPoly: lambda exponent overflow");
        if (-(lam_weight(key.lam) + gw) > lam_depth) continue;

        int wsum = 0, nparts = 0;
        for (uint8_t p : key.parts) {
            wsum += p;
            if (p) ++nparts;
        }
        if (wsum + w > cap) continue;
        Rational base = coeff * c;

        // m_mu * p_w: bump one part of each distinct value, or append a part;
        // the coefficient is the multiplicity of the modified value in the
        // resulting partition.
        for (int i = 0; i < nparts;) {
            int j = i;
            while (j < nparts && key.parts[size_t(j)] == key.parts[size_t(i)]) ++j;
            int a = key.parts[size_t(i)];
            std::array<uint8_t, kMaxParts> parts = key.parts;
            if (a + w > 250) throw std::overflow_error("SymPoly: part overflow");
            parts[size_t(i)] = uint8_t(a + w);
            std::sort(parts.begin(), parts.end(), std::greater<uint8_t>());
            int mult = int(std::count(parts.begin(), parts.end(), uint8_t(a + w)));
            SymKey nk;
            nk.parts = parts;
            nk.lam = lam;
            r.add_term(nk, base * Rational(mult));
            i = j;
        }
        if (nparts < nvars_ && nparts < kMaxParts) {
            std::array<uint8_t, kMaxParts> parts = key.parts;
            parts[size_t(nparts)] = uint8_t(w);
            std::sort(parts.begin(), parts.end(), std::greater<uint8_t>());
            int mult = int(std::count(parts.begin(), parts.end(), uint8_t(w)));
            SymKey nk;
            nk.parts = parts;
            nk.lam = lam;
            r.add_term(nk, base * Rational(mult));
        }
    }
    return r;
}

PowerSumComposer::PowerSumComposer(int nvars, Ring lam_ring, std::vector<PowerSumSeries> bases,
                                   int cap, int lam_depth)
    : nvars_(nvars),
      lam_ring_(std::move(lam_ring)),
      bases_(std::move(bases)),
      cap_(cap),
      lam_depth_(lam_depth) {}

const SymPoly& PowerSumComposer::monomial(const std::vector<int>& e) {
    auto it = memo_.find(e);
    if (it != memo_.end()) return it->second;
    // Build recursively so every multiplication is by a power-sum series:
    // peel one factor off the last nonzero exponent.
    int last = -1;
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) last = int(i);
    if (last < 0) {
        auto [jt, _] = memo_.emplace(e, SymPoly::constant(nvars_, lam_ring_, Rational(1)));
        return jt->second;
    }
    std::vector<int> prev = e;
    prev[size_t(last)] -= 1;
    const SymPoly& tail = monomial(prev);
    SymPoly next(nvars_, lam_ring_);
    for (const auto& item : bases_[size_t(last)].items)
        next += tail.times_power_sum(item.m, item.lam, item.c, cap_, lam_depth_);
    auto [jt, _] = memo_.emplace(e, std::move(next));
    return jt->second;
}

}  // namespace kleinian
