#include "kleinian/graded_poly.hpp"

#include <algorithm>
#include <sstream>

namespace kleinian {

void GradedPoly::normalize(std::vector<Term>& ts) {
    std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return exp_less(a.e, b.e); });
    size_t out = 0;
    for (size_t i = 0; i < ts.size();) {
        size_t j = i + 1;
        Rational acc = ts[i].c;
        while (j < ts.size() && ts[j].e == ts[i].e) {
            acc += ts[j].c;
            ++j;
        }
        if (!acc.is_zero()) {
            ts[out].e = ts[i].e;
            ts[out].c = std::move(acc);
            ++out;
        }
        i = j;
    }
    ts.resize(out);
}

std::optional<int> GradedPoly::homogeneous_weight() const {
    if (terms_.empty()) return 0;
    int w = term_weight(terms_[0].e);
    for (const Term& t : terms_)
        if (term_weight(t.e) != w) return std::nullopt;
    return w;
}

int GradedPoly::min_capweight(int empty_value) const {
    if (terms_.empty()) return empty_value;
    int m = term_capweight(terms_[0].e);
    for (const Term& t : terms_) m = std::min(m, term_capweight(t.e));
    return m;
}

int GradedPoly::max_capweight() const {
    int m = 0;
    for (const Term& t : terms_) m = std::max(m, term_capweight(t.e));
    return m;
}

Rational GradedPoly::coeff(const ExpVec& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const ExpVec& key) { return exp_less(t.e, key); });
    if (it != terms_.end() && it->e == e) return it->c;
    return Rational(0);
}

GradedPoly GradedPoly::operator-() const { return scaled(Rational(-1)); }

GradedPoly GradedPoly::scaled(const Rational& s) const {
    GradedPoly r(ring_);
    if (s.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back({t.e, t.c * s});
    return r;
}

GradedPoly GradedPoly::add_scaled(const GradedPoly& a, const GradedPoly& b, const Rational& s) {
    if (!a.ring_.same(b.ring_)) throw std::invalid_argument("GradedPoly: ring mismatch in add");
    GradedPoly r(a.ring_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < a.terms_.size() && exp_less(a.terms_[i].e, b.terms_[j].e))) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (i == a.terms_.size() || exp_less(b.terms_[j].e, a.terms_[i].e)) {
            r.terms_.push_back({b.terms_[j].e, b.terms_[j].c * s});
            ++j;
        } else {
            Rational c = a.terms_[i].c + b.terms_[j].c * s;
            if (!c.is_zero()) r.terms_.push_back({a.terms_[i].e, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

GradedPoly GradedPoly::mul(const GradedPoly& a, const GradedPoly& b, int cap) {
    if (!a.ring_.same(b.ring_)) throw std::invalid_argument("GradedPoly: ring mismatch in mul");
    GradedPoly r(a.ring_);
    if (a.is_zero() || b.is_zero()) return r;

    // Pre-sort the smaller operand by capped weight for early cutoff.
    const GradedPoly& big = a.size() >= b.size() ? a : b;
    const GradedPoly& small = a.size() >= b.size() ? b : a;
    struct WTerm {
        const Term* t;
        int cw;
    };
    std::vector<WTerm> sw;
    sw.reserve(small.size());
    for (const Term& t : small.terms_) sw.push_back({&t, small.term_capweight(t.e)});
    std::sort(sw.begin(), sw.end(), [](const WTerm& x, const WTerm& y) { return x.cw < y.cw; });

    std::vector<Term> prod;
    prod.reserve(big.size() * small.size() / 2 + 4);
    for (const Term& ta : big.terms_) {
        int wa = big.term_capweight(ta.e);
        for (const WTerm& wt : sw) {
            if (wa + wt.cw > cap) break;
            ExpVec e;
            bool overflow = false;
            for (size_t k = 0; k < e.size(); ++k) {
                int v = int(ta.e[k]) + int(wt.t->e[k]);
                if (v > 250) { overflow = true; break; }
                e[k] = static_cast<uint8_t>(v);
            }
            if (overflow) throw std::overflow_error("GradedPoly: exponent overflow");
            prod.push_back({e, ta.c * wt.t->c});
        }
    }
    normalize(prod);
    r.terms_ = std::move(prod);
    return r;
}

GradedPoly GradedPoly::pow(unsigned k, int cap) const {
    GradedPoly acc = constant(ring_, Rational(1));
    GradedPoly base = *this;
    while (k > 0) {
        if (k & 1u) acc = mul(acc, base, cap);
        k >>= 1u;
        if (k) base = mul(base, base, cap);
    }
    return acc;
}

GradedPoly GradedPoly::diff(int sym_index) const {
    if (sym_index < 0 || size_t(sym_index) >= ring_.size())
        throw std::invalid_argument("GradedPoly: unknown symbol in diff");
    GradedPoly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) {
        int e = t.e[size_t(sym_index)];
        if (e == 0) continue;
        Term nt = t;
        nt.e[size_t(sym_index)] = static_cast<uint8_t>(e - 1);
        nt.c = t.c * Rational(e);
        r.terms_.push_back(std::move(nt));
    }
    normalize(r.terms_);
    return r;
}

GradedPoly GradedPoly::truncated(int cap) const {
    GradedPoly r(ring_);
    for (const Term& t : terms_)
        if (term_capweight(t.e) <= cap) r.terms_.push_back(t);
    return r;
}

GradedPoly GradedPoly::without_symbols(const std::vector<int>& mask_out) const {
    GradedPoly r(ring_);
    for (const Term& t : terms_) {
        bool keep = true;
        for (int s : mask_out)
            if (t.e[size_t(s)] != 0) { keep = false; break; }
        if (keep) r.terms_.push_back(t);
    }
    return r;
}

GradedPoly GradedPoly::substituted(const Ring& target, const std::map<int, GradedPoly>& map,
                                   int cap) const {
    // Identity images for unmapped symbols, looked up by name.
    std::vector<const GradedPoly*> image(ring_.size(), nullptr);
    std::vector<GradedPoly> identity_cache;
    identity_cache.reserve(ring_.size());
    for (size_t i = 0; i < ring_.size(); ++i) {
        auto it = map.find(static_cast<int>(i));
        if (it == map.end()) {
            identity_cache.push_back(GradedPoly::variable(target, ring_.at(i).name));
            image[i] = &identity_cache.back();
        }
    }
    // identity_cache pointers stay valid: reserve() above.
    std::vector<std::vector<GradedPoly>> powers(ring_.size());
    auto power_of = [&](size_t sym, unsigned k) -> const GradedPoly& {
        auto& tab = powers[sym];
        if (tab.empty()) tab.push_back(GradedPoly::constant(target, Rational(1)));
        const GradedPoly& base = image[sym] ? *image[sym] : map.at(static_cast<int>(sym));
        while (tab.size() <= k) tab.push_back(GradedPoly::mul(tab.back(), base, cap));
        return tab[k];
    };

    GradedPoly acc(target);
    for (const Term& t : terms_) {
        GradedPoly m = GradedPoly::constant(target, t.c);
        for (size_t i = 0; i < ring_.size(); ++i) {
            if (t.e[i] == 0) continue;
            m = GradedPoly::mul(m, power_of(i, t.e[i]), cap);
            if (m.is_zero()) break;
        }
        acc = acc + m;
    }
    return acc.truncated(cap);
}

GradedPoly GradedPoly::with_value(int sym_index, const Rational& value) const {
    GradedPoly r(ring_);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        int e = t.e[size_t(sym_index)];
        if (e == 0) {
            out.push_back(t);
            continue;
        }
        if (value.is_zero()) continue;
        Rational c = t.c;
        for (int k = 0; k < e; ++k) c *= value;
        Term nt{t.e, std::move(c)};
        nt.e[size_t(sym_index)] = 0;
        out.push_back(std::move(nt));
    }
    normalize(out);
    r.terms_ = std::move(out);
    return r;
}

std::map<ExpVec, GradedPoly> GradedPoly::grouped_by(const std::vector<int>& group_syms) const {
    std::map<ExpVec, std::vector<Term>> buckets;
    for (const Term& t : terms_) {
        ExpVec key = zero_exps();
        Term rest = t;
        for (int s : group_syms) {
            key[size_t(s)] = t.e[size_t(s)];
            rest.e[size_t(s)] = 0;
        }
        buckets[key].push_back(std::move(rest));
    }
    std::map<ExpVec, GradedPoly> out;
    for (auto& [k, ts] : buckets) {
        GradedPoly p(ring_);
        normalize(ts);
        p.terms_ = std::move(ts);
        out.emplace(k, std::move(p));
    }
    return out;
}

std::string GradedPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.c.str() << ")";
        for (size_t i = 0; i < ring_.size(); ++i) {
            if (t.e[i] == 0) continue;
            os << "*" << ring_.at(i).name;
            if (t.e[i] > 1) os << "^" << int(t.e[i]);
        }
    }
    return os.str();
}

bool GradedPoly::operator==(const GradedPoly& o) const {
    if (!ring_.same(o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

}  // namespace kleinian
