#include "kleinian/wp_expr.hpp"

#include <algorithm>
#include <sstream>

namespace kleinian {

WpAtom WpAtom::wp(std::vector<int> idx) {
    if (idx.size() < 2) throw std::invalid_argument("wp atom needs arity >= 2");
    std::sort(idx.begin(), idx.end());
    return WpAtom{Kind::Wp, std::move(idx)};
}
WpAtom WpAtom::q(std::vector<int> idx) {
    if (idx.size() % 2 != 0 || idx.empty())
        throw std::invalid_argument("q atom needs even arity");
    std::sort(idx.begin(), idx.end());
    return WpAtom{Kind::Q, std::move(idx)};
}
WpAtom WpAtom::sigma_deriv(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    return WpAtom{Kind::SigmaDeriv, std::move(idx)};
}

int WpAtom::weight(const WeightTable& wt) const {
    int w = 0;
    for (int i : indices) w += wt.wt_u[size_t(i - 1)];
    return -w;
}

bool WpAtom::operator<(const WpAtom& o) const {
    if (kind != o.kind) return kind < o.kind;
    return indices < o.indices;
}
bool WpAtom::operator==(const WpAtom& o) const { return kind == o.kind && indices == o.indices; }

std::string WpAtom::str() const {
    std::ostringstream os;
    os << (kind == Kind::Wp ? "wp" : kind == Kind::Q ? "Q" : "sd") << "_";
    for (int i : indices) os << i;
    return os.str();
}

namespace {

bool term_key_less(const WpTerm& a, const WpTerm& b) {
    if (a.atoms != b.atoms) return std::lexicographical_compare(
        a.atoms.begin(), a.atoms.end(), b.atoms.begin(), b.atoms.end());
    return a.lam < b.lam;
}
bool term_key_eq(const WpTerm& a, const WpTerm& b) { return a.atoms == b.atoms && a.lam == b.lam; }

}  // namespace

void WpExpr::normalize(std::vector<WpTerm>& ts) {
    for (WpTerm& t : ts) std::sort(t.atoms.begin(), t.atoms.end());
    std::sort(ts.begin(), ts.end(), term_key_less);
    size_t out = 0;
    for (size_t i = 0; i < ts.size();) {
        size_t j = i + 1;
        Rational acc = ts[i].coeff;
        while (j < ts.size() && term_key_eq(ts[j], ts[i])) {
            acc += ts[j].coeff;
            ++j;
        }
        if (!acc.is_zero()) {
            ts[out] = ts[i];
            ts[out].coeff = std::move(acc);
            ++out;
        }
        i = j;
    }
    ts.resize(out);
}

WpExpr WpExpr::constant(const Rational& c) {
    WpExpr e;
    if (!c.is_zero()) e.terms_.push_back(WpTerm{c, {}, {}});
    return e;
}

WpExpr WpExpr::lambda(int j, const Rational& c) {
    WpExpr e;
    if (c.is_zero()) return e;
    WpTerm t{c, {}, {}};
    t.lam[size_t(j)] = 1;
    e.terms_.push_back(std::move(t));
    return e;
}

WpExpr WpExpr::atom(WpAtom a, const Rational& c) {
    WpExpr e;
    if (c.is_zero()) return e;
    e.terms_.push_back(WpTerm{c, {}, {std::move(a)}});
    return e;
}

WpExpr WpExpr::scaled(const Rational& c) const {
    WpExpr e;
    if (c.is_zero()) return e;
    e.terms_ = terms_;
    for (WpTerm& t : e.terms_) t.coeff *= c;
    return e;
}

WpExpr operator+(const WpExpr& a, const WpExpr& b) {
    WpExpr e;
    e.terms_ = a.terms_;
    e.terms_.insert(e.terms_.end(), b.terms_.begin(), b.terms_.end());
    WpExpr::normalize(e.terms_);
    return e;
}

WpExpr operator*(const WpExpr& a, const WpExpr& b) {
    WpExpr e;
    for (const WpTerm& ta : a.terms_)
        for (const WpTerm& tb : b.terms_) {
            WpTerm t;
            t.coeff = ta.coeff * tb.coeff;
            for (size_t i = 0; i < t.lam.size(); ++i) {
                int v = int(ta.lam[i]) + int(tb.lam[i]);
                if (v > 250) throw std::overflow_error("WpExpr: lambda exponent overflow");
                t.lam[i] = uint8_t(v);
            }
            t.atoms = ta.atoms;
            t.atoms.insert(t.atoms.end(), tb.atoms.begin(), tb.atoms.end());
            e.terms_.push_back(std::move(t));
        }
    WpExpr::normalize(e.terms_);
    return e;
}

WpExpr WpExpr::diff(int i) const {
    WpExpr out;
    for (const WpTerm& t : terms_) {
        for (size_t a = 0; a < t.atoms.size(); ++a) {
            if (t.atoms[a].kind != WpAtom::Kind::Wp)
                throw std::invalid_argument("WpExpr::diff: only wp atoms are differentiable here");
            WpTerm nt = t;
            nt.atoms[a].indices.push_back(i);
            std::sort(nt.atoms[a].indices.begin(), nt.atoms[a].indices.end());
            out.terms_.push_back(std::move(nt));
        }
        // lambda-monomial constants differentiate to zero
    }
    normalize(out.terms_);
    return out;
}

std::optional<int> WpExpr::homogeneous_weight(const WeightTable& wt) const {
    std::optional<int> w;
    for (const WpTerm& t : terms_) {
        int tw = 0;
        for (const WpAtom& a : t.atoms) tw += a.weight(wt);
        for (size_t j = 0; j < t.lam.size(); ++j)
            if (t.lam[j]) tw += int(t.lam[j]) * wt.wt_lambda[j];
        if (!w) w = tw;
        else if (*w != tw) return std::nullopt;
    }
    return w ? w : std::optional<int>(0);
}

int WpExpr::max_arity() const {
    int m = 0;
    for (const WpTerm& t : terms_)
        for (const WpAtom& a : t.atoms) m = std::max(m, a.arity());
    return m;
}

std::string WpExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const WpTerm& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.coeff.str() << ")";
        for (size_t j = 0; j < t.lam.size(); ++j)
            if (t.lam[j]) {
                os << "*lam" << j;
                if (t.lam[j] > 1) os << "^" << int(t.lam[j]);
            }
        for (const WpAtom& a : t.atoms) os << "*" << a.str();
    }
    return os.str();
}

nlohmann::json WpExpr::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const WpTerm& t : terms_) {
        nlohmann::json jt;
        jt["coeff"] = t.coeff.str();
        nlohmann::json lam = nlohmann::json::object();
        for (size_t j = 0; j < t.lam.size(); ++j)
            if (t.lam[j]) lam[std::to_string(j)] = int(t.lam[j]);
        jt["lambda"] = lam;
        nlohmann::json atoms = nlohmann::json::array();
        for (const WpAtom& a : t.atoms) {
            atoms.push_back({{"kind", a.kind == WpAtom::Kind::Wp   ? "wp"
                                      : a.kind == WpAtom::Kind::Q ? "q"
                                                                  : "sigma_deriv"},
                             {"indices", a.indices}});
        }
        jt["atoms"] = atoms;
        out.push_back(std::move(jt));
    }
    return out;
}

WpExpr WpExpr::from_json(const nlohmann::json& j) {
    WpExpr e;
    for (const auto& jt : j) {
        WpTerm t;
        t.coeff = Rational::from_string(jt.at("coeff").get<std::string>());
        if (jt.contains("lambda"))
            for (const auto& [k, v] : jt.at("lambda").items())
                t.lam[size_t(std::stoi(k))] = uint8_t(v.get<int>());
        for (const auto& ja : jt.at("atoms")) {
            std::string kind = ja.at("kind").get<std::string>();
            std::vector<int> idx = ja.at("indices").get<std::vector<int>>();
            if (kind == "wp") t.atoms.push_back(WpAtom::wp(idx));
            else if (kind == "q") t.atoms.push_back(WpAtom::q(idx));
            else t.atoms.push_back(WpAtom::sigma_deriv(idx));
        }
        e.terms_.push_back(std::move(t));
    }
    normalize(e.terms_);
    return e;
}

// ---------------------------------------------------------------------------

const Series& Compiler::sigma_power(int k) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = sigma_powers_.find(k);
    if (it != sigma_powers_.end()) return it->second;
    if (sigma_powers_.find(0) == sigma_powers_.end())
        sigma_powers_.emplace(0, Series::exact(GradedPoly::constant(model_.ring, Rational(1))));
    int have = sigma_powers_.rbegin()->first;
    while (have < k) {
        Series next = sigma_powers_.at(have) * model_.sigma;
        ++have;
        sigma_powers_.emplace(have, std::move(next));
    }
    return sigma_powers_.at(k);
}

const Series& Compiler::atom_numerator(const WpAtom& a) {
    std::string key = a.str();
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = atom_cache_.find(key);
        if (it != atom_cache_.end()) return it->second;
    }
    Series num;
    if (a.kind == WpAtom::Kind::Wp) {
        // -d_{i1}..d_{im} log sigma, cleared over sigma^m:
        // N_1 = sigma_{i1}; N_{k+1} = d(N_k) sigma - k N_k sigma_{j}; result -N_m.
        const std::vector<int>& idx = a.indices;
        Series n = model_.partial({idx[0]});
        for (size_t k = 1; k < idx.size(); ++k) {
            int sym = model_.ring.require(u_name(idx[k]));
            const Series& sig = model_.sigma;
            const Series& sig_j = model_.partial({idx[k]});
            n = n.diff(sym) * sig - sig_j.scaled(Rational(long(k))) * n;
        }
        num = -n;
    } else if (a.kind == WpAtom::Kind::Q) {
        // Hirota product at coinciding arguments over sigma^2:
        // -(1/2) sum_{S subset} (-1)^{m-|S|} sigma_S sigma_{S^c}.
        const std::vector<int>& idx = a.indices;
        const size_t m = idx.size();
        Series acc(GradedPoly(model_.ring), std::numeric_limits<int>::max() / 8);
        for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
            std::vector<int> left, right;
            for (size_t b = 0; b < m; ++b)
                (mask >> b & 1u) ? left.push_back(idx[b]) : right.push_back(idx[b]);
            Series prod = model_.partial(left) * model_.partial(right);
            bool negate = (m - size_t(__builtin_popcountll(mask))) % 2 == 1;
            acc = negate ? acc - prod : acc + prod;
        }
        num = acc.scaled(Rational(-1, 2));
    } else {
        num = model_.partial(a.indices);
    }
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, _] = atom_cache_.emplace(std::move(key), std::move(num));
    return it->second;
}

const Series& Compiler::product_numerator(const std::vector<WpAtom>& atoms) {
    std::string key;
    for (const WpAtom& a : atoms) key += a.str() + "|";
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = product_cache_.find(key);
        if (it != product_cache_.end()) return it->second;
    }
    Series v;
    if (atoms.empty()) {
        v = Series::exact(GradedPoly::constant(model_.ring, Rational(1)));
    } else if (atoms.size() == 1) {
        v = atom_numerator(atoms[0]);
    } else {
        std::vector<WpAtom> head(atoms.begin(), atoms.end() - 1);
        v = product_numerator(head) * atom_numerator(atoms.back());
    }
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, _] = product_cache_.emplace(std::move(key), std::move(v));
    return it->second;
}

SigmaRationalForm Compiler::compile(const WpExpr& e, int extra_clear) {
    int dmax = extra_clear;
    for (const WpTerm& t : e.terms()) dmax = std::max(dmax, t.total_denom() + extra_clear);

    // Group terms by their sigma-lift power so each lift is one multiplication.
    std::map<int, Series> by_lift;
    for (const WpTerm& t : e.terms()) {
        int lift = dmax - t.total_denom();
        Series piece = product_numerator(t.atoms).scaled(t.coeff);
        if (exp_degree(t.lam) > 0) {
            ExpVec lam = zero_exps();
            for (size_t j = 0; j < t.lam.size(); ++j) {
                if (!t.lam[j]) continue;
                lam[size_t(model_.ring.require(lambda_name(int(j))))] = t.lam[j];
            }
            piece = piece.mul_poly(GradedPoly::monomial(model_.ring, lam, Rational(1)));
        }
        auto it = by_lift.find(lift);
        if (it == by_lift.end()) by_lift.emplace(lift, std::move(piece));
        else it->second = it->second + piece;
    }
    Series acc(GradedPoly(model_.ring), std::numeric_limits<int>::max() / 8);
    for (auto& [lift, piece] : by_lift) acc = acc + piece * sigma_power(lift);
    return SigmaRationalForm{std::move(acc), dmax};
}

Series Compiler::specialize_lambda(const Series& s, int lambda_index, const Rational& value) const {
    int idx = model_.ring.index_of(lambda_name(lambda_index));
    if (idx < 0) return s;
    return Series(s.poly().with_value(idx, value), s.cap());
}

SigmaRationalForm compile(const WpExpr& e, Compiler& compiler, int extra_clear) {
    return compiler.compile(e, extra_clear);
}

SigmaRationalForm q_function(const std::vector<int>& indices, Compiler& compiler) {
    return compiler.compile(WpExpr::atom(WpAtom::q(indices)));
}

WpExpr named_combination(NamedCombination name, const std::vector<int>& idx) {
    switch (name) {
        case NamedCombination::Xi:
            if (!idx.empty()) throw std::invalid_argument("Xi takes no indices");
            return WpExpr::wp({1, 1}) * WpExpr::wp({2, 2}) - WpExpr::wp({1, 2}) * WpExpr::wp({1, 2});
        case NamedCombination::Delta:
            if (!idx.empty()) throw std::invalid_argument("Delta takes no indices");
            return WpExpr::wp({1, 1}) * WpExpr::wp({3, 3}) - WpExpr::wp({1, 2}) * WpExpr::wp({2, 3}) -
                   WpExpr::wp({1, 3}) * WpExpr::wp({1, 3}) + WpExpr::wp({1, 3}) * WpExpr::wp({2, 2});
        case NamedCombination::B: {
            if (idx.size() != 5) throw std::invalid_argument("B takes five indices ijklm");
            int i = idx[0], j = idx[1], k = idx[2], l = idx[3], m = idx[4];
            auto P2 = [](int a, int b) { return WpExpr::wp({a, b}); };
            auto P3 = [](int a, int b, int c) { return WpExpr::wp({a, b, c}); };
            WpExpr e = P2(i, j) * P3(k, l, m);
            WpExpr inner = P2(j, k) * P3(i, l, m) + P2(j, l) * P3(i, k, m) + P2(j, m) * P3(i, k, l) -
                           (P2(k, l) * P3(i, j, m)).scaled(Rational(2)) -
                           (P2(k, m) * P3(i, j, l)).scaled(Rational(2)) -
                           (P2(l, m) * P3(i, j, k)).scaled(Rational(2));
            return e + inner.scaled(Rational(1, 3));
        }
    }
    throw std::invalid_argument("unknown combination");
}

}  // namespace kleinian
