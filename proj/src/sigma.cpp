#include "kleinian/sigma.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "kleinian/linear_solver.hpp"
#include "kleinian/poly_json.hpp"
#include "kleinian/schur.hpp"
#include "kleinian/symfunc.hpp"

namespace kleinian {

int default_cap(int n, int s) {
    if (n == 2 && s == 3) return 12;
    if (n == 2 && s == 5) return 20;
    if (n == 2 && s == 7) return 16;
    if (n == 3 && s == 4) return 14;
    return sigma_weight(n, s) + 8;
}

namespace {

using Parts = std::array<uint8_t, kMaxParts>;

void enumerate_weighted(const std::vector<std::pair<int, int>>& sym_weights, size_t pos,
                        int remaining, ExpVec& cur,
                        const std::function<void(const ExpVec&, int)>& emit, int used) {
    if (pos == sym_weights.size()) {
        emit(cur, used);
        return;
    }
    auto [idx, w] = sym_weights[pos];
    for (int e = 0; e * w <= remaining; ++e) {
        cur[size_t(idx)] = uint8_t(e);
        enumerate_weighted(sym_weights, pos + 1, remaining - e * w, cur, emit, used + e * w);
    }
    cur[size_t(idx)] = 0;
}

std::vector<int> u_indices(const Ring& ring) {
    std::vector<int> out;
    for (size_t i = 0; i < ring.size(); ++i)
        if (ring.at(i).capped) out.push_back(int(i));
    return out;
}
std::vector<int> lam_indices(const Ring& ring) {
    std::vector<int> out;
    for (size_t i = 0; i < ring.size(); ++i)
        if (!ring.at(i).capped) out.push_back(int(i));
    return out;
}

std::string monomial_name(const Ring& ring, const ExpVec& e) {
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < ring.size(); ++i) {
        if (!e[i]) continue;
        if (any) os << "*";
        any = true;
        os << ring.at(i).name;
        if (e[i] > 1) os << "^" << int(e[i]);
    }
    return any ? os.str() : "1";
}

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Map exponents between rings by symbol name.
ExpVec translate_exps(const Ring& from, const ExpVec& e, const Ring& to) {
    ExpVec out = zero_exps();
    for (size_t i = 0; i < from.size(); ++i) {
        if (!e[i]) continue;
        out[size_t(to.require(from.at(i).name))] = e[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Strata vanishing rows via symmetric functions of the (g-1)-point sum.

struct VanishingEngine {
    int npoints = 0;
    Ring lam_only;
    std::unique_ptr<PowerSumComposer> composer;
    std::vector<int> us;

    void build(const CurveSpec& c, const Ring& curve_r, int cap, int depth) {
        npoints = c.genus() - 1;
        std::vector<Symbol> lsyms;
        for (int i : lam_indices(curve_r)) lsyms.push_back(curve_r.at(size_t(i)));
        lam_only = Ring(lsyms);
        us = u_indices(curve_r);
        if (npoints == 0) return;

        AbelSeries a = abel_series(c, cap);
        const Ring& aring = a.u[0].ring();
        int xi = aring.require("xi1");
        std::vector<PowerSumSeries> bases;
        for (const Series& ui : a.u) {
            PowerSumSeries ps;
            for (const Term& t : ui.poly().terms()) {
                PowerSumSeries::Item item;
                item.m = t.e[size_t(xi)];
                item.c = t.c;
                item.lam = zero_exps();
                for (size_t k = 0; k < aring.size(); ++k) {
                    if (int(k) == xi || !t.e[k]) continue;
                    item.lam[size_t(lam_only.require(aring.at(k).name))] = t.e[k];
                }
                ps.items.push_back(std::move(item));
            }
            bases.push_back(std::move(ps));
        }
        composer = std::make_unique<PowerSumComposer>(npoints, lam_only, std::move(bases), cap, depth);
    }

    std::vector<int> u_exps_of(const Ring& curve_r, const ExpVec& e) const {
        std::vector<int> ue(us.size(), 0);
        for (size_t q = 0; q < us.size(); ++q) ue[q] = e[size_t(us[q])];
        (void)curve_r;
        return ue;
    }

    // Composition of the full solved part, grouped by lambda monomial.
    std::map<ExpVec, std::map<Parts, Rational>> compose_known(const GradedPoly& sigma_known,
                                                              const Ring& curve_r) {
        std::map<ExpVec, std::map<Parts, Rational>> known;
        if (npoints == 0) return known;
        for (const Term& t : sigma_known.terms()) {
            std::vector<int> ue = u_exps_of(curve_r, t.e);
            ExpVec gamma = zero_exps();
            for (size_t i = 0; i < curve_r.size(); ++i)
                if (t.e[i] && !curve_r.at(i).capped)
                    gamma[size_t(lam_only.require(curve_r.at(i).name))] = t.e[i];
            const SymPoly& comp = composer->monomial(ue);
            for (const auto& [key, v] : comp.terms()) {
                ExpVec lam = key.lam;
                for (size_t i = 0; i < lam.size(); ++i) {
                    int x = int(lam[i]) + int(gamma[i]);
                    if (x > 250) throw std::overflow_error("sigma: lambda exponent overflow");
                    lam[i] = uint8_t(x);
                }
                auto& slot = known[lam][key.parts];
                slot += v * t.c;
                if (slot.is_zero()) known[lam].erase(key.parts);
            }
        }
        return known;
    }
};

// ---------------------------------------------------------------------------
// Algebraic two-point rows on the multi-point embedding (hyperelliptic
// n = 2). Cleared and regularized form of the classical pairing
//   sum_{ij} wp_ij(u) x1^{i-1} x2^{j-1} = t (F(x1,x2) - 2 y1 y2) / delta^2
// with F the pair-grouped polar F(x,z) = sum_k (xz)^k (2 f_{2k} + f_{2k+1}(x+z)),
// which fixes the quadratic-exponential gauge of the expansion.

struct PairingEngine {
    int g = 0;
    Ring ring;  // (xi_1..xi_g | lam)
    std::vector<Series> W;
    std::vector<Series> W0;
    Series D2;
    std::vector<std::vector<Series>> XX;
    int arity = 0;  // number of points; max(g, 2)
    Series YYFF;    // regularized F - 2 y1 y2
    Series YYFF0;   // its lambda-free part
    Rational t;
    int cap = 0;
    std::vector<int> us;  // u indices in the curve ring
    std::vector<int> ls_pairing;

    // SW and partial compositions with W0
    Series sw0;
    std::vector<Series> swi0;
    std::vector<std::vector<Series>> swij0;
    Series sw0_sq;

    std::map<ExpVec, Series> mono_memo;  // u-exponent pattern -> compose with W0

    void build(const CurveSpec& c, const Ring& curve_r, int cap_);
    const Series& compose0(const ExpVec& ue);
    Series compose_full(const GradedPoly& p, int pcap) const;
    void calibrate(const GradedPoly& sw);
    Series candidate_column(const ExpVec& cand);
    // Residual with current solved data; unknowns of the running level at zero.
    // Returns the per-lambda-monomial pieces and the reliable xi-weight bound.
    std::pair<std::map<ExpVec, GradedPoly>, int> known_residual(const GradedPoly& sigma_known,
                                                                int pcap);
};

void PairingEngine::build(const CurveSpec& c, const Ring& curve_r, int cap_) {
    g = c.genus();
    cap = cap_;
    arity = std::max(g, 2);
    us = u_indices(curve_r);
    StrataEmbedding emb = multi_point_sum(c, arity, cap);
    ring = emb.ring;
    W = emb.u;
    ls_pairing = lam_indices(ring);
    // The lambda-free part of each Abel sum is the exact monomial sum_j xi_j^w / w.
    for (const Series& s : W) W0.push_back(Series::exact(s.poly().without_symbols(ls_pairing)));

    GradedPoly xi1 = GradedPoly::variable(ring, "xi1");
    GradedPoly xi2 = GradedPoly::variable(ring, "xi2");
    GradedPoly d = xi2.pow(2) - xi1.pow(2);
    D2 = Series::exact(GradedPoly::mul(d, d));

    XX.assign(size_t(g), std::vector<Series>(size_t(g)));
    for (int i = 1; i <= g; ++i)
        for (int j = 1; j <= g; ++j) {
            ExpVec e = zero_exps();
            e[size_t(ring.require("xi1"))] = uint8_t(2 * g - 2 - 2 * (i - 1));
            e[size_t(ring.require("xi2"))] = uint8_t(2 * g - 2 - 2 * (j - 1));
            XX[size_t(i - 1)][size_t(j - 1)] =
                Series::exact(GradedPoly::monomial(ring, e, Rational(1)));
        }

    const int reg = 2 * (2 * g + 2);
    PuiseuxPoint pp = puiseux_y(c, cap + reg);
    const Ring& pring = pp.y_unit.ring();
    int pxi = pring.require("xi1");
    auto subst_xi = [&](const std::string& target_xi) {
        std::map<int, Series> sub;
        sub.emplace(pxi, Series::exact(GradedPoly::variable(ring, target_xi)));
        return compose(pp.y_unit, ring, sub);
    };
    Series YY = Series::exact(GradedPoly::mul(xi1, xi2)) * subst_xi("xi1") * subst_xi("xi2");

    // Pair-grouped polar of the monic right-hand side, regularized:
    // FF = (xi1 xi2)^{2g+2} F(x1, x2), coefficients f_{2g+1} = 1, f_j = lam_j.
    GradedPoly FF(ring);
    const int reg_e = 2 * g + 2;
    auto coeff_poly = [&](int j) {
        if (j == 2 * g + 1) return GradedPoly::constant(ring, Rational(1));
        if (j > 2 * g + 1) return GradedPoly(ring);
        return GradedPoly::variable(ring, lambda_name(j));
    };
    for (int k = 0; k <= g; ++k) {
        // (x z)^k 2 f_{2k}
        {
            GradedPoly f2k = coeff_poly(2 * k);
            if (!f2k.is_zero()) {
                ExpVec e = zero_exps();
                e[size_t(ring.require("xi1"))] = uint8_t(reg_e - 2 * k);
                e[size_t(ring.require("xi2"))] = uint8_t(reg_e - 2 * k);
                FF = FF + GradedPoly::mul(f2k, GradedPoly::monomial(ring, e, Rational(2)));
            }
        }
        // (x z)^k (x + z) f_{2k+1}
        {
            GradedPoly f2k1 = coeff_poly(2 * k + 1);
            if (!f2k1.is_zero()) {
                ExpVec e1 = zero_exps(), e2 = zero_exps();
                e1[size_t(ring.require("xi1"))] = uint8_t(reg_e - 2 * k - 2);
                e1[size_t(ring.require("xi2"))] = uint8_t(reg_e - 2 * k);
                e2[size_t(ring.require("xi1"))] = uint8_t(reg_e - 2 * k);
                e2[size_t(ring.require("xi2"))] = uint8_t(reg_e - 2 * k - 2);
                FF = FF + GradedPoly::mul(f2k1, GradedPoly::monomial(ring, e1, Rational(1)) +
                                                    GradedPoly::monomial(ring, e2, Rational(1)));
            }
        }
    }
    YYFF = Series::exact(FF) - YY.scaled(Rational(2));
    YYFF0 = Series(YYFF.poly().without_symbols(ls_pairing), YYFF.cap());
}

const Series& PairingEngine::compose0(const ExpVec& ue) {
    auto it = mono_memo.find(ue);
    if (it != mono_memo.end()) return it->second;
    int last = -1;
    for (size_t q = 0; q < us.size(); ++q)
        if (ue[size_t(us[q])] > 0) last = int(q);
    Series result;
    if (last < 0) {
        result = Series::exact(GradedPoly::constant(ring, Rational(1)));
    } else {
        ExpVec prev = ue;
        prev[size_t(us[size_t(last)])] -= 1;
        result = compose0(prev) * W0[size_t(last)];
    }
    auto [jt, _] = mono_memo.emplace(ue, std::move(result));
    return jt->second;
}

Series PairingEngine::compose_full(const GradedPoly& p, int pcap) const {
    std::map<int, Series> sub;
    for (size_t q = 0; q < us.size(); ++q) sub.emplace(us[q], W[q]);
    return compose(p, pcap, ring, sub);
}

void PairingEngine::calibrate(const GradedPoly& sw) {
    const int big = std::numeric_limits<int>::max() / 8;
    auto compose_exact = [&](const GradedPoly& p) {
        std::map<int, Series> sub;
        for (size_t q = 0; q < us.size(); ++q) sub.emplace(us[q], W0[q]);
        return compose(p, big, ring, sub);
    };
    sw0 = compose_exact(sw);
    swi0.clear();
    swij0.assign(size_t(g), std::vector<Series>(size_t(g)));
    for (int i = 0; i < g; ++i) swi0.push_back(compose_exact(sw.diff(us[size_t(i)])));
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) {
            Series pij = compose_exact(sw.diff(us[size_t(i)]).diff(us[size_t(j)]));
            swij0[size_t(i)][size_t(j)] = pij;
            swij0[size_t(j)][size_t(i)] = std::move(pij);
        }
    sw0_sq = sw0 * sw0;

    Series lhs(GradedPoly(ring), big);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            Series P = swi0[size_t(i)] * swi0[size_t(j)] - sw0 * swij0[size_t(i)][size_t(j)];
            lhs = lhs + P * XX[size_t(i)][size_t(j)] * D2;
        }
    Series rhs = sw0_sq * YYFF0;
    if (rhs.is_zero() || lhs.is_zero())
        throw std::logic_error("pairing calibration: degenerate lambda-free data");
    const Term& probe = rhs.poly().terms().front();
    Rational l = lhs.poly().coeff(probe.e);
    t = l / probe.c;
    if (!(lhs - rhs.scaled(t)).is_zero())
        throw std::logic_error("pairing calibration: lambda-free identity failed");
}

Series PairingEngine::candidate_column(const ExpVec& cand) {
    const int big = std::numeric_limits<int>::max() / 8;
    Series col(GradedPoly(ring), big);
    const Series mono0 = compose0(cand);
    auto d1 = [&](int a) {
        int ua = us[size_t(a)];
        int e = cand[size_t(ua)];
        if (e == 0) return Series(GradedPoly(ring), big);
        ExpVec prev = cand;
        prev[size_t(ua)] -= 1;
        return compose0(prev).scaled(Rational(e));
    };
    auto d2 = [&](int a, int b) {
        int ua = us[size_t(a)], ub = us[size_t(b)];
        ExpVec prev = cand;
        int ea = prev[size_t(ua)];
        if (ea == 0) return Series(GradedPoly(ring), big);
        prev[size_t(ua)] -= 1;
        int eb = prev[size_t(ub)];
        if (eb == 0) return Series(GradedPoly(ring), big);
        prev[size_t(ub)] -= 1;
        return compose0(prev).scaled(Rational(ea) * Rational(eb));
    };
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            Series inner = d1(i) * swi0[size_t(j)] + swi0[size_t(i)] * d1(j) -
                           mono0 * swij0[size_t(i)][size_t(j)] - sw0 * d2(i, j);
            col = col + inner * XX[size_t(i)][size_t(j)] * D2;
        }
    col = col - (sw0 * mono0 * YYFF0).scaled(t * Rational(2));
    return col;
}

std::pair<std::map<ExpVec, GradedPoly>, int> PairingEngine::known_residual(
    const GradedPoly& sigma_known, int pcap) {
    Series sig = compose_full(sigma_known, pcap);
    std::vector<Series> sigi(static_cast<size_t>(g), Series{});
    std::vector<std::vector<Series>> sigij(
        static_cast<size_t>(g), std::vector<Series>(static_cast<size_t>(g), Series{}));
    for (int i = 0; i < g; ++i) sigi[size_t(i)] = compose_full(sigma_known.diff(us[size_t(i)]), pcap);
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) {
            Series pij = compose_full(sigma_known.diff(us[size_t(i)]).diff(us[size_t(j)]), pcap);
            sigij[size_t(i)][size_t(j)] = pij;
            sigij[size_t(j)][size_t(i)] = std::move(pij);
        }
    Series T(GradedPoly(ring), std::numeric_limits<int>::max() / 8);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            Series P = sigi[size_t(i)] * sigi[size_t(j)] - sig * sigij[size_t(i)][size_t(j)];
            T = T + P * XX[size_t(i)][size_t(j)] * D2;
        }
    Series sig2 = sig * sig;
    T = T - (sig2 * YYFF).scaled(t);
    return {T.poly().grouped_by(ls_pairing), T.cap()};
}

}  // namespace

SigmaAnsatz sigma_ansatz(const CurveSpec& c, int cap) {
    c.validate();
    if (c.cls != CurveClass::Cyclic)
        throw std::invalid_argument("sigma_ansatz: only cyclic curves are supported");
    SigmaAnsatz a;
    a.ring = curve_ring(c);
    a.wt_sigma = sigma_weight(c.n, c.s);
    a.parity = a.wt_sigma % 2;
    if (cap < a.wt_sigma) throw std::invalid_argument("sigma_ansatz: cap below sigma weight");

    std::vector<std::pair<int, int>> uw, lw;
    for (int i : u_indices(a.ring)) uw.push_back({i, a.ring.at(size_t(i)).weight});
    for (int i : lam_indices(a.ring)) lw.push_back({i, -a.ring.at(size_t(i)).weight});

    const int depth = cap - a.wt_sigma;
    ExpVec cur = zero_exps();
    enumerate_weighted(lw, 0, depth, cur,
                       [&](const ExpVec& e, int used) {
                           if (exp_degree(e) == 0 && used == 0) {
                               a.lambda_blocks[0];  // ensure level 0 exists
                               a.lambda_blocks[0].push_back(e);
                           } else if (exp_degree(e) > 0) {
                               a.lambda_blocks[used].push_back(e);
                           }
                       },
                       0);
    for (auto& [level, blocks] : a.lambda_blocks) {
        (void)level;
        std::sort(blocks.begin(), blocks.end(), exp_less);
    }

    for (const auto& [level, blocks] : a.lambda_blocks) {
        (void)blocks;
        const int k = a.wt_sigma + level;
        std::vector<ExpVec> mons;
        ExpVec cur2 = zero_exps();
        enumerate_weighted(uw, 0, k, cur2,
                           [&](const ExpVec& e, int used) {
                               if (used != k) return;
                               if (exp_degree(e) % 2 != a.parity) return;
                               mons.push_back(e);
                           },
                           0);
        std::sort(mons.begin(), mons.end(), exp_less);
        a.u_candidates[level] = std::move(mons);
    }
    return a;
}

SigmaModel sigma_expand(const CurveSpec& c, int cap, SigmaOptions opts) {
    c.validate();
    if (c.cls != CurveClass::Cyclic)
        throw std::invalid_argument("sigma_expand: only cyclic curves are supported");
    if (!c.values.empty())
        throw std::invalid_argument("sigma_expand: curve parameters must be symbolic");
    if (!opts.explicit_allow) opts.allow_unpinned = !c.is_hyperelliptic();
    const bool use_pairing = opts.use_algebraic_completion && c.is_hyperelliptic();

    SigmaModel m;
    m.curve = c;
    m.wt = weight_table(c);
    m.cap = cap;
    m.ring = curve_ring(c);
    const int g = c.genus();
    const int wts = m.wt.wt_sigma;
    const int depth = cap - wts;

    SigmaAnsatz ansatz = sigma_ansatz(c, cap);
    std::vector<int> us = u_indices(m.ring);
    std::vector<int> ls = lam_indices(m.ring);

    GradedPoly sw_oracle = schur_weierstrass(c.n, c.s, m.ring);

    VanishingEngine van;
    van.build(c, m.ring, cap, depth);
    PairingEngine pair;
    if (use_pairing) pair.build(c, m.ring, cap);

    SolverLog log;
    log.algebraic_rows_used = use_pairing;
    GradedPoly sigma_known(m.ring);

    // ---- level 0: anchor to the canonical Schur polynomial -----------------
    {
        const auto& cands = ansatz.u_candidates.at(0);
        LevelLog ll;
        ll.level = 0;
        ll.u_weight = wts;
        ll.candidates = int(cands.size());
        ll.lambda_blocks = 1;
        if (van.npoints > 0) {
            LinearSystem sys;
            for (const ExpVec& cand : cands) sys.unknowns.push_back(monomial_name(m.ring, cand));
            std::map<Parts, std::vector<std::pair<int, Rational>>> rows;
            for (size_t a = 0; a < cands.size(); ++a) {
                const SymPoly& comp = van.composer->monomial(van.u_exps_of(m.ring, cands[a]));
                for (const auto& [key, v] : comp.terms())
                    if (exp_degree(key.lam) == 0) rows[key.parts].push_back({int(a), v});
            }
            for (auto& [parts, row] : rows) {
                (void)parts;
                sys.add_row(std::move(row), Rational(0));
            }
            SolveResult res = solve_exact(sys);
            ll.vanishing_rank = res.rank;
            ll.combined_rank = res.rank;
            if (res.kind == SolveResult::Kind::Inconsistent || res.nullspace.size() != 1)
                throw std::logic_error("sigma_expand: level 0 nullspace is not one-dimensional");
            // Proportionality to the Jacobi-Trudi polynomial, then adopt it.
            GradedPoly from_solver(m.ring);
            for (size_t a = 0; a < cands.size(); ++a)
                from_solver =
                    from_solver + GradedPoly::monomial(m.ring, cands[a], res.nullspace[0][a]);
            // cross-multiply leading coefficients
            const Term& lead = sw_oracle.terms().front();
            Rational scale_num = lead.c, scale_den = from_solver.coeff(lead.e);
            if (scale_den.is_zero() ||
                !(from_solver.scaled(scale_num / scale_den) == sw_oracle))
                throw std::logic_error(
                    "sigma_expand: vanishing solution disagrees with the Schur polynomial");
        }
        sigma_known = sw_oracle;
        log.levels.push_back(ll);
    }

    if (use_pairing) {
        pair.calibrate(sw_oracle);
        log.pairing_scale = pair.t;
    }

    // ---- higher levels ------------------------------------------------------
    for (const auto& [level, blocks] : ansatz.lambda_blocks) {
        if (level == 0) continue;
        const int k = wts + level;
        const auto& cands = ansatz.u_candidates.at(level);
        LevelLog ll;
        ll.level = level;
        ll.u_weight = k;
        ll.candidates = int(cands.size());
        ll.lambda_blocks = int(blocks.size());
        if (cands.empty()) {
            log.levels.push_back(ll);
            continue;
        }

        // vanishing columns (lambda-free) and known residual
        std::vector<std::map<Parts, Rational>> van_cols(cands.size());
        std::map<ExpVec, std::map<Parts, Rational>> van_known;
        if (van.npoints > 0) {
            for (size_t a = 0; a < cands.size(); ++a) {
                const SymPoly& comp = van.composer->monomial(van.u_exps_of(m.ring, cands[a]));
                for (const auto& [key, v] : comp.terms())
                    if (exp_degree(key.lam) == 0) van_cols[a][key.parts] = v;
            }
            van_known = van.compose_known(sigma_known, m.ring);
            // rank of the vanishing block alone, for the log
            std::map<Parts, size_t> row_index;
            for (const auto& col : van_cols)
                for (const auto& [parts, v] : col) {
                    (void)v;
                    row_index.emplace(parts, row_index.size());
                }
            std::vector<std::vector<Rational>> mat(row_index.size(),
                                                   std::vector<Rational>(cands.size(), Rational(0)));
            for (size_t a = 0; a < cands.size(); ++a)
                for (const auto& [parts, v] : van_cols[a]) mat[row_index[parts]][a] = v;
            ll.vanishing_rank = matrix_rank(mat);
        }

        // pairing columns and known residual
        std::vector<Series> pair_cols;
        std::map<ExpVec, GradedPoly> pair_known;
        int pair_cap = std::numeric_limits<int>::max() / 8;
        if (use_pairing) {
            for (const ExpVec& cand : cands) pair_cols.push_back(pair.candidate_column(cand));
            auto [known, kcap] = pair.known_residual(sigma_known, cap);
            pair_known = std::move(known);
            pair_cap = kcap;
            for (const Series& s : pair_cols) pair_cap = std::min(pair_cap, s.cap());
        }

        int min_rank = -1;
        for (const ExpVec& beta : blocks) {
            LinearSystem sys;
            for (const ExpVec& cand : cands) sys.unknowns.push_back(monomial_name(m.ring, cand));

            if (van.npoints > 0) {
                ExpVec beta_l = translate_exps(m.ring, beta, van.lam_only);
                std::map<Parts, std::vector<std::pair<int, Rational>>> rows;
                for (size_t a = 0; a < cands.size(); ++a)
                    for (const auto& [parts, v] : van_cols[a]) rows[parts].push_back({int(a), v});
                auto kn = van_known.find(beta_l);
                std::map<Parts, Rational> empty;
                const auto& rhs_map = kn == van_known.end() ? empty : kn->second;
                for (const auto& [parts, v] : rhs_map) {
                    (void)v;
                    rows[parts];  // row may be rhs-only
                }
                for (auto& [parts, row] : rows) {
                    Rational b(0);
                    auto it = rhs_map.find(parts);
                    if (it != rhs_map.end()) b = -it->second;
                    sys.add_row(std::move(row), b);
                }
            }

            if (use_pairing) {
                ExpVec beta_p = translate_exps(m.ring, beta, pair.ring);
                // Rows only within the certified xi-weight range of every column
                // and of the known residual.
                auto in_range = [&](const ExpVec& e) {
                    GradedPoly probe(pair.ring);
                    return probe.term_capweight(e) <= pair_cap;
                };
                std::map<ExpVec, std::vector<std::pair<int, Rational>>> rows;
                for (size_t a = 0; a < pair_cols.size(); ++a)
                    for (const Term& t : pair_cols[a].poly().terms())
                        if (in_range(t.e)) rows[t.e].push_back({int(a), t.c});
                auto kn = pair_known.find(beta_p);
                if (kn != pair_known.end())
                    for (const Term& t : kn->second.terms())
                        if (in_range(t.e)) rows[t.e];
                for (auto& [e, row] : rows) {
                    Rational b(0);
                    if (kn != pair_known.end()) b = -kn->second.coeff(e);
                    sys.add_row(std::move(row), b);
                }
            }

            SolveResult res = solve_exact(sys);
            if (res.kind == SolveResult::Kind::Inconsistent)
                throw std::logic_error("sigma_expand: inconsistent system at level " +
                                       std::to_string(level));
            if (min_rank < 0 || res.rank < min_rank) min_rank = res.rank;
            if (res.kind == SolveResult::Kind::Family) {
                if (!opts.allow_unpinned) {
                    std::ostringstream os;
                    os << "sigma_expand: underdetermined at level " << level << " block "
                       << monomial_name(m.ring, beta) << "; free:";
                    for (int fc : res.free_columns) os << " " << sys.unknowns[size_t(fc)];
                    throw std::logic_error(os.str());
                }
                for (int fc : res.free_columns)
                    ll.unpinned.push_back(sys.unknowns[size_t(fc)] + "*" +
                                          monomial_name(m.ring, beta));
            }
            // apply solution
            for (size_t a = 0; a < cands.size(); ++a) {
                if (res.particular[a].is_zero()) continue;
                ExpVec e = cands[a];
                for (size_t i = 0; i < e.size(); ++i) {
                    int x = int(e[i]) + int(beta[i]);
                    e[i] = uint8_t(x);
                }
                sigma_known = sigma_known + GradedPoly::monomial(m.ring, e, res.particular[a]);
            }
        }
        ll.combined_rank = min_rank < 0 ? 0 : min_rank;
        log.levels.push_back(ll);
    }

    m.sigma = Series(sigma_known, cap);
    m.sw = sw_oracle;
    m.log = log;
    return m;
}

const Series& SigmaModel::partial(const std::vector<int>& idx) const {
    std::vector<int> key = idx;
    std::sort(key.begin(), key.end());
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
    }
    std::shared_ptr<const Series> value;
    if (key.empty()) {
        value = std::make_shared<Series>(sigma);
    } else {
        std::vector<int> parent(key.begin(), key.end() - 1);
        const Series& base = partial(parent);
        int u_idx = ring.require(u_name(key.back()));
        value = std::make_shared<Series>(base.diff(u_idx));
    }
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, _] = cache_.emplace(std::move(key), std::move(value));
    return *it->second;
}

bool strata_vanishing_holds(const SigmaModel& m) {
    const int k = m.genus() - 1;
    if (k == 0) return m.sigma.poly().constant_term().is_zero();
    if (k <= 2) {
        StrataEmbedding emb = strata_embedding(m.curve, k, m.cap);
        std::map<int, Series> sub;
        for (int i = 0; i < m.genus(); ++i)
            sub.emplace(m.ring.require(u_name(i + 1)), emb.u[size_t(i)]);
        Series composed = compose(m.sigma, emb.ring, sub);
        return composed.is_zero();
    }
    // larger genus: symmetric-function route
    VanishingEngine van;
    van.build(m.curve, m.ring, m.cap, m.cap - m.wt.wt_sigma);
    auto known = van.compose_known(m.sigma.poly(), m.ring);
    for (const auto& [lam, rows] : known) {
        (void)lam;
        if (!rows.empty()) return false;
    }
    return true;
}

bool order_one_vanishing(const SigmaModel& m) {
    const int k = m.genus() - 1;
    if (k == 0) return !m.sigma.poly().diff(m.ring.require(u_name(1))).is_zero();
    GradedPoly dg = m.sigma.poly().diff(m.ring.require(u_name(m.genus())));
    VanishingEngine van;
    van.build(m.curve, m.ring, m.cap, m.cap - m.wt.wt_sigma);
    auto known = van.compose_known(dg, m.ring);
    for (const auto& [lam, rows] : known) {
        (void)lam;
        if (!rows.empty()) return true;
    }
    return false;
}

nlohmann::json SigmaModel::to_json() const {
    nlohmann::json j;
    j["n"] = curve.n;
    j["s"] = curve.s;
    j["cap"] = cap;
    j["wt_sigma"] = wt.wt_sigma;
    j["sigma"] = series_to_json(sigma);
    j["sw"] = poly_to_json(sw);
    nlohmann::json lv = nlohmann::json::array();
    for (const LevelLog& l : log.levels) {
        lv.push_back({{"level", l.level},
                      {"u_weight", l.u_weight},
                      {"candidates", l.candidates},
                      {"lambda_blocks", l.lambda_blocks},
                      {"unpinned", l.unpinned}});
    }
    j["solver_log"] = {{"levels", lv},
                       {"algebraic_rows_used", log.algebraic_rows_used},
                       {"pairing_scale", log.pairing_scale.str()},
                       {"notes", log.notes}};
    return j;
}

SigmaModel SigmaModel::from_json(const nlohmann::json& j) {
    SigmaModel m;
    m.curve.n = j.at("n").get<int>();
    m.curve.s = j.at("s").get<int>();
    m.curve.cls = CurveClass::Cyclic;
    m.wt = weight_table(m.curve);
    m.cap = j.at("cap").get<int>();
    m.sigma = series_from_json(j.at("sigma"));
    m.ring = m.sigma.ring();
    m.sw = poly_from_json(j.at("sw"));
    if (j.contains("solver_log")) {
        const auto& sl = j.at("solver_log");
        m.log.algebraic_rows_used = sl.value("algebraic_rows_used", false);
        if (sl.contains("pairing_scale"))
            m.log.pairing_scale = Rational::from_string(sl.at("pairing_scale").get<std::string>());
        if (sl.contains("levels"))
            for (const auto& l : sl.at("levels")) {
                LevelLog ll;
                ll.level = l.value("level", 0);
                ll.u_weight = l.value("u_weight", 0);
                ll.candidates = l.value("candidates", 0);
                ll.lambda_blocks = l.value("lambda_blocks", 0);
                if (l.contains("unpinned"))
                    ll.unpinned = l.at("unpinned").get<std::vector<std::string>>();
                m.log.levels.push_back(std::move(ll));
            }
    }
    return m;
}

}  // namespace kleinian
