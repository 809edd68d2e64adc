#include "kleinian/gamma_basis.hpp"

#include <functional>

#include "kleinian/linear_solver.hpp"

namespace kleinian {

namespace {

// all ascending index multisets of the given size over 1..g
void index_multisets(int g, int size, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int lo) {
        if (int(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int i = lo; i <= g; ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(1);
}

void add_element(GammaBasis& b, WpExpr e, std::string label) {
    b.elements.push_back(std::move(e));
    b.labels.push_back(std::move(label));
}

}  // namespace

GammaBasis gamma_basis(Compiler& compiler, int m) {
    const SigmaModel& model = compiler.model();
    const int g = model.genus();
    if (m < 1) throw std::invalid_argument("gamma_basis: m >= 1");
    if (g > 3) throw std::invalid_argument("gamma_basis: genus up to 3");
    if (g == 3 && m > 2)
        throw std::invalid_argument("gamma_basis: genus 3 supports m <= 2 (order-two case)");
    if (m > 4 && g == 2) throw std::invalid_argument("gamma_basis: m <= 4 by default");

    GammaBasis b;
    b.m = m;
    add_element(b, WpExpr::constant(Rational(1)), "1");

    if (g == 1) {
        // 1, wp, wp', wp'', ... : m elements in total
        for (int k = 2; k <= m; ++k) {
            std::vector<int> idx(size_t(k), 1);
            add_element(b, WpExpr::wp(idx), "wp_" + std::string(size_t(k), '1'));
        }
    } else if (g == 2) {
        for (int order = 2; order <= m; ++order) {
            std::vector<std::vector<int>> sets;
            index_multisets(g, order, sets);
            for (const auto& idx : sets) {
                std::string lbl = "wp_";
                for (int i : idx) lbl += char('0' + i);
                add_element(b, WpExpr::wp(idx), lbl);
            }
            if (order >= 3) {
                // derivatives of Xi of order (order - 3); lexicographically
                // least multi-indices first, order - 2 of them
                WpExpr xi = named_combination(NamedCombination::Xi);
                int dorder = order - 3;
                std::vector<std::vector<int>> dsets;
                index_multisets(g, dorder, dsets);
                int want = order - 2;
                for (int k = 0; k < want && k < int(dsets.size()); ++k) {
                    WpExpr e = xi;
                    std::string lbl = "Xi";
                    for (int i : dsets[size_t(k)]) {
                        e = e.diff(i);
                        lbl = "d" + std::to_string(i) + lbl;
                    }
                    add_element(b, e, lbl);
                }
            }
        }
    } else {
        // genus 3, m = 2: constant, the six 2-index wp's, Delta
        if (m >= 2) {
            std::vector<std::vector<int>> sets;
            index_multisets(g, 2, sets);
            for (const auto& idx : sets) {
                std::string lbl = "wp_";
                for (int i : idx) lbl += char('0' + i);
                add_element(b, WpExpr::wp(idx), lbl);
            }
            add_element(b, named_combination(NamedCombination::Delta), "Delta");
        }
    }

    // independence certificate: rank of all cleared coefficients at a common
    // sigma power
    int dmax = 0;
    std::vector<SigmaRationalForm> forms;
    for (const WpExpr& e : b.elements) {
        forms.push_back(compiler.compile(e));
        dmax = std::max(dmax, forms.back().denom_power);
    }
    std::vector<Series> cleared;
    for (auto& f : forms)
        cleared.push_back(f.denom_power == dmax
                              ? f.numerator
                              : f.numerator * compiler.sigma_power(dmax - f.denom_power));
    int cap = std::numeric_limits<int>::max();
    for (const Series& s : cleared) cap = std::min(cap, s.cap());

    std::map<ExpVec, size_t> col_of;
    for (const Series& s : cleared)
        for (const Term& t : s.poly().terms())
            if (s.poly().term_capweight(t.e) <= cap) col_of.emplace(t.e, col_of.size());
    std::vector<std::vector<Rational>> mat(b.elements.size(),
                                           std::vector<Rational>(col_of.size(), Rational(0)));
    for (size_t i = 0; i < cleared.size(); ++i)
        for (const Term& t : cleared[i].poly().terms())
            if (cleared[i].poly().term_capweight(t.e) <= cap) mat[i][col_of[t.e]] = t.c;
    b.certificate_rank = matrix_rank(mat);

    if (!b.certified()) {
        // exhibit a relation: nullspace of the transposed system
        LinearSystem sys;
        for (size_t i = 0; i < b.elements.size(); ++i) sys.unknowns.push_back(b.labels[i]);
        for (const auto& [e, col] : col_of) {
            (void)col;
            std::vector<std::pair<int, Rational>> row;
            for (size_t i = 0; i < cleared.size(); ++i) {
                Rational c = cleared[i].poly().coeff(e);
                if (!c.is_zero()) row.push_back({int(i), c});
            }
            sys.add_row(std::move(row), Rational(0));
        }
        SolveResult r = solve_exact(sys);
        if (!r.nullspace.empty()) b.discovered_relation = r.nullspace[0];
    }
    return b;
}

nlohmann::json GammaBasis::to_json(Compiler* compiler) const {
    nlohmann::json j;
    j["m"] = m;
    j["dimension"] = elements.size();
    j["certificate_rank"] = certificate_rank;
    j["certified"] = certified();
    nlohmann::json els = nlohmann::json::array();
    for (size_t i = 0; i < elements.size(); ++i) {
        nlohmann::json e;
        e["label"] = labels[i];
        e["expr"] = elements[i].to_json();
        if (compiler) {
            SigmaRationalForm f = compiler->compile(elements[i]);
            e["numerator_hash"] = std::hash<std::string>{}(f.numerator.poly().str());
            e["denom_power"] = f.denom_power;
        }
        els.push_back(std::move(e));
    }
    j["elements"] = els;
    if (!discovered_relation.empty()) {
        nlohmann::json rel = nlohmann::json::array();
        for (const auto& c : discovered_relation) rel.push_back(c.str());
        j["discovered_relation"] = rel;
    }
    return j;
}

}  // namesspace kleinian
