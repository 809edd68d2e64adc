#include "kleinian/curve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kleinian {

void CurveSpec::validate() const {
    if (n < 2) throw std::invalid_argument("curve: n must be >= 2");
    if (s <= n) throw std::invalid_argument("curve: s must be > n");
    if (std::gcd(n, s) != 1) throw std::invalid_argument("curve: gcd(n,s) must be 1");
    for (const auto& [j, v] : values) {
        (void)v;
        if (j < 0 || j >= s) throw std::invalid_argument("curve: lambda index out of range");
    }
}

bool GapSequence::is_gap(int m) const {
    return std::binary_search(gaps.begin(), gaps.end(), m);
}

GapSequence gap_sequence(int n, int s) {
    if (std::gcd(n, s) != 1) throw std::invalid_argument("gap_sequence: gcd(n,s) must be 1");
    if (!(2 <= n && n < s)) throw std::invalid_argument("gap_sequence: need 2 <= n < s");
    const int g = (n - 1) * (s - 1) / 2;
    const int frob = n * s - n - s;  // largest gap
    std::vector<bool> representable(size_t(frob) + 1, false);
    representable[0] = true;
    for (int m = 1; m <= frob; ++m) {
        if (m >= n && representable[size_t(m - n)]) representable[size_t(m)] = true;
        if (m >= s && representable[size_t(m - s)]) representable[size_t(m)] = true;
    }
    GapSequence out;
    for (int m = 1; m <= frob; ++m)
        if (!representable[size_t(m)]) out.gaps.push_back(m);
    if (int(out.gaps.size()) != g) throw std::logic_error("gap_sequence: count != genus");
    return out;
}

int sigma_weight(int n, int s) { return (n * n - 1) * (s * s - 1) / 24; }

WeightTable weight_table(const CurveSpec& c) {
    c.validate();
    WeightTable t;
    t.wt_x = -c.n;
    t.wt_y = -c.s;
    t.wt_lambda.resize(size_t(c.s));
    for (int j = 0; j < c.s; ++j) t.wt_lambda[size_t(j)] = -c.n * (c.s - j);
    GapSequence gs = gap_sequence(c.n, c.s);
    t.wt_u.assign(gs.gaps.rbegin(), gs.gaps.rend());
    t.wt_sigma = sigma_weight(c.n, c.s);
    return t;
}

std::vector<XYMonomial> monomial_order(int n, int s, int count) {
    if (count < 1) throw std::invalid_argument("monomial_order: count must be >= 1");
    std::vector<XYMonomial> out;
    // Pole orders i*n + j*s are distinct for 0 <= j < n by coprimality.
    for (int order = 0; int(out.size()) < count; ++order) {
        for (int j = 0; j < n; ++j) {
            if (j * s > order) break;
            int rem = order - j * s;
            if (rem % n == 0) {
                out.push_back({rem / n, j, order});
                break;
            }
        }
    }
    return out;
}

std::vector<RRRow> rr_dimension_table(int n, int s, int max_multiple) {
    if (max_multiple < 0) throw std::invalid_argument("rr_dimension_table: max_multiple >= 0");
    GapSequence gs = gap_sequence(n, s);
    const int g = (n - 1) * (s - 1) / 2;
    std::vector<RRRow> rows;
    int h0 = 0;
    for (int k = 0; k <= max_multiple; ++k) {
        bool nongap = (k == 0) || (k > n * s - n - s) || !gs.is_gap(k);
        if (nongap) ++h0;
        rows.push_back({k, h0, h0 - 1 + g - k});
    }
    return rows;
}

int first_relation_point(int n, int s) {
    GapSequence gs = gap_sequence(n, s);
    for (int k = 0; k <= 2 * n * s; ++k) {
        int monomials = 0;
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i * n + j * s <= k; ++i) ++monomials;
        int h0 = 0;
        for (int m = 0; m <= k; ++m)
            if (m == 0 || m > n * s - n - s || !gs.is_gap(m)) ++h0;
        if (monomials > h0) return k;
    }
    throw std::logic_error("first_relation_point: not found");
}

std::vector<XYMonomial> differential_basis(const CurveSpec& c) {
    c.validate();
    const int g = c.genus();
    // The first g monomials give exactly the holomorphic differentials
    // h dx/f_y, with u-weight 2g-1 - pole_order(h).
    return monomial_order(c.n, c.s, g);
}

std::string lambda_name(int j) { return "lam" + std::to_string(j); }
std::string u_name(int i) { return "u" + std::to_string(i); }

Ring curve_ring(const CurveSpec& c) {
    WeightTable t = weight_table(c);
    std::vector<Symbol> syms;
    for (size_t i = 0; i < t.wt_u.size(); ++i)
        syms.push_back({u_name(int(i) + 1), t.wt_u[i], true});
    for (int j = 0; j < c.s; ++j)
        if (!c.values.count(j)) syms.push_back({lambda_name(j), t.wt_lambda[size_t(j)], false});
    return Ring(syms);
}

Ring xi_ring(const CurveSpec& c, int k) {
    WeightTable t = weight_table(c);
    std::vector<Symbol> syms;
    for (int i = 1; i <= k; ++i) syms.push_back({"xi" + std::to_string(i), 1, true});
    for (int j = 0; j < c.s; ++j)
        if (!c.values.count(j)) syms.push_back({lambda_name(j), t.wt_lambda[size_t(j)], false});
    return Ring(syms);
}

GradedPoly curve_rhs_poly(const CurveSpec& c, const Ring& ring, const std::string& x_sym) {
    GradedPoly x = GradedPoly::variable(ring, x_sym);
    GradedPoly out = x.pow(unsigned(c.s));
    for (int j = 0; j < c.s; ++j) {
        GradedPoly xj = x.pow(unsigned(j));
        auto it = c.values.find(j);
        if (it != c.values.end()) {
            out = out + xj.scaled(it->second);
        } else {
            out = out + GradedPoly::mul(xj, GradedPoly::variable(ring, lambda_name(j)));
        }
    }
    return out;
}

namespace {

[[noreturn]] void parse_fail(int line, int col, const std::string& msg) {
    std::ostringstream os;
    os << "curve file: line " << line << ", column " << col << ": " << msg;
    throw std::invalid_argument(os.str());
}

}  // namespace

CurveSpec parse_curve_file(const std::string& text) {
    CurveSpec c;
    c.n = 0;
    c.s = 0;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) parse_fail(lineno, int(a) + 1, "expected key = value");
        auto trim = [](std::string v) {
            size_t b = v.find_first_not_of(" \t\r");
            size_t e = v.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.empty()) parse_fail(lineno, int(eq) + 2, "missing value for key '" + key + "'");
        auto parse_int = [&](const std::string& v) {
            try {
                size_t used = 0;
                int k = std::stoi(v, &used);
                if (used != v.size()) throw std::invalid_argument("");
                return k;
            } catch (...) {
                parse_fail(lineno, int(eq) + 2, "expected integer, got '" + v + "'");
            }
        };
        if (key == "n") {
            c.n = parse_int(value);
        } else if (key == "s") {
            c.s = parse_int(value);
        } else if (key == "class") {
            if (value == "cyclic") c.cls = CurveClass::Cyclic;
            else if (value == "general") c.cls = CurveClass::General;
            else parse_fail(lineno, int(eq) + 2, "class must be cyclic or general");
        } else if (key == "truncation_weight") {
            c.truncation_weight = parse_int(value);
        } else if (key.rfind("lambda.", 0) == 0) {
            int j = parse_int(key.substr(7));
            if (value == "sym") continue;  // symbolic is the default
            try {
                c.values[j] = Rational::from_string(value);
            } catch (const std::exception& e) {
                parse_fail(lineno, int(eq) + 2, e.what());
            }
        } else {
            parse_fail(lineno, int(a) + 1, "unknown key '" + key + "'");
        }
    }
    if (c.n == 0 || c.s == 0) throw std::invalid_argument("curve file: keys n and s are required");
    c.validate();
    return c;
}

std::string curve_file_text(const CurveSpec& c) {
    std::ostringstream os;
    os << "n = " << c.n << "\n";
    os << "s = " << c.s << "\n";
    os << "class = " << (c.cls == CurveClass::Cyclic ? "cyclic" : "general") << "\n";
    for (int j = 0; j < c.s; ++j) {
        auto it = c.values.find(j);
        os << "lambda." << j << " = " << (it == c.values.end() ? std::string("sym") : it->second.str())
           << "\n";
    }
    if (c.truncation_weight) os << "truncation_weight = " << *c.truncation_weight << "\n";
    return os.str();
}

}  // namespace kleinian
