#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "kleinian/sigma.hpp"

namespace kleinian {

// One multiply-periodic building block: an m-index wp function (m >= 2), an
// even-arity Hirota Q-function, or a bare sigma-partial ratio sigma_I / sigma.
struct WpAtom {
    enum class Kind { Wp, Q, SigmaDeriv };
    Kind kind = Kind::Wp;
    std::vector<int> indices;  // ascending, 1-based

    static WpAtom wp(std::vector<int> idx);
    static WpAtom q(std::vector<int> idx);
    static WpAtom sigma_deriv(std::vector<int> idx);

    int arity() const { return int(indices.size()); }
    int denom_power() const { return kind == Kind::Q ? 2 : (kind == Kind::Wp ? arity() : 1); }
    int weight(const WeightTable& wt) const;  // negative of the index-weight sum

    bool operator<(const WpAtom& o) const;
    bool operator==(const WpAtom& o) const;
    std::string str() const;
};

// lambda exponents keyed by the lambda index j (curve-intrinsic).
using LamExp = std::array<uint8_t, kMaxRingSymbols>;

struct WpTerm {
    Rational coeff;
    LamExp lam{};             // lambda_j exponents
    std::vector<WpAtom> atoms;  // sorted

    int total_denom() const {
        int d = 0;
        for (const WpAtom& a : atoms) d += a.denom_power();
        return d;
    }
};

// Sum of rational * lambda-monomial * products of atoms.
class WpExpr {
public:
    WpExpr() = default;

    static WpExpr zero() { return WpExpr(); }
    static WpExpr constant(const Rational& c);
    static WpExpr lambda(int j, const Rational& c = Rational(1));
    static WpExpr atom(WpAtom a, const Rational& c = Rational(1));
    static WpExpr wp(std::vector<int> idx, const Rational& c = Rational(1)) {
        return atom(WpAtom::wp(std::move(idx)), c);
    }

    const std::vector<WpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    WpExpr operator-() const { return scaled(Rational(-1)); }
    WpExpr scaled(const Rational& c) const;
    friend WpExpr operator+(const WpExpr& a, const WpExpr& b);
    friend WpExpr operator-(const WpExpr& a, const WpExpr& b) { return a + (-b); }
    friend WpExpr operator*(const WpExpr& a, const WpExpr& b);

    // Partial derivative d/du_i: extends every Wp atom by one index; rejects
    // Q and sigma-ratio atoms (their derivatives leave the atom algebra).
    WpExpr diff(int i) const;

    // weight if homogeneous under the table (lambda weights included)
    std::optional<int> homogeneous_weight(const WeightTable& wt) const;

    // highest single-atom derivative order appearing
    int max_arity() const;

    std::string str() const;
    static void normalize(std::vector<WpTerm>& ts);

    nlohmann::json to_json() const;
    static WpExpr from_json(const nlohmann::json& j);

private:
    std::vector<WpTerm> terms_;
};

// A cleared expression: numerator series over sigma^denom_power.
struct SigmaRationalForm {
    Series numerator;
    int denom_power = 0;
};

// Compilation of expressions against one model, with atom- and product-level
// caches (concurrent readers, single writer per entry).
class Compiler {
public:
    explicit Compiler(const SigmaModel& model) : model_(model) {}

    const SigmaModel& model() const { return model_; }

    // sigma^k, cached
    const Series& sigma_power(int k);

    // cleared numerator of a single atom (denominator sigma^denom_power)
    const Series& atom_numerator(const WpAtom& a);

    // cleared numerator of a product of atoms over sigma^(sum denom powers)
    const Series& product_numerator(const std::vector<WpAtom>& atoms);

    // full expression at a common denominator: max over terms plus extra_clear
    SigmaRationalForm compile(const WpExpr& e, int extra_clear = 0);

    // substitute a lambda value into an already-compiled numerator
    Series specialize_lambda(const Series& s, int lambda_index, const Rational& value) const;

private:
    const SigmaModel& model_;
    std::mutex mu_;
    std::map<int, Series> sigma_powers_;
    std::map<std::string, Series> atom_cache_;
    std::map<std::string, Series> product_cache_;
};

// The spec'd operation wrappers.
SigmaRationalForm compile(const WpExpr& e, Compiler& compiler, int extra_clear = 0);
SigmaRationalForm q_function(const std::vector<int>& indices, Compiler& compiler);

enum class NamedCombination { Xi, Delta, B };
WpExpr named_combination(NamedCombination name, const std::vector<int>& indices = {});

}  // namespace kleinian
