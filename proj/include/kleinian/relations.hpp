#pragma once

#include "kleinian/linear_solver.hpp"
#include "kleinian/wp_expr.hpp"

namespace kleinian {

struct RelationReport {
    enum class Status { VerifiedToCap, Refuted };
    Status status = Status::Refuted;
    std::string name;
    int cleared_cap = 0;       // weight through which the cleared numerator vanishes
    int denom_power = 0;
    // refutation data
    int failing_weight = 0;
    std::string residual_term;

    bool ok() const { return status == Status::VerifiedToCap; }
    nlohmann::json to_json() const;
};

struct CapInsufficiency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Compile rel, clear sigma powers, assert the numerator vanishes through its
// certified weight. Distinguishes cap insufficiency (nothing checkable) from
// refutation (an explicit nonzero coefficient).
RelationReport verify_relation(const WpExpr& rel, Compiler& compiler, std::string name = "");

// Same, but substitute lambda values into the cleared numerator first.
RelationReport verify_relation_at(const WpExpr& rel, Compiler& compiler,
                                  const std::map<int, Rational>& lambda_values,
                                  std::string name = "");

// ---------------------------------------------------------------------------
// Coefficient dictionaries between curve presentations.

// Image of one coefficient: constant + scale * lam_{index} (index < 0: none).
struct LambdaImage {
    Rational constant;
    int index = -1;
    Rational scale;
};

struct CoefficientDictionary {
    // paper-side coefficient j -> image in the cyclic model
    std::map<int, LambdaImage> lambda_map;
    // wp_{ij} -> wp_{ij} + scale * lam_{index}
    std::map<std::pair<int, int>, LambdaImage> wp_shifts;
    // substitutions applied to the cyclic model after compilation
    std::map<int, Rational> model_constraints;

    nlohmann::json to_json() const;
};

// Derived by matching y^2 = sum binom(6,j) lam_j x^j under
// lam6 = lam4 = 0, lam5 = 1/6 against the monic quintic; forces lam4 = 0 on
// the cyclic side.
CoefficientDictionary genus2_sextic_dictionary();
// The same matching without the lam4 = 0 specialization (lam4 -> lam4/15).
CoefficientDictionary genus2_sextic_dictionary_general();
// Matching y^2 = 4x^3 - g2 x - g3 to the cyclic cubic: g2 = -4 lam1,
// g3 = -4 lam0, lam2 = 0. Returned map sends {g2 -> index 1, g3 -> index 0}.
CoefficientDictionary genus1_weierstrass_dictionary();

// Apply a dictionary to an expression written in paper-side lambda indices.
WpExpr apply_dictionary(const WpExpr& paper_expr, const CoefficientDictionary& dict);

// ---------------------------------------------------------------------------
// Named relation families.

// The five quartic-index relations of the genus-two system, in paper-side
// coefficients (index 0..6 with binomial normalization).
std::vector<WpExpr> genus2_paper_relations();

// The parametrized family at direction d = d1 + nu d2, as a cyclic-(2,5)
// relation (dictionary already applied), for a rational nu.
WpExpr genus2_parametrized_family(const Rational& nu);

// U_t - U_xxx + 12 U U_x with U = wp_22, t = u1, x = u2 (cyclic side).
WpExpr kdv_residual();

// wp'' - 6 wp^2 + g2/2 and (wp')^2 - 4 wp^3 + g2 wp + g3 on the cyclic cubic.
WpExpr genus1_quadratic_relation();
WpExpr genus1_cubic_relation();

struct SuiteReport {
    std::vector<RelationReport> reports;
    bool all_ok() const {
        for (const auto& r : reports)
            if (!r.ok()) return false;
        return !reports.empty();
    }
    nlohmann::json to_json() const;
};

SuiteReport verify_genus1_system(Compiler& compiler);                    // (2,3) model
SuiteReport verify_genus2_system(Compiler& compiler, uint64_t seed);     // (2,5) model
SuiteReport verify_kdv(Compiler& compiler);                              // (2,5) model

// ---------------------------------------------------------------------------
// Graded linear ansatz derivation.

struct AnsatzTemplate {
    WpExpr target;                       // known coefficients
    std::vector<WpExpr> candidates;      // unknown coefficients
    std::vector<std::string> names;      // optional labels
};

struct DeriveResult {
    enum class Kind { Unique, Family, NoRelation };
    Kind kind = Kind::NoRelation;
    std::vector<Rational> coefficients;  // target + sum_i c_i candidate_i = 0
    int nullity = 0;
    int checked_cap = 0;
};

DeriveResult derive_relation(const AnsatzTemplate& t, Compiler& compiler);

// ---------------------------------------------------------------------------
// Two-term addition formula.

struct AdditionReport {
    bool ok = false;
    std::string detail;
    // genus 2: solved bilinear table c[i][j] over {1, wp11, wp12, wp22}
    std::vector<std::vector<Rational>> table;
    nlohmann::json to_json() const;
};

AdditionReport addition_check(const SigmaModel& model);

}  // namespace kleinian
