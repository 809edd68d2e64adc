#pragma once

#include <json.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "kleinian/curve.hpp"
#include "kleinian/local_expansion.hpp"
#include "kleinian/series.hpp"

namespace kleinian {

struct LevelLog {
    int level = 0;             // |lambda weight|
    int u_weight = 0;          // = wt_sigma + level
    int candidates = 0;        // admissible u-monomials at this level
    int lambda_blocks = 0;
    int vanishing_rank = 0;    // rank from strata vanishing alone (one block)
    int combined_rank = 0;     // with the algebraic two-point rows added
    std::vector<std::string> unpinned;  // free monomials left by vanishing-only solves
};

struct SolverLog {
    std::vector<LevelLog> levels;
    bool algebraic_rows_used = false;  // hyperelliptic completion active
    Rational pairing_scale;            // calibrated scalar of the two-point formula
    std::vector<std::string> notes;
};

// Candidate monomial table per lambda-level.
struct SigmaAnsatz {
    Ring ring;  // (u | lam)
    int wt_sigma = 0;
    int parity = 0;  // required u-degree mod 2
    // level -> admissible u-monomial exponent patterns (exponents on u's only)
    std::map<int, std::vector<ExpVec>> u_candidates;
    // level -> lambda monomial patterns of that |weight|
    std::map<int, std::vector<ExpVec>> lambda_blocks;
};

class SigmaModel {
public:
    CurveSpec curve;
    WeightTable wt;
    int cap = 0;
    Ring ring;     // (u_1..u_g | lam_j syms)
    Series sigma;  // solved expansion
    GradedPoly sw; // lambda-free part
    SolverLog log;

    int genus() const { return curve.genus(); }

    // Cached partial derivative over a sorted 1-based index multiset; the
    // empty index returns sigma itself. Safe for concurrent readers.
    const Series& partial(const std::vector<int>& idx) const;

    nlohmann::json to_json() const;
    static SigmaModel from_json(const nlohmann::json& j);

private:
    mutable std::mutex mu_;
    mutable std::map<std::vector<int>, std::shared_ptr<const Series>> cache_;

public:
    SigmaModel() = default;
    SigmaModel(const SigmaModel& o)
        : curve(o.curve), wt(o.wt), cap(o.cap), ring(o.ring), sigma(o.sigma), sw(o.sw), log(o.log) {}
    SigmaModel& operator=(const SigmaModel& o) {
        curve = o.curve; wt = o.wt; cap = o.cap; ring = o.ring;
        sigma = o.sigma; sw = o.sw; log = o.log;
        return *this;
    }
};

struct SigmaOptions {
    bool use_algebraic_completion = true;  // hyperelliptic curves only
    bool allow_unpinned = false;           // default decided by curve class
    bool explicit_allow = false;
};

int default_cap(int n, int s);

SigmaAnsatz sigma_ansatz(const CurveSpec& c, int cap);

// Solve the expansion level by level: strata vanishing on the (g-1)-point
// embedding plus, for hyperelliptic curves, the algebraic two-point pairing
// on the g-point embedding (self-calibrated at lambda = 0). Throws on
// inconsistency; underdetermined levels throw unless unpinned coefficients
// are allowed, in which case free coefficients are set to zero and logged.
SigmaModel sigma_expand(const CurveSpec& c, int cap, SigmaOptions opts = {});

// Re-verify strata vanishing on a freshly built embedding.
bool strata_vanishing_holds(const SigmaModel& m);

// Nonvanishing of d(sigma)/du_g on the (g-1)-strata (order-one zeros).
bool order_one_vanishing(const SigmaModel& m);

}  // namespace kleinian
