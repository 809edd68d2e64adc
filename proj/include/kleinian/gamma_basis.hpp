#pragma once

#include "kleinian/wp_expr.hpp"

namespace kleinian {

struct GammaBasis {
    int m = 0;
    std::vector<WpExpr> elements;
    std::vector<std::string> labels;
    int certificate_rank = 0;  // rank of the cleared-coefficient matrix
    bool certified() const { return certificate_rank == int(elements.size()); }
    // when rank-deficient: one linear relation among the elements
    std::vector<Rational> discovered_relation;
    nlohmann::json to_json(Compiler* compiler = nullptr) const;
};

// Pole-order-m basis. Genus 1 uses repeated derivatives of wp; genus 2
// follows the classical table (Xi and its derivatives complete the wp part);
// genus 3 covers the (2,7) order-two case {1, wp_ij, Delta}.
GammaBasis gamma_basis(Compiler& compiler, int m);

}  // namespace kleinian
