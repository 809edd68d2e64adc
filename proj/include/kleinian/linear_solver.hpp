#pragma once

#include <string>
#include <vector>

#include "kleinian/rational.hpp"

namespace kleinian {

// Sparse exact linear system A x = b over Rational with named unknowns.
struct LinearSystem {
    std::vector<std::string> unknowns;
    // Each row: list of (column, coefficient), plus right-hand side.
    std::vector<std::vector<std::pair<int, Rational>>> rows;
    std::vector<Rational> rhs;

    void add_row(std::vector<std::pair<int, Rational>> row, Rational b) {
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
    }
};

struct SolveResult {
    enum class Kind { Unique, Family, Inconsistent };
    Kind kind = Kind::Inconsistent;
    int rank = 0;
    std::vector<int> pivot_columns;           // ascending
    std::vector<int> free_columns;            // ascending
    std::vector<Rational> particular;         // size = #unknowns (free vars = 0)
    std::vector<std::vector<Rational>> nullspace;  // one basis vector per free column
};

// Fraction-free (Bareiss) forward elimination over integers after clearing
// row denominators, then exact back substitution. Inconsistency is a result,
// not an error.
SolveResult solve_exact(const LinearSystem& sys);

// Rank of a dense rational matrix (rows x cols), same elimination kernel.
int matrix_rank(const std::vector<std::vector<Rational>>& rows);

}  // namespace kleinian
