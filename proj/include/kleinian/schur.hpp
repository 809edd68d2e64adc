#pragma once

#include <vector>

#include "kleinian/graded_poly.hpp"

namespace kleinian {

// Partition attached to the gap sequence of (n,s): with ascending gaps
// w_1 < ... < w_g, mu_i = w_{g+1-i} - (g - i); |mu| = sigma weight.
std::vector<int> weierstrass_partition(int n, int s);

// The lambda-independent leading polynomial of the expansion: the Schur
// polynomial of the Weierstrass partition in the variables t_j = p_j / j,
// with t_{w_i} = u_i and all other t_j = 0, computed via the Jacobi-Trudi
// determinant det(h_{mu_i + j - i}). Sign fixed so the graded-lex-greatest
// monomial has positive coefficient.
GradedPoly schur_weierstrass(int n, int s, const Ring& ring);

}  // namespace kleinian
