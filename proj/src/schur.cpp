#include "kleinian/schur.hpp"

#include <algorithm>

#include "kleinian/curve.hpp"

namespace kleinian {

std::vector<int> weierstrass_partition(int n, int s) {
    GapSequence gs = gap_sequence(n, s);
    const int g = int(gs.gaps.size());
    std::vector<int> mu(static_cast<size_t>(g), 0);
    for (int i = 1; i <= g; ++i) mu[size_t(i - 1)] = gs.gaps[size_t(g - i)] - (g - i);
    return mu;
}

namespace {

// Complete homogeneous h_k from p_j = j * t_j via h_k = (1/k) sum p_j h_{k-j}.
std::vector<GradedPoly> complete_homogeneous(const Ring& ring, const std::vector<GradedPoly>& t,
                                             int max_k) {
    std::vector<GradedPoly> h;
    h.push_back(GradedPoly::constant(ring, Rational(1)));
    for (int k = 1; k <= max_k; ++k) {
        GradedPoly acc(ring);
        for (int j = 1; j <= k; ++j) {
            if (t[size_t(j)].is_zero()) continue;
            acc = acc + GradedPoly::mul(t[size_t(j)].scaled(Rational(j)), h[size_t(k - j)]);
        }
        h.push_back(acc.scaled(Rational(1, k)));
    }
    return h;
}

GradedPoly det_recursive(const std::vector<std::vector<GradedPoly>>& m, std::vector<int> cols,
                         int row, const Ring& ring) {
    if (cols.empty()) return GradedPoly::constant(ring, Rational(1));
    GradedPoly acc(ring);
    for (size_t ci = 0; ci < cols.size(); ++ci) {
        const GradedPoly& entry = m[size_t(row)][size_t(cols[ci])];
        if (entry.is_zero()) continue;
        std::vector<int> sub;
        for (size_t cj = 0; cj < cols.size(); ++cj)
            if (cj != ci) sub.push_back(cols[cj]);
        GradedPoly minor = det_recursive(m, sub, row + 1, ring);
        GradedPoly contrib = GradedPoly::mul(entry, minor);
        acc = (ci % 2 == 0) ? acc + contrib : acc - contrib;
    }
    return acc;
}

}  // namespace

GradedPoly schur_weierstrass(int n, int s, const Ring& ring) {
    GapSequence gs = gap_sequence(n, s);
    const int g = int(gs.gaps.size());
    std::vector<int> mu = weierstrass_partition(n, s);
    const int wmax = gs.gaps.back();

    std::vector<GradedPoly> t(static_cast<size_t>(wmax) + 1, GradedPoly{ring});
    for (int i = 0; i < g; ++i) {
        // Ascending gap w_{i+1} pairs with u_{g-i} (u-weights descend).
        t[size_t(gs.gaps[size_t(i)])] = GradedPoly::variable(ring, u_name(g - i));
    }

    int max_h = mu.empty() ? 0 : mu[0] + g - 1;
    std::vector<GradedPoly> h = complete_homogeneous(ring, t, max_h);

    std::vector<std::vector<GradedPoly>> m(static_cast<size_t>(g),
        std::vector<GradedPoly>(static_cast<size_t>(g), GradedPoly{ring}));
    for (int i = 1; i <= g; ++i)
        for (int j = 1; j <= g; ++j) {
            int k = mu[size_t(i - 1)] + j - i;
            if (k >= 0) m[size_t(i - 1)][size_t(j - 1)] = h[size_t(k)];
        }
    std::vector<int> cols(static_cast<size_t>(g), 0);
    for (int j = 0; j < g; ++j) cols[size_t(j)] = j;
    GradedPoly sw = det_recursive(m, cols, 0, ring);

    if (!sw.is_zero() && sw.terms().front().c.sign() < 0) sw = -sw;
    return sw;
}

}  // namespace kleinian
