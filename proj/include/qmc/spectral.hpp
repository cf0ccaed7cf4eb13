#pragma once

#include <string>

#include "qmc/system.hpp"

namespace qmc {

/// Multiplicity partitions at 0, at infinity, and of the divisor of
/// det C(x), C(x) = B(x) prod_{i>=1} (x - b_i).
struct SpectralType {
    std::vector<int> s0;
    std::vector<int> s_inf;
    std::vector<int> s_div;
    std::vector<std::pair<Complex, int>> div_roots;  // (root, multiplicity), descending
    bool non_generic = false;

    std::string rendered() const;
};

struct SpectralOptions {
    TolerancePolicy tol;
    double root_cluster_rel_tol = 2e-2;  // single-linkage gap for det roots
};

/// s0/s_inf from the eigenvalue clusters of B(0) = I - B_0 and
/// B(inf) = I - sum B_i; s_div from det-root multiplicities of C(x)
/// (exact-degree interpolation, companion roots, gap clustering) with a
/// rank-drop consistency check at every multiple root.
SpectralType spectral_type(const SystemTuple& t, const SpectralOptions& opt = {});

}  // namespace qmc
