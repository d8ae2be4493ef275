#pragma once

#include <vector>

namespace steklov {

// Contiguous run of numerically equal eigenvalues in a sorted list.
struct Cluster {
    int first = 0;  // index of first member
    int count = 1;
};

// Sorted eigenvalue list with its cluster decomposition.
struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    std::vector<Cluster> clusters;
};

// Groups a sorted list into clusters.  Two neighbours belong to the same
// cluster when their gap is below rel_tol * max(|a|, |b|, 1).
std::vector<Cluster> find_clusters(const std::vector<double>& sorted_eigenvalues,
                                   double rel_tol = 1e-6);

} // namespace steklov
