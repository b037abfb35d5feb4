#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Neighbor-count kernels behind the k-NN mutual information estimators.
//
// Each kernel comes in two forms that must agree exactly:
//   *_reference  brute force O(N^2), single thread, kept for testing;
//   the unsuffixed form sorts once and answers each point with a pruned
//   window scan plus binary searches, parallelized over points with OpenMP.
// Distances in the joint space use the max-norm.

namespace joinmi::knn {

struct JointCounts {
    std::vector<double> radius;     // k-th neighbor distance of each point
    std::vector<std::size_t> nx;    // marginal neighbors in x within radius (j != i)
    std::vector<std::size_t> ny;    // marginal neighbors in y within radius (j != i)
    std::vector<std::size_t> ties;  // points at distance exactly 0 (j != i); mixed only
};

/// KSG: marginal counts use |d| < radius.
JointCounts ksg_counts(std::span<const double> x, std::span<const double> y, int k);
JointCounts ksg_counts_reference(std::span<const double> x, std::span<const double> y, int k);

/// Mixed KSG: as KSG while the radius is positive; at radius 0 the marginal
/// counts use |d| == 0 and `ties` holds the joint duplicates.
JointCounts mixed_counts(std::span<const double> x, std::span<const double> y, int k);
JointCounts mixed_counts_reference(std::span<const double> x, std::span<const double> y, int k);

struct ClassCounts {
    std::vector<double> radius;            // k_i-th neighbor distance within the point's class
    std::vector<std::size_t> within;       // kept points with |dy| <= radius (j != i)
    std::vector<std::size_t> class_size;
    std::vector<std::uint8_t> kept;        // 0 for singleton classes
    std::vector<std::uint32_t> neighbors;  // k_i = min(k, class size - 1)
    std::size_t kept_points = 0;
};

/// Discrete-continuous counts: labels are dense class codes. Singleton
/// classes are excluded everywhere; smaller classes use fewer neighbors.
ClassCounts class_counts(std::span<const std::uint32_t> labels, std::span<const double> y, int k);
ClassCounts class_counts_reference(std::span<const std::uint32_t> labels,
                                   std::span<const double> y, int k);

}  // namespace joinmi::knn
