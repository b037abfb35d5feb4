// Brute-force neighbor counts. These are the definitions the fast kernels
// in knn_parallel.cpp are checked against.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "joinmi/knn.hpp"

namespace joinmi::knn {
namespace {

void check_joint(std::span<const double> x, std::span<const double> y, int k) {
    if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (x.size() <= static_cast<std::size_t>(k))
        throw std::invalid_argument("need more than k points");
}

JointCounts joint_reference(std::span<const double> x, std::span<const double> y, int k,
                            bool mixed) {
    check_joint(x, y, k);
    const std::size_t n = x.size();
    JointCounts out;
    out.radius.resize(n);
    out.nx.resize(n);
    out.ny.resize(n);
    if (mixed) out.ties.assign(n, 0);

    std::vector<double> dist;
    dist.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        dist.clear();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) dist.push_back(std::max(std::fabs(x[j] - x[i]), std::fabs(y[j] - y[i])));
        std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
        const double r = dist[static_cast<std::size_t>(k - 1)];
        out.radius[i] = r;

        std::size_t cx = 0, cy = 0, zero = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = std::fabs(x[j] - x[i]);
            const double dy = std::fabs(y[j] - y[i]);
            if (mixed && r == 0.0) {
                cx += dx == 0.0;
                cy += dy == 0.0;
                zero += std::max(dx, dy) == 0.0;
            } else {
                cx += dx < r;
                cy += dy < r;
            }
        }
        out.nx[i] = cx;
        out.ny[i] = cy;
        if (mixed && r == 0.0) out.ties[i] = zero;
    }
    return out;
}

}  // namespace

JointCounts ksg_counts_reference(std::span<const double> x, std::span<const double> y, int k) {
    return joint_reference(x, y, k, false);
}

JointCounts mixed_counts_reference(std::span<const double> x, std::span<const double> y, int k) {
    return joint_reference(x, y, k, true);
}

ClassCounts class_counts_reference(std::span<const std::uint32_t> labels,
                                   std::span<const double> y, int k) {
    if (labels.size() != y.size()) throw std::invalid_argument("labels and y differ in length");
    if (k < 1) throw std::invalid_argument("k must be positive");
    const std::size_t n = y.size();

    ClassCounts out;
    out.radius.assign(n, 0.0);
    out.within.assign(n, 0);
    out.class_size.assign(n, 0);
    out.kept.assign(n, 0);
    out.neighbors.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.class_size[i] += labels[j] == labels[i];
    for (std::size_t i = 0; i < n; ++i) {
        out.kept[i] = out.class_size[i] > 1;
        out.kept_points += out.kept[i];
    }

    std::vector<double> dist;
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.kept[i]) continue;
        dist.clear();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && labels[j] == labels[i]) dist.push_back(std::fabs(y[j] - y[i]));
        const std::size_t ki = std::min(static_cast<std::size_t>(k), dist.size());
        out.neighbors[i] = static_cast<std::uint32_t>(ki);
        std::nth_element(dist.begin(), dist.begin() + (ki - 1), dist.end());
        const double r = dist[ki - 1];
        out.radius[i] = r;
        std::size_t m = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && out.kept[j] && std::fabs(y[j] - y[i]) <= r) ++m;
        out.within[i] = m;
    }
    return out;
}

}  // namespace joinmi::knn
