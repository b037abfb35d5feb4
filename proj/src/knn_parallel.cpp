#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "joinmi/knn.hpp"

namespace joinmi::knn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t distinct_count(std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::sort(s.begin(), s.end());
    return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
}

// Number of j != self with |sorted[j] - v| (< or <=) r, where v is one of the
// sorted values. The qualifying values form one contiguous block.
std::size_t count_within(const std::vector<double>& sorted, double v, double r, bool inclusive) {
    if (!inclusive && r == 0.0) return 0;
    auto in = [&](double a) { return inclusive ? std::fabs(a - v) <= r : std::fabs(a - v) < r; };
    auto lo = std::partition_point(sorted.begin(), sorted.end(),
                                   [&](double a) { return a < v && !in(a); });
    auto hi = std::partition_point(lo, sorted.end(), [&](double a) { return a <= v || in(a); });
    return static_cast<std::size_t>(hi - lo) - 1;
}

// Points sorted by (primary, secondary); runs of equal primary value are
// sorted by secondary, which lets the scan skip the rest of a run once the
// secondary gap alone exceeds the current k-th distance.
struct SortedPlane {
    std::vector<std::size_t> order;
    std::vector<double> p, s;
    std::vector<std::size_t> run_begin, run_end;
    std::vector<std::size_t> dup_block;  // size of the block of identical points
};

SortedPlane sort_plane(std::span<const double> x, std::span<const double> y) {
    const bool x_primary = distinct_count(x) >= distinct_count(y);
    std::span<const double> prim = x_primary ? x : y;
    std::span<const double> sec = x_primary ? y : x;
    const std::size_t n = x.size();

    SortedPlane sp;
    sp.order.resize(n);
    std::iota(sp.order.begin(), sp.order.end(), std::size_t{0});
    std::sort(sp.order.begin(), sp.order.end(), [&](std::size_t a, std::size_t b) {
        if (prim[a] != prim[b]) return prim[a] < prim[b];
        if (sec[a] != sec[b]) return sec[a] < sec[b];
        return a < b;
    });
    sp.p.resize(n);
    sp.s.resize(n);
    for (std::size_t q = 0; q < n; ++q) {
        sp.p[q] = prim[sp.order[q]];
        sp.s[q] = sec[sp.order[q]];
    }
    sp.run_begin.resize(n);
    sp.run_end.resize(n);
    sp.dup_block.resize(n);
    for (std::size_t q = 0; q < n;) {
        std::size_t e = q;
        while (e < n && sp.p[e] == sp.p[q]) ++e;
        for (std::size_t t = q; t < e; ++t) {
            sp.run_begin[t] = q;
            sp.run_end[t] = e;
        }
        for (std::size_t t = q; t < e;) {
            std::size_t d = t;
            while (d < e && sp.s[d] == sp.s[t]) ++d;
            for (std::size_t u = t; u < d; ++u) sp.dup_block[u] = d - t;
            t = d;
        }
        q = e;
    }
    return sp;
}

// k-th smallest max-norm distance from sorted position q to any other point.
double kth_distance(const SortedPlane& sp, std::size_t q, int k, std::vector<double>& heap) {
    const std::size_t n = sp.p.size();
    const std::size_t kk = static_cast<std::size_t>(k);
    heap.clear();
    const double pq = sp.p[q];
    const double sq = sp.s[q];
    std::ptrdiff_t l = static_cast<std::ptrdiff_t>(q) - 1;
    std::size_t r = q + 1;

    auto offer = [&](double d) {
        if (heap.size() < kk) {
            heap.push_back(d);
            std::push_heap(heap.begin(), heap.end());
        } else if (d < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = d;
            std::push_heap(heap.begin(), heap.end());
        }
    };

    while (true) {
        const double gap_l = l >= 0 ? std::fabs(sp.p[static_cast<std::size_t>(l)] - pq) : kInf;
        const double gap_r = r < n ? std::fabs(sp.p[r] - pq) : kInf;
        if (gap_l == kInf && gap_r == kInf) break;
        const bool full = heap.size() == kk;
        if (full && std::min(gap_l, gap_r) >= heap.front()) break;

        if (gap_r <= gap_l) {
            const double ds = sp.s[r] - sq;
            if (full && ds >= heap.front()) {
                r = sp.run_end[r];
                continue;
            }
            offer(std::max(gap_r, std::fabs(ds)));
            ++r;
        } else {
            const auto lu = static_cast<std::size_t>(l);
            const double ds = sq - sp.s[lu];
            if (full && ds >= heap.front()) {
                l = static_cast<std::ptrdiff_t>(sp.run_begin[lu]) - 1;
                continue;
            }
            offer(std::max(gap_l, std::fabs(ds)));
            --l;
        }
    }
    return heap.front();
}

JointCounts joint_fast(std::span<const double> x, std::span<const double> y, int k,
                       bool mixed) {
    if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (x.size() <= static_cast<std::size_t>(k))
        throw std::invalid_argument("need more than k points");
    const std::size_t n = x.size();

    const SortedPlane sp = sort_plane(x, y);
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());

    JointCounts out;
    out.radius.resize(n);
    out.nx.resize(n);
    out.ny.resize(n);
    if (mixed) out.ties.assign(n, 0);

#pragma omp parallel
    {
        std::vector<double> heap;
        heap.reserve(static_cast<std::size_t>(k));
#pragma omp for schedule(dynamic, 256)
        for (std::size_t q = 0; q < n; ++q) {
            const std::size_t i = sp.order[q];
            const double r = kth_distance(sp, q, k, heap);
            out.radius[i] = r;
            const bool zero = mixed && r == 0.0;
            out.nx[i] = count_within(xs, x[i], r, zero);
            out.ny[i] = count_within(ys, y[i], r, zero);
            if (zero) out.ties[i] = sp.dup_block[q] - 1;
        }
    }
    return out;
}

}  // namespace

JointCounts ksg_counts(std::span<const double> x, std::span<const double> y, int k) {
    return joint_fast(x, y, k, false);
}

JointCounts mixed_counts(std::span<const double> x, std::span<const double> y, int k) {
    return joint_fast(x, y, k, true);
}

ClassCounts class_counts(std::span<const std::uint32_t> labels, std::span<const double> y, int k) {
    if (labels.size() != y.size()) throw std::invalid_argument("labels and y differ in length");
    if (k < 1) throw std::invalid_argument("k must be positive");
    const std::size_t n = y.size();
    const std::size_t kk = static_cast<std::size_t>(k);

    std::uint32_t classes = 0;
    for (auto c : labels) classes = std::max(classes, c + 1);
    std::vector<std::size_t> size(classes, 0);
    for (auto c : labels) ++size[c];

    ClassCounts out;
    out.radius.assign(n, 0.0);
    out.within.assign(n, 0);
    out.class_size.resize(n);
    out.kept.resize(n);
    out.neighbors.assign(n, 0);
    std::vector<double> kept_y;
    for (std::size_t i = 0; i < n; ++i) {
        out.class_size[i] = size[labels[i]];
        out.kept[i] = size[labels[i]] > 1;
        if (out.kept[i]) kept_y.push_back(y[i]);
    }
    out.kept_points = kept_y.size();
    std::sort(kept_y.begin(), kept_y.end());

    // per-class sorted values and each point's position among them
    std::vector<std::vector<double>> by_class(classes);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return y[a] != y[b] ? y[a] < y[b] : a < b;
    });
    std::vector<std::size_t> slot(n);
    for (std::size_t i : order) {
        slot[i] = by_class[labels[i]].size();
        by_class[labels[i]].push_back(y[i]);
    }

#pragma omp parallel for schedule(dynamic, 256)
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.kept[i]) continue;
        const auto& cy = by_class[labels[i]];
        const std::size_t q = slot[i];
        std::ptrdiff_t l = static_cast<std::ptrdiff_t>(q) - 1;
        std::size_t r = q + 1;
        double d = 0.0;
        const std::size_t ki = std::min(kk, cy.size() - 1);
        out.neighbors[i] = static_cast<std::uint32_t>(ki);
        for (std::size_t step = 0; step < ki; ++step) {
            const double dl = l >= 0 ? std::fabs(cy[static_cast<std::size_t>(l)] - y[i]) : kInf;
            const double dr = r < cy.size() ? std::fabs(cy[r] - y[i]) : kInf;
            if (dl <= dr) {
                d = dl;
                --l;
            } else {
                d = dr;
                ++r;
            }
        }
        out.radius[i] = d;
        out.within[i] = count_within(kept_y, y[i], d, true);
    }
    return out;
}

}  // namespace joinmi::knn
