#pragma once

#include <optional>
#include <span>
#include <vector>

namespace joinmi::metrics {

double mean_squared_error(std::span<const double> estimate, std::span<const double> reference);

/// nullopt when fewer than two points or a column is constant.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

/// Pearson correlation of average ranks (ties share their mean rank).
std::optional<double> spearman(std::span<const double> a, std::span<const double> b);

std::vector<double> average_ranks(std::span<const double> v);

}  // namespace joinmi::metrics
