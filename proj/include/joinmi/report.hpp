#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "joinmi/evalharness.hpp"

namespace joinmi::report {

inline constexpr int kReportFormatVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr std::string_view kRowsHeader =
    "dataset,key_mode,dist,m,method,n,estimator,seed,sketch_join_size,full_join_size,"
    "mi_sketch,mi_fulljoin,mi_true";

/// Rows sorted by (dataset, key_mode, method, estimator); absent values are
/// empty cells; reals use the shortest round-trip form.
std::string rows_to_csv(std::vector<eval::ExperimentRow> rows);
std::vector<eval::ExperimentRow> rows_from_csv(std::string_view text);

std::string summaries_to_csv(const std::vector<eval::MetricSummary>& summaries,
                             eval::Reference ref);

std::string timings_to_csv(const std::vector<eval::TimingRow>& rows);

struct ReportPaths {
    std::filesystem::path rows;
    std::filesystem::path summary;
    std::filesystem::path manifest;
};

/// Writes rows.csv, summary.csv and manifest.json into `out_dir` (created if
/// missing). `config` is echoed under "config" in the manifest.
ReportPaths emit_report(const std::vector<eval::ExperimentRow>& rows,
                        const std::vector<eval::MetricSummary>& summaries, eval::Reference ref,
                        const std::filesystem::path& out_dir, const nlohmann::ordered_json& config);

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace joinmi::report
