#include "joinmi/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "joinmi/csv.hpp"
#include "joinmi/value.hpp"

namespace joinmi::report {

namespace {

std::string opt_number(const std::optional<double>& v) {
    if (!v || !std::isfinite(*v)) return {};
    return format_number(*v);
}

std::string real(double v) { return std::isfinite(v) ? format_number(v) : std::string(); }

template <class T>
T parse_int(const std::string& s, const char* what) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw DataError(std::string("bad ") + what + " in rows.csv: '" + s + "'");
    return v;
}

std::optional<double> parse_opt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto v = csv::parse_number(s);
    if (!v) throw DataError("bad number in rows.csv: '" + s + "'");
    return v;
}

}  // namespace

std::string rows_to_csv(std::vector<eval::ExperimentRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::tie(a.dataset, a.key_mode, a.method, a.estimator) <
               std::tie(b.dataset, b.key_mode, b.method, b.estimator);
    });
    std::string out(kRowsHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += csv::join_row({r.dataset, r.key_mode, r.dist, r.m ? std::to_string(*r.m) : std::string(),
                              r.method, std::to_string(r.n), r.estimator, std::to_string(r.seed),
                              std::to_string(r.sketch_join_size), std::to_string(r.full_join_size),
                              opt_number(r.mi_sketch), opt_number(r.mi_fulljoin), opt_number(r.mi_true)});
        out += '\n';
    }
    return out;
}

std::vector<eval::ExperimentRow> rows_from_csv(std::string_view text) {
    const auto doc = csv::parse(text);
    if (csv::join_row(doc.header) != kRowsHeader) throw DataError("unexpected rows.csv header");
    std::vector<eval::ExperimentRow> rows;
    rows.reserve(doc.rows.size());
    for (const auto& c : doc.rows) {
        if (c.size() != 13) throw DataError("rows.csv line has the wrong number of cells");
        eval::ExperimentRow r;
        r.dataset = c[0];
        r.key_mode = c[1];
        r.dist = c[2];
        if (!c[3].empty()) r.m = parse_int<int>(c[3], "m");
        r.method = c[4];
        r.n = parse_int<std::size_t>(c[5], "n");
        r.estimator = c[6];
        r.seed = parse_int<std::uint64_t>(c[7], "seed");
        r.sketch_join_size = parse_int<std::size_t>(c[8], "sketch_join_size");
        r.full_join_size = parse_int<std::size_t>(c[9], "full_join_size");
        r.mi_sketch = parse_opt(c[10]);
        r.mi_fulljoin = parse_opt(c[11]);
        r.mi_true = parse_opt(c[12]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string summaries_to_csv(const std::vector<eval::MetricSummary>& summaries, eval::Reference ref) {
    std::string out =
        "reference,dist,key_mode,method,estimator,n,count,excluded,avg_sketch_join_size,"
        "join_size_pct,mse,rmse,pearson_r,spearman_r,mse_failed_as_zero\n";
    for (const auto& s : summaries) {
        out += csv::join_row({std::string(eval::to_string(ref)), s.dist, s.key_mode, s.method, s.estimator,
                              std::to_string(s.n), std::to_string(s.count), std::to_string(s.excluded),
                              real(s.avg_sketch_join_size), real(s.join_size_pct), real(s.mse),
                              real(s.rmse), opt_number(s.pearson_r), opt_number(s.spearman_r),
                              opt_number(s.mse_failed_as_zero)});
        out += '\n';
    }
    return out;
}

std::string timings_to_csv(const std::vector<eval::TimingRow>& rows) {
    std::string out = "N,full_join_ms,sketch_join_ms,full_mi_ms,sketch_mi_ms,sketch_join_size\n";
    for (const auto& r : rows) {
        out += csv::join_row({std::to_string(r.N), real(r.full_join_ms), real(r.sketch_join_ms),
                              real(r.full_mi_ms), real(r.sketch_mi_ms), std::to_string(r.sketch_join_size)});
        out += '\n';
    }
    return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

ReportPaths emit_report(const std::vector<eval::ExperimentRow>& rows,
                        const std::vector<eval::MetricSummary>& summaries, eval::Reference ref,
                        const std::filesystem::path& out_dir, const nlohmann::ordered_json& config) {
    std::filesystem::create_directories(out_dir);
    ReportPaths p{out_dir / "rows.csv", out_dir / "summary.csv", out_dir / "manifest.json"};
    write_text(p.rows, rows_to_csv(rows));
    write_text(p.summary, summaries_to_csv(summaries, ref));

    nlohmann::ordered_json m;
    m["format_version"] = kReportFormatVersion;
    m["tool"] = "joinmi";
    m["tool_version"] = kToolVersion;
    m["reference"] = eval::to_string(ref);
    m["rows"] = rows.size();
    m["summaries"] = summaries.size();
    m["config"] = config;
    write_text(p.manifest, m.dump(2) + "\n");
    return p;
}

}  // namespace joinmi::report
