#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "joinmi/estimators.hpp"
#include "joinmi/sketch.hpp"
#include "joinmi/synthbench.hpp"
#include "joinmi/table.hpp"

namespace joinmi::eval {

/// One (instance, key mode, method, estimator) measurement. Absent estimates
/// mean the estimator could not run on that sample.
struct ExperimentRow {
    std::string dataset;
    std::string key_mode;  // "keyind" / "keydep"; empty for real corpora
    std::string dist;      // "trinomial" / "cdunif" / "real"
    std::optional<int> m;
    std::string method;  // sketch method name, or "full" for full-join-only rows
    std::size_t n = 0;
    std::string estimator;
    std::uint64_t seed = 0;
    std::size_t sketch_join_size = 0;
    std::size_t full_join_size = 0;
    std::optional<double> mi_sketch;
    std::optional<double> mi_fulljoin;
    std::optional<double> mi_true;

    friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

inline constexpr std::string_view kFullJoinMethod = "full";

enum class MSampling {
    Grid,        // every value of m_values, `instances` times each
    Uniform,     // m ~ U{m_lo..m_hi} per instance
    LogUniform,  // round(exp(U(ln m_lo, ln m_hi))) per instance
};

struct SynthConfig {
    synth::Distribution dist = synth::Distribution::Trinomial;
    MSampling m_sampling = MSampling::Grid;
    std::vector<int> m_values{512};
    int m_lo = 2;
    int m_hi = 1000;
    std::vector<synth::KeyMode> key_modes{synth::KeyMode::KeyInd, synth::KeyMode::KeyDep};
    std::vector<SketchMethod> methods{SketchMethod::Tupsk, SketchMethod::Lv2sk};
    std::vector<Estimator> estimators;  // empty: the distribution's defaults
    std::size_t budget = 256;
    std::size_t instances = 10;  // per grid value, or in total for sampled m
    std::size_t rows = synth::kDefaultRows;
    int k = kDefaultNeighbors;
    std::uint64_t seed = 0;
    bool full_join_estimates = false;
};

/// Trinomial: MLE, MixedKSG, DC-KSG. CDUnif: MixedKSG, DC-KSG.
std::vector<Estimator> default_estimators(synth::Distribution d);

/// The (m, seed) of every instance a config generates, in order.
struct InstancePlan {
    int m = 0;
    std::uint64_t seed = 0;
    std::size_t index = 0;
};
std::vector<InstancePlan> plan_instances(const SynthConfig& cfg);

/// Runs `e` on a synthetic join sample. DC-KSG reads x as class labels and,
/// for Trinomial, adds continuous noise to y; KSG perturbs both columns.
/// Returns nullopt when the estimator cannot run on the sample.
std::optional<double> estimate_synthetic(const JoinedSample& s, Estimator e,
                                         synth::Distribution d, int k,
                                         std::uint64_t noise_seed);

/// Instances run in parallel; output order depends only on the config.
std::vector<ExperimentRow> run_synthetic_sweep(const SynthConfig& cfg);

struct RealConfig {
    std::size_t pair_samples = 100;
    std::size_t budget = 1024;
    std::size_t min_join = 100;
    std::vector<SketchMethod> methods{SketchMethod::Tupsk, SketchMethod::Lv2sk,
                                      SketchMethod::Prisk};
    int k = kDefaultNeighbors;
    std::uint64_t seed = 0;
    CsvOptions csv;
};

/// Samples ordered pairs of distinct column pairs (train, candidate) from the
/// corpus, estimates with the dispatched estimator on each sketch join and on
/// the full join. Throws DataError for a missing or empty corpus.
std::vector<ExperimentRow> run_real_sweep(const std::filesystem::path& corpus_dir,
                                          const RealConfig& cfg);

enum class Reference { TrueMi, FullJoin };
std::string_view to_string(Reference r) noexcept;

struct Grouping {
    bool dist = true;
    bool key_mode = true;
    bool method = true;
    bool estimator = true;
};

struct MetricSummary {
    std::string dist;
    std::string key_mode;
    std::string method;
    std::string estimator;
    std::size_t n = 0;
    double mse = 0.0;
    double rmse = 0.0;
    std::optional<double> pearson_r;
    std::optional<double> spearman_r;
    std::optional<double> mse_failed_as_zero;  // absent estimates scored as 0
    double avg_sketch_join_size = 0.0;
    double join_size_pct = 0.0;
    std::size_t count = 0;     // rows entering the error metrics
    std::size_t excluded = 0;  // rows without an estimate or below min_join
};

/// One summary per group, in order of first appearance. Groups with no usable
/// row report count 0 and NaN errors. `min_join` drops rows whose sketch join
/// is not larger than it.
std::vector<MetricSummary> summarize(const std::vector<ExperimentRow>& rows, Reference ref,
                                     const Grouping& grouping = {},
                                     std::size_t min_join = 0);

struct TimingRow {
    std::size_t N = 0;
    double full_join_ms = 0.0;
    double sketch_join_ms = 0.0;
    double full_mi_ms = 0.0;
    double sketch_mi_ms = 0.0;
    std::size_t sketch_join_size = 0;
};

/// Median-of-`repeats` wall-clock timings on KeyInd Trinomial instances,
/// using the dispatched estimator for numeric columns. One warmup run first.
std::vector<TimingRow> time_comparison(std::size_t n, const std::vector<std::size_t>& N_list,
                                       std::uint64_t seed = 0, int m = 64, int repeats = 5);

// Named experiment grids.
enum class Preset { Table3, Fig2 };
std::optional<Preset> parse_preset(std::string_view name);
std::string_view to_string(Preset p) noexcept;
/// Table3 returns one config per distribution; Fig2 a single Trinomial one.
std::vector<SynthConfig> preset_configs(Preset p, std::uint64_t seed);

}  // namespace joinmi::eval
