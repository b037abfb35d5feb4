// joinmi: sketches, MI estimates and experiment sweeps from the command line.
//
// Exit codes: 0 success, 1 data or runtime error, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "joinmi/aggregation.hpp"
#include "joinmi/csv.hpp"
#include "joinmi/estimators.hpp"
#include "joinmi/evalharness.hpp"
#include "joinmi/join.hpp"
#include "joinmi/report.hpp"
#include "joinmi/sketch.hpp"
#include "joinmi/sketch_io.hpp"
#include "joinmi/synthbench.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace joinmi;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kMethods{"tupsk", "lv2sk", "prisk", "indsk", "csk"};
const std::vector<std::string> kSides{"train", "aug"};
const std::vector<std::string> kAggs{"avg", "sum", "min", "max", "count", "mode", "first"};

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto v = csv::parse_number(item);
        if (!v || *v < 1 || *v != static_cast<double>(static_cast<std::size_t>(*v)))
            throw UsageError("not a positive integer list: " + text);
        out.push_back(static_cast<std::size_t>(*v));
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

template <class T, class P>
std::vector<T> parse_names(const std::string& text, P parse, const char* what) {
    std::vector<T> out;
    for (const auto& s : split(text)) {
        auto v = parse(s);
        if (!v) throw UsageError(std::string("unknown ") + what + ": " + s);
        out.push_back(*v);
    }
    return out;
}

std::vector<synth::KeyMode> parse_key_modes(const std::string& text) {
    if (text == "both") return {synth::KeyMode::KeyInd, synth::KeyMode::KeyDep};
    return parse_names<synth::KeyMode>(text, synth::parse_key_mode, "key mode");
}

// "512", "16,64,256" (grid), "2:1000" (uniform), "2~1000" (log-uniform)
void parse_m(const std::string& text, eval::SynthConfig& cfg) {
    for (char sep : {':', '~'}) {
        const auto pos = text.find(sep);
        if (pos == std::string::npos) continue;
        const auto lo = parse_size_list(text.substr(0, pos));
        const auto hi = parse_size_list(text.substr(pos + 1));
        cfg.m_sampling = sep == ':' ? eval::MSampling::Uniform : eval::MSampling::LogUniform;
        cfg.m_lo = static_cast<int>(lo.at(0));
        cfg.m_hi = static_cast<int>(hi.at(0));
        if (cfg.m_lo < 2 || cfg.m_hi < cfg.m_lo) throw UsageError("invalid m range: " + text);
        return;
    }
    cfg.m_sampling = eval::MSampling::Grid;
    cfg.m_values.clear();
    for (auto v : parse_size_list(text)) cfg.m_values.push_back(static_cast<int>(v));
}

json config_json(const eval::SynthConfig& c) {
    json j;
    j["dist"] = synth::to_string(c.dist);
    switch (c.m_sampling) {
        case eval::MSampling::Grid: j["m"] = c.m_values; break;
        case eval::MSampling::Uniform: j["m"] = {{"uniform", {c.m_lo, c.m_hi}}}; break;
        case eval::MSampling::LogUniform: j["m"] = {{"log_uniform", {c.m_lo, c.m_hi}}}; break;
    }
    json modes = json::array();
    for (auto k : c.key_modes) modes.push_back(synth::to_string(k));
    j["key_modes"] = modes;
    json methods = json::array();
    for (auto m : c.methods) methods.push_back(to_string(m));
    j["methods"] = methods;
    json ests = json::array();
    for (auto e : c.estimators.empty() ? eval::default_estimators(c.dist) : c.estimators)
        ests.push_back(to_string(e));
    j["estimators"] = ests;
    j["n"] = c.budget;
    j["instances"] = c.instances;
    j["rows"] = c.rows;
    j["k"] = c.k;
    j["seed"] = c.seed;
    j["instance_seeds"] = "seed + instance index";
    j["full_join_estimates"] = c.full_join_estimates;
    return j;
}

void print_summary_table(const std::vector<eval::MetricSummary>& s) {
    std::cerr << "dist        method  avg_join    pct      mse  mse(fail=0)  count\n";
    for (const auto& r : s) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-10s  %-6s  %8.1f  %6.2f  %7.3f  %11.3f  %5zu\n", r.dist.c_str(),
                      r.method.c_str(), r.avg_sketch_join_size, r.join_size_pct, r.mse,
                      r.mse_failed_as_zero.value_or(std::nan("")), r.count);
        std::cerr << buf;
    }
}

JoinedSample perturbed(JoinedSample s, std::uint64_t seed) {
    auto jitter = [&](std::vector<Value>& col, std::uint64_t stream) {
        const auto p = perturb_to_continuous(detail::as_numbers(col), seed ^ stream);
        col.assign(p.begin(), p.end());
    };
    if (s.x_type == ValueType::Numeric) jitter(s.x, 0x78);
    if (s.y_type == ValueType::Numeric) jitter(s.y, 0x79);
    return s;
}

TwoColumnTable load_table(const std::string& path, const std::string& key, const std::string& value,
                          char delim) {
    auto loaded = load_csv(path, key, value, CsvOptions{delim});
    if (loaded.dropped_rows > 0)
        std::cerr << path << ": dropped " << loaded.dropped_rows << " rows with missing or invalid cells\n";
    return std::move(loaded.table);
}

void check_pair(const Sketch& t, const Sketch& a) {
    if (t.side != Side::Train) throw DataError("first sketch is not a TRAIN sketch");
    if (a.side != Side::Aug) throw DataError("second sketch is not an AUG sketch");
    if (t.method != a.method) throw DataError("sketches were built with different methods");
    if (t.seed != a.seed) throw DataError("sketches were built with different seeds");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"joinmi: mutual information across joins from fixed-size sketches"};
    app.require_subcommand(1);
    int threads = 0;
    if (const char* env = std::getenv("JOINMI_THREADS")) threads = std::atoi(env);
    app.add_option("--threads", threads, "Worker threads (default: JOINMI_THREADS or all cores)");
    char delimiter = ',';
    app.add_option("--delimiter", delimiter, "CSV delimiter");

    // sketch build
    auto* sketch = app.add_subcommand("sketch", "Sketch operations");
    sketch->require_subcommand(1);
    auto* build = sketch->add_subcommand("build", "Build a sketch from two CSV columns");
    std::string method_name, side_name, agg_name;
    std::size_t budget = 256;
    std::uint64_t seed = 0;
    std::string key_col, value_col, in_path, out_path;
    build->add_option("--method", method_name, "tupsk|lv2sk|prisk|indsk|csk")->required()->check(CLI::IsMember(kMethods));
    build->add_option("--side", side_name, "train|aug")->required()->check(CLI::IsMember(kSides));
    build->add_option("--n", budget, "Sketch budget")->check(CLI::PositiveNumber);
    build->add_option("--agg", agg_name, "AUG featurization: avg|sum|min|max|count|mode|first")
        ->check(CLI::IsMember(kAggs));
    build->add_option("--seed", seed, "Selection seed");
    build->add_option("--key-col", key_col, "Join key column")->required();
    build->add_option("--value-col", value_col, "Value column")->required();
    build->add_option("--in", in_path, "Input CSV")->required();
    build->add_option("--out", out_path, "Output sketch JSON")->required();

    // mi estimate
    auto* mi = app.add_subcommand("mi", "MI estimation");
    mi->require_subcommand(1);
    auto* est = mi->add_subcommand("estimate", "Estimate MI over sketches, CSV tables or a joined sample");
    std::string train_sketch, aug_sketch, train_csv, aug_csv, train_key, train_value, aug_key, aug_value;
    std::string joined_csv, x_col, y_col, estimator_name = "auto";
    bool full_join = false, perturb = false;
    int k = kDefaultNeighbors;
    std::string mi_agg_name, mi_method_name = "tupsk";
    std::size_t mi_budget = 256;
    std::uint64_t mi_seed = 0;
    est->add_option("--train-sketch", train_sketch, "TRAIN sketch JSON");
    est->add_option("--aug-sketch", aug_sketch, "AUG sketch JSON");
    est->add_option("--train", train_csv, "TRAIN table CSV");
    est->add_option("--train-key", train_key, "TRAIN key column");
    est->add_option("--train-value", train_value, "TRAIN target column");
    est->add_option("--aug", aug_csv, "Candidate table CSV");
    est->add_option("--aug-key", aug_key, "Candidate key column");
    est->add_option("--aug-value", aug_value, "Candidate feature column");
    est->add_flag("--full-join", full_join, "Estimate on the exact join instead of sketches");
    est->add_option("--method", mi_method_name, "Sketch method for CSV inputs")->check(CLI::IsMember(kMethods));
    est->add_option("--n", mi_budget, "Sketch budget for CSV inputs")->check(CLI::PositiveNumber);
    est->add_option("--agg", mi_agg_name, "Featurization for CSV inputs")->check(CLI::IsMember(kAggs));
    est->add_option("--joined", joined_csv, "Joined sample CSV");
    est->add_option("--x-col", x_col, "Feature column of --joined");
    est->add_option("--y-col", y_col, "Target column of --joined");
    est->add_option("--estimator", estimator_name, "auto|mle|ksg|mixed-ksg|dc-ksg")
        ->check(CLI::IsMember({"auto", "mle", "ksg", "mixed-ksg", "dc-ksg"}));
    est->add_option("--k", k, "Neighbors for k-NN estimators")->check(CLI::PositiveNumber);
    est->add_option("--perturb", perturb, "Add tiny noise to numeric columns (true|false)");
    est->add_option("--seed", mi_seed, "Seed for sketches and perturbation");

    // bench
    auto* bench = app.add_subcommand("bench", "Synthetic data, sweeps and timings");
    bench->require_subcommand(1);

    auto* synth_cmd = bench->add_subcommand("synth", "Generate synthetic table pairs, or run a preset sweep");
    std::string dist_name = "trinomial", m_text = "512", key_mode_text = "ind", preset_name;
    std::size_t n_rows = synth::kDefaultRows, instances = 1;
    std::uint64_t bench_seed = 0;
    std::string out_dir;
    synth_cmd->add_option("--dist", dist_name, "trinomial|cdunif")->check(CLI::IsMember({"trinomial", "cdunif"}));
    synth_cmd->add_option("--m", m_text, "m, a list a,b,c, a uniform range lo:hi or log-uniform lo~hi");
    synth_cmd->add_option("--key-mode", key_mode_text, "ind|dep|both");
    synth_cmd->add_option("--n-rows", n_rows, "Rows per instance")->check(CLI::PositiveNumber);
    synth_cmd->add_option("--instances", instances, "Instances (per m for lists)");
    synth_cmd->add_option("--seed", bench_seed, "Base seed");
    synth_cmd->add_option("--preset", preset_name, "table3|fig2")->check(CLI::IsMember({"table3", "fig2"}));
    synth_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* sweep_cmd = bench->add_subcommand("sweep", "Custom synthetic sweep");
    std::string methods_text = "tupsk,lv2sk", estimators_text;
    std::size_t sweep_budget = 256;
    int sweep_k = kDefaultNeighbors;
    bool sweep_full = false;
    sweep_cmd->add_option("--dist", dist_name, "trinomial|cdunif")->check(CLI::IsMember({"trinomial", "cdunif"}));
    sweep_cmd->add_option("--m", m_text, "m, a list a,b,c, a uniform range lo:hi or log-uniform lo~hi");
    sweep_cmd->add_option("--key-mode", key_mode_text, "ind|dep|both");
    sweep_cmd->add_option("--methods", methods_text, "Comma-separated sketch methods; empty for full join only");
    sweep_cmd->add_option("--estimators", estimators_text, "Comma-separated estimators (default per distribution)");
    sweep_cmd->add_option("--n", sweep_budget, "Sketch budget")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--k", sweep_k, "Neighbors")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--n-rows", n_rows, "Rows per instance")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--instances", instances, "Instances (per m for lists)");
    sweep_cmd->add_option("--seed", bench_seed, "Base seed");
    sweep_cmd->add_flag("--full-join", sweep_full, "Also estimate on the full join");
    sweep_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* real_cmd = bench->add_subcommand("real", "Sketch vs full-join estimates over a CSV corpus");
    std::string corpus;
    eval::RealConfig real_cfg;
    std::string real_methods = "tupsk,lv2sk,prisk";
    real_cmd->add_option("--corpus", corpus, "Directory of CSV files")->required();
    real_cmd->add_option("--n", real_cfg.budget, "Sketch budget")->check(CLI::PositiveNumber);
    real_cmd->add_option("--min-join", real_cfg.min_join, "Summaries keep sketch joins larger than this");
    real_cmd->add_option("--pairs", real_cfg.pair_samples, "Sampled table pairs");
    real_cmd->add_option("--methods", real_methods, "Comma-separated sketch methods");
    real_cmd->add_option("--k", real_cfg.k, "Neighbors")->check(CLI::PositiveNumber);
    real_cmd->add_option("--seed", real_cfg.seed, "Seed");
    real_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* time_cmd = bench->add_subcommand("time", "Full vs sketch join and estimation timings");
    std::size_t time_budget = 256;
    std::string N_text = "5000,20000";
    int time_m = 64, repeats = 5;
    time_cmd->add_option("--n", time_budget, "Sketch budget")->check(CLI::PositiveNumber);
    time_cmd->add_option("--N", N_text, "Comma-separated table sizes");
    time_cmd->add_option("--m", time_m, "Trinomial m")->check(CLI::PositiveNumber);
    time_cmd->add_option("--repeats", repeats, "Timed runs per measurement")->check(CLI::PositiveNumber);
    time_cmd->add_option("--seed", bench_seed, "Seed");
    time_cmd->add_option("--out", out_dir, "Optional output directory for timings.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (threads > 0) omp_set_num_threads(threads);

        if (build->parsed()) {
            const SketchMethod method = *parse_method(method_name);
            const Side side = *parse_side(side_name);
            std::optional<AggregateFn> agg;
            if (!agg_name.empty()) agg = parse_aggregate(agg_name);
            auto table = load_table(in_path, key_col, value_col, delimiter);
            if (side == Side::Aug && !agg && method != SketchMethod::Csk)
                agg = default_aggregate(table.value_type());
            const auto s = build_sketch(method, table, SketchParams{side, budget, agg, seed});
            write_sketch(s, out_path);
            std::cerr << "wrote " << out_path << ": " << to_string(method) << " " << to_string(side)
                      << " sketch, " << s.size() << " entries from " << s.source_rows << " rows / "
                      << s.source_distinct_keys << " keys\n";
            return 0;
        }

        if (est->parsed()) {
            JoinedSample sample;
            std::optional<std::size_t> sketch_join_size;
            const bool have_sketches = !train_sketch.empty() || !aug_sketch.empty();
            const bool have_tables = !train_csv.empty() || !aug_csv.empty();
            if (int(have_sketches) + int(have_tables) + int(!joined_csv.empty()) != 1)
                throw UsageError("give exactly one of: --train-sketch/--aug-sketch, --train/--aug, --joined");
            if (have_sketches) {
                if (train_sketch.empty() || aug_sketch.empty())
                    throw UsageError("--train-sketch and --aug-sketch go together");
                const auto t = read_sketch(train_sketch);
                const auto a = read_sketch(aug_sketch);
                check_pair(t, a);
                sample = join_sketches(t, a).sample;
                sketch_join_size = sample.size();
            } else if (have_tables) {
                if (train_csv.empty() || aug_csv.empty() || train_key.empty() || train_value.empty() ||
                    aug_key.empty() || aug_value.empty())
                    throw UsageError("--train/--aug need --train-key, --train-value, --aug-key, --aug-value");
                const auto train = load_table(train_csv, train_key, train_value, delimiter);
                const auto aug = load_table(aug_csv, aug_key, aug_value, delimiter);
                const SketchMethod mi_method = *parse_method(mi_method_name);
                const AggregateFn a =
                    mi_agg_name.empty() ? default_aggregate(aug.value_type()) : *parse_aggregate(mi_agg_name);
                if (full_join) {
                    sample = full_left_join(train, aug, a);
                } else {
                    const auto ts = build_sketch(mi_method, train, {Side::Train, mi_budget, std::nullopt, mi_seed});
                    const auto as = build_sketch(mi_method, aug, {Side::Aug, mi_budget, a, mi_seed});
                    sample = join_sketches(ts, as).sample;
                    sketch_join_size = sample.size();
                }
            } else {
                if (x_col.empty() || y_col.empty()) throw UsageError("--joined needs --x-col and --y-col");
                const auto xs = load_table(joined_csv, y_col, x_col, delimiter);
                const auto ys = load_table(joined_csv, x_col, y_col, delimiter);
                if (xs.size() != ys.size()) throw DataError("joined sample has missing cells");
                sample.x_type = xs.value_type();
                sample.y_type = ys.value_type();
                sample.x = xs.values();
                sample.y = ys.values();
            }
            if (sample.empty()) {
                std::cerr << "error: empty join\n";
                return 1;
            }
            const Estimator e = estimator_name == "auto" ? dispatch_estimator(sample.x_type, sample.y_type)
                                                         : *parse_estimator(estimator_name);
            if (perturb) sample = perturbed(std::move(sample), mi_seed);
            const auto r = estimate_mi(sample, e, k);
            json out;
            out["estimator"] = to_string(r.estimator);
            out["value_nats"] = r.value;
            out["n"] = r.sample_size;
            out["k"] = r.k ? json(*r.k) : json(nullptr);
            out["sketch_join_size"] = sketch_join_size ? json(*sketch_join_size) : json(nullptr);
            if (r.skipped) out["skipped"] = r.skipped;
            std::cout << out.dump() << "\n";
            return 0;
        }

        if (synth_cmd->parsed() && !preset_name.empty()) {
            const auto preset = *eval::parse_preset(preset_name);
            std::vector<eval::ExperimentRow> rows;
            json cfgs = json::array();
            for (const auto& c : eval::preset_configs(preset, bench_seed)) {
                std::cerr << "running " << synth::to_string(c.dist) << " sweep...\n";
                auto r = eval::run_synthetic_sweep(c);
                rows.insert(rows.end(), r.begin(), r.end());
                cfgs.push_back(config_json(c));
            }
            const auto summaries = eval::summarize(rows, eval::Reference::TrueMi);
            json cfg;
            cfg["preset"] = preset_name;
            cfg["seed"] = bench_seed;
            cfg["sweeps"] = cfgs;
            const auto paths = report::emit_report(rows, summaries, eval::Reference::TrueMi, out_dir, cfg);
            eval::Grouping by_method{true, false, true, false};
            print_summary_table(eval::summarize(rows, eval::Reference::TrueMi, by_method));
            std::cout << paths.rows.string() << "\n" << paths.summary.string() << "\n"
                      << paths.manifest.string() << "\n";
            return 0;
        }

        if (synth_cmd->parsed()) {
            const auto dist = *synth::parse_distribution(dist_name);
            eval::SynthConfig c;
            c.dist = dist;
            parse_m(m_text, c);
            c.key_modes = parse_key_modes(key_mode_text);
            c.instances = instances;
            c.rows = n_rows;
            c.seed = bench_seed;
            fs::create_directories(out_dir);
            json manifest;
            manifest["format_version"] = report::kReportFormatVersion;
            manifest["tool_version"] = report::kToolVersion;
            manifest["config"] = config_json(c);
            json list = json::array();
            for (const auto& ip : eval::plan_instances(c)) {
                synth::SynthSpec spec;
                if (dist == synth::Distribution::Trinomial) {
                    spec = synth::draw_trinomial_spec(ip.m, n_rows, ip.seed);
                } else {
                    spec.dist = dist;
                    spec.m = ip.m;
                    spec.rows = n_rows;
                    spec.seed = ip.seed;
                }
                const auto pairs = synth::sample(spec);
                for (auto mode : c.key_modes) {
                    const auto t = synth::decompose(pairs, mode);
                    const std::string stem = std::string(synth::to_string(dist)) + "-" + std::to_string(ip.index) +
                                             "-" + std::string(synth::to_string(mode));
                    for (const auto* tab : {&t.train, &t.aug}) {
                        std::string text = csv::join_row({tab->key_name(), tab->value_name()}) + "\n";
                        for (std::size_t i = 0; i < tab->size(); ++i)
                            text += csv::join_row({tab->keys()[i], format_value(tab->values()[i])}) + "\n";
                        report::write_text(fs::path(out_dir) / (stem + "-" + tab->name() + ".csv"), text);
                    }
                    json e;
                    e["instance"] = ip.index;
                    e["key_mode"] = synth::to_string(mode);
                    e["train"] = stem + "-train.csv";
                    e["aug"] = stem + "-aug.csv";
                    e["dist"] = synth::to_string(dist);
                    e["m"] = spec.m;
                    if (dist == synth::Distribution::Trinomial) {
                        e["p1"] = spec.p1;
                        e["p2"] = spec.p2;
                        e["target_mi"] = spec.target_mi;
                    }
                    e["rows"] = spec.rows;
                    e["seed"] = spec.seed;
                    e["true_mi"] = synth::true_mi(spec);
                    list.push_back(e);
                }
            }
            manifest["instances"] = list;
            report::write_text(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
            std::cerr << "wrote " << list.size() << " table pairs to " << out_dir << "\n";
            std::cout << (fs::path(out_dir) / "manifest.json").string() << "\n";
            return 0;
        }

        if (sweep_cmd->parsed()) {
            eval::SynthConfig c;
            c.dist = *synth::parse_distribution(dist_name);
            parse_m(m_text, c);
            c.key_modes = parse_key_modes(key_mode_text);
            c.methods = methods_text.empty() ? std::vector<SketchMethod>{}
                                             : parse_names<SketchMethod>(methods_text, parse_method, "method");
            if (!estimators_text.empty())
                c.estimators = parse_names<Estimator>(estimators_text, parse_estimator, "estimator");
            c.budget = sweep_budget;
            c.k = sweep_k;
            c.rows = n_rows;
            c.instances = instances;
            c.seed = bench_seed;
            c.full_join_estimates = sweep_full;
            const auto rows = eval::run_synthetic_sweep(c);
            const auto summaries = eval::summarize(rows, eval::Reference::TrueMi);
            const auto paths = report::emit_report(rows, summaries, eval::Reference::TrueMi, out_dir, config_json(c));
            std::cout << paths.rows.string() << "\n" << paths.summary.string() << "\n"
                      << paths.manifest.string() << "\n";
            return 0;
        }

        if (real_cmd->parsed()) {
            real_cfg.methods = parse_names<SketchMethod>(real_methods, parse_method, "method");
            real_cfg.csv.delimiter = delimiter;
            const auto rows = eval::run_real_sweep(corpus, real_cfg);
            const auto summaries = eval::summarize(rows, eval::Reference::FullJoin, {}, real_cfg.min_join);
            json cfg;
            cfg["corpus"] = fs::path(corpus).filename().string();
            cfg["pairs"] = real_cfg.pair_samples;
            cfg["n"] = real_cfg.budget;
            cfg["min_join"] = real_cfg.min_join;
            json methods = json::array();
            for (auto m : real_cfg.methods) methods.push_back(to_string(m));
            cfg["methods"] = methods;
            cfg["k"] = real_cfg.k;
            cfg["seed"] = real_cfg.seed;
            const auto paths = report::emit_report(rows, summaries, eval::Reference::FullJoin, out_dir, cfg);
            eval::Grouping by_method{true, false, true, false};
            const auto pooled = eval::summarize(rows, eval::Reference::FullJoin, by_method, real_cfg.min_join);
            std::cerr << "method  avg_join  spearman      mse  count\n";
            for (const auto& s : pooled) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%-6s  %8.1f  %8.3f  %7.3f  %5zu\n", s.method.c_str(),
                              s.avg_sketch_join_size, s.spearman_r.value_or(std::nan("")), s.mse, s.count);
                std::cerr << buf;
            }
            std::cout << paths.rows.string() << "\n" << paths.summary.string() << "\n"
                      << paths.manifest.string() << "\n";
            return 0;
        }

        if (time_cmd->parsed()) {
            const auto Ns = parse_size_list(N_text);
            const auto t = eval::time_comparison(time_budget, Ns, bench_seed, time_m, repeats);
            const auto text = report::timings_to_csv(t);
            if (!out_dir.empty()) {
                fs::create_directories(out_dir);
                report::write_text(fs::path(out_dir) / "timings.csv", text);
            }
            std::cout << text;
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
