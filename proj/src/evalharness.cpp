#include "joinmi/evalharness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "joinmi/aggregation.hpp"
#include "joinmi/join.hpp"
#include "joinmi/metrics.hpp"
#include "joinmi/random.hpp"

namespace joinmi::eval {

namespace {

constexpr std::uint64_t kNoiseStream = 0x6e6f697365ull;
constexpr std::uint64_t kMStream = 0x6d2d64726177ull;
constexpr std::uint64_t kPairStream = 0x7061697273ull;

std::string pad_index(std::size_t i) {
    std::string s = std::to_string(i);
    if (s.size() < 5) s.insert(0, 5 - s.size(), '0');
    return s;
}

std::vector<Value> labels_of(const std::vector<Value>& v) {
    std::vector<Value> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(format_value(x));
    return out;
}

std::vector<Value> noisy(const std::vector<Value>& v, std::uint64_t seed) {
    const auto nums = detail::as_numbers(v);
    const auto p = perturb_to_continuous(nums, seed);
    return {p.begin(), p.end()};
}

template <class F>
std::optional<double> guarded(F&& f) {
    try {
        return f();
    } catch (const DataError&) {
    } catch (const std::invalid_argument&) {
    } catch (const std::domain_error&) {
    }
    return std::nullopt;
}

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<Estimator> default_estimators(synth::Distribution d) {
    if (d == synth::Distribution::Trinomial)
        return {Estimator::Mle, Estimator::MixedKsg, Estimator::DcKsg};
    return {Estimator::MixedKsg, Estimator::DcKsg};
}

std::vector<InstancePlan> plan_instances(const SynthConfig& cfg) {
    std::vector<InstancePlan> plan;
    if (cfg.m_sampling == MSampling::Grid) {
        for (int m : cfg.m_values)
            for (std::size_t i = 0; i < cfg.instances; ++i) {
                const std::size_t idx = plan.size();
                plan.push_back({m, cfg.seed + idx, idx});
            }
        return plan;
    }
    if (cfg.m_lo < 2 || cfg.m_hi < cfg.m_lo) throw std::invalid_argument("invalid m range");
    for (std::size_t i = 0; i < cfg.instances; ++i) {
        const std::uint64_t s = cfg.seed + i;
        rng::Engine e(rng::derive_seed(s, kMStream));
        int m;
        if (cfg.m_sampling == MSampling::Uniform) {
            m = cfg.m_lo + static_cast<int>(rng::bounded(e, static_cast<std::uint64_t>(cfg.m_hi - cfg.m_lo + 1)));
        } else {
            const double lo = std::log(static_cast<double>(cfg.m_lo));
            const double hi = std::log(static_cast<double>(cfg.m_hi));
            m = static_cast<int>(std::lround(std::exp(lo + (hi - lo) * rng::uniform01(e))));
            m = std::clamp(m, cfg.m_lo, cfg.m_hi);
        }
        plan.push_back({m, s, i});
    }
    return plan;
}

std::optional<double> estimate_synthetic(const JoinedSample& s, Estimator e,
                                         synth::Distribution d, int k,
                                         std::uint64_t noise_seed) {
    if (s.empty()) return std::nullopt;
    return guarded([&]() -> double {
        switch (e) {
            case Estimator::Mle:
            case Estimator::MixedKsg:
                return estimate_mi(s, e, k).value;
            case Estimator::Ksg: {
                JoinedSample t;
                t.x_type = t.y_type = ValueType::Numeric;
                t.x = noisy(s.x, rng::derive_seed(noise_seed, 1));
                t.y = noisy(s.y, rng::derive_seed(noise_seed, 2));
                return mi_ksg(t, k).value;
            }
            case Estimator::DcKsg: {
                JoinedSample t;
                t.x_type = ValueType::Discrete;
                t.y_type = ValueType::Numeric;
                t.x = labels_of(s.x);
                t.y = d == synth::Distribution::Trinomial ? noisy(s.y, rng::derive_seed(noise_seed, 2))
                                                          : s.y;
                return mi_dc_ksg(t, k).value;
            }
        }
        throw std::logic_error("unknown estimator");
    });
}

namespace {

std::vector<ExperimentRow> run_instance(const SynthConfig& cfg, const InstancePlan& ip,
                                        const std::vector<Estimator>& estimators) {
    synth::SynthSpec spec;
    if (cfg.dist == synth::Distribution::Trinomial) {
        spec = synth::draw_trinomial_spec(ip.m, cfg.rows, ip.seed);
    } else {
        spec.dist = synth::Distribution::CdUnif;
        spec.m = ip.m;
        spec.rows = cfg.rows;
        spec.seed = ip.seed;
    }
    const double truth = synth::true_mi(spec);
    const auto pairs = synth::sample(spec);
    const std::string dist_name(synth::to_string(cfg.dist));
    const std::string dataset = dist_name + "-m" + std::to_string(ip.m) + "-i" + pad_index(ip.index);
    const std::uint64_t noise_seed = rng::derive_seed(ip.seed, kNoiseStream);

    std::vector<ExperimentRow> rows;
    for (auto mode : cfg.key_modes) {
        const auto tables = synth::decompose(pairs, mode);
        const auto full = full_left_join(tables.train, tables.aug, AggregateFn::Avg);

        std::vector<std::optional<double>> full_est(estimators.size());
        if (cfg.full_join_estimates || cfg.methods.empty())
            for (std::size_t e = 0; e < estimators.size(); ++e)
                full_est[e] = estimate_synthetic(full, estimators[e], cfg.dist, cfg.k, noise_seed);

        ExperimentRow base;
        base.dataset = dataset;
        base.key_mode = std::string(synth::to_string(mode));
        base.dist = dist_name;
        base.m = ip.m;
        base.n = cfg.budget;
        base.seed = ip.seed;
        base.full_join_size = full.size();
        base.mi_true = truth;

        if (cfg.methods.empty()) {
            for (std::size_t e = 0; e < estimators.size(); ++e) {
                ExperimentRow r = base;
                r.method = std::string(kFullJoinMethod);
                r.estimator = std::string(to_string(estimators[e]));
                r.sketch_join_size = full.size();
                r.mi_sketch = full_est[e];
                r.mi_fulljoin = full_est[e];
                rows.push_back(std::move(r));
            }
            continue;
        }

        for (auto method : cfg.methods) {
            SketchParams tp{Side::Train, cfg.budget, std::nullopt, ip.seed};
            SketchParams ap{Side::Aug, cfg.budget, AggregateFn::Avg, ip.seed};
            const auto ts = build_sketch(method, tables.train, tp);
            const auto as = build_sketch(method, tables.aug, ap);
            const auto joined = join_sketches(ts, as);
            for (std::size_t e = 0; e < estimators.size(); ++e) {
                ExperimentRow r = base;
                r.method = std::string(to_string(method));
                r.estimator = std::string(to_string(estimators[e]));
                r.sketch_join_size = joined.sample.size();
                r.mi_sketch = estimate_synthetic(joined.sample, estimators[e], cfg.dist, cfg.k, noise_seed);
                r.mi_fulljoin = full_est[e];
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

}  // namespace

std::vector<ExperimentRow> run_synthetic_sweep(const SynthConfig& cfg) {
    const auto plan = plan_instances(cfg);
    const auto estimators = cfg.estimators.empty() ? default_estimators(cfg.dist) : cfg.estimators;
    std::vector<std::vector<ExperimentRow>> per(plan.size());
    std::vector<std::exception_ptr> errors(plan.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(plan.size()); ++i) {
        try {
            per[i] = run_instance(cfg, plan[i], estimators);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    rethrow_first(errors);

    std::vector<ExperimentRow> rows;
    for (auto& v : per) std::move(v.begin(), v.end(), std::back_inserter(rows));
    return rows;
}

namespace {

std::string describe(const ColumnPair& p) {
    return p.file.filename().string() + "[" + p.key_column + ">" + p.value_column + "]";
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(const std::vector<ColumnPair>& cp,
                                                              std::size_t want,
                                                              std::uint64_t seed) {
    const std::size_t c = cp.size();
    std::map<std::filesystem::path, std::size_t> per_file;
    for (const auto& p : cp) ++per_file[p.file];
    std::size_t valid = c * c;
    for (const auto& [f, cnt] : per_file) valid -= cnt * cnt;

    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (want >= valid) {
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (cp[i].file != cp[j].file) out.emplace_back(i, j);
        return out;
    }
    rng::Engine e(rng::derive_seed(seed, kPairStream));
    std::set<std::pair<std::size_t, std::size_t>> seen;
    while (out.size() < want) {
        const std::size_t i = rng::bounded(e, c);
        const std::size_t j = rng::bounded(e, c);
        if (cp[i].file == cp[j].file) continue;
        if (seen.emplace(i, j).second) out.emplace_back(i, j);
    }
    return out;
}

}  // namespace

std::vector<ExperimentRow> run_real_sweep(const std::filesystem::path& corpus_dir,
                                          const RealConfig& cfg) {
    std::error_code ec;
    if (!std::filesystem::is_directory(corpus_dir, ec))
        throw DataError("corpus directory not readable: " + corpus_dir.string());
    const auto listing = enumerate_column_pairs(corpus_dir, cfg.csv);
    if (listing.pairs.empty()) throw DataError("corpus has no usable column pairs: " + corpus_dir.string());

    const auto pairs = sample_pairs(listing.pairs, cfg.pair_samples, cfg.seed);

    std::vector<std::optional<TwoColumnTable>> tables(listing.pairs.size());
    for (const auto& [i, j] : pairs)
        for (std::size_t t : {i, j})
            if (!tables[t]) {
                const auto& p = listing.pairs[t];
                tables[t] = load_csv(p.file, p.key_column, p.value_column, cfg.csv).table;
            }

    std::vector<std::vector<ExperimentRow>> per(pairs.size());
    std::vector<std::exception_ptr> errors(pairs.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t q = 0; q < static_cast<std::ptrdiff_t>(pairs.size()); ++q) {
        try {
            const auto [i, j] = pairs[q];
            const auto& train = *tables[i];
            const auto& aug = *tables[j];
            const AggregateFn agg = default_aggregate(aug.value_type());
            const Estimator est =
                dispatch_estimator(aggregate_output_type(agg, aug.value_type()), train.value_type());
            const auto full = full_left_join(train, aug, agg);

            ExperimentRow base;
            base.dataset = describe(listing.pairs[i]) + "|" + describe(listing.pairs[j]);
            base.dist = "real";
            base.n = cfg.budget;
            base.estimator = std::string(to_string(est));
            base.seed = cfg.seed;
            base.full_join_size = full.size();
            if (!full.empty()) base.mi_fulljoin = guarded([&] { return estimate_mi(full, est, cfg.k).value; });

            for (auto method : cfg.methods) {
                const auto ts = build_sketch(method, train, {Side::Train, cfg.budget, std::nullopt, cfg.seed});
                const auto as = build_sketch(method, aug, {Side::Aug, cfg.budget, agg, cfg.seed});
                const auto joined = join_sketches(ts, as);
                ExperimentRow r = base;
                r.method = std::string(to_string(method));
                r.sketch_join_size = joined.sample.size();
                if (!joined.sample.empty())
                    r.mi_sketch = guarded([&] { return estimate_mi(joined.sample, est, cfg.k).value; });
                per[q].push_back(std::move(r));
            }
        } catch (...) {
            errors[q] = std::current_exception();
        }
    }
    rethrow_first(errors);

    std::vector<ExperimentRow> rows;
    for (auto& v : per) std::move(v.begin(), v.end(), std::back_inserter(rows));
    return rows;
}

std::string_view to_string(Reference r) noexcept {
    return r == Reference::TrueMi ? "true_mi" : "full_join";
}

std::vector<MetricSummary> summarize(const std::vector<ExperimentRow>& rows, Reference ref,
                                     const Grouping& g, std::size_t min_join) {
    struct Acc {
        MetricSummary s;
        std::vector<double> est, refv;
        double zero_fill_se = 0.0;
        std::size_t zero_fill_rows = 0;
        double join_sum = 0.0;
        std::size_t join_rows = 0;
    };
    std::vector<Acc> groups;
    std::map<std::string, std::size_t> index;

    for (const auto& r : rows) {
        MetricSummary key;
        if (g.dist) key.dist = r.dist;
        if (g.key_mode) key.key_mode = r.key_mode;
        if (g.method) key.method = r.method;
        if (g.estimator) key.estimator = r.estimator;
        const std::string id = key.dist + '\x1f' + key.key_mode + '\x1f' + key.method + '\x1f' + key.estimator;
        auto [it, fresh] = index.emplace(id, groups.size());
        if (fresh) {
            groups.push_back({});
            groups.back().s = key;
            groups.back().s.n = r.n;
        }
        Acc& a = groups[it->second];
        const bool big_enough = min_join == 0 || r.sketch_join_size > min_join;
        if (big_enough) {
            a.join_sum += static_cast<double>(r.sketch_join_size);
            ++a.join_rows;
        }
        const auto& reference = ref == Reference::TrueMi ? r.mi_true : r.mi_fulljoin;
        if (big_enough && reference) {
            const double d = r.mi_sketch.value_or(0.0) - *reference;
            a.zero_fill_se += d * d;
            ++a.zero_fill_rows;
        }
        if (!big_enough || !r.mi_sketch || !reference) {
            ++a.s.excluded;
            continue;
        }
        a.est.push_back(*r.mi_sketch);
        a.refv.push_back(*reference);
    }

    std::vector<MetricSummary> out;
    out.reserve(groups.size());
    for (auto& a : groups) {
        MetricSummary s = a.s;
        s.count = a.est.size();
        if (s.count > 0) {
            s.mse = metrics::mean_squared_error(a.est, a.refv);
            s.rmse = std::sqrt(s.mse);
            s.pearson_r = metrics::pearson(a.est, a.refv);
            s.spearman_r = metrics::spearman(a.est, a.refv);
        } else {
            s.mse = s.rmse = std::numeric_limits<double>::quiet_NaN();
        }
        if (a.zero_fill_rows > 0) s.mse_failed_as_zero = a.zero_fill_se / static_cast<double>(a.zero_fill_rows);
        if (a.join_rows > 0) s.avg_sketch_join_size = a.join_sum / static_cast<double>(a.join_rows);
        if (s.n > 0) s.join_size_pct = 100.0 * s.avg_sketch_join_size / static_cast<double>(s.n);
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

template <class F>
double median_ms(F&& f, int repeats) {
    f();
    std::vector<double> t;
    for (int i = 0; i < repeats; ++i) {
        const auto a = std::chrono::steady_clock::now();
        f();
        const auto b = std::chrono::steady_clock::now();
        t.push_back(std::chrono::duration<double, std::milli>(b - a).count());
    }
    std::sort(t.begin(), t.end());
    const std::size_t h = t.size() / 2;
    return t.size() % 2 ? t[h] : 0.5 * (t[h - 1] + t[h]);
}

}  // namespace

std::vector<TimingRow> time_comparison(std::size_t n, const std::vector<std::size_t>& N_list,
                                       std::uint64_t seed, int m, int repeats) {
    if (n == 0) throw std::invalid_argument("budget must be positive");
    if (repeats < 1) throw std::invalid_argument("repeats must be positive");
    std::vector<TimingRow> out;
    for (std::size_t N : N_list) {
        if (N < n) throw std::invalid_argument("table size below the sketch budget");
        const auto spec = synth::draw_trinomial_spec(m, N, seed);
        const auto tables = synth::decompose(synth::sample(spec), synth::KeyMode::KeyInd);
        const Estimator est = dispatch_estimator(ValueType::Numeric, ValueType::Numeric);
        const auto ts = build_tupsk(tables.train, {Side::Train, n, std::nullopt, seed});
        const auto as = build_tupsk(tables.aug, {Side::Aug, n, AggregateFn::Avg, seed});

        JoinedSample full;
        SketchJoin sj;
        TimingRow row;
        row.N = N;
        row.full_join_ms = median_ms([&] { full = full_left_join(tables.train, tables.aug, AggregateFn::Avg); }, repeats);
        row.sketch_join_ms = median_ms([&] { sj = join_sketches(ts, as); }, repeats);
        volatile double sink = 0.0;
        row.full_mi_ms = median_ms([&] { sink = estimate_mi(full, est).value; }, repeats);
        row.sketch_mi_ms = median_ms([&] { sink = estimate_mi(sj.sample, est).value; }, repeats);
        (void)sink;
        row.sketch_join_size = sj.sample.size();
        out.push_back(row);
    }
    return out;
}

std::optional<Preset> parse_preset(std::string_view name) {
    if (name == "table3") return Preset::Table3;
    if (name == "fig2") return Preset::Fig2;
    return std::nullopt;
}

std::string_view to_string(Preset p) noexcept { return p == Preset::Table3 ? "table3" : "fig2"; }

std::vector<SynthConfig> preset_configs(Preset p, std::uint64_t seed) {
    const std::vector<SketchMethod> all{SketchMethod::Tupsk, SketchMethod::Lv2sk, SketchMethod::Prisk,
                                        SketchMethod::Indsk, SketchMethod::Csk};
    if (p == Preset::Table3) {
        std::vector<SynthConfig> out;
        SynthConfig t;
        t.dist = synth::Distribution::Trinomial;
        t.m_values = {16, 32, 64, 128, 256, 512, 1024};
        t.methods = all;
        t.budget = 256;
        t.instances = 30;
        t.seed = seed;
        out.push_back(t);
        SynthConfig c = t;
        c.dist = synth::Distribution::CdUnif;
        c.m_sampling = MSampling::Uniform;
        c.m_lo = 2;
        c.m_hi = 256;
        c.instances = 210;
        out.push_back(c);
        return out;
    }
    SynthConfig c;
    c.dist = synth::Distribution::Trinomial;
    c.m_values = {512};
    c.methods = {SketchMethod::Lv2sk, SketchMethod::Tupsk};
    c.budget = 256;
    c.instances = 200;
    c.seed = seed;
    return {c};
}

}  // namespace joinmi::eval
