#include "joinmi/synthbench.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace joinmi::synth {
namespace {

// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

std::vector<double> binomial_log_pmf(int m, double p) {
    std::vector<double> out(static_cast<std::size_t>(m) + 1);
    const double lm = std::lgamma(m + 1.0);
    for (int i = 0; i <= m; ++i)
        out[static_cast<std::size_t>(i)] = lm - std::lgamma(i + 1.0) - std::lgamma(m - i + 1.0) +
                                           i * std::log(p) + (m - i) * std::log1p(-p);
    return out;
}

}  // namespace

std::string_view to_string(Distribution d) noexcept {
    return d == Distribution::Trinomial ? "trinomial" : "cdunif";
}

std::string_view to_string(KeyMode k) noexcept { return k == KeyMode::KeyInd ? "keyind" : "keydep"; }

std::optional<Distribution> parse_distribution(std::string_view name) {
    if (name == "trinomial") return Distribution::Trinomial;
    if (name == "cdunif") return Distribution::CdUnif;
    return std::nullopt;
}

std::optional<KeyMode> parse_key_mode(std::string_view name) {
    if (name == "ind" || name == "keyind") return KeyMode::KeyInd;
    if (name == "dep" || name == "keydep") return KeyMode::KeyDep;
    return std::nullopt;
}

double correlation_for_mi(double mi) { return std::sqrt(-std::expm1(-2.0 * mi)); }

double trinomial_correlation(double p1, double p2) {
    return -p1 * p2 / (std::sqrt(p1 * (1.0 - p1)) * std::sqrt(p2 * (1.0 - p2)));
}

TrinomialParams select_trinomial_params(double target_mi, rng::Engine& engine) {
    if (!(target_mi > 0.0 && target_mi <= kMaxTargetMi))
        throw std::invalid_argument("target MI must lie in (0, 3.5]");
    const double r2 = -std::expm1(-2.0 * target_mi);
    for (int attempt = 0; attempt < 10'000; ++attempt) {
        const double p1 = kMinP + (kMaxP - kMinP) * rng::uniform01(engine);
        // r^2 = p1 p2 / ((1 - p1)(1 - p2)) solved for p2
        const double a = r2 * (1.0 - p1);
        const double p2 = a / (p1 + a);
        if (p2 >= kMinP && p2 <= kMaxP) return {p1, p2};
    }
    throw std::runtime_error("no trinomial parameters found for target MI " +
                             std::to_string(target_mi));
}

SynthSpec draw_trinomial_spec(int m, std::size_t rows, std::uint64_t seed) {
    rng::Engine engine(rng::derive_seed(seed, 0x747269u));
    for (int attempt = 0; attempt < 100'000; ++attempt) {
        double target = kMaxTargetMi * rng::uniform01(engine);
        if (target <= 0.0) continue;
        const double r2 = -std::expm1(-2.0 * target);
        const double p1 = kMinP + (kMaxP - kMinP) * rng::uniform01(engine);
        const double a = r2 * (1.0 - p1);
        const double p2 = a / (p1 + a);
        if (p2 >= kMinP && p2 <= kMaxP)
            return SynthSpec{Distribution::Trinomial, m, p1, p2, target, rows, seed};
    }
    throw std::runtime_error("trinomial parameter selection did not converge");
}

double true_mi_trinomial(int m, double p1, double p2) {
    if (m < 1 || !(p1 > 0.0) || !(p2 > 0.0) || !(p1 + p2 < 1.0))
        throw std::invalid_argument("invalid trinomial parameters");
    const auto lx = binomial_log_pmf(m, p1);
    const auto ly = binomial_log_pmf(m, p2);
    const double lm = std::lgamma(m + 1.0);
    const double l1 = std::log(p1), l2 = std::log(p2), l3 = std::log1p(-(p1 + p2));
    std::vector<double> lgf(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) lgf[static_cast<std::size_t>(i)] = std::lgamma(i + 1.0);

    // I = sum p(i,j) ln(p(i,j) / (p(i) p(j)))
    CompensatedSum mi;
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; i + j <= m; ++j) {
            const int rest = m - i - j;
            const double lp = lm - lgf[static_cast<std::size_t>(i)] - lgf[static_cast<std::size_t>(j)] -
                              lgf[static_cast<std::size_t>(rest)] + i * l1 + j * l2 + rest * l3;
            const double p = std::exp(lp);
            if (p == 0.0) continue;
            mi.add(p * (lp - lx[static_cast<std::size_t>(i)] - ly[static_cast<std::size_t>(j)]));
        }
    }
    return mi.value();
}

double true_mi_cdunif(int m) {
    if (m < 2) throw std::invalid_argument("CDUnif needs m >= 2");
    return std::log(static_cast<double>(m)) - (m - 1) * std::log(2.0) / m;
}

double true_mi(const SynthSpec& spec) {
    return spec.dist == Distribution::Trinomial ? true_mi_trinomial(spec.m, spec.p1, spec.p2)
                                                : true_mi_cdunif(spec.m);
}

PairSample sample_trinomial(const SynthSpec& spec) {
    rng::Engine engine(rng::derive_seed(spec.seed, 0x73616du));
    const double c1 = spec.p1;
    const double c2 = spec.p1 + spec.p2;
    PairSample out;
    out.x.reserve(spec.rows);
    out.y.reserve(spec.rows);
    for (std::size_t r = 0; r < spec.rows; ++r) {
        int x = 0, y = 0;
        for (int t = 0; t < spec.m; ++t) {
            const double u = rng::uniform01(engine);
            x += u < c1;
            y += u >= c1 && u < c2;
        }
        out.x.push_back(x);
        out.y.push_back(y);
    }
    return out;
}

PairSample sample_cdunif(const SynthSpec& spec) {
    if (spec.m < 2) throw std::invalid_argument("CDUnif needs m >= 2");
    rng::Engine engine(rng::derive_seed(spec.seed, 0x63647566u));
    PairSample out;
    out.x.reserve(spec.rows);
    out.y.reserve(spec.rows);
    for (std::size_t r = 0; r < spec.rows; ++r) {
        const auto x = static_cast<double>(rng::bounded(engine, static_cast<std::uint64_t>(spec.m)));
        out.x.push_back(x);
        out.y.push_back(x + 2.0 * rng::uniform01(engine));
    }
    return out;
}

PairSample sample(const SynthSpec& spec) {
    return spec.dist == Distribution::Trinomial ? sample_trinomial(spec) : sample_cdunif(spec);
}

TablePair decompose(const PairSample& pairs, KeyMode mode) {
    if (pairs.x.size() != pairs.y.size()) throw std::invalid_argument("x and y differ in length");
    const std::size_t n = pairs.x.size();
    std::vector<Value> yv(pairs.y.begin(), pairs.y.end());

    if (mode == KeyMode::KeyInd) {
        std::vector<std::string> keys;
        keys.reserve(n);
        for (std::size_t i = 0; i < n; ++i) keys.push_back(std::to_string(i));
        std::vector<Value> xv(pairs.x.begin(), pairs.x.end());
        return TablePair{
            TwoColumnTable("train", "key", "y", ValueType::Numeric, keys, std::move(yv)),
            TwoColumnTable("aug", "key", "x", ValueType::Numeric, std::move(keys), std::move(xv))};
    }

    std::vector<std::string> train_keys;
    std::vector<std::string> aug_keys;
    std::vector<Value> aug_values;
    std::unordered_set<std::string> seen;
    train_keys.reserve(n);
    for (double x : pairs.x) {
        if (std::floor(x) != x) throw DataError("KeyDep needs a discrete (integer-valued) x");
        std::string key = format_number(x);
        if (seen.insert(key).second) {
            aug_keys.push_back(key);
            aug_values.emplace_back(x);
        }
        train_keys.push_back(std::move(key));
    }
    return TablePair{
        TwoColumnTable("train", "key", "y", ValueType::Numeric, std::move(train_keys), std::move(yv)),
        TwoColumnTable("aug", "key", "x", ValueType::Numeric, std::move(aug_keys),
                       std::move(aug_values))};
}

}  // namespace joinmi::synth
