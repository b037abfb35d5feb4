#include "joinmi/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

#include "joinmi/knn.hpp"

namespace joinmi {
namespace {

constexpr std::array<std::pair<Estimator, std::string_view>, 4> kNames{{
    {Estimator::Mle, "mle"},
    {Estimator::Ksg, "ksg"},
    {Estimator::MixedKsg, "mixed-ksg"},
    {Estimator::DcKsg, "dc-ksg"},
}};

// Counts are summed in ascending order so the result depends only on the
// multiset of frequencies (exact under relabeling and reordering).
double plugin_entropy(std::vector<std::uint64_t> codes) {
    std::sort(codes.begin(), codes.end());
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < codes.size();) {
        std::size_t j = i;
        while (j < codes.size() && codes[j] == codes[i]) ++j;
        counts.push_back(j - i);
        i = j;
    }
    std::sort(counts.begin(), counts.end());
    const double n = static_cast<double>(codes.size());
    double h = 0.0;
    for (std::size_t c : counts) {
        const double p = static_cast<double>(c) / n;
        h -= p * std::log(p);
    }
    return h;
}

void require_numeric(const JoinedSample& s, std::string_view who) {
    if (s.x_type != ValueType::Numeric || s.y_type != ValueType::Numeric)
        throw DataError(std::string(who) + " needs two numeric columns");
}

void require_size(const JoinedSample& s, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (s.size() <= static_cast<std::size_t>(k))
        throw DataError("sample of " + std::to_string(s.size()) + " points is too small for k=" +
                        std::to_string(k));
}

}  // namespace

std::string_view to_string(Estimator e) noexcept {
    for (const auto& [est, name] : kNames)
        if (est == e) return name;
    return "?";
}

std::optional<Estimator> parse_estimator(std::string_view name) {
    for (const auto& [est, n] : kNames)
        if (n == name) return est;
    return std::nullopt;
}

namespace detail {

std::vector<std::uint32_t> encode_symbols(std::span<const Value> values) {
    std::unordered_map<Value, std::uint32_t> codes;
    std::vector<std::uint32_t> out;
    out.reserve(values.size());
    for (const auto& v : values) {
        // bitwise identity for numbers: -0.0 and 0.0 are different symbols
        Value key = v;
        if (const auto* d = std::get_if<double>(&v); d && *d == 0.0 && std::signbit(*d))
            key = std::string("\x01-0");
        auto [it, inserted] = codes.try_emplace(std::move(key), static_cast<std::uint32_t>(codes.size()));
        out.push_back(it->second);
    }
    return out;
}

std::vector<double> as_numbers(std::span<const Value> values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(std::get<double>(v));
    return out;
}

double mle_mi_codes(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) {
    std::vector<std::uint64_t> cx(x.begin(), x.end());
    std::vector<std::uint64_t> cy(y.begin(), y.end());
    std::vector<std::uint64_t> cxy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        cxy[i] = (static_cast<std::uint64_t>(x[i]) << 32) | y[i];
    const double mi = plugin_entropy(std::move(cx)) + plugin_entropy(std::move(cy)) -
                      plugin_entropy(std::move(cxy));
    // exact zero when the joint equals a marginal up to rounding
    return std::max(0.0, mi);
}

double ksg_from_counts(const std::vector<std::size_t>& nx, const std::vector<std::size_t>& ny,
                       int k) {
    const std::size_t n = nx.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += digamma(static_cast<double>(nx[i] + 1)) + digamma(static_cast<double>(ny[i] + 1));
    return digamma(k) + digamma(static_cast<double>(n)) - acc / static_cast<double>(n);
}

double mixed_from_counts(const std::vector<double>& radius, const std::vector<std::size_t>& nx,
                         const std::vector<std::size_t>& ny, const std::vector<std::size_t>& ties,
                         int k) {
    const std::size_t n = nx.size();
    const double log_n = std::log(static_cast<double>(n));
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double kt = radius[i] == 0.0 ? static_cast<double>(ties[i] + 1) : static_cast<double>(k);
        acc += digamma(kt) + log_n -
               (digamma(static_cast<double>(nx[i] + 1)) + digamma(static_cast<double>(ny[i] + 1)));
    }
    return acc / static_cast<double>(n);
}

double dc_from_counts(const std::vector<std::size_t>& within,
                      const std::vector<std::size_t>& class_size,
                      const std::vector<std::uint8_t>& kept,
                      const std::vector<std::uint32_t>& neighbors, std::size_t kept_points) {
    double acc = 0.0;
    for (std::size_t i = 0; i < within.size(); ++i) {
        if (!kept[i]) continue;
        acc += digamma(static_cast<double>(class_size[i])) + digamma(static_cast<double>(within[i])) -
               digamma(static_cast<double>(neighbors[i]));
    }
    const double n = static_cast<double>(kept_points);
    return digamma(n) - acc / n;
}

}  // namespace detail

double entropy_mle(std::span<const Value> values) {
    if (values.empty()) throw DataError("entropy of an empty sample");
    const auto codes = detail::encode_symbols(values);
    return plugin_entropy(std::vector<std::uint64_t>(codes.begin(), codes.end()));
}

MiEstimate mi_mle(const JoinedSample& s) {
    if (s.empty()) throw DataError("mutual information of an empty sample");
    const auto x = detail::encode_symbols(s.x);
    const auto y = detail::encode_symbols(s.y);
    return MiEstimate{Estimator::Mle, detail::mle_mi_codes(x, y), s.size(), std::nullopt, 0};
}

double entropy_spacing_1nn(std::span<const double> values) {
    if (values.size() < 2) throw DataError("spacing entropy needs at least two values");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double floor_gap =
        std::numeric_limits<double>::epsilon() * std::max(1.0, v.back() - v.front());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) acc += std::log(std::max(v[i + 1] - v[i], floor_gap));
    const double n = static_cast<double>(v.size());
    return digamma(n) - digamma(1.0) + acc / (n - 1.0);
}

MiEstimate mi_ksg(const JoinedSample& s, int k) {
    require_numeric(s, "KSG");
    require_size(s, k);
    const auto x = detail::as_numbers(s.x);
    const auto y = detail::as_numbers(s.y);
    const auto c = knn::ksg_counts(x, y, k);
    return MiEstimate{Estimator::Ksg, detail::ksg_from_counts(c.nx, c.ny, k), s.size(), k, 0};
}

MiEstimate mi_mixed_ksg(const JoinedSample& s, int k) {
    require_numeric(s, "MixedKSG");
    require_size(s, k);
    const auto x = detail::as_numbers(s.x);
    const auto y = detail::as_numbers(s.y);
    const auto c = knn::mixed_counts(x, y, k);
    return MiEstimate{Estimator::MixedKsg, detail::mixed_from_counts(c.radius, c.nx, c.ny, c.ties, k),
                      s.size(), k, 0};
}

MiEstimate mi_dc_ksg(const JoinedSample& s, int k) {
    if (s.x_type == s.y_type) throw DataError("DC-KSG needs one discrete and one numeric column");
    if (k < 1) throw std::invalid_argument("k must be positive");
    const bool x_discrete = s.x_type == ValueType::Discrete;
    const auto labels = detail::encode_symbols(x_discrete ? s.x : s.y);
    const auto y = detail::as_numbers(x_discrete ? s.y : s.x);
    const auto c = knn::class_counts(labels, y, k);
    if (c.kept_points < 2) throw DataError("every class has a single member");
    const double v = detail::dc_from_counts(c.within, c.class_size, c.kept, c.neighbors, c.kept_points);
    return MiEstimate{Estimator::DcKsg, v, s.size(), k, s.size() - c.kept_points};
}

std::vector<double> perturb_to_continuous(std::span<const double> values, std::uint64_t seed) {
    double sd = 0.0;
    if (values.size() > 1) {
        const double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    const double sigma = 1e-6 * std::max(sd, 1.0);
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(v + noise(engine));
    return out;
}

Estimator dispatch_estimator(ValueType x_type, ValueType y_type) noexcept {
    if (x_type == ValueType::Discrete && y_type == ValueType::Discrete) return Estimator::Mle;
    if (x_type == ValueType::Numeric && y_type == ValueType::Numeric) return Estimator::MixedKsg;
    return Estimator::DcKsg;
}

MiEstimate estimate_mi(const JoinedSample& s, Estimator e, int k) {
    switch (e) {
        case Estimator::Mle:
            return mi_mle(s);
        case Estimator::Ksg:
            return mi_ksg(s, k);
        case Estimator::MixedKsg:
            return mi_mixed_ksg(s, k);
        case Estimator::DcKsg:
            return mi_dc_ksg(s, k);
    }
    throw std::invalid_argument("unknown estimator");
}

}  // namespace joinmi
