#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "joinmi/random.hpp"
#include "joinmi/table.hpp"

namespace joinmi::synth {

enum class Distribution { Trinomial, CdUnif };
enum class KeyMode { KeyInd, KeyDep };

std::string_view to_string(Distribution d) noexcept;
std::string_view to_string(KeyMode k) noexcept;
std::optional<Distribution> parse_distribution(std::string_view name);
std::optional<KeyMode> parse_key_mode(std::string_view name);

inline constexpr std::size_t kDefaultRows = 10'000;
inline constexpr double kMaxTargetMi = 3.5;
inline constexpr double kMinP = 0.15;
inline constexpr double kMaxP = 0.85;

struct SynthSpec {
    Distribution dist = Distribution::Trinomial;
    int m = 512;
    double p1 = 0.0;  // Trinomial only
    double p2 = 0.0;  // Trinomial only
    double target_mi = 0.0;  // the MI the Trinomial parameters were chosen for
    std::size_t rows = kDefaultRows;
    std::uint64_t seed = 0;
};

/// Generated (X, Y) columns.
struct PairSample {
    std::vector<double> x;
    std::vector<double> y;
};

struct TrinomialParams {
    double p1 = 0.0;
    double p2 = 0.0;
};

/// Correlation magnitude of the bivariate normal with MI `mi` nats.
double correlation_for_mi(double mi);

/// Pearson correlation of the two counts of Mult(m, <p1, p2>) (negative).
double trinomial_correlation(double p1, double p2);

/// Parameters whose correlation magnitude matches target_mi under the
/// bivariate-normal approximation: p1 ~ U(0.15, 0.85), p2 solved from it,
/// redrawn until p2 lies in [0.15, 0.85]. Throws after 10,000 attempts or for
/// a target outside (0, 3.5].
TrinomialParams select_trinomial_params(double target_mi, rng::Engine& engine);

/// The whole selection loop: the target is redrawn from U(0, 3.5) together
/// with p1 until the solved p2 is acceptable.
SynthSpec draw_trinomial_spec(int m, std::size_t rows, std::uint64_t seed);

/// Exact MI of the first two counts of Mult(m, <p1, p2>), in nats.
double true_mi_trinomial(int m, double p1, double p2);

/// log(m) - (m - 1) log(2) / m.
double true_mi_cdunif(int m);

double true_mi(const SynthSpec& spec);

/// Each row runs m categorical trials and records the two counts.
PairSample sample_trinomial(const SynthSpec& spec);

/// X ~ U{0..m-1}, Y ~ U[X, X + 2].
PairSample sample_cdunif(const SynthSpec& spec);

PairSample sample(const SynthSpec& spec);

struct TablePair {
    TwoColumnTable train;  // (key, y)
    TwoColumnTable aug;    // (key, x)
};

/// KeyInd: row i of both tables gets key "i". KeyDep: the train key is the
/// text of x and the augmentation table has one row per distinct x. Joining
/// the two recovers the pairs exactly. KeyDep throws DataError when x is not
/// integer-valued.
TablePair decompose(const PairSample& pairs, KeyMode mode);

}  // namespace joinmi::synth
