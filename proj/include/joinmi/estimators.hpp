#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "joinmi/special.hpp"
#include "joinmi/table.hpp"
#include "joinmi/value.hpp"

namespace joinmi {

enum class Estimator { Mle, Ksg, MixedKsg, DcKsg };

std::string_view to_string(Estimator e) noexcept;
std::optional<Estimator> parse_estimator(std::string_view name);

inline constexpr int kDefaultNeighbors = 3;

/// All values in nats. k-NN estimates are reported unclipped and may be
/// negative.
struct MiEstimate {
    Estimator estimator = Estimator::Mle;
    double value = 0.0;
    std::size_t sample_size = 0;
    std::optional<int> k;
    std::size_t skipped = 0;  // DC-KSG points of singleton classes
};

/// Plug-in entropy -sum p ln p. Numbers are compared bitwise as symbols.
double entropy_mle(std::span<const Value> values);

/// H(X) + H(Y) - H(X,Y) with plug-in entropies; any value types.
MiEstimate mi_mle(const JoinedSample& s);

/// 1-NN spacing estimate of differential entropy:
///   psi(N) - psi(1) + mean ln(x_(i+1) - x_(i)).
/// Zero spacings are floored at eps * max(1, range).
double entropy_spacing_1nn(std::span<const double> values);

/// Kraskov-Stoegbauer-Grassberger (first variant). Both columns Numeric.
MiEstimate mi_ksg(const JoinedSample& s, int k = kDefaultNeighbors);

/// Gao et al. mixed estimator; handles ties and discrete atoms. Both
/// columns Numeric. Per point:
///   psi(k~) + ln N - psi(n_x + 1) - psi(n_y + 1)
/// with k~ = k and strict marginal counts when the k-th distance is positive,
/// and k~ = joint duplicates + 1 with zero-distance counts when it is 0.
MiEstimate mi_mixed_ksg(const JoinedSample& s, int k = kDefaultNeighbors);

/// Ross estimator for one Discrete and one Numeric column (either order):
///   psi(N) - mean[psi(N_c) + psi(m_i) - psi(k_i)],  k_i = min(k, N_c - 1).
/// Singleton classes are dropped and counted in `skipped`.
MiEstimate mi_dc_ksg(const JoinedSample& s, int k = kDefaultNeighbors);

/// Adds N(0, sigma^2) noise, sigma = 1e-6 * max(sample sd, 1).
std::vector<double> perturb_to_continuous(std::span<const double> values, std::uint64_t seed);

/// (Discrete, Discrete) -> MLE; (Numeric, Numeric) -> MixedKSG; mixed -> DC-KSG.
Estimator dispatch_estimator(ValueType x_type, ValueType y_type) noexcept;

/// Runs `e` on the sample. Throws DataError when the sample cannot support it.
MiEstimate estimate_mi(const JoinedSample& s, Estimator e, int k = kDefaultNeighbors);

// Array-level forms used by the harness and the kernels' tests.
namespace detail {
double mle_mi_codes(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y);
double ksg_from_counts(const std::vector<std::size_t>& nx, const std::vector<std::size_t>& ny,
                       int k);
double mixed_from_counts(const std::vector<double>& radius, const std::vector<std::size_t>& nx,
                         const std::vector<std::size_t>& ny, const std::vector<std::size_t>& ties,
                         int k);
double dc_from_counts(const std::vector<std::size_t>& within,
                      const std::vector<std::size_t>& class_size,
                      const std::vector<std::uint8_t>& kept,
                      const std::vector<std::uint32_t>& neighbors, std::size_t kept_points);
/// Dense codes for symbols in first-occurrence order.
std::vector<std::uint32_t> encode_symbols(std::span<const Value> values);
std::vector<double> as_numbers(std::span<const Value> values);
}  // namespace detail

}  // namespace joinmi
