#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "joinmi/aggregation.hpp"
#include "joinmi/hashing.hpp"
#include "joinmi/table.hpp"

namespace joinmi {

enum class SketchMethod { Tupsk, Lv2sk, Prisk, Indsk, Csk };
enum class Side { Train, Aug };

std::string_view to_string(SketchMethod m) noexcept;
std::string_view to_string(Side s) noexcept;
std::optional<SketchMethod> parse_method(std::string_view name);
std::optional<Side> parse_side(std::string_view name);

inline constexpr int kSketchFormatVersion = 1;

struct SketchEntry {
    KeyHash key_hash;  // hash_key(raw key), seed 0
    Value value;

    friend bool operator==(const SketchEntry&, const SketchEntry&) = default;
};

/// Fixed-budget sample of a two-column table. Entries are kept sorted by key
/// hash; entries sharing a hash stay in source row order.
struct Sketch {
    int format_version = kSketchFormatVersion;
    SketchMethod method = SketchMethod::Tupsk;
    Side side = Side::Train;
    std::size_t budget = 0;
    std::optional<AggregateFn> agg;
    std::uint64_t seed = 0;
    std::size_t source_rows = 0;
    std::size_t source_distinct_keys = 0;
    ValueType value_type = ValueType::Discrete;
    std::vector<SketchEntry> entries;

    std::size_t size() const noexcept { return entries.size(); }
    friend bool operator==(const Sketch&, const Sketch&) = default;
};

struct SketchParams {
    Side side = Side::Train;
    std::size_t budget = 256;
    std::optional<AggregateFn> agg;  // required on the AUG side (except CSK)
    std::uint64_t seed = 0;
};

/// MurmurHash3 seed used for selection hashes; 0 for seed 0.
std::uint32_t selection_seed(std::uint64_t seed) noexcept;

/// Tuple sampling: TRAIN rows are ranked by the hash of <key, j> where j is
/// the 1-based occurrence of the key, giving every row the same inclusion
/// probability; AUG keys are aggregated and ranked by <key, 1>.
Sketch build_tupsk(const TwoColumnTable& t, const SketchParams& p);

/// Two-level sampling: the n distinct keys of minimum hash, then
/// max(1, floor(n * N_k / N)) rows per selected key (TRAIN) or the
/// aggregate (AUG).
Sketch build_lv2sk(const TwoColumnTable& t, const SketchParams& p);

/// As LV2SK, but the first level keeps the n keys of largest priority
/// N_k / u_k.
Sketch build_prisk(const TwoColumnTable& t, const SketchParams& p);

/// Independent Bernoulli sampling at rate n/N (TRAIN rows) or n/m_K (AUG
/// keys). Not coordinated across tables.
Sketch build_indsk(const TwoColumnTable& t, const SketchParams& p);

/// Correlation-sketch style: KMV over distinct keys keeping the first value
/// seen per key on both sides. Ignores p.agg.
Sketch build_csk(const TwoColumnTable& t, const SketchParams& p);

Sketch build_sketch(SketchMethod method, const TwoColumnTable& t, const SketchParams& p);

struct SketchJoin {
    JoinedSample sample;
    std::size_t matched_keys = 0;
};

/// Joins on key hashes: each TRAIN entry whose hash is present on the AUG
/// side yields (aug value, train value), in TRAIN entry order.
SketchJoin join_sketches(const Sketch& train, const Sketch& aug);

}  // namespace joinmi
