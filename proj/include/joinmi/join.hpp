#pragma once

#include "joinmi/aggregation.hpp"
#include "joinmi/table.hpp"

namespace joinmi {

/// Exact left-outer join used as the reference for sketch estimates:
/// aggregates `aug` by key with `agg`, then walks `train` in row order and
/// emits (aggregated x, train y) for every train row whose key exists in
/// `aug`. Rows without a match are dropped.
JoinedSample full_left_join(const TwoColumnTable& train, const TwoColumnTable& aug,
                            AggregateFn agg);

}  // namespace joinmi
