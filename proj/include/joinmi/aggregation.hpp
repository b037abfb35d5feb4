#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "joinmi/table.hpp"
#include "joinmi/value.hpp"

namespace joinmi {

/// Featurization function collapsing the values of a repeated key.
enum class AggregateFn { Avg, Sum, Min, Max, Count, Mode, First };

std::string_view to_string(AggregateFn agg) noexcept;
std::optional<AggregateFn> parse_aggregate(std::string_view name);

/// Type of the aggregate's output for a given input type. Throws DataError
/// when the combination is invalid (AVG/SUM/MIN/MAX over text).
ValueType aggregate_output_type(AggregateFn agg, ValueType input);

/// AVG/SUM/MIN/MAX need numbers; COUNT yields the multiplicity; MODE picks
/// the most frequent value with ties going to the first occurrence; FIRST
/// returns the first value.
Value aggregate(std::span<const Value> values, AggregateFn agg);

/// Default featurization when the caller does not pick one.
AggregateFn default_aggregate(ValueType input) noexcept;

/// Candidate table grouped by key: unique keys in first-occurrence order.
struct AggregatedTable {
    ValueType value_type = ValueType::Discrete;
    std::vector<std::string> keys;
    std::vector<Value> values;
};

AggregatedTable aggregate_by_key(const TwoColumnTable& t, AggregateFn agg);

}  // namespace joinmi
