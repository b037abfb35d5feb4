#include "joinmi/aggregation.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace joinmi {
namespace {

constexpr std::array<std::pair<AggregateFn, std::string_view>, 7> kNames{{
    {AggregateFn::Avg, "avg"},
    {AggregateFn::Sum, "sum"},
    {AggregateFn::Min, "min"},
    {AggregateFn::Max, "max"},
    {AggregateFn::Count, "count"},
    {AggregateFn::Mode, "mode"},
    {AggregateFn::First, "first"},
}};

bool needs_numbers(AggregateFn agg) {
    return agg == AggregateFn::Avg || agg == AggregateFn::Sum || agg == AggregateFn::Min ||
           agg == AggregateFn::Max;
}

}  // namespace

std::string_view to_string(AggregateFn agg) noexcept {
    for (const auto& [fn, name] : kNames)
        if (fn == agg) return name;
    return "?";
}

std::optional<AggregateFn> parse_aggregate(std::string_view name) {
    for (const auto& [fn, n] : kNames)
        if (n == name) return fn;
    return std::nullopt;
}

ValueType aggregate_output_type(AggregateFn agg, ValueType input) {
    if (needs_numbers(agg) && input != ValueType::Numeric)
        throw DataError(std::string(to_string(agg)) + " requires a numeric column");
    return agg == AggregateFn::Count ? ValueType::Numeric : input;
}

AggregateFn default_aggregate(ValueType input) noexcept {
    return input == ValueType::Numeric ? AggregateFn::Avg : AggregateFn::Mode;
}

Value aggregate(std::span<const Value> values, AggregateFn agg) {
    if (values.empty()) throw std::invalid_argument("aggregate of an empty group");
    const ValueType input = type_of(values.front());
    aggregate_output_type(agg, input);

    switch (agg) {
        case AggregateFn::First:
            return values.front();
        case AggregateFn::Count:
            return static_cast<double>(values.size());
        case AggregateFn::Mode: {
            // first-occurrence tie rule: order[] keeps first-seen order, only a
            // strictly larger count replaces the current best
            std::unordered_map<Value, std::size_t> counts;
            std::vector<const Value*> order;
            for (const auto& v : values) {
                auto [it, inserted] = counts.try_emplace(v, 0);
                if (inserted) order.push_back(&v);
                ++it->second;
            }
            const Value* best = order.front();
            std::size_t best_count = counts.at(*best);
            for (const Value* v : order) {
                const std::size_t c = counts.at(*v);
                if (c > best_count) {
                    best = v;
                    best_count = c;
                }
            }
            return *best;
        }
        default:
            break;
    }

    std::vector<double> nums;
    nums.reserve(values.size());
    for (const auto& v : values) nums.push_back(std::get<double>(v));
    if (agg == AggregateFn::Min) return *std::min_element(nums.begin(), nums.end());
    if (agg == AggregateFn::Max) return *std::max_element(nums.begin(), nums.end());

    // summing in sorted order keeps SUM/AVG bit-identical under permutation
    std::sort(nums.begin(), nums.end());
    double acc = 0.0;
    for (double v : nums) acc += v;
    if (agg == AggregateFn::Avg) acc /= static_cast<double>(nums.size());
    return acc;
}

AggregatedTable aggregate_by_key(const TwoColumnTable& t, AggregateFn agg) {
    AggregatedTable out;
    out.value_type = aggregate_output_type(agg, t.value_type());

    std::unordered_map<std::string_view, std::size_t> slot;
    std::vector<std::vector<Value>> groups;
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto [it, inserted] = slot.try_emplace(t.keys()[i], groups.size());
        if (inserted) {
            out.keys.push_back(t.keys()[i]);
            groups.emplace_back();
        }
        groups[it->second].push_back(t.values()[i]);
    }
    out.values.reserve(groups.size());
    for (const auto& g : groups) out.values.push_back(aggregate(g, agg));
    return out;
}

}  // namespace joinmi
