#include "joinmi/join.hpp"

#include <string_view>
#include <unordered_map>

namespace joinmi {

JoinedSample full_left_join(const TwoColumnTable& train, const TwoColumnTable& aug,
                            AggregateFn agg) {
    const AggregatedTable grouped = aggregate_by_key(aug, agg);
    std::unordered_map<std::string_view, std::size_t> index;
    index.reserve(grouped.keys.size());
    for (std::size_t i = 0; i < grouped.keys.size(); ++i) index.emplace(grouped.keys[i], i);

    JoinedSample out;
    out.x_type = grouped.value_type;
    out.y_type = train.value_type();
    out.x.reserve(train.size());
    out.y.reserve(train.size());
    for (std::size_t r = 0; r < train.size(); ++r) {
        auto it = index.find(train.keys()[r]);
        if (it == index.end()) continue;
        out.push_back(grouped.values[it->second], train.values()[r]);
    }
    return out;
}

}  // namespace joinmi
