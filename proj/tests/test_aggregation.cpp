#include "doctest.h"

#include <algorithm>
#include <vector>

#include "joinmi/aggregation.hpp"
#include "support.hpp"

using namespace joinmi;

namespace {

std::vector<Value> nums(std::initializer_list<double> xs) { return {xs.begin(), xs.end()}; }
std::vector<Value> strs(std::initializer_list<const char*> xs) {
    std::vector<Value> out;
    for (auto x : xs) out.emplace_back(std::string(x));
    return out;
}

}  // namespace

TEST_CASE("aggregate worked values") {
    CHECK(std::get<double>(aggregate(nums({2, 2, 5}), AggregateFn::Avg)) == 3.0);
    CHECK(std::get<double>(aggregate(nums({0, 3, 3}), AggregateFn::Mode)) == 3.0);
    CHECK(std::get<double>(aggregate(nums({1}), AggregateFn::Count)) == 1.0);
    CHECK(std::get<double>(aggregate(nums({2, 2, 5}), AggregateFn::Sum)) == 9.0);
    CHECK(std::get<double>(aggregate(nums({2, -1, 5}), AggregateFn::Min)) == -1.0);
    CHECK(std::get<double>(aggregate(nums({2, -1, 5}), AggregateFn::Max)) == 5.0);
    CHECK(std::get<double>(aggregate(nums({7, 1}), AggregateFn::First)) == 7.0);
}

TEST_CASE("mode ties go to the first occurrence") {
    CHECK(std::get<double>(aggregate(nums({4, 1, 1, 4}), AggregateFn::Mode)) == 4.0);
    CHECK(std::get<double>(aggregate(nums({1, 4, 4, 1}), AggregateFn::Mode)) == 1.0);
    CHECK(std::get<std::string>(aggregate(strs({"b", "a", "a", "b", "c"}), AggregateFn::Mode)) == "b");
}

TEST_CASE("text inputs") {
    CHECK(std::get<double>(aggregate(strs({"x", "y", "x"}), AggregateFn::Count)) == 3.0);
    CHECK(std::get<std::string>(aggregate(strs({"x", "y"}), AggregateFn::First)) == "x");
    CHECK_THROWS_AS(aggregate(strs({"x"}), AggregateFn::Avg), DataError);
    CHECK_THROWS_AS(aggregate(strs({"x"}), AggregateFn::Max), DataError);
    CHECK_THROWS_AS(aggregate_output_type(AggregateFn::Sum, ValueType::Discrete), DataError);
    CHECK(aggregate_output_type(AggregateFn::Count, ValueType::Discrete) == ValueType::Numeric);
    CHECK(aggregate_output_type(AggregateFn::Mode, ValueType::Discrete) == ValueType::Discrete);
}

TEST_CASE("empty group is an error") {
    CHECK_THROWS(aggregate(std::vector<Value>{}, AggregateFn::First));
}

TEST_CASE("singletons aggregate to themselves except COUNT") {
    for (auto agg : {AggregateFn::Avg, AggregateFn::Sum, AggregateFn::Min, AggregateFn::Max,
                     AggregateFn::Mode, AggregateFn::First})
        CHECK(std::get<double>(aggregate(nums({4.5}), agg)) == 4.5);
    CHECK(std::get<double>(aggregate(nums({4.5}), AggregateFn::Count)) == 1.0);
}

TEST_CASE("order-free aggregates are permutation invariant") {
    rng::Engine e(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Value> v;
        const auto len = 1 + rng::bounded(e, 12);
        for (std::size_t i = 0; i < len; ++i) v.emplace_back(static_cast<double>(rng::bounded(e, 5)));
        auto w = v;
        std::shuffle(w.begin(), w.end(), e);
        for (auto agg : {AggregateFn::Avg, AggregateFn::Sum, AggregateFn::Min, AggregateFn::Max,
                         AggregateFn::Count})
            CHECK(std::get<double>(aggregate(v, agg)) ==
                  doctest::Approx(std::get<double>(aggregate(w, agg))));
    }
}

TEST_CASE("names") {
    for (auto agg : {AggregateFn::Avg, AggregateFn::Sum, AggregateFn::Min, AggregateFn::Max,
                     AggregateFn::Count, AggregateFn::Mode, AggregateFn::First})
        CHECK(parse_aggregate(to_string(agg)) == agg);
    CHECK(parse_aggregate("avg") == AggregateFn::Avg);
    CHECK_FALSE(parse_aggregate("median"));
    CHECK(default_aggregate(ValueType::Numeric) == AggregateFn::Avg);
    CHECK(default_aggregate(ValueType::Discrete) == AggregateFn::Mode);
}

TEST_CASE("aggregate_by_key keeps first-occurrence key order") {
    const auto t = test::numeric_table({"b", "a", "b", "c", "a"}, {1, 2, 3, 4, 6});
    const auto g = aggregate_by_key(t, AggregateFn::Avg);
    CHECK(g.keys == std::vector<std::string>{"b", "a", "c"});
    CHECK(std::get<double>(g.values[0]) == 2.0);
    CHECK(std::get<double>(g.values[1]) == 4.0);
    CHECK(g.value_type == ValueType::Numeric);
}
