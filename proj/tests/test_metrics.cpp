#include "doctest.h"

#include <cmath>
#include <vector>

#include "joinmi/metrics.hpp"

using namespace joinmi::metrics;

TEST_CASE("mean squared error") {
    const std::vector<double> a{1, 2, 3}, b{1, 2, 5};
    CHECK(mean_squared_error(a, a) == 0.0);
    CHECK(mean_squared_error(a, b) == doctest::Approx(4.0 / 3));
    CHECK_THROWS(mean_squared_error(a, std::vector<double>{1}));
    CHECK_THROWS(mean_squared_error(std::vector<double>{}, std::vector<double>{}));
}

TEST_CASE("pearson") {
    const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1};
    CHECK(*pearson(a, b) == doctest::Approx(1.0));
    CHECK(*pearson(a, c) == doctest::Approx(-1.0));
    CHECK_FALSE(pearson(a, std::vector<double>(4, 1.0)));
    CHECK_FALSE(pearson(std::vector<double>{1}, std::vector<double>{2}));
}

TEST_CASE("ranks share ties") {
    CHECK(average_ranks(std::vector<double>{10, 20, 20, 5}) == std::vector<double>{2, 3.5, 3.5, 1});
    CHECK(average_ranks(std::vector<double>{}).empty());
}

TEST_CASE("spearman") {
    const std::vector<double> a{1, 2, 3, 4, 5}, b{1, 4, 9, 16, 25};
    CHECK(*spearman(a, b) == doctest::Approx(1.0));
    const std::vector<double> r{5, 4, 3, 2, 1};
    CHECK(*spearman(a, r) == doctest::Approx(-1.0));
    // monotone transforms do not matter, ties do
    const std::vector<double> t{1, 1, 2, 3, 4};
    CHECK(*spearman(a, t) == doctest::Approx(0.9746794345).epsilon(1e-9));
}
