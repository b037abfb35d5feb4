#include "doctest.h"

#include <cmath>
#include <vector>

#include "joinmi/sketch.hpp"
#include "support.hpp"

using namespace joinmi;

// Monte-Carlo checks of inclusion probabilities. Rows are identified by
// their value, which is the row index.

namespace {

std::vector<int> inclusion_counts(SketchMethod m, const TwoColumnTable& t, std::size_t n, int seeds) {
    std::vector<int> hits(t.size(), 0);
    for (int s = 0; s < seeds; ++s) {
        const auto sk = build_sketch(m, t, {Side::Train, n, std::nullopt, static_cast<std::uint64_t>(s)});
        for (const auto& e : sk.entries) ++hits[static_cast<std::size_t>(std::get<double>(e.value))];
    }
    return hits;
}

// Upper 1% point of chi-square with `df` degrees of freedom (Wilson-Hilferty).
double chi2_critical_01(double df) {
    const double z = 2.3263478740408408;
    const double a = 2.0 / (9.0 * df);
    return df * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

}  // namespace

TEST_CASE("chi-square critical value approximation") {
    CHECK(chi2_critical_01(99) == doctest::Approx(134.642).epsilon(2e-3));
    CHECK(chi2_critical_01(9) == doctest::Approx(21.666).epsilon(5e-3));
}

TEST_CASE("TUPSK row inclusion is uniform on a skewed table") {
    const auto t = test::skewed_table();
    constexpr int seeds = 20000;
    const auto hits = inclusion_counts(SketchMethod::Tupsk, t, 1, seeds);
    const double expected = static_cast<double>(seeds) / t.size();
    double chi2 = 0.0;
    for (int h : hits) chi2 += (h - expected) * (h - expected) / expected;
    INFO("chi2 = " << chi2);
    CHECK(chi2 < chi2_critical_01(static_cast<double>(t.size() - 1)));
}

TEST_CASE("LV2SK under-samples rows of the frequent key") {
    const auto t = test::skewed_table();
    constexpr int seeds = 20000;
    const auto hits = inclusion_counts(SketchMethod::Lv2sk, t, 5, seeds);
    // Row 0 has key a; rows 5.. have key f.
    double f_hits = 0.0;
    for (std::size_t r = 5; r < t.size(); ++r) f_hits += hits[r];
    const double p_f = f_hits / (95.0 * seeds);
    const double p_a = static_cast<double>(hits[0]) / seeds;
    // floored quota: (5/6) * 4/95
    CHECK(p_f == doctest::Approx(5.0 / 6.0 * 4.0 / 95.0).epsilon(0.05));
    CHECK(p_a == doctest::Approx(5.0 / 6.0).epsilon(0.02));

    // One-sided test of p_f < p_a against the pooled proportion.
    const double n_f = 95.0 * seeds, n_a = seeds;
    const double pooled = (f_hits + hits[0]) / (n_f + n_a);
    const double z = (p_a - p_f) / std::sqrt(pooled * (1 - pooled) * (1 / n_f + 1 / n_a));
    CHECK(z > 2.3263478740408408);
}

TEST_CASE("PRISK favors the dominant key") {
    // m_K = 6, key f has N - m_K + 1 = 95 rows.
    const auto t = test::skewed_table();
    const auto f = hash_key("f").bits;
    int selected = 0;
    constexpr int seeds = 5000;
    for (int s = 0; s < seeds; ++s) {
        const auto sk = build_prisk(t, {Side::Aug, 1, AggregateFn::Avg, static_cast<std::uint64_t>(s)});
        selected += sk.entries.front().key_hash.bits == f ? 1 : 0;
    }
    const double p = static_cast<double>(selected) / seeds;
    const double se = std::sqrt((1.0 / 6) * (5.0 / 6) / seeds);
    CHECK(p > 1.0 / 6 + 3 * se);
}

TEST_CASE("INDSK expected size equals the budget") {
    rng::Engine e(8);
    const auto t = test::random_table(e, 1000, 200);
    const std::size_t mk = key_stats(t).distinct_keys;
    constexpr int seeds = 1000;
    for (auto side : {Side::Train, Side::Aug}) {
        const std::size_t pop = side == Side::Train ? t.size() : mk;
        const std::size_t n = pop / 8;
        const double p = static_cast<double>(n) / pop;
        double sum = 0;
        for (int s = 0; s < seeds; ++s)
            sum += static_cast<double>(
                build_indsk(t, {side, n, AggregateFn::Avg, static_cast<std::uint64_t>(s)}).size());
        const double se = std::sqrt(pop * p * (1 - p) / seeds);
        CHECK(std::abs(sum / seeds - static_cast<double>(n)) < 3 * se);
    }
    CHECK(build_indsk(t, {Side::Train, 5000, std::nullopt, 1}).size() == t.size());
}

TEST_CASE("INDSK join shrinks quadratically") {
    constexpr std::size_t universe = 10000, n = 500;
    std::vector<std::string> keys;
    std::vector<double> vals;
    for (std::size_t i = 0; i < universe; ++i) {
        keys.push_back("k" + std::to_string(i));
        vals.push_back(static_cast<double>(i));
    }
    const auto t = test::numeric_table(keys, vals);
    constexpr int seeds = 200;
    double matched = 0;
    for (int s = 0; s < seeds; ++s) {
        const auto a = build_indsk(t, {Side::Train, n, std::nullopt, static_cast<std::uint64_t>(s)});
        const auto b = build_indsk(t, {Side::Aug, n, AggregateFn::Avg, static_cast<std::uint64_t>(s)});
        matched += static_cast<double>(join_sketches(a, b).matched_keys);
    }
    const double expected = static_cast<double>(n * n) / universe;  // 25
    CHECK(matched / seeds == doctest::Approx(expected).epsilon(0.1));

    // Coordinated sketches on the same tables recover the whole budget.
    const auto a = build_tupsk(t, {Side::Train, n, std::nullopt, 1});
    const auto b = build_tupsk(t, {Side::Aug, n, AggregateFn::Avg, 1});
    CHECK(join_sketches(a, b).matched_keys == n);
}
