#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "joinmi/random.hpp"
#include "joinmi/table.hpp"

namespace joinmi::test {

inline TwoColumnTable numeric_table(std::vector<std::string> keys, std::vector<double> values) {
    std::vector<Value> v(values.begin(), values.end());
    return TwoColumnTable("t", "key", "value", ValueType::Numeric, std::move(keys), std::move(v));
}

inline TwoColumnTable text_table(std::vector<std::string> keys, std::vector<std::string> values) {
    std::vector<Value> v(values.begin(), values.end());
    return TwoColumnTable("t", "key", "value", ValueType::Discrete, std::move(keys), std::move(v));
}

// Keys a..e once each, then f 95 times.
inline TwoColumnTable skewed_table() {
    std::vector<std::string> keys{"a", "b", "c", "d", "e"};
    keys.insert(keys.end(), 95, "f");
    std::vector<double> values(keys.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<double>(i);
    return numeric_table(std::move(keys), std::move(values));
}

// Random keys over a small universe with integer values.
inline TwoColumnTable random_table(rng::Engine& e, std::size_t rows, std::size_t universe,
                                   const std::string& prefix = "k") {
    std::vector<std::string> keys;
    std::vector<double> values;
    for (std::size_t i = 0; i < rows; ++i) {
        keys.push_back(prefix + std::to_string(rng::bounded(e, universe)));
        values.push_back(static_cast<double>(rng::bounded(e, 10)));
    }
    return numeric_table(std::move(keys), std::move(values));
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("joinmi-" + tag + "-" + std::to_string(rng::mix64(reinterpret_cast<std::uintptr_t>(this))));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

}  // namespace joinmi::test
