#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "joinmi/value.hpp"

namespace joinmi {

/// A join-key column paired with one value column. The value column is
/// homogeneously Discrete or Numeric.
class TwoColumnTable {
public:
    TwoColumnTable() = default;
    TwoColumnTable(std::string name, std::string key_name, std::string value_name,
                   ValueType value_type, std::vector<std::string> keys, std::vector<Value> values);

    const std::string& name() const noexcept { return name_; }
    const std::string& key_name() const noexcept { return key_name_; }
    const std::string& value_name() const noexcept { return value_name_; }
    ValueType value_type() const noexcept { return value_type_; }
    const std::vector<std::string>& keys() const noexcept { return keys_; }
    const std::vector<Value>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return keys_.size(); }
    bool empty() const noexcept { return keys_.empty(); }

private:
    std::string name_;
    std::string key_name_ = "key";
    std::string value_name_ = "value";
    ValueType value_type_ = ValueType::Discrete;
    std::vector<std::string> keys_;
    std::vector<Value> values_;
};

struct KeyStats {
    std::size_t rows = 0;
    std::size_t distinct_keys = 0;
    std::unordered_map<std::string, std::size_t> frequencies;
};

KeyStats key_stats(const TwoColumnTable& t);

/// Paired (x, y) values: x is the feature (augmentation side), y the target.
struct JoinedSample {
    ValueType x_type = ValueType::Discrete;
    ValueType y_type = ValueType::Discrete;
    std::vector<Value> x;
    std::vector<Value> y;

    std::size_t size() const noexcept { return x.size(); }
    bool empty() const noexcept { return x.empty(); }
    void push_back(Value xv, Value yv) {
        x.push_back(std::move(xv));
        y.push_back(std::move(yv));
    }
};

struct CsvOptions {
    char delimiter = ',';
};

struct LoadedTable {
    TwoColumnTable table;
    std::size_t dropped_rows = 0;
};

/// Loads two columns of a CSV file. The value column is Numeric when every
/// non-empty cell parses as a number, else Discrete. Rows with an empty key,
/// empty value or non-finite number are dropped and counted.
LoadedTable load_csv(const std::filesystem::path& path, const std::string& key_column,
                     const std::string& value_column, const CsvOptions& opts = {});

/// Infers a column's type from its cells; nullopt when all cells are empty.
std::optional<ValueType> infer_column_type(const std::vector<std::vector<std::string>>& rows,
                                           std::size_t column);

struct ColumnPair {
    std::filesystem::path file;
    std::string key_column;
    std::string value_column;
};

struct ColumnPairListing {
    std::vector<ColumnPair> pairs;
    std::size_t skipped_files = 0;
};

/// Every (text key column, other column) pair across the CSV files of a
/// directory, ordered by file path then column indices.
ColumnPairListing enumerate_column_pairs(const std::filesystem::path& corpus_dir,
                                         const CsvOptions& opts = {});

}  // namespace joinmi
