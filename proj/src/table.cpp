#include "joinmi/table.hpp"

#include <algorithm>
#include <cmath>

#include "joinmi/csv.hpp"

namespace joinmi {

TwoColumnTable::TwoColumnTable(std::string name, std::string key_name, std::string value_name,
                               ValueType value_type, std::vector<std::string> keys,
                               std::vector<Value> values)
    : name_(std::move(name)),
      key_name_(std::move(key_name)),
      value_name_(std::move(value_name)),
      value_type_(value_type),
      keys_(std::move(keys)),
      values_(std::move(values)) {
    if (keys_.size() != values_.size())
        throw std::invalid_argument("key and value columns differ in length");
    for (const auto& v : values_) {
        if (type_of(v) != value_type_)
            throw std::invalid_argument("value column mixes discrete and numeric cells");
        if (const auto* d = std::get_if<double>(&v); d && !std::isfinite(*d))
            throw std::invalid_argument("non-finite numeric value");
    }
}

KeyStats key_stats(const TwoColumnTable& t) {
    KeyStats s;
    s.rows = t.size();
    for (const auto& k : t.keys()) ++s.frequencies[k];
    s.distinct_keys = s.frequencies.size();
    return s;
}

std::optional<ValueType> infer_column_type(const std::vector<std::vector<std::string>>& rows,
                                           std::size_t column) {
    bool any = false;
    for (const auto& row : rows) {
        const std::string& cell = row[column];
        if (cell.empty()) continue;
        any = true;
        if (!csv::parse_number(cell)) return ValueType::Discrete;
    }
    if (!any) return std::nullopt;
    return ValueType::Numeric;
}

namespace {

std::size_t column_index(const csv::Document& doc, const std::string& name,
                         const std::filesystem::path& path) {
    auto it = std::find(doc.header.begin(), doc.header.end(), name);
    if (it == doc.header.end())
        throw DataError("column '" + name + "' not found in " + path.string());
    return static_cast<std::size_t>(it - doc.header.begin());
}

}  // namespace

LoadedTable load_csv(const std::filesystem::path& path, const std::string& key_column,
                     const std::string& value_column, const CsvOptions& opts) {
    if (!std::filesystem::exists(path)) throw DataError("file not found: " + path.string());
    const csv::Document doc = csv::read_file(path, opts.delimiter);
    const std::size_t kc = column_index(doc, key_column, path);
    const std::size_t vc = column_index(doc, value_column, path);
    const ValueType type = infer_column_type(doc.rows, vc).value_or(ValueType::Discrete);

    std::vector<std::string> keys;
    std::vector<Value> values;
    std::size_t dropped = 0;
    for (const auto& row : doc.rows) {
        const std::string& key = row[kc];
        const std::string& cell = row[vc];
        if (key.empty() || cell.empty()) {
            ++dropped;
            continue;
        }
        if (type == ValueType::Numeric) {
            const double v = *csv::parse_number(cell);
            if (!std::isfinite(v)) {
                ++dropped;
                continue;
            }
            values.emplace_back(v);
        } else {
            values.emplace_back(cell);
        }
        keys.push_back(key);
    }
    if (keys.empty())
        throw DataError("no usable rows for (" + key_column + ", " + value_column + ") in " +
                        path.string());

    LoadedTable out{TwoColumnTable(path.stem().string(), key_column, value_column, type,
                                   std::move(keys), std::move(values)),
                    dropped};
    return out;
}

ColumnPairListing enumerate_column_pairs(const std::filesystem::path& corpus_dir,
                                         const CsvOptions& opts) {
    if (!std::filesystem::is_directory(corpus_dir))
        throw DataError("not a directory: " + corpus_dir.string());

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
        if (ext == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    ColumnPairListing out;
    for (const auto& file : files) {
        csv::Document doc;
        try {
            doc = csv::read_file(file, opts.delimiter);
        } catch (const DataError&) {
            ++out.skipped_files;
            continue;
        }
        std::vector<std::optional<ValueType>> types;
        for (std::size_t c = 0; c < doc.header.size(); ++c)
            types.push_back(infer_column_type(doc.rows, c));
        for (std::size_t k = 0; k < types.size(); ++k) {
            if (types[k] != ValueType::Discrete) continue;
            for (std::size_t v = 0; v < types.size(); ++v) {
                if (v == k || !types[v]) continue;
                out.pairs.push_back({file, doc.header[k], doc.header[v]});
            }
        }
    }
    return out;
}

}  // namespace joinmi
