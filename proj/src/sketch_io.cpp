#include "joinmi/sketch_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace joinmi {

using json = nlohmann::ordered_json;

std::string sketch_to_json(const Sketch& s) {
    json doc;
    doc["format_version"] = s.format_version;
    doc["method"] = to_string(s.method);
    doc["side"] = to_string(s.side);
    doc["n"] = s.budget;
    doc["agg"] = s.agg ? json(std::string(to_string(*s.agg))) : json(nullptr);
    doc["seed"] = s.seed;
    doc["source_N"] = s.source_rows;
    doc["source_m_K"] = s.source_distinct_keys;
    doc["hash"] = kHashContract;
    json entries = json::array();
    for (const auto& e : s.entries) {
        json item;
        item["kh"] = e.key_hash.bits;
        if (const auto* d = std::get_if<double>(&e.value)) {
            item["t"] = "n";
            item["v"] = *d;
        } else {
            item["t"] = "d";
            item["v"] = std::get<std::string>(e.value);
        }
        entries.push_back(std::move(item));
    }
    doc["entries"] = std::move(entries);
    return doc.dump() + "\n";
}

Sketch sketch_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("malformed sketch: ") + e.what());
    }
    try {
        Sketch s;
        s.format_version = doc.at("format_version").get<int>();
        if (s.format_version != kSketchFormatVersion)
            throw DataError("unsupported sketch format_version " + std::to_string(s.format_version));
        if (doc.at("hash").get<std::string>() != kHashContract)
            throw DataError("sketch hash contract mismatch: " + doc.at("hash").get<std::string>());

        const auto method = parse_method(doc.at("method").get<std::string>());
        const auto side = parse_side(doc.at("side").get<std::string>());
        if (!method || !side) throw DataError("unknown sketch method or side");
        s.method = *method;
        s.side = *side;
        s.budget = doc.at("n").get<std::size_t>();
        if (!doc.at("agg").is_null()) {
            s.agg = parse_aggregate(doc.at("agg").get<std::string>());
            if (!s.agg) throw DataError("unknown aggregate in sketch");
        }
        s.seed = doc.at("seed").get<std::uint64_t>();
        s.source_rows = doc.at("source_N").get<std::size_t>();
        s.source_distinct_keys = doc.at("source_m_K").get<std::size_t>();

        bool typed = false;
        for (const auto& item : doc.at("entries")) {
            SketchEntry e;
            const auto kh = item.at("kh").get<std::uint64_t>();
            if (kh > std::numeric_limits<std::uint32_t>::max()) throw DataError("key hash out of range");
            e.key_hash = KeyHash{static_cast<std::uint32_t>(kh)};
            const auto tag = item.at("t").get<std::string>();
            if (tag == "n") {
                e.value = item.at("v").get<double>();
            } else if (tag == "d") {
                e.value = item.at("v").get<std::string>();
            } else {
                throw DataError("unknown entry tag '" + tag + "'");
            }
            const ValueType vt = type_of(e.value);
            if (typed && vt != s.value_type) throw DataError("sketch mixes value types");
            s.value_type = vt;
            typed = true;
            s.entries.push_back(std::move(e));
        }
        return s;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed sketch: ") + e.what());
    }
}

void write_sketch(const Sketch& s, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << sketch_to_json(s);
    if (!out) throw DataError("write failed: " + path.string());
}

Sketch read_sketch(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return sketch_from_json(buf.str());
}

}  // namespace joinmi
