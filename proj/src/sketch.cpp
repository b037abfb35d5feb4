#include "joinmi/sketch.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "joinmi/random.hpp"

namespace joinmi {
namespace {

constexpr std::array<std::pair<SketchMethod, std::string_view>, 5> kMethodNames{{
    {SketchMethod::Tupsk, "tupsk"},
    {SketchMethod::Lv2sk, "lv2sk"},
    {SketchMethod::Prisk, "prisk"},
    {SketchMethod::Indsk, "indsk"},
    {SketchMethod::Csk, "csk"},
}};

// A row or key competing for a sketch slot. Smaller rank wins; ties go to
// the smaller key hash, then the earlier source row.
struct Candidate {
    std::uint32_t rank;
    std::uint32_t key_hash;
    std::size_t row;

    friend bool operator<(const Candidate& a, const Candidate& b) noexcept {
        if (a.rank != b.rank) return a.rank < b.rank;
        if (a.key_hash != b.key_hash) return a.key_hash < b.key_hash;
        return a.row < b.row;
    }
};

void keep_smallest(std::vector<Candidate>& c, std::size_t n) {
    if (c.size() > n) {
        std::nth_element(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n), c.end());
        c.resize(n);
    }
}

// Distinct keys of a table in first-occurrence order, with their rows.
struct KeyGroups {
    std::vector<std::string_view> keys;
    std::vector<std::vector<std::size_t>> rows;
};

KeyGroups group_rows(const TwoColumnTable& t) {
    KeyGroups g;
    std::unordered_map<std::string_view, std::size_t> slot;
    slot.reserve(t.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
        auto [it, inserted] = slot.try_emplace(t.keys()[r], g.keys.size());
        if (inserted) {
            g.keys.push_back(t.keys()[r]);
            g.rows.emplace_back();
        }
        g.rows[it->second].push_back(r);
    }
    return g;
}

Sketch make_header(SketchMethod method, const TwoColumnTable& t, const SketchParams& p,
                   std::size_t distinct_keys) {
    if (p.budget == 0) throw std::invalid_argument("sketch budget must be at least 1");
    Sketch s;
    s.method = method;
    s.side = p.side;
    s.budget = p.budget;
    s.seed = p.seed;
    s.source_rows = t.size();
    s.source_distinct_keys = distinct_keys;
    s.value_type = t.value_type();
    if (method == SketchMethod::Csk) {
        s.agg = AggregateFn::First;
    } else if (p.side == Side::Aug) {
        if (!p.agg) throw std::invalid_argument("AUG-side sketches need an aggregate function");
        s.agg = p.agg;
        s.value_type = aggregate_output_type(*p.agg, t.value_type());
    } else {
        s.agg = p.agg;
    }
    return s;
}

void canonicalize(std::vector<std::pair<std::size_t, SketchEntry>>& picked, Sketch& s) {
    std::sort(picked.begin(), picked.end(), [](const auto& a, const auto& b) {
        if (a.second.key_hash != b.second.key_hash) return a.second.key_hash < b.second.key_hash;
        return a.first < b.first;
    });
    s.entries.reserve(picked.size());
    for (auto& [row, e] : picked) s.entries.push_back(std::move(e));
}

std::vector<KeyHash> raw_key_hashes(const std::vector<std::string_view>& keys) {
    std::vector<KeyHash> out;
    out.reserve(keys.size());
    for (auto k : keys) out.push_back(hash_key(k));
    return out;
}

// AUG side of the coordinated methods: aggregate per key, then keep the
// selected keys.
Sketch aug_from_ranking(SketchMethod method, const TwoColumnTable& t, const SketchParams& p,
                        const KeyGroups& g, const std::vector<std::size_t>& selected_groups) {
    Sketch s = make_header(method, t, p, g.keys.size());
    std::vector<std::pair<std::size_t, SketchEntry>> picked;
    picked.reserve(selected_groups.size());
    std::vector<Value> buf;
    for (std::size_t gi : selected_groups) {
        buf.clear();
        for (std::size_t r : g.rows[gi]) buf.push_back(t.values()[r]);
        const Value v = method == SketchMethod::Csk ? buf.front() : aggregate(buf, *p.agg);
        picked.push_back({g.rows[gi].front(), SketchEntry{hash_key(g.keys[gi]), v}});
    }
    canonicalize(picked, s);
    return s;
}

// First level shared by LV2SK and CSK: the n distinct keys of minimum
// unit hash.
std::vector<std::size_t> kmv_keys(const KeyGroups& g, const std::vector<KeyHash>& raw,
                                  std::size_t n, std::uint32_t sseed) {
    std::vector<Candidate> c;
    c.reserve(g.keys.size());
    for (std::size_t i = 0; i < g.keys.size(); ++i)
        c.push_back({fibonacci_mix(hash_key(g.keys[i], sseed)), raw[i].bits, i});
    keep_smallest(c, n);
    std::vector<std::size_t> out;
    for (const auto& x : c) out.push_back(x.row);
    std::sort(out.begin(), out.end());
    return out;
}

// First level of PRISK: the n keys of largest priority N_k / u_k.
std::vector<std::size_t> priority_keys(const KeyGroups& g, const std::vector<KeyHash>& raw,
                                       std::size_t n, std::uint32_t sseed) {
    struct Prio {
        double priority;
        std::uint32_t key_hash;
        std::size_t group;
    };
    std::vector<Prio> c;
    c.reserve(g.keys.size());
    for (std::size_t i = 0; i < g.keys.size(); ++i) {
        double u = unit_hash(hash_key(g.keys[i], sseed));
        if (u == 0.0) u = 0x1p-32;
        c.push_back({static_cast<double>(g.rows[i].size()) / u, raw[i].bits, i});
    }
    auto better = [](const Prio& a, const Prio& b) {
        if (a.priority != b.priority) return a.priority > b.priority;
        if (a.key_hash != b.key_hash) return a.key_hash < b.key_hash;
        return a.group < b.group;
    };
    if (c.size() > n) {
        std::nth_element(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n), c.end(), better);
        c.resize(n);
    }
    std::vector<std::size_t> out;
    for (const auto& x : c) out.push_back(x.group);
    std::sort(out.begin(), out.end());
    return out;
}

// Second level of LV2SK/PRISK on the TRAIN side. Each selected key keeps
// n_k = max(1, floor(n N_k / N)) of its rows: a reservoir of capacity n is
// filled in one pass (Algorithm R), shuffled, and its first n_k kept.
Sketch two_level_train(SketchMethod method, const TwoColumnTable& t, const SketchParams& p,
                       const KeyGroups& g, const std::vector<KeyHash>& raw,
                       const std::vector<std::size_t>& selected) {
    Sketch s = make_header(method, t, p, g.keys.size());
    const std::size_t n = p.budget;
    const std::size_t total = t.size();
    std::vector<std::pair<std::size_t, SketchEntry>> picked;

    std::vector<std::size_t> reservoir;
    for (std::size_t gi : selected) {
        const auto& rows = g.rows[gi];
        const std::size_t quota =
            std::max<std::size_t>(1, static_cast<std::size_t>(
                                         (static_cast<unsigned __int128>(n) * rows.size()) / total));

        rng::Engine engine(rng::derive_seed(p.seed, raw[gi].bits));
        reservoir.clear();
        for (std::size_t seen = 0; seen < rows.size(); ++seen) {
            if (reservoir.size() < n) {
                reservoir.push_back(rows[seen]);
            } else {
                const std::uint64_t j = rng::bounded(engine, seen + 1);
                if (j < n) reservoir[j] = rows[seen];
            }
        }
        for (std::size_t i = reservoir.size(); i > 1; --i)
            std::swap(reservoir[i - 1], reservoir[rng::bounded(engine, i)]);

        const std::size_t keep = std::min(quota, reservoir.size());
        for (std::size_t i = 0; i < keep; ++i)
            picked.push_back({reservoir[i], SketchEntry{raw[gi], t.values()[reservoir[i]]}});
    }
    canonicalize(picked, s);
    return s;
}

}  // namespace

std::string_view to_string(SketchMethod m) noexcept {
    for (const auto& [method, name] : kMethodNames)
        if (method == m) return name;
    return "?";
}

std::string_view to_string(Side s) noexcept { return s == Side::Train ? "train" : "aug"; }

std::optional<SketchMethod> parse_method(std::string_view name) {
    for (const auto& [method, n] : kMethodNames)
        if (n == name) return method;
    return std::nullopt;
}

std::optional<Side> parse_side(std::string_view name) {
    if (name == "train") return Side::Train;
    if (name == "aug") return Side::Aug;
    return std::nullopt;
}

std::uint32_t selection_seed(std::uint64_t seed) noexcept {
    return static_cast<std::uint32_t>(seed ^ (seed >> 32));
}

Sketch build_tupsk(const TwoColumnTable& t, const SketchParams& p) {
    const std::uint32_t sseed = selection_seed(p.seed);
    const KeyGroups g = group_rows(t);

    if (p.side == Side::Aug) {
        make_header(SketchMethod::Tupsk, t, p, g.keys.size());  // validates agg
        const auto raw = raw_key_hashes(g.keys);
        std::vector<Candidate> c;
        c.reserve(g.keys.size());
        for (std::size_t i = 0; i < g.keys.size(); ++i)
            c.push_back({fibonacci_mix(hash_derived_key(g.keys[i], 1, sseed)), raw[i].bits, i});
        keep_smallest(c, p.budget);
        std::vector<std::size_t> selected;
        for (const auto& x : c) selected.push_back(x.row);
        std::sort(selected.begin(), selected.end());
        return aug_from_ranking(SketchMethod::Tupsk, t, p, g, selected);
    }

    Sketch s = make_header(SketchMethod::Tupsk, t, p, g.keys.size());
    std::unordered_map<std::string_view, std::uint32_t> occurrence;
    std::unordered_map<std::string_view, std::uint32_t> raw;
    occurrence.reserve(g.keys.size());
    raw.reserve(g.keys.size());
    for (auto k : g.keys) raw.emplace(k, hash_key(k).bits);

    std::vector<Candidate> c;
    c.reserve(t.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
        const std::string_view k = t.keys()[r];
        const std::uint32_t j = ++occurrence[k];
        c.push_back({fibonacci_mix(hash_derived_key(k, j, sseed)), raw.at(k), r});
    }
    keep_smallest(c, p.budget);

    std::vector<std::pair<std::size_t, SketchEntry>> picked;
    picked.reserve(c.size());
    for (const auto& x : c) picked.push_back({x.row, SketchEntry{KeyHash{x.key_hash}, t.values()[x.row]}});
    canonicalize(picked, s);
    return s;
}

Sketch build_lv2sk(const TwoColumnTable& t, const SketchParams& p) {
    const KeyGroups g = group_rows(t);
    make_header(SketchMethod::Lv2sk, t, p, g.keys.size());
    const auto raw = raw_key_hashes(g.keys);
    const auto selected = kmv_keys(g, raw, p.budget, selection_seed(p.seed));
    if (p.side == Side::Aug) return aug_from_ranking(SketchMethod::Lv2sk, t, p, g, selected);
    return two_level_train(SketchMethod::Lv2sk, t, p, g, raw, selected);
}

Sketch build_prisk(const TwoColumnTable& t, const SketchParams& p) {
    const KeyGroups g = group_rows(t);
    make_header(SketchMethod::Prisk, t, p, g.keys.size());
    const auto raw = raw_key_hashes(g.keys);
    const auto selected = priority_keys(g, raw, p.budget, selection_seed(p.seed));
    if (p.side == Side::Aug) return aug_from_ranking(SketchMethod::Prisk, t, p, g, selected);
    return two_level_train(SketchMethod::Prisk, t, p, g, raw, selected);
}

Sketch build_indsk(const TwoColumnTable& t, const SketchParams& p) {
    const KeyGroups g = group_rows(t);
    Sketch s = make_header(SketchMethod::Indsk, t, p, g.keys.size());
    rng::Engine engine(rng::derive_seed(p.seed, p.side == Side::Train ? 0x7261696eu : 0x617567u));

    if (p.side == Side::Aug) {
        const double rate =
            g.keys.empty() ? 1.0 : std::min(1.0, static_cast<double>(p.budget) / g.keys.size());
        std::vector<std::size_t> selected;
        for (std::size_t i = 0; i < g.keys.size(); ++i)
            if (rng::uniform01(engine) < rate) selected.push_back(i);
        return aug_from_ranking(SketchMethod::Indsk, t, p, g, selected);
    }

    const double rate = t.empty() ? 1.0 : std::min(1.0, static_cast<double>(p.budget) / t.size());
    std::vector<std::pair<std::size_t, SketchEntry>> picked;
    for (std::size_t r = 0; r < t.size(); ++r)
        if (rng::uniform01(engine) < rate)
            picked.push_back({r, SketchEntry{hash_key(t.keys()[r]), t.values()[r]}});
    canonicalize(picked, s);
    return s;
}

Sketch build_csk(const TwoColumnTable& t, const SketchParams& p) {
    const KeyGroups g = group_rows(t);
    make_header(SketchMethod::Csk, t, p, g.keys.size());
    const auto raw = raw_key_hashes(g.keys);
    const auto selected = kmv_keys(g, raw, p.budget, selection_seed(p.seed));
    return aug_from_ranking(SketchMethod::Csk, t, p, g, selected);
}

Sketch build_sketch(SketchMethod method, const TwoColumnTable& t, const SketchParams& p) {
    switch (method) {
        case SketchMethod::Tupsk:
            return build_tupsk(t, p);
        case SketchMethod::Lv2sk:
            return build_lv2sk(t, p);
        case SketchMethod::Prisk:
            return build_prisk(t, p);
        case SketchMethod::Indsk:
            return build_indsk(t, p);
        case SketchMethod::Csk:
            return build_csk(t, p);
    }
    throw std::invalid_argument("unknown sketch method");
}

SketchJoin join_sketches(const Sketch& train, const Sketch& aug) {
    std::unordered_map<std::uint32_t, std::size_t> index;
    index.reserve(aug.entries.size());
    for (std::size_t i = 0; i < aug.entries.size(); ++i)
        if (!index.emplace(aug.entries[i].key_hash.bits, i).second)
            throw std::invalid_argument("AUG-side sketch has repeated key hashes");

    SketchJoin out;
    out.sample.x_type = aug.value_type;
    out.sample.y_type = train.value_type;
    std::unordered_set<std::uint32_t> matched;
    for (const auto& e : train.entries) {
        auto it = index.find(e.key_hash.bits);
        if (it == index.end()) continue;
        out.sample.push_back(aug.entries[it->second].value, e.value);
        matched.insert(e.key_hash.bits);
    }
    out.matched_keys = matched.size();
    return out;
}

}  // namespace joinmi
