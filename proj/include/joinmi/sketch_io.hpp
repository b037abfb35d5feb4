#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "joinmi/sketch.hpp"

namespace joinmi {

/// Canonical JSON text of a sketch. Entries appear in key-hash order, so the
/// same sketch always serializes to the same bytes.
std::string sketch_to_json(const Sketch& s);

/// Parses a sketch document. Throws DataError on a format-version or
/// hash-contract mismatch, or on malformed content.
Sketch sketch_from_json(std::string_view text);

void write_sketch(const Sketch& s, const std::filesystem::path& path);
Sketch read_sketch(const std::filesystem::path& path);

}  // namespace joinmi
