#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "roomlayout/core.hpp"
#include "roomlayout/hypgen.hpp"

namespace roomlayout {

// JSON formats:
//   layout: {"type": int, "points": [[x, y], ...], "frame": [w, h]}
//   pool:   array of layouts, all with the same frame
//   vps:    {"vp1": [x, y], "vp2": [x, y], "vp3": [x, y]}
// Readers throw LayoutError(kParseError) on malformed input.

std::string layout_to_json(const Layout& l);
Layout layout_from_json(const std::string& text);

Layout read_layout(const std::filesystem::path& path);
void write_layout(const std::filesystem::path& path, const Layout& l);

LayoutPool read_pool(const std::filesystem::path& path);
void write_pool(const std::filesystem::path& path, const LayoutPool& pool);

VanishingTriple read_vps(const std::filesystem::path& path);
void write_vps(const std::filesystem::path& path, const VanishingTriple& vps);

/// Annotation file: a JSON array of layouts, or {"layouts": [...]}. With
/// `zero_based_types` the type ids are 0..10 and are shifted by one.
std::vector<Layout> read_annotations(const std::filesystem::path& path,
                                     bool zero_based_types);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& data);
std::string read_file(const std::filesystem::path& path);

}  // namespace roomlayout
