#pragma once

#include <filesystem>
#include <vector>

#include "zgf/landscape.hpp"

namespace zgf {

/// Descriptor file: magic "ZLD1", little-endian u32 length, then that many
/// little-endian f32 values; identifiers go to a .json sidecar next to it.
void store_descriptor(const Descriptor& d, const std::filesystem::path& path);
Descriptor load_descriptor(const std::filesystem::path& path);

/// Pooled CSV: trial_id,video_id,video_type,mouse_id,v0,...,v{D-1}.
void store_pooled_csv(const std::vector<Descriptor>& descriptors,
                      const std::filesystem::path& path);
std::vector<Descriptor> load_pooled_csv(const std::filesystem::path& path);

}  // namespace zgf
