#pragma once

#include <filesystem>
#include <string>

#include "obstruct/search.hpp"

namespace obstruct {

inline constexpr int kCheckpointVersion = 1;

std::string checkpoint_to_string(const SearchState& s);
/// Throws InputError on version mismatch or a corrupt document.
SearchState checkpoint_from_string(const std::string& text);

/// Writes through a temporary file and renames it into place.
void save_checkpoint(const std::filesystem::path& file, const SearchState& s);
SearchState load_checkpoint(const std::filesystem::path& file);

}  // namespace obstruct
