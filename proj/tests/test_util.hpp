#pragma once
// Shared helpers for the test binaries.

#include <filesystem>
#include <string>

namespace testutil {

inline std::filesystem::path data_dir() {
  return std::filesystem::path(GSDF_DATA_DIR);
}

inline std::filesystem::path corpus_dir() { return data_dir() / "corpus"; }

}  // namespace testutil
