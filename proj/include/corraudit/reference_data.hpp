#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "corraudit/dataset.hpp"

namespace corraudit {

/// A study-case dataset compiled into the library as CSV text.
struct EmbeddedDataset {
  std::string_view name;
  std::string_view payload;
  std::uint64_t checksum;  // FNV-1a 64 of payload
};

std::vector<std::string> embedded_names();

/// Raw embedded CSV; verifies the checksum.
const EmbeddedDataset& embedded(std::string_view name);

/// Parsed embedded dataset with non-numeric columns (car model, species) skipped.
Dataset load_embedded(std::string_view name);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace corraudit
