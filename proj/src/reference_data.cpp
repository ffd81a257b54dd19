#include "corraudit/reference_data.hpp"

#include <array>
#include <iomanip>
#include <sstream>

#include "corraudit/error.hpp"

namespace corraudit {

namespace payload {
extern const std::string_view mtcars_csv;
extern const std::string_view iris_csv;
}  // namespace payload

namespace {

// Checksums of data/mtcars.csv and data/iris.csv as committed.
constexpr std::uint64_t kMtcarsChecksum = 0x31376f720df9d0e9ULL;
constexpr std::uint64_t kIrisChecksum = 0xf743bbb242040baeULL;

const std::array<EmbeddedDataset, 2>& table() {
  static const std::array<EmbeddedDataset, 2> datasets{{
      {"mtcars", payload::mtcars_csv, kMtcarsChecksum},
      {"iris", payload::iris_csv, kIrisChecksum},
  }};
  return datasets;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> embedded_names() {
  std::vector<std::string> names;
  for (const auto& d : table()) names.emplace_back(d.name);
  return names;
}

const EmbeddedDataset& embedded(std::string_view name) {
  for (const auto& d : table()) {
    if (d.name != name) continue;
    if (const auto sum = fnv1a64(d.payload); sum != d.checksum) {
      std::ostringstream msg;
      msg << "embedded dataset '" << name << "' is corrupt: checksum 0x" << std::hex << sum
          << ", expected 0x" << d.checksum;
      throw DataError(msg.str());
    }
    return d;
  }
  std::string msg = "unknown embedded dataset '" + std::string(name) + "'; available:";
  for (const auto& d : table()) msg += " " + std::string(d.name);
  throw DataError(msg);
}

Dataset load_embedded(std::string_view name) {
  const auto& d = embedded(name);
  return load_csv(d.payload, std::string(d.name), CsvOptions{NonNumeric::skip});
}

}  // namespace corraudit
