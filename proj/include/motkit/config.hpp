#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "motkit/errors.hpp"

namespace motkit {

// Flat `key = value` configuration with one [section] per subcommand. Keys
// are addressed as "section.key"; values keep their raw text until typed
// access. Flags given on the command line override file values.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_file(const std::filesystem::path& path);

  bool has(std::string_view key) const;
  std::optional<std::string> get(std::string_view key) const;
  std::string get_string(std::string_view key, std::string fallback) const;
  double get_double(std::string_view key, double fallback) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;

  // Rejects keys under `section.` that are not in the known list.
  void require_known_keys(std::string_view section,
                          std::span<const std::string_view> known) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace motkit
