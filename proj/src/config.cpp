#include "motkit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

namespace motkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig config;
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view v = trim(line);
    if (v.empty() || v.front() == '#' || v.front() == ';') {
      continue;
    }
    if (v.front() == '[') {
      if (v.back() != ']' || v.size() < 3) {
        throw ParseError("malformed section header", line_no);
      }
      section = std::string(trim(v.substr(1, v.size() - 2)));
      continue;
    }
    const std::size_t eq = v.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", line_no);
    }
    const std::string key{trim(v.substr(0, eq))};
    const std::string value{trim(v.substr(eq + 1))};
    if (key.empty()) {
      throw ParseError("empty key", line_no);
    }
    const std::string full = section.empty() ? key : section + "." + key;
    config.values_[full] = value;
  }
  return config;
}

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file " + path.string());
  }
  return parse(in);
}

bool KeyValueConfig::has(std::string_view key) const {
  return values_.contains(std::string(key));
}

std::optional<std::string> KeyValueConfig::get(std::string_view key) const {
  const auto it = values_.find(std::string(key));
  if (it == values_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::string KeyValueConfig::get_string(std::string_view key, std::string fallback) const {
  if (const auto v = get(key)) {
    return *v;
  }
  return fallback;
}

double KeyValueConfig::get_double(std::string_view key, double fallback) const {
  const auto v = get(key);
  if (!v) {
    return fallback;
  }
  double out = 0.0;
  const char* begin = v->data();
  const char* end = begin + v->size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("config key '" + std::string(key) + "' is not a number: '" +
                      *v + "'");
  }
  return out;
}

std::int64_t KeyValueConfig::get_int(std::string_view key, std::int64_t fallback) const {
  const double v = get_double(key, static_cast<double>(fallback));
  const double rounded = std::nearbyint(v);
  if (std::abs(v - rounded) > 1e-9) {
    throw ConfigError("config key '" + std::string(key) + "' is not an integer");
  }
  return static_cast<std::int64_t>(rounded);
}

void KeyValueConfig::require_known_keys(
    std::string_view section, std::span<const std::string_view> known) const {
  const std::string prefix = std::string(section) + ".";
  for (const auto& [key, value] : values_) {
    if (key.rfind(prefix, 0) != 0) {
      continue;
    }
    const std::string_view bare = std::string_view(key).substr(prefix.size());
    if (std::find(known.begin(), known.end(), bare) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

}  // namespace motkit
