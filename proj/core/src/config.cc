#include "mimema/config.h"

#include <charconv>

#include "mimema/error.h"

namespace mimema {
namespace {

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

KeyValueConfig KeyValueConfig::Parse(std::istream& in) {
  KeyValueConfig config;
  std::string line;
  std::size_t line_no = 0;
  std::string section;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    if (trimmed.front() == '[' && trimmed.back() == ']') {
      section = Trim(std::string_view(trimmed).substr(1, trimmed.size() - 2));
      if (section.empty()) throw ParseError(line_no, "empty section name");
      config.sections_[section];
      continue;
    }
    if (!section.empty()) {
      config.sections_[section].push_back({line, line_no});
      continue;
    }
    const std::size_t eq = trimmed.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
    std::string key = Trim(std::string_view(trimmed).substr(0, eq));
    std::string value = Trim(std::string_view(trimmed).substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (config.values_.count(key)) {
      throw ParseError(line_no, "duplicate key " + key);
    }
    config.values_.emplace(std::move(key), Entry{std::move(value), line_no});
  }
  return config;
}

double KeyValueConfig::GetDouble(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error("missing key " + key);
  const std::string& v = it->second.value;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ParseError(it->second.line, "value of " + key + " is not a number");
  }
  return out;
}

double KeyValueConfig::GetDouble(const std::string& key, double fallback) const {
  return Has(key) ? GetDouble(key) : fallback;
}

unsigned long long KeyValueConfig::GetUint(const std::string& key,
                                           unsigned long long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second.value;
  unsigned long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ParseError(it->second.line,
                     "value of " + key + " is not an unsigned integer");
  }
  return out;
}

const std::vector<KeyValueConfig::SectionLine>& KeyValueConfig::Section(
    const std::string& name) const {
  static const std::vector<SectionLine> kEmpty;
  const auto it = sections_.find(name);
  return it == sections_.end() ? kEmpty : it->second;
}

std::vector<std::string> KeyValueConfig::SectionNames() const {
  std::vector<std::string> names;
  for (const auto& [name, lines] : sections_) names.push_back(name);
  return names;
}

}  // namespace mimema
