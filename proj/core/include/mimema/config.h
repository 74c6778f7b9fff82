#ifndef MIMEMA_CONFIG_H_
#define MIMEMA_CONFIG_H_

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace mimema {

// `key = value` lines with '#' comments, optionally followed by named
// sections (`[name]`) whose raw lines are kept for the caller to interpret.
class KeyValueConfig {
 public:
  struct Entry {
    std::string value;
    std::size_t line;
  };
  struct SectionLine {
    std::string text;
    std::size_t line;
  };

  static KeyValueConfig Parse(std::istream& in);

  const std::map<std::string, Entry>& values() const { return values_; }
  bool Has(const std::string& key) const { return values_.count(key) > 0; }

  // Throws ParseError at the key's line when the value is not a number.
  double GetDouble(const std::string& key) const;
  double GetDouble(const std::string& key, double fallback) const;
  unsigned long long GetUint(const std::string& key,
                             unsigned long long fallback) const;

  // Lines of a section in file order; empty when the section is absent.
  const std::vector<SectionLine>& Section(const std::string& name) const;
  std::vector<std::string> SectionNames() const;

 private:
  std::map<std::string, Entry> values_;
  std::map<std::string, std::vector<SectionLine>> sections_;
};

}  // namespace mimema

#endif  // MIMEMA_CONFIG_H_
