#ifndef MIMEMA_LEXICON_H_
#define MIMEMA_LEXICON_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mimema/phonetic.h"
#include "mimema/textmodel.h"

namespace mimema {

enum class Generator { kSkeleton, kPhonetic };

std::string_view GeneratorName(Generator g);
std::optional<Generator> GeneratorFromName(std::string_view name);

struct WordFrequency {
  std::string word;  // lowercased UTF-8
  std::uint64_t frequency;
  std::string pos;   // optional part-of-speech tag
};

// Lines `word<TAB>frequency[<TAB>pos]`; '#' comments and blank lines are
// skipped. Words are lowercased and must be unique; frequencies are >= 1.
class FrequencyWordList {
 public:
  FrequencyWordList() = default;
  explicit FrequencyWordList(std::vector<WordFrequency> entries);

  static FrequencyWordList Parse(std::istream& in);
  static FrequencyWordList Load(const std::string& path);

  const std::vector<WordFrequency>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // First n entries, in file order.
  FrequencyWordList Prefix(std::size_t n) const;

 private:
  std::vector<WordFrequency> entries_;
};

struct LexiconEntry {
  std::string word;
  Generator generator;
  std::uint64_t frequency;

  auto operator<=>(const LexiconEntry&) const = default;
};

struct LookupResult {
  std::string word;
  std::uint64_t frequency;

  bool operator==(const LookupResult&) const = default;
};

// Abbreviated form -> the standard words generating it.
class Lexicon {
 public:
  static constexpr std::string_view kHeader = "#mimema-lexicon v1";

  void Add(const std::string& form, LexiconEntry entry);

  // Sorted by frequency descending, then word. A word listed under several
  // generators appears once.
  std::vector<LookupResult> Lookup(std::string_view form) const;
  bool Contains(std::string_view form) const;

  // Highest frequency among the entries of `form`, nullopt when absent.
  std::optional<std::uint64_t> MaxFrequency(std::string_view form) const;

  std::size_t num_forms() const { return entries_.size(); }
  std::size_t num_entries() const;
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, std::vector<LexiconEntry>, std::less<>>&
  entries() const {
    return entries_;
  }

  // Header line then `form<TAB>word<TAB>generator<TAB>frequency` sorted by
  // form, word, generator (byte order).
  void Serialize(std::ostream& out) const;
  std::string Serialize() const;
  static Lexicon Deserialize(std::istream& in);
  static Lexicon Deserialize(std::string_view text);

 private:
  // Entry vectors are kept sorted and duplicate-free.
  std::map<std::string, std::vector<LexiconEntry>, std::less<>> entries_;
};

struct LexiconBuildOptions {
  bool skeleton = true;
  bool phonetic = true;
  std::size_t variant_cap = 256;
  const OnsetSet* onsets = nullptr;          // default set when null
  const PhoneticRuleSet* rules = nullptr;    // default catalogue when null
};

// Strict skeletons and/or capped phonetic variants of every word. Forms
// equal to their source word are dropped. The result does not depend on
// processing order. Throws Error("empty word list").
Lexicon BuildLexicon(const FrequencyWordList& words,
                     const LexiconBuildOptions& options = {});

// Forms generated for one word by one generator (what BuildLexicon adds).
std::vector<std::string> GenerateForms(const std::string& word,
                                       Generator generator,
                                       const LexiconBuildOptions& options = {});

}  // namespace mimema

#endif  // MIMEMA_LEXICON_H_
