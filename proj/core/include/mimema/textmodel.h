#ifndef MIMEMA_TEXTMODEL_H_
#define MIMEMA_TEXTMODEL_H_

#include <cstddef>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mimema {

enum class CharClass { kVowel, kConsonant, kDigit, kSymbol, kSeparator };

std::string_view CharClassName(CharClass klass);

struct FrenchChar {
  char32_t codepoint;
  CharClass klass;
  char32_t base;  // diacritic-stripped form

  bool operator==(const FrenchChar&) const = default;
};

// Diacritic-stripped form of a single character (é → e, ç → c). Characters
// without a diacritic map to themselves, so BaseOf is idempotent.
char32_t BaseOf(char32_t c);

// Vowels are a, e, i, o, u, y and their accented forms. Unknown letters are
// consonants, whitespace is a separator.
CharClass ClassOf(char32_t c);

inline bool IsVowel(char32_t c) { return ClassOf(c) == CharClass::kVowel; }
inline bool IsConsonant(char32_t c) {
  return ClassOf(c) == CharClass::kConsonant;
}

std::vector<FrenchChar> Classify(std::u32string_view word);

// Maps every character through BaseOf; the length is preserved.
std::u32string StripDiacritics(std::u32string_view word);

// Set of consonant clusters that may begin a syllable.
class OnsetSet {
 public:
  OnsetSet() = default;
  explicit OnsetSet(std::set<std::u32string> onsets)
      : onsets_(std::move(onsets)) {}

  // Single consonants plus the usual French clusters (bl, br, ch, ..., str).
  static const OnsetSet& Default();

  // One cluster per line, UTF-8; blank lines and '#' comments are skipped.
  static OnsetSet Parse(std::istream& in);
  static OnsetSet Load(const std::string& path);

  bool Contains(std::u32string_view cluster) const {
    return onsets_.count(std::u32string(cluster)) > 0;
  }
  const std::set<std::u32string>& onsets() const { return onsets_; }

 private:
  std::set<std::u32string> onsets_;
};

struct SyllableRange {
  std::size_t begin;
  std::size_t end;  // exclusive

  bool operator==(const SyllableRange&) const = default;
};

// Position of a character inside its syllable.
enum class SyllablePart { kOnset, kNucleus, kCoda, kNone };

struct SyllableRole {
  std::size_t syllable;
  SyllablePart part;
  std::size_t offset;  // index within the onset/nucleus/coda
};

class SyllabifiedWord {
 public:
  SyllabifiedWord(std::u32string surface, std::vector<SyllableRange> syllables);

  const std::u32string& surface() const { return surface_; }
  const std::vector<SyllableRange>& syllables() const { return syllables_; }
  std::u32string Syllable(std::size_t i) const;

  // Syllables without a vowel have no onset/coda structure (kNone).
  SyllableRole RoleAt(std::size_t position) const;

  // Syllables joined with the given separator, e.g. "in·dé·pen·dan·ce".
  std::u32string Join(std::u32string_view separator = U"·") const;

 private:
  std::u32string surface_;
  std::vector<SyllableRange> syllables_;
  std::vector<SyllableRole> roles_;
};

// Onset maximization: each maximal vowel run is a nucleus; an interior
// consonant cluster gives its longest legal-onset suffix to the next
// syllable. Throws Error("empty token") on empty input.
SyllabifiedWord Syllabify(std::u32string_view word,
                          const OnsetSet& onsets = OnsetSet::Default());

}  // namespace mimema

#endif  // MIMEMA_TEXTMODEL_H_
