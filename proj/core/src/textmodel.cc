#include "mimema/textmodel.h"

#include <fstream>

#include "mimema/error.h"
#include "mimema/utf8.h"

namespace mimema {
namespace {

constexpr std::u32string_view kDefaultOnsets[] = {
    U"b",  U"c",  U"ç",  U"d",  U"f",  U"g",  U"h",  U"j",  U"k",   U"l",
    U"m",  U"n",  U"p",  U"q",  U"r",  U"s",  U"t",  U"v",  U"w",   U"x",
    U"z",  U"bl", U"br", U"ch", U"cl", U"cr", U"dr", U"fl", U"fr",  U"gl",
    U"gr", U"gn", U"ph", U"pl", U"pr", U"ps", U"qu", U"th", U"tr",  U"vr",
    U"sc", U"sp", U"st", U"str"};

bool IsSeparator(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' ||
         c == U'\f' || c == 0xA0 || (c >= 0x2000 && c <= 0x200B) ||
         c == 0x202F || c == 0x3000;
}

bool IsSymbolCodepoint(char32_t c) {
  if (c < 0x80) return true;  // letters and digits are handled before this
  return (c >= 0xA1 && c <= 0xBF) || c == 0xD7 || c == 0xF7 ||
         (c >= 0x2010 && c <= 0x206F) || (c >= 0x20A0 && c <= 0x20CF) ||
         (c >= 0x2100 && c <= 0x2BFF);
}

}  // namespace

std::string_view CharClassName(CharClass klass) {
  switch (klass) {
    case CharClass::kVowel: return "vowel";
    case CharClass::kConsonant: return "consonant";
    case CharClass::kDigit: return "digit";
    case CharClass::kSymbol: return "symbol";
    case CharClass::kSeparator: return "separator";
  }
  return "?";
}

char32_t BaseOf(char32_t c) {
  switch (c) {
    case U'à': case U'á': case U'â': case U'ã': case U'ä': case U'å':
      return U'a';
    case U'ç': return U'c';
    case U'è': case U'é': case U'ê': case U'ë': return U'e';
    case U'ì': case U'í': case U'î': case U'ï': return U'i';
    case U'ñ': return U'n';
    case U'ò': case U'ó': case U'ô': case U'õ': case U'ö': return U'o';
    case U'ù': case U'ú': case U'û': case U'ü': return U'u';
    case U'ý': case U'ÿ': return U'y';
    case U'À': case U'Á': case U'Â': case U'Ã': case U'Ä': case U'Å':
      return U'A';
    case U'Ç': return U'C';
    case U'È': case U'É': case U'Ê': case U'Ë': return U'E';
    case U'Ì': case U'Í': case U'Î': case U'Ï': return U'I';
    case U'Ñ': return U'N';
    case U'Ò': case U'Ó': case U'Ô': case U'Õ': case U'Ö': return U'O';
    case U'Ù': case U'Ú': case U'Û': case U'Ü': return U'U';
    case U'Ý': case U'Ÿ': return U'Y';
    default: return c;
  }
}

CharClass ClassOf(char32_t c) {
  if (IsSeparator(c)) return CharClass::kSeparator;
  if (c >= U'0' && c <= U'9') return CharClass::kDigit;
  switch (ToLower(BaseOf(c))) {
    case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
      return CharClass::kVowel;
    default: break;
  }
  if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) {
    return CharClass::kConsonant;
  }
  if (IsSymbolCodepoint(c)) return CharClass::kSymbol;
  return CharClass::kConsonant;
}

std::vector<FrenchChar> Classify(std::u32string_view word) {
  std::vector<FrenchChar> out;
  out.reserve(word.size());
  for (char32_t c : word) out.push_back({c, ClassOf(c), BaseOf(c)});
  return out;
}

std::u32string StripDiacritics(std::u32string_view word) {
  std::u32string out(word);
  for (char32_t& c : out) c = BaseOf(c);
  return out;
}

const OnsetSet& OnsetSet::Default() {
  static const OnsetSet* const kDefault = [] {
    std::set<std::u32string> onsets;
    for (auto o : kDefaultOnsets) onsets.emplace(o);
    return new OnsetSet(std::move(onsets));
  }();
  return *kDefault;
}

OnsetSet OnsetSet::Parse(std::istream& in) {
  std::set<std::u32string> onsets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::u32string cluster;
    try {
      cluster = ToLower(Utf8ToU32(line));
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    for (char32_t c : cluster) {
      if (ClassOf(c) == CharClass::kSeparator) {
        throw ParseError(line_no, "onset contains whitespace");
      }
    }
    onsets.insert(std::move(cluster));
  }
  return OnsetSet(std::move(onsets));
}

OnsetSet OnsetSet::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open onset file: " + path);
  return Parse(in);
}

SyllabifiedWord::SyllabifiedWord(std::u32string surface,
                                 std::vector<SyllableRange> syllables)
    : surface_(std::move(surface)), syllables_(std::move(syllables)) {
  roles_.resize(surface_.size());
  for (std::size_t s = 0; s < syllables_.size(); ++s) {
    const auto [begin, end] = syllables_[s];
    std::size_t first_vowel = end;
    std::size_t last_vowel = end;
    for (std::size_t i = begin; i < end; ++i) {
      if (IsVowel(surface_[i])) {
        if (first_vowel == end) first_vowel = i;
        last_vowel = i;
      }
    }
    for (std::size_t i = begin; i < end; ++i) {
      if (first_vowel == end) {
        roles_[i] = {s, SyllablePart::kNone, i - begin};
      } else if (i < first_vowel) {
        roles_[i] = {s, SyllablePart::kOnset, i - begin};
      } else if (i <= last_vowel) {
        roles_[i] = {s, SyllablePart::kNucleus, i - first_vowel};
      } else {
        roles_[i] = {s, SyllablePart::kCoda, i - last_vowel - 1};
      }
    }
  }
}

std::u32string SyllabifiedWord::Syllable(std::size_t i) const {
  const auto& r = syllables_.at(i);
  return surface_.substr(r.begin, r.end - r.begin);
}

SyllableRole SyllabifiedWord::RoleAt(std::size_t position) const {
  return roles_.at(position);
}

std::u32string SyllabifiedWord::Join(std::u32string_view separator) const {
  std::u32string out;
  for (std::size_t i = 0; i < syllables_.size(); ++i) {
    if (i > 0) out += separator;
    out += Syllable(i);
  }
  return out;
}

SyllabifiedWord Syllabify(std::u32string_view word, const OnsetSet& onsets) {
  if (word.empty()) throw Error("empty token");
  const std::size_t n = word.size();

  // Nuclei are maximal vowel runs.
  std::vector<SyllableRange> nuclei;
  for (std::size_t i = 0; i < n;) {
    if (!IsVowel(word[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && IsVowel(word[j])) ++j;
    nuclei.push_back({i, j});
    i = j;
  }
  if (nuclei.empty()) {
    return SyllabifiedWord(std::u32string(word), {{0, n}});
  }

  std::vector<SyllableRange> syllables;
  std::size_t begin = 0;
  for (std::size_t k = 0; k + 1 < nuclei.size(); ++k) {
    const std::size_t cluster_begin = nuclei[k].end;
    const std::size_t cluster_end = nuclei[k + 1].begin;
    std::size_t split = cluster_end;
    for (std::size_t s = cluster_begin; s < cluster_end; ++s) {
      if (onsets.Contains(word.substr(s, cluster_end - s))) {
        split = s;
        break;
      }
    }
    syllables.push_back({begin, split});
    begin = split;
  }
  syllables.push_back({begin, n});
  return SyllabifiedWord(std::u32string(word), std::move(syllables));
}

}  // namespace mimema
