#include "mimema/lexicon.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "mimema/error.h"
#include "mimema/skeleton.h"
#include "mimema/utf8.h"

namespace mimema {
namespace {

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<std::uint64_t> ParseCount(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

std::string_view GeneratorName(Generator g) {
  return g == Generator::kSkeleton ? "skeleton" : "phonetic";
}

std::optional<Generator> GeneratorFromName(std::string_view name) {
  if (name == "skeleton") return Generator::kSkeleton;
  if (name == "phonetic") return Generator::kPhonetic;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// FrequencyWordList

FrequencyWordList::FrequencyWordList(std::vector<WordFrequency> entries) {
  std::set<std::string> seen;
  for (auto& e : entries) {
    e.word = U32ToUtf8(ToLower(Utf8ToU32(e.word)));
    if (e.word.empty()) throw Error("empty word");
    if (e.frequency < 1) throw Error("frequency of " + e.word + " below 1");
    if (!seen.insert(e.word).second) throw Error("duplicate word " + e.word);
  }
  entries_ = std::move(entries);
}

FrequencyWordList FrequencyWordList::Parse(std::istream& in) {
  std::vector<WordFrequency> entries;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = Split(line, '\t');
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(line_no, "expected word<TAB>frequency[<TAB>pos]");
    }
    std::string word;
    try {
      word = U32ToUtf8(ToLower(Utf8ToU32(fields[0])));
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (word.empty()) throw ParseError(line_no, "empty word");
    const auto freq = ParseCount(fields[1]);
    if (!freq || *freq < 1) throw ParseError(line_no, "frequency must be >= 1");
    if (!seen.insert(word).second) {
      throw ParseError(line_no, "duplicate word " + word);
    }
    entries.push_back({std::move(word), *freq,
                       fields.size() == 3 ? std::string(fields[2]) : ""});
  }
  FrequencyWordList list;
  list.entries_ = std::move(entries);
  return list;
}

FrequencyWordList FrequencyWordList::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open word list: " + path);
  return Parse(in);
}

FrequencyWordList FrequencyWordList::Prefix(std::size_t n) const {
  FrequencyWordList out;
  out.entries_.assign(entries_.begin(),
                      entries_.begin() + std::min(n, entries_.size()));
  return out;
}

// ---------------------------------------------------------------------------
// Lexicon

void Lexicon::Add(const std::string& form, LexiconEntry entry) {
  auto& list = entries_[form];
  const auto it = std::lower_bound(list.begin(), list.end(), entry);
  if (it == list.end() || *it != entry) list.insert(it, std::move(entry));
}

std::vector<LookupResult> Lexicon::Lookup(std::string_view form) const {
  std::vector<LookupResult> out;
  const auto it = entries_.find(form);
  if (it == entries_.end()) return out;
  for (const LexiconEntry& e : it->second) {
    const auto dup = std::find_if(out.begin(), out.end(), [&](const auto& r) {
      return r.word == e.word;
    });
    if (dup == out.end()) {
      out.push_back({e.word, e.frequency});
    } else {
      dup->frequency = std::max(dup->frequency, e.frequency);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.word < b.word;
  });
  return out;
}

bool Lexicon::Contains(std::string_view form) const {
  return entries_.find(form) != entries_.end();
}

std::optional<std::uint64_t> Lexicon::MaxFrequency(std::string_view form) const {
  const auto it = entries_.find(form);
  if (it == entries_.end()) return std::nullopt;
  std::uint64_t best = 0;
  for (const LexiconEntry& e : it->second) best = std::max(best, e.frequency);
  return best;
}

std::size_t Lexicon::num_entries() const {
  std::size_t n = 0;
  for (const auto& [form, list] : entries_) n += list.size();
  return n;
}

void Lexicon::Serialize(std::ostream& out) const {
  out << kHeader << '\n';
  for (const auto& [form, list] : entries_) {
    for (const LexiconEntry& e : list) {
      out << form << '\t' << e.word << '\t' << GeneratorName(e.generator)
          << '\t' << e.frequency << '\n';
    }
  }
}

std::string Lexicon::Serialize() const {
  std::ostringstream out;
  Serialize(out);
  return out.str();
}

Lexicon Lexicon::Deserialize(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw ParseError(1, "missing lexicon header");
  }
  Lexicon lexicon;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = Split(line, '\t');
    if (fields.size() != 4) throw ParseError(line_no, "expected 4 fields");
    const auto generator = GeneratorFromName(fields[2]);
    const auto freq = ParseCount(fields[3]);
    if (fields[0].empty() || fields[1].empty() || !generator || !freq ||
        *freq < 1) {
      throw ParseError(line_no, "malformed lexicon entry");
    }
    lexicon.Add(std::string(fields[0]),
                {std::string(fields[1]), *generator, *freq});
  }
  return lexicon;
}

Lexicon Lexicon::Deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  return Deserialize(in);
}

// ---------------------------------------------------------------------------
// Building

std::vector<std::string> GenerateForms(const std::string& word,
                                       Generator generator,
                                       const LexiconBuildOptions& options) {
  const OnsetSet& onsets =
      options.onsets != nullptr ? *options.onsets : OnsetSet::Default();
  const PhoneticRuleSet& rules =
      options.rules != nullptr ? *options.rules : PhoneticRuleSet::Default();
  const std::u32string w = Utf8ToU32(word);
  std::vector<std::string> forms;
  if (generator == Generator::kSkeleton) {
    try {
      const SkeletonDerivation d = Skeletonize(w, onsets);
      if (!d.no_consonant && d.skeleton() != w) {
        forms.push_back(U32ToUtf8(d.skeleton()));
      }
    } catch (const Error&) {
      // Tokens that are not pure letters have no skeleton.
    }
  } else {
    PhonetizeOptions po;
    po.variant_cap = options.variant_cap;
    for (const auto& v : rules.Phonetize(w, po).variants) {
      forms.push_back(U32ToUtf8(v.form));
    }
  }
  return forms;
}

Lexicon BuildLexicon(const FrequencyWordList& words,
                     const LexiconBuildOptions& options) {
  struct Generated {
    std::string form;
    LexiconEntry entry;
  };
  if (words.empty()) throw Error("empty word list");
  const auto& entries = words.entries();
  const auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<Generated> out;
    for (std::size_t i = begin; i < end; ++i) {
      const WordFrequency& wf = entries[i];
      for (Generator g : {Generator::kSkeleton, Generator::kPhonetic}) {
        if (g == Generator::kSkeleton && !options.skeleton) continue;
        if (g == Generator::kPhonetic && !options.phonetic) continue;
        for (std::string& form : GenerateForms(wf.word, g, options)) {
          out.push_back({std::move(form), {wf.word, g, wf.frequency}});
        }
      }
    }
    return out;
  };

  const std::size_t threads = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, 8);
  const std::size_t chunk = (entries.size() + threads - 1) / threads;
  std::vector<std::future<std::vector<Generated>>> parts;
  for (std::size_t begin = 0; begin < entries.size(); begin += chunk) {
    parts.push_back(std::async(std::launch::async, work, begin,
                               std::min(begin + chunk, entries.size())));
  }
  // Lexicon::Add keeps entries sorted, so merge order does not matter.
  Lexicon lexicon;
  for (auto& part : parts) {
    for (Generated& g : part.get()) lexicon.Add(g.form, std::move(g.entry));
  }
  return lexicon;
}

}  // namespace mimema
