#include "mimema/simulator.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "mimema/config.h"
#include "mimema/error.h"
#include "mimema/metric.h"
#include "mimema/utf8.h"

namespace mimema {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Confusions between handwritten shapes, per written character.
constexpr std::string_view kDefaultConfusions = R"(# Handwriting-style confusion table.
seed = 0
noise_scale = 1.8
deletion = 0.01
insertion = 0.01

[substitutions]
a	o:0.03,u:0.01,d:0.005
b	lo:0.02,h:0.01,6:0.005
c	e:0.02,(:0.005
d	cl:0.015,a:0.005
e	c:0.02,l:0.01,é:0.005
é	e:0.03,è:0.01
è	e:0.03,é:0.01
f	t:0.02
g	q:0.02,9:0.01,y:0.005
h	n:0.02,b:0.01,li:0.005
i	l:0.02,j:0.005,1:0.005
j	i:0.01,y:0.005
k	h:0.01,lc:0.01
l	1:0.02,i:0.01,t:0.005
m	nn:0.02,rn:0.01,n:0.01
n	u:0.03,r:0.01,m:0.005
o	a:0.02,0:0.01,u:0.005
p	q:0.01,n:0.005
q	g:0.02,9:0.005
r	v:0.02,n:0.01
s	5:0.01,r:0.005
t	f:0.02,l:0.005
u	n:0.02,v:0.02,a:0.005
v	u:0.02,r:0.01
w	vv:0.02
x	y:0.01
y	g:0.01,j:0.01
z	2:0.02
0	o:0.03
1	l:0.03,i:0.01,7:0.005
2	z:0.03
3	z:0.01
5	s:0.03
6	b:0.02
7	1:0.02
8	6:0.01
9	g:0.03,q:0.01
+	t:0.03
@	a:0.03

[insertions]
i	0.3
l	0.3
e	0.2
n	0.2
)";

[[noreturn]] void InvalidModel(const std::string& why) {
  throw Error("invalid confusion model: " + why);
}

bool IsProbability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

double SafeLog(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

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

std::optional<double> ParseDouble(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

char32_t SingleChar(std::string_view text, std::size_t line) {
  std::u32string decoded;
  try {
    decoded = Utf8ToU32(text);
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
  if (decoded.size() != 1) throw ParseError(line, "expected one character");
  return decoded[0];
}

}  // namespace

// ---------------------------------------------------------------------------
// ConfusionModel

ConfusionModel ConfusionModel::Default() {
  static const ConfusionModel* const kDefault = [] {
    std::istringstream in{std::string(kDefaultConfusions)};
    return new ConfusionModel(Parse(in));
  }();
  return *kDefault;
}

ConfusionModel ConfusionModel::Parse(std::istream& in) {
  const KeyValueConfig config = KeyValueConfig::Parse(in);
  for (const auto& [key, entry] : config.values()) {
    if (key != "seed" && key != "deletion" && key != "insertion" &&
        key != "noise_scale") {
      throw ParseError(entry.line, "unknown key " + key);
    }
  }
  for (const std::string& name : config.SectionNames()) {
    if (name != "substitutions" && name != "insertions") {
      throw Error("unknown section [" + name + "]");
    }
  }
  ConfusionModel model;
  model.seed = config.GetUint("seed", 0);
  model.deletion = config.GetDouble("deletion", 0.0);
  model.insertion = config.GetDouble("insertion", 0.0);
  const double scale = config.GetDouble("noise_scale", 1.0);

  for (const auto& [text, line] : config.Section("substitutions")) {
    const auto fields = Split(text, '\t');
    if (fields.size() != 2) throw ParseError(line, "expected char<TAB>row");
    const char32_t c = SingleChar(fields[0], line);
    if (model.substitutions.count(c)) {
      throw ParseError(line, "duplicate substitution row");
    }
    std::vector<Confusion> row;
    for (std::string_view cell : Split(fields[1], ',')) {
      const std::size_t colon = cell.rfind(':');
      if (colon == std::string_view::npos || colon == 0) {
        throw ParseError(line, "expected output:probability");
      }
      const auto p = ParseDouble(cell.substr(colon + 1));
      if (!p) throw ParseError(line, "malformed probability");
      std::u32string output;
      try {
        output = Utf8ToU32(cell.substr(0, colon));
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
      row.push_back({std::move(output), *p});
    }
    model.substitutions.emplace(c, std::move(row));
  }
  for (const auto& [text, line] : config.Section("insertions")) {
    const auto fields = Split(text, '\t');
    if (fields.size() != 2) throw ParseError(line, "expected char<TAB>prob");
    const auto p = ParseDouble(fields[1]);
    if (!p) throw ParseError(line, "malformed probability");
    model.insertion_chars.emplace_back(SingleChar(fields[0], line), *p);
  }
  model = model.Scaled(scale);
  model.Validate();
  return model;
}

ConfusionModel ConfusionModel::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open confusion model: " + path);
  return Parse(in);
}

void ConfusionModel::Write(std::ostream& out) const {
  out << "seed = " << seed << '\n';
  out << "deletion = " << FormatWeight(deletion) << '\n';
  out << "insertion = " << FormatWeight(insertion) << '\n';
  out << "\n[substitutions]\n";
  for (const auto& [c, row] : substitutions) {
    out << U32ToUtf8(c) << '\t';
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << U32ToUtf8(row[i].output) << ':' << FormatWeight(row[i].probability);
    }
    out << '\n';
  }
  out << "\n[insertions]\n";
  for (const auto& [c, p] : insertion_chars) {
    out << U32ToUtf8(c) << '\t' << FormatWeight(p) << '\n';
  }
}

void ConfusionModel::Validate() const {
  if (!IsProbability(deletion)) InvalidModel("deletion probability");
  if (!IsProbability(insertion)) InvalidModel("insertion probability");
  for (const auto& [c, row] : substitutions) {
    double mass = 0.0;
    for (const Confusion& conf : row) {
      if (!IsProbability(conf.probability)) InvalidModel("substitution probability");
      if (conf.output.empty() || conf.output.size() > 2) {
        InvalidModel("substitution output must have 1 or 2 characters");
      }
      if (conf.output.size() == 1 && conf.output[0] == c) {
        InvalidModel("substitution onto the same character");
      }
      mass += conf.probability;
    }
    if (mass > 1.0 + 1e-9) InvalidModel("substitution row sums above 1");
  }
  if (insertion > 0.0) {
    double mass = 0.0;
    for (const auto& [c, p] : insertion_chars) {
      if (!IsProbability(p)) InvalidModel("insertion character probability");
      mass += p;
    }
    if (std::abs(mass - 1.0) > 1e-9) {
      InvalidModel("insertion characters must sum to 1");
    }
  }
}

ConfusionModel ConfusionModel::Scaled(double factor) const {
  ConfusionModel out = *this;
  out.deletion *= factor;
  out.insertion *= factor;
  for (auto& [c, row] : out.substitutions) {
    for (Confusion& conf : row) conf.probability *= factor;
  }
  return out;
}

double ConfusionModel::KeepProbability(char32_t c) const {
  const auto it = substitutions.find(c);
  if (it == substitutions.end()) return 1.0;
  double mass = 0.0;
  for (const Confusion& conf : it->second) mass += conf.probability;
  return std::max(0.0, 1.0 - mass);
}

std::u32string ConfusionModel::Sample(std::u32string_view token,
                                      Rng& rng) const {
  std::u32string out;
  for (char32_t c : token) {
    if (rng.Uniform() < deletion) {
      // deleted
    } else {
      double u = rng.Uniform();
      bool substituted = false;
      const auto it = substitutions.find(c);
      if (it != substitutions.end()) {
        for (const Confusion& conf : it->second) {
          if (u < conf.probability) {
            out += conf.output;
            substituted = true;
            break;
          }
          u -= conf.probability;
        }
      }
      if (!substituted) out.push_back(c);
    }
    if (rng.Uniform() < insertion && !insertion_chars.empty()) {
      double u = rng.Uniform();
      char32_t inserted = insertion_chars.back().first;
      for (const auto& [ic, p] : insertion_chars) {
        if (u < p) {
          inserted = ic;
          break;
        }
        u -= p;
      }
      out.push_back(inserted);
    }
  }
  return out;
}

double ConfusionModel::ChannelLogProb(std::u32string_view written,
                                      std::u32string_view observed) const {
  const std::size_t n = written.size();
  const std::size_t m = observed.size();
  const double log_delete = SafeLog(deletion);
  const double log_survive = SafeLog(1.0 - deletion);
  const double log_no_insert = SafeLog(1.0 - insertion);
  std::map<char32_t, double> log_insert_char;
  for (const auto& [c, p] : insertion_chars) {
    log_insert_char[c] = SafeLog(insertion * p);
  }

  std::vector<double> current(m + 1, kNegInf);
  std::vector<double> emitted(m + 1);
  current[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const char32_t c = written[i];
    std::fill(emitted.begin(), emitted.end(), kNegInf);
    const auto relax = [&](std::size_t j, double score) {
      if (score > emitted[j]) emitted[j] = score;
    };
    const double log_keep = log_survive + SafeLog(KeepProbability(c));
    const auto row = substitutions.find(c);
    for (std::size_t j = 0; j <= m; ++j) {
      if (current[j] == kNegInf) continue;
      relax(j, current[j] + log_delete);
      if (j < m && observed[j] == c) relax(j + 1, current[j] + log_keep);
      if (row == substitutions.end()) continue;
      for (const Confusion& conf : row->second) {
        if (observed.substr(j, conf.output.size()) == conf.output) {
          relax(j + conf.output.size(),
                current[j] + log_survive + SafeLog(conf.probability));
        }
      }
    }
    std::fill(current.begin(), current.end(), kNegInf);
    for (std::size_t j = 0; j <= m; ++j) {
      if (emitted[j] == kNegInf) continue;
      current[j] = std::max(current[j], emitted[j] + log_no_insert);
      if (j < m) {
        const auto ins = log_insert_char.find(observed[j]);
        if (ins != log_insert_char.end()) {
          current[j + 1] = std::max(current[j + 1], emitted[j] + ins->second);
        }
      }
    }
  }
  return current[m];
}

bool CandidateList::Contains(std::u32string_view form) const {
  return std::any_of(candidates.begin(), candidates.end(),
                     [&](const Candidate& c) { return c.form == form; });
}

CandidateList Corrupt(std::u32string_view token, const ConfusionModel& model,
                      const CorruptOptions& options) {
  Rng rng(model.seed);
  return Corrupt(token, model, rng, options);
}

CandidateList Corrupt(std::u32string_view token, const ConfusionModel& model,
                      Rng& rng, const CorruptOptions& options) {
  model.Validate();
  if (token.empty()) throw Error("empty token");
  CandidateList list;
  list.observed = model.Sample(token, rng);
  const std::u32string& o = list.observed;

  // Single-edit neighbours of the observation that could have produced it.
  std::set<std::u32string> neighbours;
  for (std::size_t j = 0; j < o.size(); ++j) {
    for (const auto& [c, row] : model.substitutions) {
      for (const Confusion& conf : row) {
        if (conf.probability > 0.0 &&
            std::u32string_view(o).substr(j, conf.output.size()) == conf.output) {
          neighbours.insert(o.substr(0, j) + c + o.substr(j + conf.output.size()));
        }
      }
    }
    if (model.insertion > 0.0) {
      neighbours.insert(o.substr(0, j) + o.substr(j + 1));
    }
  }
  if (model.deletion > 0.0) {
    for (std::size_t j = 0; j <= o.size(); ++j) {
      for (char32_t c = U'a'; c <= U'z'; ++c) {
        neighbours.insert(o.substr(0, j) + c + o.substr(j));
      }
    }
  }
  neighbours.erase(o);
  neighbours.erase(std::u32string(token));
  neighbours.erase(std::u32string());

  const auto by_score = [](const Candidate& a, const Candidate& b) {
    if (a.channel_score != b.channel_score) {
      return a.channel_score > b.channel_score;
    }
    return a.form < b.form;
  };
  std::vector<Candidate> alternatives;
  for (const std::u32string& f : neighbours) {
    const double score = model.ChannelLogProb(f, o);
    if (score != kNegInf) alternatives.push_back({f, score});
  }
  std::sort(alternatives.begin(), alternatives.end(), by_score);
  if (alternatives.size() > options.alternatives) {
    alternatives.resize(options.alternatives);
  }

  if (!o.empty()) list.candidates.push_back({o, model.ChannelLogProb(o, o)});
  if (o != token) {
    list.candidates.push_back(
        {std::u32string(token), model.ChannelLogProb(token, o)});
  }
  for (Candidate& c : alternatives) list.candidates.push_back(std::move(c));
  std::sort(list.candidates.begin(), list.candidates.end(), by_score);
  return list;
}

// ---------------------------------------------------------------------------
// Resources

SkeletonAcceptorIndex::SkeletonAcceptorIndex(
    const FrequencyWordList& words, const SkeletonAcceptorOptions& options) {
  for (const WordFrequency& wf : words.entries()) {
    const std::u32string w = StripDiacritics(Utf8ToU32(wf.word));
    try {
      WeightedAcceptor acceptor = BuildSkeletonAcceptor(w, options);
      by_ends_[{w.front(), w.back()}].push_back(std::move(acceptor));
      ++size_;
    } catch (const Error&) {
      // Not a letter token.
    }
  }
}

std::optional<double> SkeletonAcceptorIndex::Score(
    std::u32string_view form) const {
  if (form.empty()) return std::nullopt;
  const auto it = by_ends_.find({form.front(), form.back()});
  if (it == by_ends_.end()) return std::nullopt;
  std::optional<double> best;
  for (const WeightedAcceptor& acceptor : it->second) {
    const auto score = acceptor.Score(form);
    if (score && (!best || *score > *best)) best = score;
  }
  return best;
}

ResourceScores ScoreResources(std::u32string_view form,
                              const ResourceBundle& bundle,
                              const DecodeOptions& options) {
  ResourceScores s;
  const std::string utf8 = U32ToUtf8(form);
  if (bundle.lexicon) {
    if (const auto f = bundle.lexicon->MaxFrequency(utf8)) {
      s.lexicon = options.membership_bonus + std::log(static_cast<double>(*f));
    }
  }
  if (bundle.vocabulary) {
    const auto it = bundle.vocabulary->find(utf8);
    if (it != bundle.vocabulary->end()) {
      s.vocabulary =
          options.membership_bonus + std::log(static_cast<double>(it->second));
    }
  }
  if (bundle.skeletons) {
    s.skeleton = bundle.skeletons->Score(form).value_or(options.reject_score);
  }
  if (bundle.rebus && !form.empty()) {
    s.rebus = bundle.rebus->Score(form).value_or(options.reject_score);
  }
  return s;
}

std::u32string Decode(const CandidateList& candidates,
                      const ResourceBundle& bundle,
                      const DecodeOptions& options) {
  if (candidates.candidates.empty()) return candidates.observed;
  double best_score = kNegInf;
  const Candidate* best = &candidates.candidates.front();
  for (const Candidate& c : candidates.candidates) {
    const ResourceScores r = ScoreResources(c.form, bundle, options);
    const double total = c.channel_score + bundle.lexicon_weight * r.lexicon +
                         bundle.skeleton_weight * r.skeleton +
                         bundle.rebus_weight * r.rebus +
                         bundle.vocabulary_weight * r.vocabulary;
    if (total > best_score) {
      best_score = total;
      best = &c;
    }
  }
  return best->form;
}

// ---------------------------------------------------------------------------
// Corpus

std::string_view CategoryName(Category c) {
  switch (c) {
    case Category::kSkeleton: return "skeleton";
    case Category::kRebus: return "rebus";
    case Category::kPhonetic: return "phonetic";
    case Category::kDivers: return "divers";
  }
  return "?";
}

std::optional<Category> CategoryFromName(std::string_view name) {
  for (Category c : kCategories) {
    if (CategoryName(c) == name) return c;
  }
  return std::nullopt;
}

std::vector<CorpusItem> ParseCorpus(std::istream& in) {
  std::vector<CorpusItem> corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = Split(line, '\t');
    if (fields.size() != 2 && fields.size() != 3) {
      throw ParseError(line_no, "expected category<TAB>label[<TAB>source]");
    }
    const auto category = CategoryFromName(fields[0]);
    if (!category) {
      throw ParseError(line_no, "unknown category " + std::string(fields[0]));
    }
    CorpusItem item{*category, {}, {}};
    try {
      item.label = Utf8ToU32(fields[1]);
      if (fields.size() == 3) item.source = Utf8ToU32(fields[2]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (NormalizeForMetric(item.label).empty()) {
      throw ParseError(line_no, "empty label");
    }
    corpus.push_back(std::move(item));
  }
  return corpus;
}

void WriteCorpus(std::ostream& out, std::span<const CorpusItem> corpus) {
  for (const CorpusItem& item : corpus) {
    out << CategoryName(item.category) << '\t' << U32ToUtf8(item.label);
    if (!item.source.empty()) out << '\t' << U32ToUtf8(item.source);
    out << '\n';
  }
}

std::span<const AttestedRebus> AttestedRebusForms() {
  static constexpr AttestedRebus kForms[] = {
      {U"2m1", U"demain"},     {U"2min", U"demain"},  {U"a2m1", U"à demain"},
      {U"kfé", U"café"},       {U"a+", U"à plus"},    {U"@+", U"à plus"},
      {U"c", U"c'est"},        {U"g", U"j'ai"},       {U"9", U"neuf"},
      {U"2", U"de"},           {U"1", U"un"},         {U"b1", U"bien"},
      {U"bi1", U"bien"},       {U"r1", U"rien"},      {U"mr6", U"merci"},
      {U"qq1", U"quelqu'un"},  {U"k7", U"cassette"},  {U"7", U"cette"},
      {U"100", U"sans"},       {U"l", U"elle"},       {U"o", U"au"},
      {U"ht", U"acheter"},     {U"6t", U"cité"},      {U"d", U"des"},
      {U"t", U"t'es"},         {U"1posibl", U"impossible"},
      {U"koi29", U"quoi de neuf"},
  };
  return kForms;
}

std::vector<CorpusItem> GenerateCorpus(const FrequencyWordList& words,
                                       std::size_t size, std::uint64_t seed,
                                       const LexiconBuildOptions& options) {
  if (words.empty()) throw Error("empty word list");
  // Candidate source words per generated category.
  std::vector<std::pair<std::u32string, std::u32string>> skeletons;
  std::vector<std::u32string> letter_words;
  for (const WordFrequency& wf : words.entries()) {
    const std::u32string w = Utf8ToU32(wf.word);
    letter_words.push_back(w);
    for (const std::string& form :
         GenerateForms(wf.word, Generator::kSkeleton, options)) {
      skeletons.emplace_back(Utf8ToU32(form), w);
    }
  }
  if (skeletons.empty()) throw Error("word list yields no skeleton");
  const PhoneticRuleSet& rules =
      options.rules != nullptr ? *options.rules : PhoneticRuleSet::Default();
  PhonetizeOptions po;
  po.variant_cap = options.variant_cap;
  const auto attested = AttestedRebusForms();

  Rng rng(seed);
  std::vector<CorpusItem> corpus;
  corpus.reserve(size);
  while (corpus.size() < size) {
    const Category category = kCategories[corpus.size() % 4];
    switch (category) {
      case Category::kSkeleton: {
        const auto& [form, word] = skeletons[rng.Below(skeletons.size())];
        corpus.push_back({category, form, word});
        break;
      }
      case Category::kRebus: {
        const AttestedRebus& r = attested[rng.Below(attested.size())];
        corpus.push_back(
            {category, std::u32string(r.form), std::u32string(r.meaning)});
        break;
      }
      case Category::kPhonetic: {
        // Words without a variant are redrawn.
        for (int attempt = 0;; ++attempt) {
          if (attempt == 1000) throw Error("word list yields no phonetic variant");
          const std::u32string& w = letter_words[rng.Below(letter_words.size())];
          const VariantSet set = rules.Phonetize(w, po);
          if (set.variants.empty()) continue;
          corpus.push_back(
              {category, set.variants[rng.Below(set.variants.size())].form, w});
          break;
        }
        break;
      }
      case Category::kDivers: {
        const std::u32string& w = letter_words[rng.Below(letter_words.size())];
        corpus.push_back({category, w, w});
        break;
      }
    }
  }
  return corpus;
}

ResourceBundle MakeDevelopedBundle(const FrequencyWordList& words,
                                   const LexiconBuildOptions& options) {
  return MakeDevelopedBundle(
      std::make_shared<const Lexicon>(BuildLexicon(words, options)), words);
}

ResourceBundle MakeDevelopedBundle(std::shared_ptr<const Lexicon> lexicon,
                                   const FrequencyWordList& words) {
  ResourceBundle bundle;
  bundle.name = "developed";
  bundle.lexicon = std::move(lexicon);
  bundle.skeletons = std::make_shared<const SkeletonAcceptorIndex>(words);
  bundle.rebus = std::make_shared<const RebusModel>();
  return bundle;
}

ResourceBundle MakeOptimalBundle(std::span<const CorpusItem> corpus) {
  // Counts are rescaled to occurrences per 10M tokens, the unit of the
  // bundled word list, so membership scores are comparable across bundles.
  std::map<std::string, std::uint64_t> counts;
  for (const CorpusItem& item : corpus) ++counts[U32ToUtf8(item.label)];
  auto vocabulary = std::make_shared<FrequencyTable>();
  const double scale = corpus.empty() ? 1.0 : 1e7 / static_cast<double>(corpus.size());
  for (const auto& [form, count] : counts) {
    (*vocabulary)[form] = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(count * scale)));
  }
  ResourceBundle bundle;
  bundle.name = "optimal";
  bundle.vocabulary = std::move(vocabulary);
  return bundle;
}

// ---------------------------------------------------------------------------
// Evaluation

double EvaluationTable::ErrorReduction(std::size_t row,
                                       std::size_t bundle) const {
  const double base_error = 100.0 - tr[row][0];
  if (base_error <= 0.0) return 0.0;
  return (tr[row][bundle] - tr[row][0]) / base_error;
}

double EvaluationTable::OverallErrorReduction(std::size_t bundle) const {
  const double base_error = 100.0 - overall[0];
  if (base_error <= 0.0) return 0.0;
  return (overall[bundle] - overall[0]) / base_error;
}

std::optional<std::size_t> EvaluationTable::Row(Category c) const {
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (categories[i] == c) return i;
  }
  return std::nullopt;
}

void EvaluationTable::WriteTsv(std::ostream& out) const {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::fixed << std::setprecision(2);
  out << "category\twords\tchars";
  for (const std::string& name : bundle_names) out << '\t' << name;
  out << '\n';
  std::size_t words = 0;
  std::size_t chars = 0;
  for (std::size_t r = 0; r < categories.size(); ++r) {
    out << CategoryName(categories[r]) << '\t' << stats[r].words << '\t'
        << stats[r].chars;
    for (double v : tr[r]) out << '\t' << v;
    out << '\n';
    words += stats[r].words;
    chars += stats[r].chars;
  }
  out << "all\t" << words << '\t' << chars;
  for (double v : overall) out << '\t' << v;
  out << '\n';
  out.flags(old_flags);
  out.precision(old_precision);
}

void EvaluationTable::WriteSummary(std::ostream& out) const {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::fixed << std::setprecision(1);
  for (std::size_t b = 1; b < bundle_names.size(); ++b) {
    for (std::size_t r = 0; r < categories.size(); ++r) {
      out << "# " << bundle_names[b] << " vs " << bundle_names[0] << ", "
          << CategoryName(categories[r]) << ": " << tr[r][0] << "% -> "
          << tr[r][b] << "%, " << 100.0 * ErrorReduction(r, b)
          << "% of initial errors corrected\n";
    }
    out << "# " << bundle_names[b] << " vs " << bundle_names[0]
        << ", all: " << overall[0] << "% -> " << overall[b] << "%, "
        << 100.0 * OverallErrorReduction(b)
        << "% of initial errors corrected\n";
  }
  out.flags(old_flags);
  out.precision(old_precision);
}

EvaluationTable Evaluate(std::span<const CorpusItem> corpus,
                         const ConfusionModel& model,
                         std::span<const ResourceBundle> bundles,
                         const EvaluationOptions& options) {
  if (corpus.empty()) throw Error("empty corpus");
  if (bundles.empty()) throw Error("no resource bundle");
  model.Validate();

  // hypotheses[item][bundle]
  std::vector<std::vector<std::u32string>> hypotheses(corpus.size());
  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = Rng::ForItem(model.seed, i);
      const CandidateList candidates =
          Corrupt(corpus[i].label, model, rng, options.corrupt);
      hypotheses[i].reserve(bundles.size());
      for (const ResourceBundle& bundle : bundles) {
        hypotheses[i].push_back(Decode(candidates, bundle, options.decode));
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, 8);
  const std::size_t chunk = (corpus.size() + threads - 1) / threads;
  std::vector<std::future<void>> parts;
  for (std::size_t begin = 0; begin < corpus.size(); begin += chunk) {
    parts.push_back(std::async(std::launch::async, work, begin,
                               std::min(begin + chunk, corpus.size())));
  }
  for (auto& part : parts) part.get();

  EvaluationTable table;
  for (const ResourceBundle& b : bundles) table.bundle_names.push_back(b.name);
  using Pairs = std::vector<std::pair<std::u32string, std::u32string>>;
  std::vector<Pairs> all(bundles.size());
  for (Category category : kCategories) {
    std::vector<Pairs> pairs(bundles.size());
    CategoryStats stats;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].category != category) continue;
      ++stats.words;
      stats.chars += NormalizeForMetric(corpus[i].label).size();
      for (std::size_t b = 0; b < bundles.size(); ++b) {
        pairs[b].emplace_back(corpus[i].label, hypotheses[i][b]);
        all[b].emplace_back(corpus[i].label, hypotheses[i][b]);
      }
    }
    if (stats.words == 0) continue;
    table.categories.push_back(category);
    table.stats.push_back(stats);
    std::vector<double> row;
    for (const Pairs& p : pairs) row.push_back(CorpusTr(p));
    table.tr.push_back(std::move(row));
  }
  for (const Pairs& p : all) table.overall.push_back(CorpusTr(p));
  return table;
}

}  // namespace mimema
