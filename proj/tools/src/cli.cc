#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mimema/error.h"
#include "mimema/lexicon.h"
#include "mimema/metric.h"
#include "mimema/phonetic.h"
#include "mimema/rebus.h"
#include "mimema/simulator.h"
#include "mimema/skeleton.h"
#include "mimema/textmodel.h"
#include "mimema/utf8.h"

namespace mimema::cli {
namespace {

struct Options {
  std::string input = "-";
  std::string lexicon;
  std::string rules;
  std::string onsets;
  std::string config;
  std::string words;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> generate;
  std::optional<double> noise_scale;
  std::optional<double> membership_bonus;
  std::string generators = "skeleton,phonetic";
  std::size_t cap = 256;
  bool strict = false;
  bool one_per_line = false;
  bool fold_case = false;
  bool fold_diacritics = false;
  bool stages = false;
  bool message_average = false;
};

std::string DataFile(const std::string& name) {
  if (const char* dir = std::getenv("MIMEMA_DATA_DIR"); dir && *dir) {
    return std::string(dir) + "/" + name;
  }
  // Source tree first, then the installed copy.
  for (const char* dir : {MIMEMA_DATA_DIR, MIMEMA_INSTALL_DATA_DIR}) {
    const std::string path = std::string(dir) + "/" + name;
    if (std::filesystem::exists(path)) return path;
  }
  return std::string(MIMEMA_DATA_DIR) + "/" + name;
}

// Owns a file stream when the input is not "-".
class Input {
 public:
  Input(const std::string& path, std::istream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ifstream>(path);
      if (!*file_) throw Error("cannot open " + path);
      stream_ = file_.get();
    }
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

std::u32string LowerToken(std::string_view line) {
  return ToLower(Utf8ToU32(line));
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

// Applies `fn` to every input line. Blank lines give blank output; failing
// lines are reported on `err` and give blank output too, so output lines
// stay aligned with input lines.
int ForEachLine(std::istream& in, std::ostream& out, std::ostream& err,
                bool strict,
                const std::function<std::string(std::string_view)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  int status = kExitOk;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      out << '\n';
      continue;
    }
    try {
      out << fn(line) << '\n';
    } catch (const Error& e) {
      err << "line " << line_no << ": " << e.what() << '\n';
      status = kExitInputError;
      if (strict) return status;
      out << '\n';
    }
  }
  return status;
}

const OnsetSet& Onsets(const Options& o, std::unique_ptr<OnsetSet>& holder) {
  if (o.onsets.empty()) return OnsetSet::Default();
  holder = std::make_unique<OnsetSet>(OnsetSet::Load(o.onsets));
  return *holder;
}

const PhoneticRuleSet& Rules(const Options& o,
                             std::unique_ptr<PhoneticRuleSet>& holder) {
  if (o.rules.empty()) return PhoneticRuleSet::Default();
  holder = std::make_unique<PhoneticRuleSet>(PhoneticRuleSet::Load(o.rules));
  return *holder;
}

int Skeletonize(const Options& o, std::istream& in, std::ostream& out,
                std::ostream& err) {
  std::unique_ptr<OnsetSet> holder;
  const OnsetSet& onsets = Onsets(o, holder);
  Input input(o.input, in);
  return ForEachLine(input.get(), out, err, o.strict, [&](std::string_view line) {
    const SkeletonDerivation d = Skeletonize(LowerToken(line), onsets);
    if (!o.stages) return U32ToUtf8(d.skeleton());
    return Join({U32ToUtf8(d.input), U32ToUtf8(d.after_rule1),
                 U32ToUtf8(d.after_rule2), U32ToUtf8(d.after_rule3),
                 U32ToUtf8(d.after_rule4)},
                "\t");
  });
}

int PhonetizeCmd(const Options& o, std::istream& in, std::ostream& out,
                 std::ostream& err) {
  std::unique_ptr<PhoneticRuleSet> holder;
  const PhoneticRuleSet& rules = Rules(o, holder);
  PhonetizeOptions options;
  options.variant_cap = o.cap;
  Input input(o.input, in);
  return ForEachLine(input.get(), out, err, o.strict, [&](std::string_view line) {
    const std::u32string word = LowerToken(line);
    if (word.empty()) throw Error("empty token");
    std::vector<std::string> forms;
    for (const PhoneticVariant& v : rules.Phonetize(word, options).variants) {
      forms.push_back(U32ToUtf8(v.form));
    }
    return Join(forms, o.one_per_line ? "\n" : ",");
  });
}

int SyllabifyCmd(const Options& o, std::istream& in, std::ostream& out,
                 std::ostream& err) {
  std::unique_ptr<OnsetSet> holder;
  const OnsetSet& onsets = Onsets(o, holder);
  Input input(o.input, in);
  return ForEachLine(input.get(), out, err, o.strict, [&](std::string_view line) {
    return U32ToUtf8(Syllabify(LowerToken(line), onsets).Join());
  });
}

int RebusScore(const Options& o, std::istream& in, std::ostream& out,
               std::ostream& err) {
  const RebusModel model(o.config.empty() ? RebusParams{}
                                          : RebusParams::Load(o.config));
  Input input(o.input, in);
  return ForEachLine(input.get(), out, err, o.strict, [&](std::string_view line) {
    const auto score = model.Score(LowerToken(line));
    return score ? FormatWeight(*score) : std::string("reject");
  });
}

std::optional<LexiconBuildOptions> ParseGenerators(const std::string& list,
                                                   std::ostream& err) {
  LexiconBuildOptions options;
  options.skeleton = false;
  options.phonetic = false;
  std::istringstream names(list);
  std::string name;
  while (std::getline(names, name, ',')) {
    if (name.empty()) continue;
    const auto g = GeneratorFromName(name);
    if (!g) {
      err << "unknown generator: " << name << '\n';
      return std::nullopt;
    }
    (*g == Generator::kSkeleton ? options.skeleton : options.phonetic) = true;
  }
  return options;
}

int BuildLexiconCmd(const Options& o, std::istream& in, std::ostream& out,
                    std::ostream& err) {
  auto options = ParseGenerators(o.generators, err);
  if (!options) return kExitUsageError;
  std::unique_ptr<OnsetSet> onsets_holder;
  std::unique_ptr<PhoneticRuleSet> rules_holder;
  options->onsets = &Onsets(o, onsets_holder);
  options->rules = &Rules(o, rules_holder);
  options->variant_cap = o.cap;
  Input input(o.input, in);
  const FrequencyWordList words = FrequencyWordList::Parse(input.get());
  BuildLexicon(words, *options).Serialize(out);
  return kExitOk;
}

int Lookup(const Options& o, std::istream& in, std::ostream& out,
           std::ostream& err) {
  std::ifstream file(o.lexicon);
  if (!file) throw Error("cannot open " + o.lexicon);
  const Lexicon lexicon = Lexicon::Deserialize(file);
  Input input(o.input, in);
  return ForEachLine(input.get(), out, err, o.strict, [&](std::string_view line) {
    std::vector<std::string> words;
    for (const LookupResult& r : lexicon.Lookup(U32ToUtf8(LowerToken(line)))) {
      words.push_back(r.word);
    }
    return Join(words, ",");
  });
}

std::string FormatTr(double tr) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << tr;
  return s.str();
}

int Tr(const Options& o, std::istream& in, std::ostream& out,
       std::ostream& err) {
  MetricOptions metric;
  metric.fold_case = o.fold_case;
  metric.fold_diacritics = o.fold_diacritics;
  std::vector<std::pair<std::u32string, std::u32string>> pairs;
  Input input(o.input, in);
  const int status =
      ForEachLine(input.get(), out, err, o.strict, [&](std::string_view line) {
        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) {
          throw Error("expected label<TAB>hypothesis");
        }
        std::u32string label = Utf8ToU32(line.substr(0, tab));
        std::u32string hypothesis = Utf8ToU32(line.substr(tab + 1));
        const AlignmentReport r = EditCost(label, hypothesis, metric);
        pairs.emplace_back(std::move(label), std::move(hypothesis));
        return FormatTr(r.tr);
      });
  if (status != kExitOk && o.strict) return status;
  if (!pairs.empty()) {
    out << "total\t"
        << FormatTr(CorpusTr(pairs,
                             o.message_average ? Aggregation::kMessageAveraged
                                               : Aggregation::kCharacterWeighted,
                             metric))
        << '\n';
  }
  return status;
}

int Simulate(const Options& o, std::istream& in, std::ostream& out,
             std::ostream&) {
  ConfusionModel model = o.config.empty() ? ConfusionModel::Default()
                                          : ConfusionModel::Load(o.config);
  if (o.noise_scale) model = model.Scaled(*o.noise_scale);
  if (o.seed) model.seed = *o.seed;
  model.Validate();

  const FrequencyWordList words = FrequencyWordList::Load(
      o.words.empty() ? DataFile("french_words.tsv") : o.words);
  std::unique_ptr<OnsetSet> onsets_holder;
  std::unique_ptr<PhoneticRuleSet> rules_holder;
  LexiconBuildOptions build;
  build.onsets = &Onsets(o, onsets_holder);
  build.rules = &Rules(o, rules_holder);
  build.variant_cap = o.cap;

  std::vector<CorpusItem> corpus;
  if (o.generate) {
    corpus = GenerateCorpus(words, *o.generate, model.seed, build);
  } else {
    Input input(o.input, in);
    corpus = ParseCorpus(input.get());
  }

  std::shared_ptr<const Lexicon> lexicon;
  if (o.lexicon.empty()) {
    lexicon = std::make_shared<const Lexicon>(BuildLexicon(words, build));
  } else {
    std::ifstream file(o.lexicon);
    if (!file) throw Error("cannot open " + o.lexicon);
    lexicon = std::make_shared<const Lexicon>(Lexicon::Deserialize(file));
  }
  ResourceBundle baseline;
  baseline.name = "baseline";
  const std::vector<ResourceBundle> bundles = {
      baseline, MakeDevelopedBundle(lexicon, words), MakeOptimalBundle(corpus)};

  EvaluationOptions options;
  if (o.membership_bonus) options.decode.membership_bonus = *o.membership_bonus;
  const EvaluationTable table = Evaluate(corpus, model, bundles, options);
  table.WriteTsv(out);
  table.WriteSummary(out);
  return kExitOk;
}

int DumpRules(const Options& o, std::ostream& out) {
  std::unique_ptr<PhoneticRuleSet> holder;
  Rules(o, holder).Dump(out);
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"French SMS abbreviation toolkit", "mimema"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  const auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", o.input, "Input file, - for standard input");
    cmd->add_flag("--strict", o.strict, "Stop at the first bad line");
  };
  const auto add_onsets = [&](CLI::App* cmd) {
    cmd->add_option("--onsets", o.onsets, "Onset cluster list")
        ->check(CLI::ExistingFile);
  };
  const auto add_rules = [&](CLI::App* cmd) {
    cmd->add_option("--rules", o.rules, "Phonetic rule TSV")
        ->check(CLI::ExistingFile);
  };

  CLI::App* skeletonize =
      app.add_subcommand("skeletonize", "Consonant skeleton of each word");
  add_input(skeletonize);
  add_onsets(skeletonize);
  skeletonize->add_flag("--stages", o.stages,
                        "Print input and the four rule stages");

  CLI::App* phonetize =
      app.add_subcommand("phonetize", "Phonetic variants of each word");
  add_input(phonetize);
  add_rules(phonetize);
  phonetize->add_option("--cap", o.cap, "Maximum variants per word");
  phonetize->add_flag("--one-per-line", o.one_per_line,
                      "One variant per line instead of comma-separated");

  CLI::App* syllabify = app.add_subcommand("syllabify", "Syllables of each word");
  add_input(syllabify);
  add_onsets(syllabify);

  CLI::App* rebus =
      app.add_subcommand("rebus-score", "Rebus log-probability of each form");
  add_input(rebus);
  rebus->add_option("--config", o.config, "Rebus parameter file")
      ->check(CLI::ExistingFile);

  CLI::App* build =
      app.add_subcommand("build-lexicon", "Lexicon TSV from a word list");
  add_input(build);
  add_onsets(build);
  add_rules(build);
  build->add_option("--generators", o.generators,
                    "Comma-separated subset of skeleton,phonetic");
  build->add_option("--cap", o.cap, "Maximum phonetic variants per word");

  CLI::App* lookup = app.add_subcommand("lookup", "Words behind each form");
  add_input(lookup);
  lookup->add_option("--lexicon", o.lexicon, "Lexicon TSV")->required();

  CLI::App* tr = app.add_subcommand(
      "tr", "Recognition rate of label<TAB>hypothesis lines");
  add_input(tr);
  tr->add_flag("--fold-case", o.fold_case, "Ignore case");
  tr->add_flag("--fold-diacritics", o.fold_diacritics, "Ignore diacritics");
  tr->add_flag("--message-average", o.message_average,
               "Average per-line rates instead of weighting by characters");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Noisy-channel evaluation of a corpus");
  simulate->add_option("input", o.input, "Corpus TSV, - for standard input");
  add_onsets(simulate);
  add_rules(simulate);
  simulate->add_option("--generate", o.generate,
                       "Generate a synthetic corpus of N items instead");
  simulate->add_option("--words", o.words, "Frequency word list")
      ->check(CLI::ExistingFile);
  simulate->add_option("--seed", o.seed, "Random seed");
  simulate->add_option("--config", o.config, "Confusion model file")
      ->check(CLI::ExistingFile);
  simulate->add_option("--lexicon", o.lexicon, "Prebuilt lexicon TSV")
      ->check(CLI::ExistingFile);
  simulate->add_option("--noise-scale", o.noise_scale,
                       "Multiply every noise probability");
  simulate->add_option("--membership-bonus", o.membership_bonus,
                       "Decoder bonus for lexicon members");
  simulate->add_option("--cap", o.cap, "Maximum phonetic variants per word");

  CLI::App* dump = app.add_subcommand("dump-rules", "Print the rule catalogue");
  add_rules(dump);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mimema: " << e.what() << '\n';
    return kExitUsageError;
  }

  try {
    if (*skeletonize) return Skeletonize(o, in, out, err);
    if (*phonetize) return PhonetizeCmd(o, in, out, err);
    if (*syllabify) return SyllabifyCmd(o, in, out, err);
    if (*rebus) return RebusScore(o, in, out, err);
    if (*build) return BuildLexiconCmd(o, in, out, err);
    if (*lookup) return Lookup(o, in, out, err);
    if (*tr) return Tr(o, in, out, err);
    if (*simulate) return Simulate(o, in, out, err);
    if (*dump) return DumpRules(o, out);
  } catch (const Error& e) {
    err << "mimema: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitUsageError;
}

}  // namespace mimema::cli
