#ifndef MIMEMA_SIMULATOR_H_
#define MIMEMA_SIMULATOR_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mimema/lexicon.h"
#include "mimema/random.h"
#include "mimema/rebus.h"
#include "mimema/skeleton.h"

namespace mimema {

// ---------------------------------------------------------------------------
// Noisy channel

struct Confusion {
  std::u32string output;  // one or two characters (oversegmentation)
  double probability;

  bool operator==(const Confusion&) const = default;
};

// Per written character: deleted with probability `deletion`; otherwise
// kept or replaced according to its substitution row; then followed by an
// inserted character with probability `insertion`.
struct ConfusionModel {
  std::map<char32_t, std::vector<Confusion>> substitutions;
  double deletion = 0.0;
  double insertion = 0.0;
  std::vector<std::pair<char32_t, double>> insertion_chars;
  std::uint64_t seed = 0;

  // Handwriting-style confusions (a/o, n/u, b -> "lo", m -> "nn", 2/z, ...)
  // calibrated to a 90-95% baseline recognition rate on the synthetic
  // corpus.
  static ConfusionModel Default();

  // Key-value config (seed, deletion, insertion, noise_scale) with
  // `[substitutions]` lines `char<TAB>out:prob,out:prob` and `[insertions]`
  // lines `char<TAB>prob`. noise_scale multiplies every probability.
  static ConfusionModel Parse(std::istream& in);
  static ConfusionModel Load(const std::string& path);
  void Write(std::ostream& out) const;

  // Throws Error("invalid confusion model: ...").
  void Validate() const;

  // Same table with every noise probability multiplied by `factor`.
  ConfusionModel Scaled(double factor) const;

  double KeepProbability(char32_t c) const;
  std::u32string Sample(std::u32string_view token, Rng& rng) const;

  // log P(observed | written) maximized over channel alignments; -inf when
  // the channel cannot produce `observed`.
  double ChannelLogProb(std::u32string_view written,
                        std::u32string_view observed) const;

  bool operator==(const ConfusionModel&) const = default;
};

struct Candidate {
  std::u32string form;
  double channel_score;
};

// Stand-in for a recognizer's ordered candidate list.
struct CandidateList {
  std::u32string observed;              // the sampled corruption
  std::vector<Candidate> candidates;    // channel score descending

  bool Contains(std::u32string_view form) const;
};

struct CorruptOptions {
  std::size_t alternatives = 5;  // k nearest alternatives beyond observed/truth
};

// Samples a corruption of `token` and builds the candidate list: the
// corrupted form, the token itself, and the k best single-edit neighbours
// of the corrupted form by channel score. Uses model.seed.
CandidateList Corrupt(std::u32string_view token, const ConfusionModel& model,
                      const CorruptOptions& options = {});
CandidateList Corrupt(std::u32string_view token, const ConfusionModel& model,
                      Rng& rng, const CorruptOptions& options = {});

// ---------------------------------------------------------------------------
// Language resources and decoding

// Relaxed skeleton acceptors of a word list, indexed by the first and last
// letter of each word (every accepted form shares them).
class SkeletonAcceptorIndex {
 public:
  explicit SkeletonAcceptorIndex(const FrequencyWordList& words,
                                 const SkeletonAcceptorOptions& options = {});

  // Best score over all acceptors, nullopt when every acceptor rejects.
  std::optional<double> Score(std::u32string_view form) const;
  std::size_t size() const { return size_; }

 private:
  std::map<std::pair<char32_t, char32_t>, std::vector<WeightedAcceptor>>
      by_ends_;
  std::size_t size_ = 0;
};

using FrequencyTable = std::map<std::string, std::uint64_t, std::less<>>;

struct ResourceBundle {
  std::string name;
  std::shared_ptr<const Lexicon> lexicon;
  double lexicon_weight = 1.0;
  std::shared_ptr<const SkeletonAcceptorIndex> skeletons;
  double skeleton_weight = 1.0;
  std::shared_ptr<const RebusModel> rebus;
  double rebus_weight = 1.0;
  // Closed vocabulary of surface forms (e.g. the exact corpus forms).
  std::shared_ptr<const FrequencyTable> vocabulary;
  double vocabulary_weight = 1.0;
};

struct DecodeOptions {
  // Added with log(frequency) for forms found in a lexicon or vocabulary.
  double membership_bonus = 8.0;
  // Stands in for the log-probability of a rejected form.
  double reject_score = -20.0;
};

// Per-resource contributions, before weighting.
struct ResourceScores {
  double lexicon = 0.0;
  double skeleton = 0.0;
  double rebus = 0.0;
  double vocabulary = 0.0;
};

ResourceScores ScoreResources(std::u32string_view form,
                              const ResourceBundle& bundle,
                              const DecodeOptions& options = {});

// Candidate maximizing channel score + sum of weight * resource score.
// Ties go to the earlier candidate.
std::u32string Decode(const CandidateList& candidates,
                      const ResourceBundle& bundle,
                      const DecodeOptions& options = {});

// ---------------------------------------------------------------------------
// Evaluation

enum class Category { kSkeleton, kRebus, kPhonetic, kDivers };
inline constexpr Category kCategories[] = {
    Category::kSkeleton, Category::kRebus, Category::kPhonetic,
    Category::kDivers};

std::string_view CategoryName(Category c);
std::optional<Category> CategoryFromName(std::string_view name);

struct CorpusItem {
  Category category;
  std::u32string label;
  std::u32string source;  // standard word, when known

  bool operator==(const CorpusItem&) const = default;
};

// `category<TAB>label[<TAB>source]` lines, '#' comments.
std::vector<CorpusItem> ParseCorpus(std::istream& in);
void WriteCorpus(std::ostream& out, std::span<const CorpusItem> corpus);

struct AttestedRebus {
  std::u32string_view form;
  std::u32string_view meaning;
};
std::span<const AttestedRebus> AttestedRebusForms();

// Synthetic corpus: uniform category mix; skeleton items are strict
// skeletons and phonetic items random phonetic variants of random words
// from the list, rebus items come from the attested list and divers items
// are the words themselves.
std::vector<CorpusItem> GenerateCorpus(const FrequencyWordList& words,
                                       std::size_t size, std::uint64_t seed,
                                       const LexiconBuildOptions& options = {});

// Developed resources: skeleton + phonetic lexicon, relaxed skeleton
// acceptors and the default rebus model.
ResourceBundle MakeDevelopedBundle(const FrequencyWordList& words,
                                   const LexiconBuildOptions& options = {});
ResourceBundle MakeDevelopedBundle(std::shared_ptr<const Lexicon> lexicon,
                                   const FrequencyWordList& words);
// Closed vocabulary made of exactly the corpus labels, weighted by their
// corpus frequency per 10M tokens.
ResourceBundle MakeOptimalBundle(std::span<const CorpusItem> corpus);

struct EvaluationOptions {
  CorruptOptions corrupt;
  DecodeOptions decode;
};

struct CategoryStats {
  std::size_t words = 0;
  std::size_t chars = 0;
};

struct EvaluationTable {
  std::vector<std::string> bundle_names;
  std::vector<Category> categories;            // rows with at least one item
  std::vector<CategoryStats> stats;            // per row
  std::vector<std::vector<double>> tr;         // [row][bundle]
  std::vector<double> overall;                 // [bundle]

  // Fraction of the first bundle's errors removed by bundle b on a row.
  double ErrorReduction(std::size_t row, std::size_t bundle) const;
  double OverallErrorReduction(std::size_t bundle) const;

  std::optional<std::size_t> Row(Category c) const;

  void WriteTsv(std::ostream& out) const;
  void WriteSummary(std::ostream& out) const;
};

// Corrupts every label with a stream derived from (model.seed, index),
// decodes under each bundle and reports character-weighted TR per
// category and bundle. The first bundle is the reference for error
// reductions.
EvaluationTable Evaluate(std::span<const CorpusItem> corpus,
                         const ConfusionModel& model,
                         std::span<const ResourceBundle> bundles,
                         const EvaluationOptions& options = {});

}  // namespace mimema

#endif  // MIMEMA_SIMULATOR_H_
