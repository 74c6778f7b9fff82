#ifndef MIMEMA_PHONETIC_H_
#define MIMEMA_PHONETIC_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mimema {

// A small rewrite pattern language, enough for the phonetization rules:
//
//   pattern  := branch ('|' branch)*
//   branch   := '^'? item* '$'?
//   item     := atom '?'? | '(' (atom '?'?)+ ')'
//   atom     := literal | '[' '^'? literal+ ']'
//
// Groups capture ({1}, {2}, ... in replacements) and cannot nest. A
// backslash escapes the next character. Branches are tried in order and
// the first that matches wins; optional atoms are greedy.
class RewritePattern {
 public:
  struct Match {
    std::size_t length;
    std::vector<std::u32string> groups;
  };

  // Throws Error("invalid pattern: ...").
  explicit RewritePattern(std::u32string_view source);

  const std::u32string& source() const { return source_; }

  // Tries to match starting exactly at `pos`.
  std::optional<Match> MatchAt(std::u32string_view text,
                               std::size_t pos) const;

 private:
  struct Atom {
    std::u32string chars;
    bool negated = false;
    bool optional = false;
    int group = 0;  // 1-based capture group, 0 when outside a group
  };
  struct Branch {
    bool anchored_start = false;
    bool anchored_end = false;
    std::vector<Atom> atoms;
    int num_groups = 0;
  };

  bool MatchAtoms(const Branch& branch, std::u32string_view text,
                  std::size_t atom, std::size_t pos, std::size_t start,
                  std::vector<std::size_t>& group_begin,
                  std::vector<std::size_t>& group_end, Match& out) const;

  std::u32string source_;
  std::vector<Branch> branches_;
};

enum class RuleStage { kFinalMuteE, kFinalMuteConsonant, kMidWord, kExceptions };

inline constexpr RuleStage kRuleStages[] = {
    RuleStage::kFinalMuteE, RuleStage::kFinalMuteConsonant,
    RuleStage::kMidWord, RuleStage::kExceptions};

std::string_view RuleStageName(RuleStage stage);
std::optional<RuleStage> RuleStageFromName(std::string_view name);

// Replacement templates use {n} for capture groups. The template "<base>"
// replaces the matched text with its diacritic-stripped form.
struct PhoneticRule {
  std::string id;
  RuleStage stage;
  RewritePattern pattern;
  std::vector<std::u32string> replacements;
  bool optional = true;

  // Rewrites every non-overlapping match, scanning left to right, with the
  // given replacement alternative.
  std::u32string Apply(std::u32string_view word,
                       std::size_t alternative) const;
};

struct RuleApplication {
  std::string rule_id;
  std::size_t alternative = 0;

  auto operator<=>(const RuleApplication&) const = default;
};

// "id" for the first alternative, "id:k" otherwise.
std::string FormatTrace(const std::vector<RuleApplication>& trace);

struct PhoneticVariant {
  std::u32string form;
  std::vector<RuleApplication> trace;
};

struct VariantSet {
  std::u32string source;
  std::vector<PhoneticVariant> variants;  // sorted by form, source excluded

  bool Contains(std::u32string_view form) const;
  std::vector<std::u32string> Forms() const;
};

struct PhonetizeOptions {
  // Upper bound on the number of variants; derivations using fewer rules
  // are kept first.
  std::size_t variant_cap = 256;
};

class PhoneticRuleSet {
 public:
  explicit PhoneticRuleSet(std::vector<PhoneticRule> rules);

  // The built-in French catalogue.
  static const PhoneticRuleSet& Default();

  // TSV with `id<TAB>stage<TAB>pattern<TAB>replacements` lines;
  // replacements are comma-separated, "-" denotes the empty string. An
  // optional fifth column "required" makes the rule obligatory. Lines
  // starting with '#' are comments.
  static PhoneticRuleSet Parse(std::istream& in);
  static PhoneticRuleSet Load(const std::string& path);
  void Dump(std::ostream& out) const;

  // Rules in application order: stage order, then catalogue order.
  const std::vector<PhoneticRule>& rules() const { return rules_; }
  const PhoneticRule* Find(std::string_view id) const;

  // Four stages in order; each rule branches every derivation into
  // applied / not applied (one branch per replacement alternative).
  // Duplicate forms are merged, keeping the shortest trace.
  VariantSet Phonetize(std::u32string_view word,
                       const PhonetizeOptions& options = {}) const;

  // Re-applies a trace to the source. Throws Error on unknown rule ids.
  std::u32string Replay(std::u32string_view source,
                        const std::vector<RuleApplication>& trace) const;

 private:
  std::vector<PhoneticRule> rules_;
};

inline VariantSet Phonetize(std::u32string_view word,
                            const PhonetizeOptions& options = {}) {
  return PhoneticRuleSet::Default().Phonetize(word, options);
}

inline const std::vector<PhoneticRule>& RuleCatalogue() {
  return PhoneticRuleSet::Default().rules();
}

}  // namespace mimema

#endif  // MIMEMA_PHONETIC_H_
