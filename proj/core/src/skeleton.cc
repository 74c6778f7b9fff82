#include "mimema/skeleton.h"

#include <cmath>
#include <optional>

#include "mimema/error.h"
#include "mimema/utf8.h"

namespace mimema {
namespace {

std::u32string Normalize(std::u32string_view word) {
  if (word.empty()) throw Error("empty token");
  std::u32string out = StripDiacritics(ToLower(word));
  for (char32_t c : out) {
    const CharClass k = ClassOf(c);
    if (k != CharClass::kVowel && k != CharClass::kConsonant) {
      throw Error("not a letter token");
    }
  }
  return out;
}

std::u32string Pick(const std::u32string& text, const std::vector<bool>& keep) {
  std::u32string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (keep[i]) out.push_back(text[i]);
  }
  return out;
}

bool IsLiquidOrH(char32_t c) { return c == U'l' || c == U'r' || c == U'h'; }
bool IsNasal(char32_t c) { return c == U'n' || c == U'm'; }

struct RuleTrace {
  std::u32string word;  // normalized
  std::vector<bool> after_rule2;
  std::vector<bool> after_rule3;
  std::vector<bool> after_rule4;
  std::optional<std::size_t> first_consonant;
  std::optional<std::size_t> last_consonant;
};

RuleTrace RunRules(std::u32string_view raw, const OnsetSet& onsets) {
  RuleTrace t;
  t.word = Normalize(raw);
  const std::u32string& w = t.word;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (IsConsonant(w[i])) {
      if (!t.first_consonant) t.first_consonant = i;
      t.last_consonant = i;
    }
  }
  t.after_rule2.assign(n, true);
  if (!t.first_consonant) {
    t.after_rule3 = t.after_rule4 = t.after_rule2;
    return t;
  }
  const std::size_t first = *t.first_consonant;
  const std::size_t last = *t.last_consonant;
  const auto is_protected = [&](std::size_t i) {
    return i < first || i > last || i == first || i == last;
  };

  // Rules 1 and 2.
  for (std::size_t i = first + 1; i < last; ++i) {
    if (IsVowel(w[i])) t.after_rule2[i] = false;
  }

  const SyllabifiedWord syllables = Syllabify(w, onsets);

  // Rule 3: weak l/r/h inside an onset, right after a consonant.
  t.after_rule3 = t.after_rule2;
  for (std::size_t i = 1; i < n; ++i) {
    if (is_protected(i) || !IsLiquidOrH(w[i])) continue;
    const SyllableRole role = syllables.RoleAt(i);
    if (role.part == SyllablePart::kOnset && role.offset >= 1 &&
        IsConsonant(w[i - 1])) {
      t.after_rule3[i] = false;
    }
  }

  // Rule 4: weak n/m in a coda, right before a consonant.
  t.after_rule4 = t.after_rule3;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (is_protected(i) || !IsNasal(w[i])) continue;
    if (syllables.RoleAt(i).part == SyllablePart::kCoda &&
        IsConsonant(w[i + 1])) {
      t.after_rule4[i] = false;
    }
  }
  return t;
}

}  // namespace

SkeletonDerivation Skeletonize(std::u32string_view word,
                               const OnsetSet& onsets) {
  const RuleTrace t = RunRules(word, onsets);
  SkeletonDerivation d;
  d.input = std::u32string(word);
  d.after_rule1 = t.word;
  d.after_rule2 = Pick(t.word, t.after_rule2);
  d.after_rule3 = Pick(t.word, t.after_rule3);
  d.after_rule4 = Pick(t.word, t.after_rule4);
  d.no_consonant = !t.first_consonant.has_value();
  for (std::size_t i = 0; i < t.word.size(); ++i) {
    if (t.after_rule4[i]) d.kept_positions.push_back(i);
  }
  return d;
}

std::vector<PositionRole> ClassifyPositions(std::u32string_view word,
                                            const OnsetSet& onsets) {
  const RuleTrace t = RunRules(word, onsets);
  std::vector<PositionRole> roles(t.word.size(), PositionRole::kMandatory);
  for (std::size_t i = 0; i < t.word.size(); ++i) {
    if (!t.after_rule4[i]) {
      roles[i] = PositionRole::kDeletable;
    } else if (t.first_consonant && i > *t.first_consonant &&
               i < *t.last_consonant &&
               (IsLiquidOrH(t.word[i]) || IsNasal(t.word[i]))) {
      roles[i] = PositionRole::kDroppable;
    }
  }
  return roles;
}

// State layout: main states 0..n ("next position to decide is i") and tail
// states n+1..2n, where tail state n+j means positions j..n-1 remain to be
// copied verbatim. A main-state transition skips the undecided positions
// i..j-1 and writes position j, either staying abbreviated (to main j+1) or
// switching to the verbatim tail (to tail state j+1).
//
// Per position, skip/emit probabilities sum to one, so the main
// transitions of each state sum to one minus the stopping mass. The tail
// entry writing j weighs retention_factor times the strict continuation
// from j; each state's transitions are then rescaled so the total stays
// within one. The strict continuation only depends on later states, so the
// construction runs right to left.
WeightedAcceptor BuildSkeletonAcceptor(std::u32string_view word,
                                       const SkeletonAcceptorOptions& options,
                                       const OnsetSet& onsets) {
  const double r = options.retention_factor;
  if (!(r > 0.0 && r < 1.0)) throw Error("retention factor must be in (0,1)");
  const std::u32string w = Normalize(word);
  const std::vector<PositionRole> roles = ClassifyPositions(w, onsets);
  const std::size_t n = w.size();

  const double deviation = r / (1.0 + r);
  const double standard = 1.0 / (1.0 + r);
  std::vector<double> skip(n), emit(n);
  std::vector<bool> strict_emit(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (roles[i]) {
      case PositionRole::kMandatory:
        skip[i] = 0.0;
        emit[i] = 1.0;
        strict_emit[i] = true;
        break;
      case PositionRole::kDeletable:
        skip[i] = standard;
        emit[i] = deviation;
        strict_emit[i] = false;
        break;
      case PositionRole::kDroppable:
        skip[i] = deviation;
        emit[i] = standard;
        strict_emit[i] = true;
        break;
    }
  }

  const auto main_state = [](std::size_t i) { return static_cast<StateId>(i); };
  const auto tail_state = [n](std::size_t j) {
    return static_cast<StateId>(n + j);
  };

  // strict[i]: strict-path probability from main state i to the end.
  std::vector<double> strict(n + 1, 1.0);
  std::vector<Transition> transitions;
  std::vector<bool> is_final(n + 1, false);
  is_final[n] = true;
  for (std::size_t i = n; i-- > 0;) {
    is_final[i] = is_final[i + 1] && skip[i] > 0.0;

    // decide[j]: strict continuation when the decision at j is reached
    // from i with nothing written yet (excludes state i's scale).
    std::vector<double> decide(n, 0.0);
    double next_decide = 1.0;
    for (std::size_t j = n; j-- > i;) {
      decide[j] = strict_emit[j]
                      ? (roles[j] == PositionRole::kMandatory ? 1.0 : standard) *
                            strict[j + 1]
                      : standard * next_decide;
      next_decide = decide[j];
    }

    double reach = 1.0;  // probability of skipping positions i..j-1
    double tail_mass = 0.0;
    for (std::size_t j = i; j < n && reach > 0.0; ++j) {
      tail_mass += reach * r * decide[j];
      reach *= skip[j];
    }
    const double scale = 1.0 / (1.0 + tail_mass);
    strict[i] = scale * decide[i];

    reach = 1.0;
    for (std::size_t j = i; j < n && reach > 0.0; ++j) {
      const Label label = Label::Literal(w[j]);
      transitions.push_back({main_state(i), label, main_state(j + 1),
                             std::log(scale * reach * emit[j])});
      transitions.push_back({main_state(i), label, tail_state(j + 1),
                             std::log(scale * reach * r * decide[j])});
      reach *= skip[j];
    }
  }
  for (std::size_t j = 1; j < n; ++j) {
    transitions.push_back(
        {tail_state(j), Label::Literal(w[j]), tail_state(j + 1), 0.0});
  }

  std::vector<StateId> finals;
  for (std::size_t i = 0; i <= n; ++i) {
    if (is_final[i]) finals.push_back(main_state(i));
  }
  finals.push_back(tail_state(n));
  return WeightedAcceptor(2 * n + 1, main_state(0), std::move(finals),
                          std::move(transitions));
}

}  // namespace mimema
