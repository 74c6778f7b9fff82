#ifndef MIMEMA_SKELETON_H_
#define MIMEMA_SKELETON_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mimema/automata.h"
#include "mimema/textmodel.h"

namespace mimema {

// Intermediate forms of the four consonant-skeleton rules. All stage forms
// are lowercased with diacritics stripped; after_rule1 is the full word
// (rule 1 only protects positions).
struct SkeletonDerivation {
  std::u32string input;
  std::u32string after_rule1;
  std::u32string after_rule2;
  std::u32string after_rule3;
  std::u32string after_rule4;
  std::vector<std::size_t> kept_positions;  // indices into input
  bool no_consonant = false;

  const std::u32string& skeleton() const { return after_rule4; }
};

// Throws Error("empty token") on empty input and Error("not a letter
// token") when the word contains digits, symbols or whitespace.
//
//   1. keep the first and last consonant and the vowels outside them;
//   2. delete the other vowels;
//   3. delete l/r/h following a consonant inside a syllable onset;
//   4. delete n/m in a syllable coda before a consonant.
//
// Positions protected by rule 1 are never deleted by rules 3 and 4.
SkeletonDerivation Skeletonize(std::u32string_view word,
                               const OnsetSet& onsets = OnsetSet::Default());

// How a relaxed skeleton acceptor treats each input position.
enum class PositionRole {
  kMandatory,  // always written
  kDeletable,  // removed by the strict rules, optionally retained
  kDroppable,  // kept by the strict rules, optionally removed
};

// Interior l, r, h, n, m consonants that survive the strict rules are
// droppable (e.g. the r of "toujours" in "tjs").
std::vector<PositionRole> ClassifyPositions(
    std::u32string_view word, const OnsetSet& onsets = OnsetSet::Default());

struct SkeletonAcceptorOptions {
  // Probability ratio between a path with one optional retention (or drop,
  // or whole-tail retention) and the same path without it.
  double retention_factor = 0.5;
};

// Acceptor over the stripped, lowercased word whose language covers the
// strict skeleton, every stage output, all optional retentions and drops,
// and abbreviated prefixes followed by the unabbreviated remainder of the
// word ("bjour" for "bonjour"). The strict skeleton is the best path.
WeightedAcceptor BuildSkeletonAcceptor(
    std::u32string_view word, const SkeletonAcceptorOptions& options = {},
    const OnsetSet& onsets = OnsetSet::Default());

}  // namespace mimema

#endif  // MIMEMA_SKELETON_H_
