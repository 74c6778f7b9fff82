#ifndef MIMEMA_METRIC_H_
#define MIMEMA_METRIC_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mimema {

enum class EditKind { kMatch, kSubstitute, kDelete, kInsert };

struct EditOp {
  EditKind kind;
  std::size_t label_pos;       // index into the normalized label
  std::size_t hypothesis_pos;  // index into the normalized hypothesis
  char32_t output;             // written character (match/substitute/insert)

  bool operator==(const EditOp&) const = default;
};

struct AlignmentReport {
  std::size_t label_length = 0;  // #label: non-whitespace characters
  std::size_t edit_cost = 0;     // D
  double tr = 0.0;               // 100 (#label - D) / #label
  std::vector<EditOp> edit_script;
};

struct MetricOptions {
  bool fold_case = false;
  bool fold_diacritics = false;
};

// Whitespace removed, then optional case/diacritic folding.
std::u32string NormalizeForMetric(std::u32string_view text,
                                  const MetricOptions& options = {});

// Minimum-cost alignment with deletion = substitution = 1, insertion = 0.
// Throws Error("empty label") when the normalized label is empty.
AlignmentReport EditCost(std::u32string_view label,
                         std::u32string_view hypothesis,
                         const MetricOptions& options = {});

// Applies an edit script to a normalized label.
std::u32string ApplyEditScript(std::u32string_view normalized_label,
                               std::span<const EditOp> script);

enum class Aggregation {
  kCharacterWeighted,  // 100 (sum #label - sum D) / sum #label
  kMessageAveraged,    // mean of per-pair TR
};

// Throws Error("empty corpus") on an empty list.
double CorpusTr(std::span<const std::pair<std::u32string, std::u32string>> pairs,
                Aggregation aggregation = Aggregation::kCharacterWeighted,
                const MetricOptions& options = {});

}  // namespace mimema

#endif  // MIMEMA_METRIC_H_
