#include "mimema/metric.h"

#include <algorithm>

#include "mimema/error.h"
#include "mimema/textmodel.h"
#include "mimema/utf8.h"

namespace mimema {

std::u32string NormalizeForMetric(std::u32string_view text,
                                  const MetricOptions& options) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (ClassOf(c) == CharClass::kSeparator) continue;
    if (options.fold_case) c = ToLower(c);
    if (options.fold_diacritics) c = BaseOf(c);
    out.push_back(c);
  }
  return out;
}

AlignmentReport EditCost(std::u32string_view label,
                         std::u32string_view hypothesis,
                         const MetricOptions& options) {
  const std::u32string a = NormalizeForMetric(label, options);
  const std::u32string b = NormalizeForMetric(hypothesis, options);
  if (a.empty()) throw Error("empty label");
  const std::size_t n = a.size();
  const std::size_t m = b.size();

  // cost[i][j]: cheapest way to turn a[0..i) into b[0..j).
  std::vector<std::size_t> cost((n + 1) * (m + 1));
  const auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  for (std::size_t i = 0; i <= n; ++i) cost[at(i, 0)] = i;
  for (std::size_t j = 0; j <= m; ++j) cost[at(0, j)] = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diagonal =
          cost[at(i - 1, j - 1)] + (a[i - 1] == b[j - 1] ? 0 : 1);
      const std::size_t deletion = cost[at(i - 1, j)] + 1;
      const std::size_t insertion = cost[at(i, j - 1)];
      cost[at(i, j)] = std::min({diagonal, deletion, insertion});
    }
  }

  AlignmentReport report;
  report.label_length = n;
  report.edit_cost = cost[at(n, m)];
  report.tr = 100.0 * static_cast<double>(n - report.edit_cost) /
              static_cast<double>(n);

  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = a[i - 1] == b[j - 1];
      if (cost[at(i, j)] == cost[at(i - 1, j - 1)] + (same ? 0 : 1)) {
        report.edit_script.push_back(
            {same ? EditKind::kMatch : EditKind::kSubstitute, i - 1, j - 1,
             b[j - 1]});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cost[at(i, j)] == cost[at(i - 1, j)] + 1) {
      report.edit_script.push_back({EditKind::kDelete, i - 1, j, 0});
      --i;
      continue;
    }
    report.edit_script.push_back({EditKind::kInsert, i, j - 1, b[j - 1]});
    --j;
  }
  std::reverse(report.edit_script.begin(), report.edit_script.end());
  return report;
}

std::u32string ApplyEditScript(std::u32string_view normalized_label,
                               std::span<const EditOp> script) {
  std::u32string out;
  std::size_t consumed = 0;
  for (const EditOp& op : script) {
    switch (op.kind) {
      case EditKind::kMatch:
      case EditKind::kSubstitute:
        if (op.label_pos != consumed || consumed >= normalized_label.size()) {
          throw Error("edit script out of order");
        }
        out.push_back(op.output);
        ++consumed;
        break;
      case EditKind::kDelete:
        if (op.label_pos != consumed || consumed >= normalized_label.size()) {
          throw Error("edit script out of order");
        }
        ++consumed;
        break;
      case EditKind::kInsert:
        out.push_back(op.output);
        break;
    }
  }
  if (consumed != normalized_label.size()) {
    throw Error("edit script does not cover the label");
  }
  return out;
}

double CorpusTr(std::span<const std::pair<std::u32string, std::u32string>> pairs,
                Aggregation aggregation, const MetricOptions& options) {
  if (pairs.empty()) throw Error("empty corpus");
  std::size_t total_label = 0;
  std::size_t total_cost = 0;
  double tr_sum = 0.0;
  for (const auto& [label, hypothesis] : pairs) {
    const AlignmentReport r = EditCost(label, hypothesis, options);
    total_label += r.label_length;
    total_cost += r.edit_cost;
    tr_sum += r.tr;
  }
  if (aggregation == Aggregation::kMessageAveraged) {
    return tr_sum / static_cast<double>(pairs.size());
  }
  return 100.0 * static_cast<double>(total_label - total_cost) /
         static_cast<double>(total_label);
}

}  // namespace mimema
