#include "mimema/phonetic.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "mimema/error.h"
#include "mimema/textmodel.h"
#include "mimema/utf8.h"

namespace mimema {
namespace {

// Built-in catalogue, in application order within each stage.
constexpr std::string_view kDefaultCatalogue =
    "mute-e-after-vowel\tfinal-mute-e\t([aeiouyàâäéèêëîïôöùûü])e$\t{1}\n"
    "mute-e-after-r\tfinal-mute-e\t([aiou]r)e$\t{1}\n"
    "mute-e-after-kmbvl\tfinal-mute-e\t([kmbvl])e$\t{1}\n"
    "se-to-z\tfinal-mute-e\t([aeiouy])se$\t{1}z\n"
    "final-tsdp\tfinal-mute-consonant\t[tsdp]$\t-\n"
    "double-ll\tmid-word\tll\tl\n"
    "double-mm\tmid-word\tmm\tm\n"
    "double-nn\tmid-word\tnn\tn\n"
    "double-pp\tmid-word\tpp\tp\n"
    "double-rr\tmid-word\trr\tr\n"
    "double-ff\tmid-word\tff\tf\n"
    "drop-h\tmid-word\t^h|([^pcs])h\t{1}\n"
    "qu-to-k\tmid-word\tqu\tk\n"
    "c-to-k\tmid-word\tc([^heiéèêëîï])\tk{1}\n"
    "au-to-o\tmid-word\te?aux?\to\n"
    "oi-to-oa\tmid-word\toi\toa\n"
    "s-to-z\tmid-word\t([aeiouy])s([aeiouy])\t{1}z{2}\n"
    "ai-to-e\tmid-word\tais$|ait$|ai|é|è\té,è\n"
    "strip-diacritics\tmid-word\t[àâäçéèêëîïôöùûüÿ]\t<base>\n"
    "des-ses-tes\texceptions\t^([dst])es$\t{1}é,{1}è\n"
    "est-to-e\texceptions\test$\té,è\n";

constexpr std::u32string_view kBaseTemplate = U"<base>";

[[noreturn]] void BadPattern(const std::string& why) {
  throw Error("invalid pattern: " + why);
}

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

std::u32string Expand(std::u32string_view tmpl,
                      const RewritePattern::Match& match,
                      std::u32string_view matched) {
  if (tmpl == kBaseTemplate) return StripDiacritics(matched);
  std::u32string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == U'{') {
      const std::size_t close = tmpl.find(U'}', i);
      if (close != std::u32string_view::npos && close > i + 1) {
        std::size_t group = 0;
        bool numeric = true;
        for (std::size_t k = i + 1; k < close; ++k) {
          if (tmpl[k] < U'0' || tmpl[k] > U'9') numeric = false;
          group = group * 10 + (tmpl[k] - U'0');
        }
        if (numeric) {
          if (group >= 1 && group <= match.groups.size()) {
            out += match.groups[group - 1];
          }
          i = close;
          continue;
        }
      }
    }
    out.push_back(tmpl[i]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// RewritePattern

RewritePattern::RewritePattern(std::u32string_view source)
    : source_(source) {
  Branch branch;
  bool in_group = false;
  int group_count = 0;
  bool group_has_atom = false;
  std::size_t i = 0;
  const auto finish_branch = [&] {
    if (in_group) BadPattern("unclosed group");
    if (branch.atoms.empty()) BadPattern("empty branch");
    branch.num_groups = group_count;
    branches_.push_back(std::move(branch));
    branch = Branch();
    group_count = 0;
  };
  while (i < source.size()) {
    const char32_t c = source[i];
    if (c == U'|') {
      finish_branch();
      ++i;
      continue;
    }
    if (c == U'^') {
      if (!branch.atoms.empty() || in_group || branch.anchored_start) {
        BadPattern("'^' must start a branch");
      }
      branch.anchored_start = true;
      ++i;
      continue;
    }
    if (c == U'$') {
      const bool at_end = i + 1 == source.size() || source[i + 1] == U'|';
      if (!at_end || in_group) BadPattern("'$' must end a branch");
      branch.anchored_end = true;
      ++i;
      continue;
    }
    if (c == U'(') {
      if (in_group) BadPattern("nested group");
      in_group = true;
      group_has_atom = false;
      ++group_count;
      ++i;
      continue;
    }
    if (c == U')') {
      if (!in_group || !group_has_atom) BadPattern("unbalanced or empty group");
      in_group = false;
      ++i;
      if (i < source.size() && source[i] == U'?') {
        BadPattern("optional groups are not supported");
      }
      continue;
    }
    if (c == U'?') BadPattern("'?' without an atom");

    Atom atom;
    if (c == U'[') {
      ++i;
      if (i < source.size() && source[i] == U'^') {
        atom.negated = true;
        ++i;
      }
      while (i < source.size() && source[i] != U']') {
        if (source[i] == U'\\' && i + 1 < source.size()) ++i;
        atom.chars.push_back(source[i]);
        ++i;
      }
      if (i >= source.size()) BadPattern("unclosed character class");
      if (atom.chars.empty()) BadPattern("empty character class");
      ++i;
    } else {
      if (c == U'\\') {
        if (i + 1 >= source.size()) BadPattern("trailing backslash");
        ++i;
      }
      atom.chars.push_back(source[i]);
      ++i;
    }
    if (i < source.size() && source[i] == U'?') {
      atom.optional = true;
      ++i;
    }
    atom.group = in_group ? group_count : 0;
    group_has_atom = group_has_atom || in_group;
    branch.atoms.push_back(std::move(atom));
  }
  finish_branch();
}

bool RewritePattern::MatchAtoms(const Branch& branch, std::u32string_view text,
                                std::size_t atom, std::size_t pos,
                                std::size_t start,
                                std::vector<std::size_t>& group_begin,
                                std::vector<std::size_t>& group_end,
                                Match& out) const {
  if (atom == branch.atoms.size()) {
    if (branch.anchored_end && pos != text.size()) return false;
    out.length = pos - start;
    out.groups.assign(branch.num_groups, std::u32string());
    for (int g = 0; g < branch.num_groups; ++g) {
      out.groups[g] = std::u32string(
          text.substr(group_begin[g], group_end[g] - group_begin[g]));
    }
    return true;
  }
  const Atom& a = branch.atoms[atom];
  const auto mark = [&](std::size_t end) {
    if (a.group == 0) return;
    const std::size_t g = a.group - 1;
    if (atom == 0 || branch.atoms[atom - 1].group != a.group) {
      group_begin[g] = pos;
    }
    group_end[g] = end;
  };
  if (pos < text.size()) {
    const bool in_set = a.chars.find(text[pos]) != std::u32string::npos;
    if (in_set != a.negated) {
      mark(pos + 1);
      if (MatchAtoms(branch, text, atom + 1, pos + 1, start, group_begin,
                     group_end, out)) {
        return true;
      }
    }
  }
  if (a.optional) {
    mark(pos);
    return MatchAtoms(branch, text, atom + 1, pos, start, group_begin,
                      group_end, out);
  }
  return false;
}

std::optional<RewritePattern::Match> RewritePattern::MatchAt(
    std::u32string_view text, std::size_t pos) const {
  for (const Branch& branch : branches_) {
    if (branch.anchored_start && pos != 0) continue;
    std::vector<std::size_t> group_begin(branch.num_groups, pos);
    std::vector<std::size_t> group_end(branch.num_groups, pos);
    Match match;
    if (MatchAtoms(branch, text, 0, pos, pos, group_begin, group_end, match) &&
        match.length > 0) {
      return match;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rules

std::string_view RuleStageName(RuleStage stage) {
  switch (stage) {
    case RuleStage::kFinalMuteE: return "final-mute-e";
    case RuleStage::kFinalMuteConsonant: return "final-mute-consonant";
    case RuleStage::kMidWord: return "mid-word";
    case RuleStage::kExceptions: return "exceptions";
  }
  return "?";
}

std::optional<RuleStage> RuleStageFromName(std::string_view name) {
  for (RuleStage stage : kRuleStages) {
    if (RuleStageName(stage) == name) return stage;
  }
  return std::nullopt;
}

std::u32string PhoneticRule::Apply(std::u32string_view word,
                                   std::size_t alternative) const {
  const std::u32string& tmpl = replacements.at(alternative);
  std::u32string out;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const auto match = pattern.MatchAt(word, pos);
    if (!match) {
      out.push_back(word[pos]);
      ++pos;
      continue;
    }
    out += Expand(tmpl, *match, word.substr(pos, match->length));
    pos += match->length;
  }
  return out;
}

std::string FormatTrace(const std::vector<RuleApplication>& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i > 0) out += ' ';
    out += trace[i].rule_id;
    if (trace[i].alternative > 0) {
      out += ':' + std::to_string(trace[i].alternative);
    }
  }
  return out;
}

bool VariantSet::Contains(std::u32string_view form) const {
  const auto it = std::lower_bound(
      variants.begin(), variants.end(), form,
      [](const PhoneticVariant& v, std::u32string_view f) { return v.form < f; });
  return it != variants.end() && it->form == form;
}

std::vector<std::u32string> VariantSet::Forms() const {
  std::vector<std::u32string> forms;
  forms.reserve(variants.size());
  for (const auto& v : variants) forms.push_back(v.form);
  return forms;
}

// ---------------------------------------------------------------------------
// PhoneticRuleSet

PhoneticRuleSet::PhoneticRuleSet(std::vector<PhoneticRule> rules) {
  std::stable_sort(rules.begin(), rules.end(),
                   [](const PhoneticRule& a, const PhoneticRule& b) {
                     return a.stage < b.stage;
                   });
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].replacements.empty()) {
      throw Error("rule " + rules[i].id + " has no replacement");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (rules[j].id == rules[i].id) {
        throw Error("duplicate rule id " + rules[i].id);
      }
    }
  }
  rules_ = std::move(rules);
}

const PhoneticRuleSet& PhoneticRuleSet::Default() {
  static const PhoneticRuleSet* const kDefault = [] {
    std::istringstream in{std::string(kDefaultCatalogue)};
    return new PhoneticRuleSet(Parse(in));
  }();
  return *kDefault;
}

PhoneticRuleSet PhoneticRuleSet::Parse(std::istream& in) {
  std::vector<PhoneticRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = Split(line, '\t');
    if (fields.size() != 4 && fields.size() != 5) {
      throw ParseError(line_no, "expected 4 or 5 fields");
    }
    const auto stage = RuleStageFromName(fields[1]);
    if (!stage) {
      throw ParseError(line_no, "unknown stage '" + std::string(fields[1]) + "'");
    }
    bool optional = true;
    if (fields.size() == 5) {
      if (fields[4] != "required" && fields[4] != "optional") {
        throw ParseError(line_no, "fifth field must be required or optional");
      }
      optional = fields[4] == "optional";
    }
    try {
      std::vector<std::u32string> replacements;
      for (std::string_view r : Split(fields[3], ',')) {
        replacements.push_back(r == "-" ? std::u32string() : Utf8ToU32(r));
      }
      rules.push_back({std::string(fields[0]), *stage,
                       RewritePattern(Utf8ToU32(fields[2])),
                       std::move(replacements), optional});
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return PhoneticRuleSet(std::move(rules));
}

PhoneticRuleSet PhoneticRuleSet::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open rule file: " + path);
  return Parse(in);
}

void PhoneticRuleSet::Dump(std::ostream& out) const {
  out << "#id\tstage\tpattern\treplacements\n";
  for (const PhoneticRule& rule : rules_) {
    out << rule.id << '\t' << RuleStageName(rule.stage) << '\t'
        << U32ToUtf8(rule.pattern.source()) << '\t';
    for (std::size_t i = 0; i < rule.replacements.size(); ++i) {
      if (i > 0) out << ',';
      out << (rule.replacements[i].empty() ? std::string("-")
                                           : U32ToUtf8(rule.replacements[i]));
    }
    if (!rule.optional) out << "\trequired";
    out << '\n';
  }
}

const PhoneticRule* PhoneticRuleSet::Find(std::string_view id) const {
  for (const PhoneticRule& rule : rules_) {
    if (rule.id == id) return &rule;
  }
  return nullptr;
}

VariantSet PhoneticRuleSet::Phonetize(std::u32string_view word,
                                      const PhonetizeOptions& options) const {
  using Trace = std::vector<RuleApplication>;
  // form -> shortest (then smallest) trace reaching it
  std::map<std::u32string, Trace> derivations;
  derivations.emplace(std::u32string(word), Trace());

  const auto better = [](const Trace& a, const Trace& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  };

  for (const PhoneticRule& rule : rules_) {
    std::map<std::u32string, Trace> next;
    const auto offer = [&](std::u32string form, Trace trace) {
      auto [it, inserted] = next.try_emplace(std::move(form), trace);
      if (!inserted && better(trace, it->second)) it->second = std::move(trace);
    };
    for (const auto& [form, trace] : derivations) {
      bool applied = false;
      for (std::size_t alt = 0; alt < rule.replacements.size(); ++alt) {
        std::u32string rewritten = rule.Apply(form, alt);
        if (rewritten == form) continue;
        applied = true;
        Trace extended = trace;
        extended.push_back({rule.id, alt});
        offer(std::move(rewritten), std::move(extended));
      }
      if (rule.optional || !applied) offer(form, trace);
    }

    // Keep the source plus at most variant_cap derivations, fewest rules
    // first.
    if (next.size() > options.variant_cap + 1) {
      std::vector<std::pair<const std::u32string*, const Trace*>> order;
      order.reserve(next.size());
      for (const auto& [form, trace] : next) order.emplace_back(&form, &trace);
      std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
        const bool a_src = *a.first == word;
        const bool b_src = *b.first == word;
        if (a_src != b_src) return a_src;
        if (a.second->size() != b.second->size()) {
          return a.second->size() < b.second->size();
        }
        return *a.first < *b.first;
      });
      std::map<std::u32string, Trace> kept;
      for (std::size_t i = 0; i <= options.variant_cap; ++i) {
        kept.emplace(*order[i].first, *order[i].second);
      }
      next = std::move(kept);
    }
    derivations = std::move(next);
  }

  VariantSet result;
  result.source = std::u32string(word);
  for (auto& [form, trace] : derivations) {
    if (form == word) continue;
    result.variants.push_back({form, trace});
  }
  return result;
}

std::u32string PhoneticRuleSet::Replay(
    std::u32string_view source, const std::vector<RuleApplication>& trace) const {
  std::u32string form(source);
  for (const RuleApplication& step : trace) {
    const PhoneticRule* rule = Find(step.rule_id);
    if (rule == nullptr) throw Error("unknown rule id " + step.rule_id);
    if (step.alternative >= rule->replacements.size()) {
      throw Error("rule " + step.rule_id + " has no alternative " +
                  std::to_string(step.alternative));
    }
    form = rule->Apply(form, step.alternative);
  }
  return form;
}

}  // namespace mimema
