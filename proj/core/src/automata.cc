#include "mimema/automata.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "mimema/error.h"
#include "mimema/textmodel.h"
#include "mimema/utf8.h"

namespace mimema {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct ClassName {
  Label::Kind kind;
  std::string_view name;
};

constexpr ClassName kClassNames[] = {
    {Label::Kind::kVowel, "<vowel>"},   {Label::Kind::kConsonant, "<consonant>"},
    {Label::Kind::kDigit, "<digit>"},   {Label::Kind::kSymbol, "<symbol>"},
    {Label::Kind::kLetter, "<letter>"},
};

[[noreturn]] void Invalid(const std::string& why) {
  throw Error("invalid acceptor: " + why);
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

std::optional<std::uint64_t> ParseUint(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

bool Label::Matches(char32_t c) const {
  switch (kind_) {
    case Kind::kLiteral: return c == literal_;
    case Kind::kVowel: return ClassOf(c) == CharClass::kVowel;
    case Kind::kConsonant: return ClassOf(c) == CharClass::kConsonant;
    case Kind::kDigit: return ClassOf(c) == CharClass::kDigit;
    case Kind::kSymbol: return ClassOf(c) == CharClass::kSymbol;
    case Kind::kLetter: {
      const CharClass k = ClassOf(c);
      return k == CharClass::kVowel || k == CharClass::kConsonant;
    }
  }
  return false;
}

std::string Label::ToString() const {
  if (kind_ == Kind::kLiteral) return U32ToUtf8(literal_);
  for (const auto& [kind, name] : kClassNames) {
    if (kind == kind_) return std::string(name);
  }
  return "?";
}

std::optional<Label> Label::FromString(std::string_view text) {
  for (const auto& [kind, name] : kClassNames) {
    if (text == name) return Label::Class(kind);
  }
  std::u32string decoded;
  try {
    decoded = Utf8ToU32(text);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (decoded.size() != 1) return std::nullopt;
  return Label::Literal(decoded[0]);
}

WeightedAcceptor::WeightedAcceptor(std::size_t num_states, StateId start,
                                   std::vector<StateId> finals,
                                   std::vector<Transition> transitions)
    : num_states_(num_states),
      start_(start),
      finals_(std::move(finals)),
      transitions_(std::move(transitions)) {
  if (num_states_ == 0) Invalid("no states");
  if (start_ >= num_states_) Invalid("start state out of range");
  is_final_.assign(num_states_, false);
  for (StateId f : finals_) {
    if (f >= num_states_) Invalid("final state out of range");
    if (is_final_[f]) Invalid("duplicate final state");
    is_final_[f] = true;
  }
  std::vector<double> mass(num_states_, 0.0);
  offsets_.assign(num_states_ + 1, 0);
  for (const Transition& t : transitions_) {
    if (t.from >= num_states_ || t.to >= num_states_) {
      Invalid("transition endpoint out of range");
    }
    if (!std::isfinite(t.weight) || t.weight > 0.0) {
      Invalid("weight is not a finite log-probability");
    }
    if (t.label.kind() == Label::Kind::kLiteral &&
        ClassOf(t.label.literal()) == CharClass::kSeparator) {
      Invalid("whitespace literal label");
    }
    mass[t.from] += std::exp(t.weight);
    ++offsets_[t.from + 1];
  }
  for (std::size_t s = 0; s < num_states_; ++s) {
    if (mass[s] > 1.0 + kStochasticTolerance) {
      Invalid("outgoing mass of state " + std::to_string(s) + " exceeds 1");
    }
    offsets_[s + 1] += offsets_[s];
  }
  by_state_.resize(transitions_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    by_state_[cursor[transitions_[i].from]++] = i;
  }
}

std::optional<double> WeightedAcceptor::Score(std::u32string_view form) const {
  std::vector<double> current(num_states_, kNegInf);
  std::vector<double> next(num_states_, kNegInf);
  current[start_] = 0.0;
  for (char32_t c : form) {
    std::fill(next.begin(), next.end(), kNegInf);
    bool alive = false;
    for (std::size_t s = 0; s < num_states_; ++s) {
      if (current[s] == kNegInf) continue;
      for (std::size_t k = offsets_[s]; k < offsets_[s + 1]; ++k) {
        const Transition& t = transitions_[by_state_[k]];
        if (!t.label.Matches(c)) continue;
        const double candidate = current[s] + t.weight;
        if (candidate > next[t.to]) {
          next[t.to] = candidate;
          alive = true;
        }
      }
    }
    if (!alive) return std::nullopt;
    current.swap(next);
  }
  double best = kNegInf;
  for (StateId f : finals_) best = std::max(best, current[f]);
  if (best == kNegInf) return std::nullopt;
  return best;
}

std::string FormatWeight(double w) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), w);
  return std::string(buffer, ptr);
}

void WeightedAcceptor::Serialize(std::ostream& out) const {
  out << "STATES " << num_states_ << " START " << start_ << " FINALS ";
  if (finals_.empty()) {
    out << '-';
  } else {
    for (std::size_t i = 0; i < finals_.size(); ++i) {
      if (i > 0) out << ',';
      out << finals_[i];
    }
  }
  out << '\n';
  for (const Transition& t : transitions_) {
    out << t.from << '\t' << t.label.ToString() << '\t' << t.to << '\t'
        << FormatWeight(t.weight) << '\n';
  }
}

std::string WeightedAcceptor::Serialize() const {
  std::ostringstream out;
  Serialize(out);
  return out.str();
}

WeightedAcceptor WeightedAcceptor::Deserialize(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  const auto header = Split(line, ' ');
  if (header.size() != 6 || header[0] != "STATES" || header[2] != "START" ||
      header[4] != "FINALS") {
    throw ParseError(1, "malformed header");
  }
  const auto num_states = ParseUint(header[1]);
  const auto start = ParseUint(header[3]);
  if (!num_states || !start) throw ParseError(1, "malformed header");
  std::vector<StateId> finals;
  if (header[5] != "-") {
    for (std::string_view f : Split(header[5], ',')) {
      const auto id = ParseUint(f);
      if (!id) throw ParseError(1, "malformed final state list");
      finals.push_back(static_cast<StateId>(*id));
    }
  }

  std::vector<Transition> transitions;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = Split(line, '\t');
    if (fields.size() != 4) throw ParseError(line_no, "expected 4 fields");
    const auto from = ParseUint(fields[0]);
    const auto label = Label::FromString(fields[1]);
    const auto to = ParseUint(fields[2]);
    double weight = 0.0;
    const auto [ptr, ec] = std::from_chars(
        fields[3].data(), fields[3].data() + fields[3].size(), weight);
    if (!from || !label || !to || ec != std::errc() ||
        ptr != fields[3].data() + fields[3].size()) {
      throw ParseError(line_no, "malformed transition");
    }
    transitions.push_back({static_cast<StateId>(*from), *label,
                           static_cast<StateId>(*to), weight});
  }
  return WeightedAcceptor(*num_states, static_cast<StateId>(*start),
                          std::move(finals), std::move(transitions));
}

WeightedAcceptor WeightedAcceptor::Deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  return Deserialize(in);
}

}  // namespace mimema
