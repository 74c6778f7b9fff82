#ifndef MIMEMA_AUTOMATA_H_
#define MIMEMA_AUTOMATA_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mimema {

using StateId = std::uint32_t;

// Transition label: a literal character or a character class.
class Label {
 public:
  enum class Kind { kLiteral, kVowel, kConsonant, kDigit, kSymbol, kLetter };

  static Label Literal(char32_t c) { return Label(Kind::kLiteral, c); }
  static Label Class(Kind kind) { return Label(kind, 0); }

  Kind kind() const { return kind_; }
  char32_t literal() const { return literal_; }
  bool Matches(char32_t c) const;

  // "<vowel>", "<consonant>", "<digit>", "<symbol>", "<letter>" or the
  // literal character itself.
  std::string ToString() const;
  static std::optional<Label> FromString(std::string_view text);

  bool operator==(const Label&) const = default;

 private:
  Label(Kind kind, char32_t literal) : kind_(kind), literal_(literal) {}

  Kind kind_;
  char32_t literal_;
};

struct Transition {
  StateId from;
  Label label;
  StateId to;
  double weight;  // log-probability, <= 0

  bool operator==(const Transition&) const = default;
};

// A stochastic finite-state acceptor without epsilon transitions. Weights
// are log-probabilities; for every state the exponentiated outgoing weights
// sum to at most one, the remainder being the implicit stopping mass. Class
// labels carry the probability of emitting some character of the class.
//
// Instances are immutable and always valid: construction validates the
// invariants and throws Error("invalid acceptor: ...") otherwise.
class WeightedAcceptor {
 public:
  static constexpr double kStochasticTolerance = 1e-9;

  WeightedAcceptor(std::size_t num_states, StateId start,
                   std::vector<StateId> finals,
                   std::vector<Transition> transitions);

  std::size_t num_states() const { return num_states_; }
  StateId start() const { return start_; }
  const std::vector<StateId>& finals() const { return finals_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  bool IsFinal(StateId s) const { return is_final_[s]; }

  // Best accepting path log-probability (Viterbi), or nullopt on reject.
  std::optional<double> Score(std::u32string_view form) const;
  bool Accepts(std::u32string_view form) const {
    return Score(form).has_value();
  }

  // Header `STATES n START s FINALS f1,f2` (or `FINALS -`), then one
  // `from<TAB>label<TAB>to<TAB>logweight` line per transition. Weights use
  // the shortest representation that round-trips exactly.
  void Serialize(std::ostream& out) const;
  std::string Serialize() const;
  static WeightedAcceptor Deserialize(std::istream& in);
  static WeightedAcceptor Deserialize(std::string_view text);

 private:
  std::size_t num_states_;
  StateId start_;
  std::vector<StateId> finals_;
  std::vector<Transition> transitions_;
  std::vector<bool> is_final_;
  // Transition indices grouped by source state (CSR layout).
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> by_state_;
};

// Shortest decimal text that parses back to the same double.
std::string FormatWeight(double w);

}  // namespace mimema

#endif  // MIMEMA_AUTOMATA_H_
