#ifndef MIMEMA_REBUS_H_
#define MIMEMA_REBUS_H_

#include <array>
#include <cmath>
#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "mimema/automata.h"

namespace mimema {

// Token classes seen by the rebus model.
enum class RebusClass { kLetter = 0, kDigit = 1, kSymbol = 2 };
inline constexpr std::size_t kNumRebusClasses = 3;

// All weights are log-probabilities.
struct RebusParams {
  // Share of the first transition's mass reserved for single-character
  // forms.
  double singleton_bonus = std::log(0.9);
  double digit_digit_penalty = std::log(0.02);
  // Probability of starting with each class.
  std::array<double, kNumRebusClasses> initial = {
      std::log(0.3), std::log(0.3), std::log(0.3)};
  // transition[from][to]; the digit->digit entry is ignored in favor of
  // digit_digit_penalty.
  std::array<std::array<double, kNumRebusClasses>, kNumRebusClasses>
      transition = {{{std::log(0.3), std::log(0.3), std::log(0.3)},
                     {std::log(0.3), std::log(0.3), std::log(0.3)},
                     {std::log(0.3), std::log(0.3), std::log(0.3)}}};

  // Effective class-to-class weight, with the digit-digit penalty applied.
  double Transition(RebusClass from, RebusClass to) const;

  // Key-value lines `key = value`; keys are singleton_bonus,
  // digit_digit_penalty, initial.<class> and transition.<from>.<to> with
  // classes letter, digit, symbol. Unknown keys are errors.
  static RebusParams Parse(std::istream& in);
  static RebusParams Load(const std::string& path);
};

class RebusModel {
 public:
  // Throws Error("invalid parameters: ...") when a weight is not a
  // log-probability, a state's outgoing mass exceeds one, or the
  // digit-digit weight is not strictly the smallest transition weight.
  explicit RebusModel(const RebusParams& params = {});

  const RebusParams& params() const { return params_; }
  const WeightedAcceptor& acceptor() const { return acceptor_; }

  // Viterbi log-probability, nullopt on reject. Throws Error("empty
  // token") on empty input.
  std::optional<double> Score(std::u32string_view form) const;

 private:
  RebusParams params_;
  WeightedAcceptor acceptor_;
};

}  // namespace mimema

#endif  // MIMEMA_REBUS_H_
