#include "mimema/rebus.h"

#include <fstream>

#include "mimema/config.h"
#include "mimema/error.h"

namespace mimema {
namespace {

constexpr std::string_view kClassNames[kNumRebusClasses] = {"letter", "digit",
                                                             "symbol"};

// States: 0 start, 1 finished singleton, 2 + class after a character.
constexpr StateId kStart = 0;
constexpr StateId kSingleton = 1;
StateId ClassState(std::size_t klass) { return static_cast<StateId>(2 + klass); }

Label ClassLabel(std::size_t klass) {
  switch (static_cast<RebusClass>(klass)) {
    case RebusClass::kLetter: return Label::Class(Label::Kind::kLetter);
    case RebusClass::kDigit: return Label::Class(Label::Kind::kDigit);
    case RebusClass::kSymbol: return Label::Class(Label::Kind::kSymbol);
  }
  return Label::Class(Label::Kind::kLetter);
}

[[noreturn]] void Invalid(const std::string& why) {
  throw Error("invalid parameters: " + why);
}

bool IsLogProb(double w) { return std::isfinite(w) && w <= 0.0; }

WeightedAcceptor Compile(const RebusParams& p) {
  if (!IsLogProb(p.singleton_bonus)) Invalid("singleton_bonus");
  if (!IsLogProb(p.digit_digit_penalty)) Invalid("digit_digit_penalty");
  double start_mass = 0.0;
  for (std::size_t c = 0; c < kNumRebusClasses; ++c) {
    if (!IsLogProb(p.initial[c])) Invalid("initial weight");
    start_mass += std::exp(p.initial[c]);
  }
  if (start_mass > 1.0 + WeightedAcceptor::kStochasticTolerance) {
    Invalid("initial weights sum above 1");
  }
  const auto digit = static_cast<std::size_t>(RebusClass::kDigit);
  for (std::size_t from = 0; from < kNumRebusClasses; ++from) {
    double mass = 0.0;
    for (std::size_t to = 0; to < kNumRebusClasses; ++to) {
      const double w = p.Transition(static_cast<RebusClass>(from),
                                    static_cast<RebusClass>(to));
      if (!IsLogProb(w)) Invalid("transition weight");
      mass += std::exp(w);
      if (!(from == digit && to == digit) && !(p.digit_digit_penalty < w)) {
        Invalid("digit-digit weight must be below every other transition");
      }
    }
    if (mass > 1.0 + WeightedAcceptor::kStochasticTolerance) {
      Invalid("transition weights sum above 1");
    }
  }

  std::vector<Transition> transitions;
  const double continue_share = std::log1p(-std::exp(p.singleton_bonus));
  for (std::size_t c = 0; c < kNumRebusClasses; ++c) {
    transitions.push_back(
        {kStart, ClassLabel(c), kSingleton, p.initial[c] + p.singleton_bonus});
    if (std::isfinite(continue_share)) {
      transitions.push_back(
          {kStart, ClassLabel(c), ClassState(c), p.initial[c] + continue_share});
    }
  }
  for (std::size_t from = 0; from < kNumRebusClasses; ++from) {
    for (std::size_t to = 0; to < kNumRebusClasses; ++to) {
      transitions.push_back({ClassState(from), ClassLabel(to), ClassState(to),
                             p.Transition(static_cast<RebusClass>(from),
                                          static_cast<RebusClass>(to))});
    }
  }
  return WeightedAcceptor(2 + kNumRebusClasses, kStart,
                          {kSingleton, ClassState(0), ClassState(1),
                           ClassState(2)},
                          std::move(transitions));
}

std::optional<std::size_t> ClassIndex(std::string_view name) {
  for (std::size_t c = 0; c < kNumRebusClasses; ++c) {
    if (kClassNames[c] == name) return c;
  }
  return std::nullopt;
}

}  // namespace

double RebusParams::Transition(RebusClass from, RebusClass to) const {
  if (from == RebusClass::kDigit && to == RebusClass::kDigit) {
    return digit_digit_penalty;
  }
  return transition[static_cast<std::size_t>(from)]
                   [static_cast<std::size_t>(to)];
}

RebusParams RebusParams::Parse(std::istream& in) {
  RebusParams p;
  const KeyValueConfig config = KeyValueConfig::Parse(in);
  for (const auto& [key, entry] : config.values()) {
    const double value = config.GetDouble(key);
    if (key == "singleton_bonus") {
      p.singleton_bonus = value;
    } else if (key == "digit_digit_penalty") {
      p.digit_digit_penalty = value;
    } else if (key.rfind("initial.", 0) == 0) {
      const auto c = ClassIndex(std::string_view(key).substr(8));
      if (!c) throw ParseError(entry.line, "unknown class in " + key);
      p.initial[*c] = value;
    } else if (key.rfind("transition.", 0) == 0) {
      const std::string_view rest = std::string_view(key).substr(11);
      const std::size_t dot = rest.find('.');
      const auto from = ClassIndex(rest.substr(0, dot));
      const auto to = dot == std::string_view::npos
                          ? std::nullopt
                          : ClassIndex(rest.substr(dot + 1));
      if (!from || !to) throw ParseError(entry.line, "unknown classes in " + key);
      p.transition[*from][*to] = value;
    } else {
      throw ParseError(entry.line, "unknown key " + key);
    }
  }
  return p;
}

RebusParams RebusParams::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  return Parse(in);
}

RebusModel::RebusModel(const RebusParams& params)
    : params_(params), acceptor_(Compile(params)) {}

std::optional<double> RebusModel::Score(std::u32string_view form) const {
  if (form.empty()) throw Error("empty token");
  return acceptor_.Score(form);
}

}  // namespace mimema
