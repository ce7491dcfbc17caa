#pragma once

#include <optional>
#include <string>
#include <vector>

#include "raas/core.hpp"
#include "raas/schedule.hpp"

namespace raas {

enum class Truth { False = 0, True = 1, Unknown = 2 };

enum class SeparationMode { Temporal, Weak, Strong, Atemporal };
enum class Quantifier { Possibly, Necessarily };
enum class TransitivityMode { WeakP, StrongP, N };

// Replayable evidence: schedules are ultimately periodic, states and time
// indices refer to flow values on the canonical grid (index k = the value on
// [t_k, t_{k+1})).
struct Witness {
  std::optional<Schedule> schedule;
  std::vector<StateVector> states;
  std::vector<std::int64_t> time_indices;

  friend bool operator==(const Witness&, const Witness&) = default;
};

// Three-valued answer. Unknown only arises from documented budget guards;
// True/False always carry either a witness or a certificate tag naming the
// graph argument used.
struct Verdict {
  Truth value = Truth::Unknown;
  std::string reason;
  std::optional<Witness> witness;

  bool is_true() const { return value == Truth::True; }
  bool is_false() const { return value == Truth::False; }
  bool is_unknown() const { return value == Truth::Unknown; }

  static Verdict yes(std::string reason, std::optional<Witness> witness = std::nullopt) {
    return Verdict{Truth::True, std::move(reason), std::move(witness)};
  }
  static Verdict no(std::string reason, std::optional<Witness> witness = std::nullopt) {
    return Verdict{Truth::False, std::move(reason), std::move(witness)};
  }
  static Verdict unknown(std::string reason) {
    return Verdict{Truth::Unknown, std::move(reason), std::nullopt};
  }
};

std::string to_string(Truth value);
std::string to_string(SeparationMode mode);
std::string to_string(Quantifier quantifier);
std::string to_string(TransitivityMode mode);

// One named property instance: what the deciders and the oracle both answer.
struct PropertyQuery {
  enum class Kind {
    AgreeExists,
    PairwiseMergeableAll,
    PIndependent,
    NIndependent,
    PDependent,
    NDependent,
    Separated,
    PointTransitive,
    SetTransitive,
    SystemTransitive,
  };

  Kind kind = Kind::PIndependent;
  std::optional<StateVector> mu;
  std::optional<StateVector> mu2;
  std::vector<StateVector> set;
  SeparationMode separation_mode = SeparationMode::Temporal;
  Quantifier quantifier = Quantifier::Possibly;
  TransitivityMode transitivity_mode = TransitivityMode::WeakP;

  // Canonical CLI/report name, e.g. "atemporal-n-separated" or
  // "strong-p-transitive".
  std::string name() const;
};

// Parses a canonical property name (the folded forms listed in the README).
std::optional<PropertyQuery> parse_property_name(const std::string& name);

}  // namespace raas
