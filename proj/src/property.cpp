#include "raas/property.hpp"

namespace raas {

std::string to_string(Truth value) {
  switch (value) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(SeparationMode mode) {
  switch (mode) {
    case SeparationMode::Temporal: return "temporal";
    case SeparationMode::Weak: return "weak";
    case SeparationMode::Strong: return "strong";
    case SeparationMode::Atemporal: return "atemporal";
  }
  return "temporal";
}

std::string to_string(Quantifier quantifier) {
  return quantifier == Quantifier::Possibly ? "p" : "n";
}

std::string to_string(TransitivityMode mode) {
  switch (mode) {
    case TransitivityMode::WeakP: return "weak-p";
    case TransitivityMode::StrongP: return "strong-p";
    case TransitivityMode::N: return "n";
  }
  return "weak-p";
}

std::string PropertyQuery::name() const {
  switch (kind) {
    case Kind::AgreeExists: return "agree-exists";
    case Kind::PairwiseMergeableAll: return "pairwise-mergeable-all";
    case Kind::PIndependent: return "p-independent";
    case Kind::NIndependent: return "n-independent";
    case Kind::PDependent: return "p-dependent";
    case Kind::NDependent: return "n-dependent";
    case Kind::Separated:
      return to_string(separation_mode) + "-" + to_string(quantifier) + "-separated";
    case Kind::PointTransitive:
    case Kind::SetTransitive:
    case Kind::SystemTransitive:
      return to_string(transitivity_mode) + "-transitive";
  }
  return "?";
}

std::optional<PropertyQuery> parse_property_name(const std::string& name) {
  PropertyQuery query;
  auto simple = [&](PropertyQuery::Kind kind) {
    query.kind = kind;
    return query;
  };
  if (name == "agree-exists") return simple(PropertyQuery::Kind::AgreeExists);
  if (name == "pairwise-mergeable-all") return simple(PropertyQuery::Kind::PairwiseMergeableAll);
  if (name == "p-independent") return simple(PropertyQuery::Kind::PIndependent);
  if (name == "n-independent") return simple(PropertyQuery::Kind::NIndependent);
  if (name == "p-dependent") return simple(PropertyQuery::Kind::PDependent);
  if (name == "n-dependent") return simple(PropertyQuery::Kind::NDependent);

  static const std::pair<const char*, SeparationMode> separations[] = {
      {"temporal", SeparationMode::Temporal},
      {"weak", SeparationMode::Weak},
      {"strong", SeparationMode::Strong},
      {"atemporal", SeparationMode::Atemporal},
  };
  for (const auto& [prefix, mode] : separations) {
    for (Quantifier quantifier : {Quantifier::Possibly, Quantifier::Necessarily}) {
      if (name == std::string(prefix) + "-" + to_string(quantifier) + "-separated") {
        query.kind = PropertyQuery::Kind::Separated;
        query.separation_mode = mode;
        query.quantifier = quantifier;
        return query;
      }
    }
  }
  static const std::pair<const char*, TransitivityMode> transitivities[] = {
      {"weak-p-transitive", TransitivityMode::WeakP},
      {"strong-p-transitive", TransitivityMode::StrongP},
      {"n-transitive", TransitivityMode::N},
  };
  for (const auto& [text, mode] : transitivities) {
    if (name == text) {
      // Point/set/system is resolved later from the supplied arguments.
      query.kind = PropertyQuery::Kind::SystemTransitive;
      query.transitivity_mode = mode;
      return query;
    }
  }
  return std::nullopt;
}

}  // namespace raas
