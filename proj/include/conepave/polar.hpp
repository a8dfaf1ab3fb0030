#pragma once

#include "conepave/transport.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace conepave {

/// Set of (source, target) pairs whose total plan mass is probed.
struct PairSet {
  std::vector<std::pair<size_t, size_t>> pairs;
};

struct PolarVerdict {
  Rational max_mass;
  bool polar = false;                 // max_mass == 0
  std::optional<TransportPlan> plan;  // charging plan when NonPolar
  // Zero-mass source/target sets covering every pair (unconstrained
  // Polar verdicts only).
  std::optional<std::pair<std::vector<size_t>, std::vector<size_t>>>
      decomposition;
};

struct HypothesisReport {
  std::vector<std::pair<size_t, size_t>> failed_pairs;  // sections outside
  bool hypothesis_holds = false;
  // Filled only when the hypothesis holds; the two regimes must agree.
  bool polar = false;
  Rational constrained_mass;
  Rational unconstrained_mass;
  bool decomposition_ok = false;  // vacuously true on NonPolar
};

/// Largest total plan mass on U over couplings of mu and nu, with
/// (constrained) or without (unconstrained) the generator rows.
std::pair<Rational, TransportPlan> max_mass(const Instance& inst,
                                            const PairSet& U, bool constrained);

PolarVerdict is_polar(const Instance& inst, const PairSet& U, bool constrained);

/// Checks the polar characterization on U: when every positive-mass
/// section of U lies in its source's component, the constrained and
/// unconstrained verdicts must coincide and Polar verdicts must
/// decompose into zero-mass sets. Disagreement is a consistency failure.
HypothesisReport obloj_siorpaes_check(const Instance& inst, const PairSet& U);

}  // namespace conepave
