#pragma once

#include "conepave/oracle.hpp"
#include "conepave/paving.hpp"
#include "conepave/polar.hpp"
#include "conepave/transport.hpp"

#include <string>

namespace conepave {

/// All documents embed the digest of the instance they were computed
/// from; the parsers reject documents replayed against something else.

std::string serialize_plan(const Instance& inst, const TransportPlan& plan);
TransportPlan parse_plan(const Instance& inst, const std::string& document);

std::string serialize_witness(const Instance& inst, const Witness& witness);

std::string serialize_kernel(const Instance& inst, const TransportPlan& plan,
                             const Kernel& kernel);

/// With plot = true and 2-D coordinates, each component also lists its
/// support points in convex position for downstream plotting.
std::string serialize_paving(const Instance& inst, const Paving& paving,
                             bool plot);

std::string serialize_verdict(const Instance& inst, const PairSet& U,
                              const PolarVerdict& verdict, bool constrained);

/// Pairs document: {"pairs": [[source_label, target_label], ...]}.
PairSet parse_pairs(const Instance& inst, const std::string& document);
std::string serialize_pairs(const Instance& inst, const PairSet& U);

/// Plain-text renderings for --format text.
std::string plan_to_text(const Instance& inst, const TransportPlan& plan);
std::string witness_to_text(const Instance& inst, const Witness& witness);
std::string paving_to_text(const Instance& inst, const Paving& paving);
std::string verdict_to_text(const Instance& inst, const PolarVerdict& verdict);

}  // namespace conepave
