#pragma once

#include "conepave/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conepave {

// A functional on the generator span, stored by its values on the listed
// generator rows. Linear dependence among rows is tolerated; consistency
// means the values respect every rational relation among the rows.
using DualVector = RatVec;

enum class ConeKind { Martingale, Submartingale, Supermartingale, Custom };

std::string cone_kind_name(ConeKind kind);

/// Ground points, the generator matrix evaluated at them, and the two
/// marginals. Immutable after construction; validate() enforces the
/// invariants (marginals are probability vectors, generators contain
/// +-constants, columns separate points).
struct Instance {
  size_t n = 0;                      // point count
  std::vector<std::string> labels;   // n identifiers
  RatMat coords;                     // optional n x d embedding (empty if absent)
  RatMat gens;                       // m x n, row r = generator g_r at the points
  RatVec mu;
  RatVec nu;
  RatVec p;                          // optional growth values (empty if absent)
  ConeKind cone = ConeKind::Custom;

  size_t num_gens() const { return gens.size(); }
  size_t dim() const { return coords.empty() ? 0 : coords[0].size(); }
  size_t index_of(const std::string& label) const;  // throws on unknown label

  /// Throws std::invalid_argument naming the violated invariant.
  void validate() const;
};

/// Rows of the generator matrix for the named cone, evaluated at coords.
/// Martingale: {+x_r, -x_r} per coordinate plus +-constants, so the span is
/// the affine functions. Sub/supermartingale keep only one sign per
/// coordinate. Custom passes `custom` through, appending +-constants rows
/// when missing. Throws on duplicate coordinate columns.
RatMat build_cone(ConeKind kind, const RatMat& coords,
                  const RatMat& custom = {});

/// Evaluation functionals Phi(x_j): the j-th column of the generator
/// matrix. Injective on every valid instance.
std::vector<DualVector> gelfand_embed(const Instance& inst);

/// True iff `values` respects every linear relation among the generator
/// rows, i.e. it extends to a functional on their span.
bool dual_consistent(const Instance& inst, const DualVector& values);

/// xi(t) = (t + 1) + sum_m (t - t_m)_+ with increasing thresholds chosen
/// so the mass tails above t_m shrink below 2^-m under both measures.
struct PoussinFunction {
  RatVec thresholds;
  Rational eval(const Rational& t) const;
};

PoussinFunction poussin(const RatVec& p_values, const RatVec& masses_mu,
                        const RatVec& masses_nu);

/// Parses the instance document (JSON text). Errors carry the offending
/// field; invariant violations name the invariant.
Instance load_instance(const std::string& document);
Instance load_instance_file(const std::string& path);

/// Canonical serialization; equal instances produce identical bytes.
std::string serialize_instance(const Instance& inst);

/// FNV-1a digest of the canonical serialization, as fixed-width hex.
std::string instance_digest(const Instance& inst);

}  // namespace conepave
