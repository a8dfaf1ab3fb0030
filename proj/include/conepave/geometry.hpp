#pragma once

#include "conepave/instance.hpp"
#include "conepave/rational.hpp"

#include <optional>
#include <vector>

namespace conepave {

// Exact convex geometry over dual vectors. Every membership question is
// decided by a rational LP, so strict-vs-zero distinctions are exact.

struct AffineHull {
  RatVec base;
  RatMat directions;  // linearly independent
  size_t dim = 0;
};

/// Hull of a nonempty list; rank by fraction-free elimination.
AffineHull affine_hull(const std::vector<DualVector>& V);

/// True iff x = base + span(directions) has a solution.
bool in_affine_hull(const DualVector& x, const AffineHull& hull);

/// Equality of affine hulls as sets.
bool affine_hull_equal(const AffineHull& a, const AffineHull& b);

struct ConvMembership {
  std::optional<RatVec> weights;  // nonnegative, sum 1, combine V to x
  // When absent: a separating functional on generator coordinates with
  // separator.x > threshold >= separator.v for every v in V.
  RatVec separator;
  Rational threshold;
};

ConvMembership conv_member(const DualVector& x, const std::vector<DualVector>& V);

/// Strictly positive weights iff x lies in rint conv V; decided by
/// maximizing the minimum weight, exact optimum compared against zero.
std::optional<RatVec> rint_member(const DualVector& x,
                                  const std::vector<DualVector>& V);

struct FaceDescriptor {
  std::vector<size_t> active;  // vertex indices whose max weight is positive
};

/// Inclusion-minimal face of conv V whose relative interior contains x;
/// one max-weight LP per vertex. Throws if x is outside conv V.
FaceDescriptor minimal_face(const DualVector& x, const std::vector<DualVector>& V);

/// Same open face: equal affine hulls of the active vertex sets.
bool gleason_equiv(const DualVector& x, const DualVector& y,
                   const std::vector<DualVector>& V);

/// Two-sided Harnack comparison inside cone(V): exists c > 0 with
/// b - c a in cone(V) and C with C a - b in cone(V).
bool harnack_equiv(const DualVector& a, const DualVector& b,
                   const std::vector<DualVector>& V);

struct RintIntersection {
  DualVector point;
  RatVec weights1;  // strictly positive on V1
  RatVec weights2;  // strictly positive on V2
};

/// A common point of rint conv V1 and rint conv V2 when one exists.
std::optional<RintIntersection> rint_intersect(const std::vector<DualVector>& V1,
                                               const std::vector<DualVector>& V2);

}  // namespace conepave
