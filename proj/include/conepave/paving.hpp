#pragma once

#include "conepave/geometry.hpp"
#include "conepave/transport.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace conepave {

/// One class of the paving: sources whose maximal-kernel supports were
/// merged, the shared target support, and the affine hull of its
/// embedded points. The open component itself is rint conv Phi(support)
/// and is only ever queried through LP membership.
struct Component {
  size_t class_id = 0;
  std::vector<size_t> members;   // source indices, sorted
  std::vector<size_t> support;   // target indices, sorted
  AffineHull hull;               // of the embedded support
  size_t dim = 0;
  RatVec mu_cond;  // mu restricted to members (length n)
  RatVec nu_cond;  // sum of the members' plan rows (length n)
};

struct Paving {
  std::vector<Component> components;
};

/// Thrown when merged sources end up with different supports — possible
/// only if the kernel was not maximal, so it is a consistency failure,
/// not an input error.
struct PartitionViolation : std::logic_error {
  size_t source1, source2;
  PartitionViolation(size_t i1, size_t i2, const std::string& what)
      : std::logic_error(what), source1(i1), source2(i2) {}
};

/// Support set and affine hull of the component of source i.
std::pair<std::vector<size_t>, AffineHull> component_of(const Instance& inst,
                                                        const Kernel& kernel,
                                                        size_t i);

/// Irreducible paving: maximal kernel, then union-find over sources with
/// relative-interior intersection probes in sorted pair order.
Paving compute_paving(const Instance& inst);

/// a has a representing measure on S_i with bounded density against the
/// kernel row; on a finite support this is plain convex membership.
bool theta_member(const Instance& inst, const Kernel& kernel, size_t i,
                  const DualVector& a);

/// a has a representing measure with density bounded below and above
/// against the kernel row; decided by maximizing the minimal density
/// ratio, exact optimum compared against zero.
bool rint_via_density(const Instance& inst, const Kernel& kernel, size_t i,
                      const DualVector& a);

/// For each class, nonnegative generator coefficients reproducing f on
/// the class's support and member points, when they exist. Requires the
/// integrals of f against mu and nu to agree exactly.
std::vector<std::optional<RatVec>> face_fit(const Instance& inst,
                                            const Paving& paving,
                                            const RatVec& f);

/// Whether a common functional of two components' closed hulls sits on
/// the same face of both. Preconditions checked via theta_member.
bool fine_intersection(const Instance& inst, const Kernel& kernel, size_t i1,
                       size_t i2, const DualVector& a);

}  // namespace conepave
