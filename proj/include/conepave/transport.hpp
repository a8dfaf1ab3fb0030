#pragma once

#include "conepave/instance.hpp"
#include "conepave/lp.hpp"

#include <optional>
#include <vector>

namespace conepave {

/// Coupling of mu and nu: row i spreads the mass of source i over the
/// targets, subject to per-source generator moment domination.
struct TransportPlan {
  RatMat pi;  // n x n, row = source, column = target
};

/// Row-normalized plan. Rows of zero-mass sources are empty; supports
/// collect the positive columns of each normalized row.
struct Kernel {
  std::vector<RatVec> rows;                 // lambda(omega_i, .) or empty
  std::vector<std::vector<size_t>> supports;
};

/// A function f = max of cone elements separating mu from nu:
/// integral against mu exceeds the one against nu by `gap` > 0.
struct Witness {
  struct Branch {
    Rational constant;
    RatVec theta;  // nonnegative coefficients over the generator rows
  };
  std::vector<Branch> branches;
  RatVec values;  // f at the n points, recomputed from the branches
  Rational gap;
};

/// Zero-marginal, zero-moment perturbation direction with a step size.
struct ModificationPlan {
  RatMat rho;
  Rational epsilon;
};

struct OrderResult {
  std::optional<TransportPlan> plan;  // present iff ordered
  std::optional<Witness> witness;     // present iff not ordered
  bool ordered() const { return plan.has_value(); }
};

/// The feasibility polytope: marginal equalities plus, for every source
/// with positive mass, one >= row per generator. Zero objective.
LPProblem feasibility_lp(const Instance& inst);

/// Discrete Strassen dichotomy. Exactly one certificate is produced and
/// both kinds verify independently of the solver.
OrderResult check_order(const Instance& inst);

/// Exact check of all plan invariants.
bool verify_plan(const Instance& inst, const TransportPlan& plan);

/// mask[i][j] = true iff some feasible plan puts mass on (i, j); decided
/// by one max-pi[i][j] LP per pair with both marginals positive.
std::vector<std::vector<bool>> joint_support(const Instance& inst);

/// Uniform average of the probing optimizers: a single feasible plan
/// whose kernel supports realize the joint support mask row by row.
std::pair<TransportPlan, Kernel> maximal_kernel(const Instance& inst);

/// Swap the h1/h2-weighted parts of the kernels of sources i1 and i2.
/// Requires equal mass and equal generator moments of the two parts;
/// the exchanged amount is scaled by min(mu_i1, mu_i2) so both marginals
/// survive unequal source masses.
TransportPlan mix_two(const Instance& inst, const TransportPlan& plan,
                      size_t i1, size_t i2, const RatVec& h1, const RatVec& h2);

/// plan + epsilon * rho after checking every ModificationPlan invariant;
/// violations throw with the invariant named.
TransportPlan apply_modification(const Instance& inst, const TransportPlan& plan,
                                 const ModificationPlan& mod);

}  // namespace conepave
