#pragma once

#include "conepave/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace conepave {

enum class Rel { Eq, Le, Ge };
enum class Direction { Max, Min };

struct Bound {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  static Bound nonneg() { return Bound{Rational(0), std::nullopt}; }
  static Bound free() { return Bound{std::nullopt, std::nullopt}; }
};

struct Constraint {
  RatVec coeffs;
  Rel rel = Rel::Eq;
  Rational rhs;
};

struct LPProblem {
  size_t num_vars = 0;
  std::vector<Bound> bounds;  // one per variable
  std::vector<Constraint> constraints;
  RatVec objective;           // empty means zero objective
  Direction direction = Direction::Max;

  static LPProblem with_nonneg_vars(size_t n);
  void add_constraint(RatVec coeffs, Rel rel, Rational rhs);
  std::string to_text() const;  // plain listing for debugging
};

// Farkas certificate of infeasibility. Sign conventions:
//   y_i >= 0 for >=-rows, y_i <= 0 for <=-rows, free for =-rows;
//   u_lo >= 0 (zero where no lower bound), u_hi <= 0 (zero where no upper);
//   for every variable k:  sum_i y_i A[i][k] + u_lo[k] + u_hi[k] = 0;
//   sum_i y_i b_i + sum_k u_lo[k] lo[k] + sum_k u_hi[k] hi[k] > 0.
// Any feasible point would make the left side simultaneously zero and
// positive, so none exists.
struct FarkasCertificate {
  RatVec row_multipliers;
  RatVec lower_multipliers;
  RatVec upper_multipliers;
};

// Optimality certificate (for Max; all signs flip for Min):
//   y_i >= 0 for <=-rows, y_i <= 0 for >=-rows, free for =-rows;
//   u_lo <= 0, u_hi >= 0;
//   stationarity: c = A^T y + u_lo + u_hi;
//   complementary slackness on rows and active bounds.
struct DualSolution {
  RatVec row_multipliers;
  RatVec lower_multipliers;
  RatVec upper_multipliers;
};

struct LPOutcome {
  enum class Tag { Optimal, Infeasible, Unbounded } tag;
  RatVec point;   // Optimal
  Rational value; // Optimal
  DualSolution dual;            // Optimal
  FarkasCertificate certificate;  // Infeasible
  RatVec ray;     // Unbounded: feasible direction with improving objective
};

/// Exact two-phase simplex with smallest-index (Bland) pivoting;
/// deterministic and terminating on every input.
LPOutcome solve(const LPProblem& lp);

/// Re-derives the outcome's defining identities from scratch, exactly,
/// with no reference to solver state. Throws std::invalid_argument on
/// dimension mismatch.
bool check_certificate(const LPProblem& lp, const LPOutcome& outcome);

}  // namespace conepave
