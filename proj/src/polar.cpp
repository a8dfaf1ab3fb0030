#include "conepave/polar.hpp"

#include "conepave/geometry.hpp"
#include "conepave/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace conepave {

namespace {

void check_pairs(const Instance& inst, const PairSet& U) {
  for (auto [i, j] : U.pairs)
    if (i >= inst.n || j >= inst.n)
      throw std::invalid_argument("pair index out of range");
}

bool marginals_only_ok(const Instance& inst, const TransportPlan& plan) {
  for (size_t i = 0; i < inst.n; ++i) {
    Rational row = 0;
    for (size_t j = 0; j < inst.n; ++j) {
      if (plan.pi[i][j] < 0) return false;
      row += plan.pi[i][j];
    }
    if (row != inst.mu[i]) return false;
  }
  for (size_t j = 0; j < inst.n; ++j) {
    Rational col = 0;
    for (size_t i = 0; i < inst.n; ++i) col += plan.pi[i][j];
    if (col != inst.nu[j]) return false;
  }
  return true;
}

}  // namespace

std::pair<Rational, TransportPlan> max_mass(const Instance& inst,
                                            const PairSet& U, bool constrained) {
  inst.validate();
  check_pairs(inst, U);
  size_t n = inst.n;
  LPProblem lp = LPProblem::with_nonneg_vars(n * n);
  for (size_t i = 0; i < n; ++i) {
    RatVec row(n * n, Rational(0));
    for (size_t j = 0; j < n; ++j) row[i * n + j] = 1;
    lp.add_constraint(std::move(row), Rel::Eq, inst.mu[i]);
  }
  for (size_t j = 0; j < n; ++j) {
    RatVec row(n * n, Rational(0));
    for (size_t i = 0; i < n; ++i) row[i * n + j] = 1;
    lp.add_constraint(std::move(row), Rel::Eq, inst.nu[j]);
  }
  if (constrained) {
    for (size_t i = 0; i < n; ++i) {
      if (inst.mu[i] == 0) continue;
      for (size_t r = 0; r < inst.num_gens(); ++r) {
        RatVec row(n * n, Rational(0));
        for (size_t j = 0; j < n; ++j) row[i * n + j] = inst.gens[r][j];
        lp.add_constraint(std::move(row), Rel::Ge,
                          inst.mu[i] * inst.gens[r][i]);
      }
    }
  }
  lp.objective.assign(n * n, Rational(0));
  for (auto [i, j] : U.pairs) lp.objective[i * n + j] = 1;
  auto out = solve(lp);
  if (out.tag == LPOutcome::Tag::Infeasible) {
    if (constrained) throw std::invalid_argument("instance is not ordered");
    throw std::logic_error("marginal polytope cannot be empty");
  }
  TransportPlan plan;
  plan.pi.assign(n, RatVec(n, Rational(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) plan.pi[i][j] = out.point[i * n + j];
  bool valid = constrained ? verify_plan(inst, plan)
                           : marginals_only_ok(inst, plan);
  if (!valid) throw std::logic_error("max_mass optimizer is not a coupling");
  return {out.value, std::move(plan)};
}

PolarVerdict is_polar(const Instance& inst, const PairSet& U, bool constrained) {
  auto [mass, plan] = max_mass(inst, U, constrained);
  PolarVerdict verdict;
  verdict.max_mass = mass;
  verdict.polar = mass == 0;
  if (!verdict.polar) {
    verdict.plan = std::move(plan);
    return verdict;
  }
  if (!constrained) {
    // Kellerer: a zero-maximum over plain couplings forces a zero-mass
    // endpoint on every pair, so the greedy split must cover U.
    std::vector<size_t> n1, n2;
    for (auto [i, j] : U.pairs) {
      if (inst.mu[i] == 0)
        n1.push_back(i);
      else if (inst.nu[j] == 0)
        n2.push_back(j);
      else
        throw std::logic_error("decomposition impossible");
    }
    auto dedupe = [](std::vector<size_t>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(n1);
    dedupe(n2);
    verdict.decomposition = {std::move(n1), std::move(n2)};
  }
  return verdict;
}

HypothesisReport obloj_siorpaes_check(const Instance& inst, const PairSet& U) {
  check_pairs(inst, U);
  auto [plan, kernel] = maximal_kernel(inst);  // throws when not ordered
  auto phi = gelfand_embed(inst);
  HypothesisReport report;
  for (auto [i, j] : U.pairs) {
    if (inst.mu[i] == 0) continue;
    std::vector<DualVector> sup;
    for (size_t k : kernel.supports[i]) sup.push_back(phi[k]);
    if (!rint_member(phi[j], sup).has_value())
      report.failed_pairs.emplace_back(i, j);
  }
  report.hypothesis_holds = report.failed_pairs.empty();
  if (!report.hypothesis_holds) return report;

  auto con = is_polar(inst, U, true);
  auto unc = is_polar(inst, U, false);
  if (con.polar != unc.polar)
    throw std::logic_error("polar characterization violated");
  report.polar = con.polar;
  report.constrained_mass = con.max_mass;
  report.unconstrained_mass = unc.max_mass;
  if (report.polar) {
    if (!unc.decomposition)
      throw std::logic_error("polar verdict without decomposition");
    const auto& [n1, n2] = *unc.decomposition;
    report.decomposition_ok = true;
    for (size_t i : n1) report.decomposition_ok &= inst.mu[i] == 0;
    for (size_t j : n2) report.decomposition_ok &= inst.nu[j] == 0;
    for (auto [i, j] : U.pairs) {
      bool covered =
          std::binary_search(n1.begin(), n1.end(), i) ||
          std::binary_search(n2.begin(), n2.end(), j);
      report.decomposition_ok &= covered;
    }
    if (!report.decomposition_ok)
      throw std::logic_error("zero-mass decomposition failed verification");
  } else {
    report.decomposition_ok = true;  // nothing to decompose
  }
  return report;
}

}  // namespace conepave
