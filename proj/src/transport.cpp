#include "conepave/transport.hpp"

#include <stdexcept>
#include <string>

namespace conepave {

namespace {

size_t var(size_t n, size_t i, size_t j) { return i * n + j; }

// Row layout of feasibility_lp: n row-sum equalities, n column-sum
// equalities, then one Ge row per (source with positive mass, generator).
struct RowMap {
  std::vector<std::pair<size_t, size_t>> gen_rows;  // (source, generator)
};

LPProblem build_feasibility(const Instance& inst, RowMap* map) {
  size_t n = inst.n, m = inst.num_gens();
  auto lp = LPProblem::with_nonneg_vars(n * n);
  for (size_t i = 0; i < n; ++i) {
    RatVec row(n * n, Rational(0));
    for (size_t j = 0; j < n; ++j) row[var(n, i, j)] = 1;
    lp.add_constraint(std::move(row), Rel::Eq, inst.mu[i]);
  }
  for (size_t j = 0; j < n; ++j) {
    RatVec row(n * n, Rational(0));
    for (size_t i = 0; i < n; ++i) row[var(n, i, j)] = 1;
    lp.add_constraint(std::move(row), Rel::Eq, inst.nu[j]);
  }
  for (size_t i = 0; i < n; ++i) {
    if (inst.mu[i] == 0) continue;
    for (size_t r = 0; r < m; ++r) {
      RatVec row(n * n, Rational(0));
      for (size_t j = 0; j < n; ++j) row[var(n, i, j)] = inst.gens[r][j];
      lp.add_constraint(std::move(row), Rel::Ge, inst.mu[i] * inst.gens[r][i]);
      if (map) map->gen_rows.emplace_back(i, r);
    }
  }
  return lp;
}

TransportPlan unflatten(const Instance& inst, const RatVec& x) {
  TransportPlan plan;
  plan.pi.assign(inst.n, RatVec(inst.n, Rational(0)));
  for (size_t i = 0; i < inst.n; ++i)
    for (size_t j = 0; j < inst.n; ++j) plan.pi[i][j] = x[var(inst.n, i, j)];
  return plan;
}

Witness witness_from_farkas(const Instance& inst, const RowMap& map,
                            const FarkasCertificate& cert) {
  size_t n = inst.n, m = inst.num_gens();
  const RatVec& y = cert.row_multipliers;
  // Multipliers: phi_i on row sums, psi_j on column sums, theta >= 0 on
  // the generator rows. For every source with mass, the cone branch
  // phi_i + sum_r theta_ir g_r dominates -psi pointwise from below at
  // its own column, which makes the max of the branches a separator.
  Witness w;
  std::vector<std::optional<size_t>> branch_of(n);
  for (size_t i = 0; i < n; ++i) {
    if (inst.mu[i] == 0) continue;
    branch_of[i] = w.branches.size();
    Witness::Branch b;
    b.constant = y[i];
    b.theta.assign(m, Rational(0));
    w.branches.push_back(std::move(b));
  }
  for (size_t k = 0; k < map.gen_rows.size(); ++k) {
    auto [i, r] = map.gen_rows[k];
    w.branches[*branch_of[i]].theta[r] = y[2 * n + k];
  }
  w.values.assign(n, Rational(0));
  for (size_t j = 0; j < n; ++j) {
    bool first = true;
    for (const auto& b : w.branches) {
      Rational val = b.constant;
      for (size_t r = 0; r < m; ++r) val += b.theta[r] * inst.gens[r][j];
      if (first || val > w.values[j]) w.values[j] = val;
      first = false;
    }
  }
  w.gap = 0;
  for (size_t j = 0; j < n; ++j)
    w.gap += w.values[j] * (inst.mu[j] - inst.nu[j]);
  if (w.gap <= 0) throw std::logic_error("witness extraction lost the gap");
  for (const auto& b : w.branches)
    for (const auto& t : b.theta)
      if (t < 0) throw std::logic_error("witness branch left the cone");
  return w;
}

}  // namespace

LPProblem feasibility_lp(const Instance& inst) {
  inst.validate();
  return build_feasibility(inst, nullptr);
}

OrderResult check_order(const Instance& inst) {
  inst.validate();
  RowMap map;
  auto lp = build_feasibility(inst, &map);
  auto out = solve(lp);
  OrderResult result;
  if (out.tag == LPOutcome::Tag::Optimal) {
    result.plan = unflatten(inst, out.point);
    if (!verify_plan(inst, *result.plan))
      throw std::logic_error("solver returned an invalid plan");
    return result;
  }
  if (out.tag != LPOutcome::Tag::Infeasible)
    throw std::logic_error("feasibility polytope cannot be unbounded");
  result.witness = witness_from_farkas(inst, map, out.certificate);
  return result;
}

bool verify_plan(const Instance& inst, const TransportPlan& plan) {
  size_t n = inst.n;
  if (plan.pi.size() != n) return false;
  for (const auto& row : plan.pi)
    if (row.size() != n) return false;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (plan.pi[i][j] < 0) return false;
  for (size_t i = 0; i < n; ++i) {
    Rational sum = 0;
    for (size_t j = 0; j < n; ++j) sum += plan.pi[i][j];
    if (sum != inst.mu[i]) return false;
  }
  for (size_t j = 0; j < n; ++j) {
    Rational sum = 0;
    for (size_t i = 0; i < n; ++i) sum += plan.pi[i][j];
    if (sum != inst.nu[j]) return false;
  }
  for (size_t i = 0; i < n; ++i) {
    if (inst.mu[i] == 0) continue;
    for (size_t r = 0; r < inst.num_gens(); ++r) {
      Rational moment = 0;
      for (size_t j = 0; j < n; ++j)
        moment += plan.pi[i][j] * inst.gens[r][j];
      if (moment < inst.mu[i] * inst.gens[r][i]) return false;
    }
  }
  return true;
}

namespace {

// Shared probing pass: one max-pi[i][j] LP per pair with positive
// marginals; optionally accumulates the optimizers.
std::vector<std::vector<bool>> probe_support(const Instance& inst,
                                             RatMat* average, size_t* probes) {
  inst.validate();
  size_t n = inst.n;
  auto base = build_feasibility(inst, nullptr);
  std::vector<std::vector<bool>> mask(n, std::vector<bool>(n, false));
  if (average) average->assign(n, RatVec(n, Rational(0)));
  size_t count = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (inst.mu[i] == 0 || inst.nu[j] == 0) continue;
      auto lp = base;
      lp.objective.assign(n * n, Rational(0));
      lp.objective[var(n, i, j)] = 1;
      auto out = solve(lp);
      if (out.tag == LPOutcome::Tag::Infeasible)
        throw std::invalid_argument("instance is not ordered");
      mask[i][j] = out.value > 0;
      if (average) {
        ++count;
        for (size_t a = 0; a < n; ++a)
          for (size_t b = 0; b < n; ++b)
            (*average)[a][b] += out.point[var(n, a, b)];
      }
    }
  }
  if (probes) *probes = count;
  return mask;
}

}  // namespace

std::vector<std::vector<bool>> joint_support(const Instance& inst) {
  return probe_support(inst, nullptr, nullptr);
}

std::pair<TransportPlan, Kernel> maximal_kernel(const Instance& inst) {
  RatMat total;
  size_t probes = 0;
  auto mask = probe_support(inst, &total, &probes);
  if (probes == 0) throw std::invalid_argument("instance is not ordered");
  TransportPlan plan;
  plan.pi = std::move(total);
  for (auto& row : plan.pi)
    for (auto& v : row) v /= Rational(static_cast<long>(probes));
  if (!verify_plan(inst, plan))
    throw std::logic_error("averaged plan lost feasibility");
  Kernel kernel;
  kernel.rows.resize(inst.n);
  kernel.supports.resize(inst.n);
  for (size_t i = 0; i < inst.n; ++i) {
    if (inst.mu[i] == 0) continue;
    kernel.rows[i].resize(inst.n);
    for (size_t j = 0; j < inst.n; ++j) {
      kernel.rows[i][j] = plan.pi[i][j] / inst.mu[i];
      if (kernel.rows[i][j] > 0) kernel.supports[i].push_back(j);
      if ((kernel.rows[i][j] > 0) != mask[i][j])
        throw std::logic_error("kernel support misses the joint support");
    }
  }
  return {std::move(plan), std::move(kernel)};
}

TransportPlan mix_two(const Instance& inst, const TransportPlan& plan,
                      size_t i1, size_t i2, const RatVec& h1, const RatVec& h2) {
  size_t n = inst.n;
  if (i1 >= n || i2 >= n || h1.size() != n || h2.size() != n)
    throw std::invalid_argument("mix_two: index or density size out of range");
  if (inst.mu[i1] == 0 || inst.mu[i2] == 0)
    throw std::invalid_argument("mix_two: zero-mass source");
  for (const auto* h : {&h1, &h2})
    for (const auto& v : *h)
      if (v < 0 || v > 1)
        throw std::invalid_argument("mix_two: density outside [0,1]");
  // m_k = h_k-weighted part of kernel row i_k
  RatVec m1(n), m2(n);
  Rational mass1 = 0, mass2 = 0;
  for (size_t j = 0; j < n; ++j) {
    m1[j] = plan.pi[i1][j] / inst.mu[i1] * h1[j];
    m2[j] = plan.pi[i2][j] / inst.mu[i2] * h2[j];
    mass1 += m1[j];
    mass2 += m2[j];
  }
  if (mass1 != mass2) throw std::invalid_argument("mix_two: mass mismatch");
  for (size_t r = 0; r < inst.num_gens(); ++r) {
    Rational mom1 = 0, mom2 = 0;
    for (size_t j = 0; j < n; ++j) {
      mom1 += m1[j] * inst.gens[r][j];
      mom2 += m2[j] * inst.gens[r][j];
    }
    if (mom1 != mom2)
      throw std::invalid_argument("mix_two: generator moment mismatch");
  }
  Rational c = inst.mu[i1] < inst.mu[i2] ? inst.mu[i1] : inst.mu[i2];
  TransportPlan out = plan;
  for (size_t j = 0; j < n; ++j) {
    Rational delta = c * (m2[j] - m1[j]);
    out.pi[i1][j] += delta;
    out.pi[i2][j] -= delta;
  }
  if (!verify_plan(inst, out))
    throw std::logic_error("mix_two produced an invalid plan");
  return out;
}

TransportPlan apply_modification(const Instance& inst, const TransportPlan& plan,
                                 const ModificationPlan& mod) {
  size_t n = inst.n;
  if (mod.rho.size() != n)
    throw std::invalid_argument("modification dimension mismatch");
  for (const auto& row : mod.rho)
    if (row.size() != n)
      throw std::invalid_argument("modification dimension mismatch");
  if (mod.epsilon <= 0) throw std::invalid_argument("epsilon not positive");
  for (size_t i = 0; i < n; ++i) {
    Rational sum = 0;
    for (size_t j = 0; j < n; ++j) sum += mod.rho[i][j];
    if (sum != 0) throw std::invalid_argument("row marginal nonzero");
  }
  for (size_t j = 0; j < n; ++j) {
    Rational sum = 0;
    for (size_t i = 0; i < n; ++i) sum += mod.rho[i][j];
    if (sum != 0) throw std::invalid_argument("column marginal nonzero");
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t r = 0; r < inst.num_gens(); ++r) {
      Rational moment = 0;
      for (size_t j = 0; j < n; ++j) moment += mod.rho[i][j] * inst.gens[r][j];
      if (moment != 0)
        throw std::invalid_argument("generator moment nonzero");
    }
  }
  TransportPlan out = plan;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      out.pi[i][j] += mod.epsilon * mod.rho[i][j];
      if (out.pi[i][j] < 0)
        throw std::invalid_argument("modified plan negative");
    }
  if (!verify_plan(inst, out))
    throw std::logic_error("modification broke the plan invariants");
  return out;
}

}  // namespace conepave
