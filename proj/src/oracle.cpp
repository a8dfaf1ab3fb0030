#include "conepave/oracle.hpp"

#include "conepave/geometry.hpp"
#include "conepave/paving.hpp"
#include "conepave/polar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace conepave {

namespace {

Rational rand_coord(SplitMix64& rng) {
  long num = static_cast<long>(rng.below(17)) - 8;
  long den = 1L << rng.below(3);  // 1, 2, 4
  return Rational(num, den);
}

std::string point_label(const RatVec& coord) {
  if (coord.size() == 1) return format_rational(coord[0]);
  std::string s = "(";
  for (size_t c = 0; c < coord.size(); ++c) {
    if (c) s += ",";
    s += format_rational(coord[c]);
  }
  return s + ")";
}

struct PointPool {
  std::vector<RatVec> coords;
  size_t add(const RatVec& p) {
    for (size_t j = 0; j < coords.size(); ++j)
      if (coords[j] == p) return j;
    coords.push_back(p);
    return coords.size() - 1;
  }
};

void validate_spec(const GenSpec& spec) {
  if (spec.n < 1 || spec.d < 1)
    throw std::invalid_argument("generation sizes must be positive");
  if (spec.cone == ConeKind::Custom)
    throw std::invalid_argument("custom cones are not generated");
}

}  // namespace

Generated gen_ordered(const GenSpec& spec) {
  validate_spec(spec);
  SplitMix64 rng(spec.seed);
  PointPool pool;

  std::vector<size_t> sources;
  RatVec weights;
  Rational total = 0;
  for (size_t i = 0; i < spec.n; ++i) {
    RatVec p(spec.d);
    size_t idx;
    do {
      for (size_t c = 0; c < spec.d; ++c) p[c] = rand_coord(rng);
      idx = pool.add(p);
    } while (std::find(sources.begin(), sources.end(), idx) != sources.end());
    sources.push_back(idx);
    weights.push_back(Rational(static_cast<long>(1 + rng.below(8))));
    total += weights.back();
  }
  for (auto& w : weights) w /= total;

  // per-source kernels, evolved by exact spreads along coordinate axes
  std::vector<std::map<size_t, Rational>> kernels(spec.n);
  for (size_t i = 0; i < spec.n; ++i) kernels[i][sources[i]] = 1;

  for (size_t step = 0; step < spec.splits; ++step) {
    size_t i = rng.below(spec.n);
    auto& kernel = kernels[i];
    size_t pick = rng.below(kernel.size());
    auto it = kernel.begin();
    std::advance(it, pick);
    size_t atom = it->first;
    Rational moved = it->second * Rational(static_cast<long>(1 + rng.below(4)), 4);
    size_t c = rng.below(spec.d);
    Rational delta(static_cast<long>(1 + rng.below(4)),
                   static_cast<long>(1 + rng.below(2)));
    auto shift = [&](const Rational& offset) {
      RatVec p = pool.coords[atom];
      p[c] += offset;
      return pool.add(p);
    };
    it->second -= moved;
    if (it->second == 0) kernel.erase(it);
    if (spec.cone == ConeKind::Martingale) {
      Rational delta2(static_cast<long>(1 + rng.below(4)),
                      static_cast<long>(1 + rng.below(2)));
      // exact mean preservation: weights inverse to the displacements
      kernel[shift(-delta)] += moved * delta2 / (delta + delta2);
      kernel[shift(delta2)] += moved * delta / (delta + delta2);
    } else if (spec.cone == ConeKind::Supermartingale) {
      kernel[shift(-delta)] += moved;  // mean drifts down
    } else {
      kernel[shift(delta)] += moved;  // mean drifts up
    }
  }

  Instance inst;
  inst.n = pool.coords.size();
  inst.coords = pool.coords;
  for (const auto& p : pool.coords) inst.labels.push_back(point_label(p));
  inst.cone = spec.cone;
  inst.gens = build_cone(spec.cone, inst.coords);
  inst.mu.assign(inst.n, Rational(0));
  inst.nu.assign(inst.n, Rational(0));

  TransportPlan plan;
  plan.pi.assign(inst.n, RatVec(inst.n, Rational(0)));
  for (size_t i = 0; i < spec.n; ++i) {
    inst.mu[sources[i]] = weights[i];
    for (const auto& [j, w] : kernels[i]) {
      plan.pi[sources[i]][j] = weights[i] * w;
      inst.nu[j] += weights[i] * w;
    }
  }
  inst.validate();
  return {std::move(inst), std::move(plan)};
}

Instance gen_unordered(const GenSpec& spec) {
  auto base = gen_ordered(spec);
  Instance inst = std::move(base.instance);
  if (inst.n == 1) throw std::invalid_argument("no perturbation");

  // Leak mass to a fresh point beyond the reach of a one-signed row:
  // above the maximum in coordinate 0 (below, for submartingale cones).
  long dir = inst.cone == ConeKind::Submartingale ? -1 : 1;
  size_t ext = 0;
  for (size_t j = 1; j < inst.n; ++j) {
    if (dir > 0 ? inst.coords[j][0] > inst.coords[ext][0]
                : inst.coords[j][0] < inst.coords[ext][0])
      ext = j;
  }
  RatVec fresh = inst.coords[ext];
  fresh[0] += dir;

  // violated generator: g(x) = -dir * x_0
  auto g = [&](const RatVec& p) { return Rational(-dir) * p[0]; };
  Rational g_mu = 0, g_nu = 0;
  for (size_t j = 0; j < inst.n; ++j) {
    g_mu += g(inst.coords[j]) * inst.mu[j];
    g_nu += g(inst.coords[j]) * inst.nu[j];
  }
  Rational g_fresh = g(fresh);
  Rational denom = g_nu - g_fresh;
  Rational s = (g_nu - g_mu + (g_mu - g_fresh) / 2) / denom;

  for (auto& v : inst.nu) v *= Rational(1) - s;
  inst.coords.push_back(fresh);
  inst.labels.push_back(point_label(fresh));
  inst.mu.push_back(0);
  inst.nu.push_back(s);
  inst.n += 1;
  inst.gens = build_cone(inst.cone, inst.coords);
  inst.validate();
  return inst;
}

namespace {

struct LinearRow {
  RatVec a;
  Rational b;
};

// reduce rows in place to an independent spanning subset; returns false
// when the system is inconsistent (0 = nonzero appears)
bool reduce_rows(std::vector<LinearRow>& rows) {
  size_t rank = 0;
  if (rows.empty()) return true;
  size_t width = rows[0].a.size();
  for (size_t col = 0; col < width && rank < rows.size(); ++col) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv].a[col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r].a[col] == 0) continue;
      Rational f = rows[r].a[col] / rows[rank].a[col];
      for (size_t k = col; k < width; ++k) rows[r].a[k] -= f * rows[rank].a[k];
      rows[r].b -= f * rows[rank].b;
    }
    ++rank;
  }
  for (size_t r = rank; r < rows.size(); ++r)
    if (rows[r].b != 0) return false;
  rows.resize(rank);
  return true;
}

// enumerate solutions of rank-D active subsets of `rows` (sense a.t >= b,
// active means a.t == b) in D unknowns; emits each candidate through `sink`
void enumerate_active(const std::vector<LinearRow>& rows, size_t D,
                      const std::function<void(const RatVec&)>& sink) {
  if (D == 0) {
    sink({});
    return;
  }
  // eliminated copies of the chosen rows, triangular over `pivcols`
  std::vector<LinearRow> elim;
  std::vector<size_t> pivcols;
  std::function<void(size_t)> recurse = [&](size_t start) {
    if (pivcols.size() == D) {
      RatVec t(D, Rational(0));
      for (size_t k = D; k-- > 0;) {
        Rational v = elim[k].b;
        for (size_t j = k + 1; j < D; ++j)
          v -= elim[k].a[pivcols[j]] * t[pivcols[j]];
        t[pivcols[k]] = v / elim[k].a[pivcols[k]];
      }
      sink(t);
      return;
    }
    size_t need = D - pivcols.size();
    for (size_t r = start; r + need <= rows.size(); ++r) {
      LinearRow cand = rows[r];
      for (size_t k = 0; k < elim.size(); ++k) {
        if (cand.a[pivcols[k]] == 0) continue;
        Rational f = cand.a[pivcols[k]] / elim[k].a[pivcols[k]];
        for (size_t c = 0; c < D; ++c) cand.a[c] -= f * elim[k].a[c];
        cand.b -= f * elim[k].b;
      }
      size_t piv = D;
      for (size_t c = 0; c < D; ++c)
        if (cand.a[c] != 0) {
          bool used = false;
          for (size_t p : pivcols)
            if (p == c) used = true;
          if (!used) {
            piv = c;
            break;
          }
        }
      if (piv == D) continue;  // dependent on the chosen rows
      elim.push_back(std::move(cand));
      pivcols.push_back(piv);
      recurse(r + 1);
      elim.pop_back();
      pivcols.pop_back();
    }
  };
  recurse(0);
}

}  // namespace

std::vector<TransportPlan> brute_vertices(const Instance& inst) {
  inst.validate();
  if (inst.n > 4)
    throw std::invalid_argument("brute force limited to n <= 4");
  size_t n = inst.n, N = n * n, m = inst.num_gens();

  // pair exact negations of generator rows into equalities
  std::vector<bool> paired(m, false);
  std::vector<size_t> eq_gens, ineq_gens;
  for (size_t r = 0; r < m; ++r) {
    if (paired[r]) continue;
    bool matched = false;
    for (size_t q = r + 1; q < m && !matched; ++q) {
      if (paired[q]) continue;
      bool neg = true;
      for (size_t j = 0; j < n; ++j)
        if (inst.gens[q][j] != -inst.gens[r][j]) neg = false;
      if (neg) {
        paired[r] = paired[q] = true;
        eq_gens.push_back(r);
        matched = true;
      }
    }
    if (!matched) ineq_gens.push_back(r);
  }

  std::vector<LinearRow> equalities;
  for (size_t i = 0; i < n; ++i) {
    LinearRow row{RatVec(N, Rational(0)), inst.mu[i]};
    for (size_t j = 0; j < n; ++j) row.a[i * n + j] = 1;
    equalities.push_back(std::move(row));
  }
  for (size_t j = 0; j < n; ++j) {
    LinearRow row{RatVec(N, Rational(0)), inst.nu[j]};
    for (size_t i = 0; i < n; ++i) row.a[i * n + j] = 1;
    equalities.push_back(std::move(row));
  }
  for (size_t i = 0; i < n; ++i) {
    if (inst.mu[i] == 0) continue;
    for (size_t r : eq_gens) {
      LinearRow row{RatVec(N, Rational(0)), inst.mu[i] * inst.gens[r][i]};
      for (size_t j = 0; j < n; ++j) row.a[i * n + j] = inst.gens[r][j];
      equalities.push_back(std::move(row));
    }
  }

  std::vector<LinearRow> inequalities;  // sense: a.x >= b
  for (size_t i = 0; i < n; ++i) {
    if (inst.mu[i] == 0) continue;
    for (size_t r : ineq_gens) {
      LinearRow row{RatVec(N, Rational(0)), inst.mu[i] * inst.gens[r][i]};
      for (size_t j = 0; j < n; ++j) row.a[i * n + j] = inst.gens[r][j];
      inequalities.push_back(std::move(row));
    }
  }
  if (inequalities.size() > 16)
    throw std::invalid_argument("too many one-signed generator rows");

  auto feasible = [&](const RatVec& x) {
    for (const auto& v : x)
      if (v < 0) return false;
    for (const auto& row : equalities) {
      Rational lhs = 0;
      for (size_t k = 0; k < N; ++k) lhs += row.a[k] * x[k];
      if (lhs != row.b) return false;
    }
    for (const auto& row : inequalities) {
      Rational lhs = 0;
      for (size_t k = 0; k < N; ++k) lhs += row.a[k] * x[k];
      if (lhs < row.b) return false;
    }
    return true;
  };

  // parameterize the equality solution set as x = x0 + B t, t in R^D
  auto reduced = equalities;
  if (!reduce_rows(reduced))
    throw std::invalid_argument("instance is not ordered");
  size_t R = reduced.size(), D = N - R;
  std::vector<size_t> pivot_of(R);
  std::vector<bool> is_pivot(N, false);
  for (size_t r = 0, col = 0; r < R; ++r) {
    while (reduced[r].a[col] == 0) ++col;
    pivot_of[r] = col;
    is_pivot[col] = true;
  }
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < N; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RatVec x0(N, Rational(0));
  RatMat B(N, RatVec(D, Rational(0)));  // column f = direction of t_f
  for (size_t r = 0; r < R; ++r)
    x0[pivot_of[r]] = reduced[r].b / reduced[r].a[pivot_of[r]];
  for (size_t f = 0; f < D; ++f) {
    B[free_cols[f]][f] = 1;
    for (size_t r = 0; r < R; ++r)
      B[pivot_of[r]][f] =
          -reduced[r].a[free_cols[f]] / reduced[r].a[pivot_of[r]];
  }

  // every constraint (nonnegativity and one-signed rows) in t-space
  std::vector<LinearRow> trows;
  auto push_trow = [&](const RatVec& coef, const Rational& rhs) {
    LinearRow row{RatVec(D, Rational(0)), rhs};
    for (size_t j = 0; j < N; ++j) {
      if (coef[j] == 0) continue;
      row.b -= coef[j] * x0[j];
      for (size_t f = 0; f < D; ++f) row.a[f] += coef[j] * B[j][f];
    }
    trows.push_back(std::move(row));
  };
  for (size_t j = 0; j < N; ++j) {
    RatVec unit(N, Rational(0));
    unit[j] = 1;
    push_trow(unit, Rational(0));
  }
  for (const auto& row : inequalities) push_trow(row.a, row.b);

  // a vertex is a feasible point with D independent active constraints
  std::vector<RatVec> found;
  enumerate_active(trows, D, [&](const RatVec& t) {
    RatVec x = x0;
    for (size_t j = 0; j < N; ++j)
      for (size_t f = 0; f < D; ++f) x[j] += B[j][f] * t[f];
    if (!feasible(x)) return;
    if (std::find(found.begin(), found.end(), x) == found.end())
      found.push_back(x);
  });
  if (found.empty()) throw std::invalid_argument("instance is not ordered");

  std::sort(found.begin(), found.end());
  std::vector<TransportPlan> plans;
  for (const auto& x : found) {
    TransportPlan p;
    p.pi.assign(n, RatVec(n, Rational(0)));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) p.pi[i][j] = x[i * n + j];
    plans.push_back(std::move(p));
  }
  return plans;
}

bool PropertyReport::all_passed() const {
  for (const auto& e : entries)
    if (e.failed > 0) return false;
  return true;
}

std::string PropertyReport::to_text() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << (e.failed == 0 ? "pass" : "FAIL") << "  " << e.property << "  ("
        << e.checked - e.failed << "/" << e.checked << ")\n";
    for (const auto& doc : e.failing_instances)
      out << "  failing instance: " << doc << "\n";
  }
  return out.str();
}

namespace {

struct SuiteState {
  PropertyReport report;
  std::map<std::string, size_t> index;
  void record(const std::string& property, bool ok, const Instance* inst) {
    auto it = index.find(property);
    if (it == index.end()) {
      index[property] = report.entries.size();
      report.entries.push_back({property, 0, 0, {}});
      it = index.find(property);
    }
    auto& entry = report.entries[it->second];
    ++entry.checked;
    if (!ok) {
      ++entry.failed;
      if (inst && entry.failing_instances.size() < 3)
        entry.failing_instances.push_back(serialize_instance(*inst));
    }
  }
};

bool witness_sound(const Instance& inst, const Witness& w) {
  Rational gap = 0;
  for (size_t j = 0; j < inst.n; ++j) {
    Rational best;
    bool first = true;
    for (const auto& b : w.branches) {
      Rational val = b.constant;
      for (size_t r = 0; r < inst.num_gens(); ++r) {
        if (b.theta[r] < 0) return false;
        val += b.theta[r] * inst.gens[r][j];
      }
      if (first || val > best) best = val;
      first = false;
    }
    if (best != w.values[j]) return false;
    gap += best * (inst.mu[j] - inst.nu[j]);
  }
  return gap == w.gap && gap > 0;
}

bool paving_sound(const Instance& inst, const Paving& paving) {
  auto phi = gelfand_embed(inst);
  std::vector<bool> covered(inst.n, false);
  for (const auto& comp : paving.components)
    for (size_t i : comp.members) {
      if (inst.mu[i] == 0 || covered[i]) return false;
      covered[i] = true;
    }
  for (size_t i = 0; i < inst.n; ++i)
    if ((inst.mu[i] > 0) != covered[i]) return false;
  for (size_t a = 0; a < paving.components.size(); ++a) {
    for (size_t b = a + 1; b < paving.components.size(); ++b) {
      std::vector<DualVector> va, vb;
      for (size_t j : paving.components[a].support) va.push_back(phi[j]);
      for (size_t j : paving.components[b].support) vb.push_back(phi[j]);
      if (rint_intersect(va, vb).has_value()) return false;
    }
  }
  if (inst.cone == ConeKind::Martingale) {
    for (const auto& comp : paving.components) {
      std::vector<DualVector> sup;
      for (size_t j : comp.support) sup.push_back(phi[j]);
      for (size_t i : comp.members)
        if (!rint_member(phi[i], sup).has_value()) return false;
    }
  }
  return true;
}

bool mixing_sound(const Instance& inst, const TransportPlan& plan,
                  const Kernel& kernel, size_t i1, size_t i2) {
  auto phi = gelfand_embed(inst);
  std::vector<DualVector> v1, v2;
  for (size_t j : kernel.supports[i1]) v1.push_back(phi[j]);
  for (size_t j : kernel.supports[i2]) v2.push_back(phi[j]);
  auto meet = rint_intersect(v1, v2);
  if (!meet) return true;  // nothing to swap
  // scale the swapped parts so densities stay strictly below 1
  RatVec h1(inst.n, Rational(0)), h2(inst.n, Rational(0));
  Rational t(1);
  auto cap = [&](const std::vector<size_t>& sup, const RatVec& w, size_t i) {
    for (size_t k = 0; k < sup.size(); ++k) {
      Rational ratio = kernel.rows[i][sup[k]] / w[k];
      if (ratio < t) t = ratio;
    }
  };
  cap(kernel.supports[i1], meet->weights1, i1);
  cap(kernel.supports[i2], meet->weights2, i2);
  t /= 2;
  for (size_t k = 0; k < kernel.supports[i1].size(); ++k)
    h1[kernel.supports[i1][k]] =
        t * meet->weights1[k] / kernel.rows[i1][kernel.supports[i1][k]];
  for (size_t k = 0; k < kernel.supports[i2].size(); ++k)
    h2[kernel.supports[i2][k]] =
        t * meet->weights2[k] / kernel.rows[i2][kernel.supports[i2][k]];
  TransportPlan mixed;
  try {
    mixed = mix_two(inst, plan, i1, i2, h1, h2);
  } catch (const std::exception&) {
    return false;
  }
  if (!verify_plan(inst, mixed)) return false;
  if (i1 == i2) return mixed.pi == plan.pi;
  // each mixed row must cover the union of the two input supports
  for (size_t row : {i1, i2})
    for (size_t src : {i1, i2})
      for (size_t j = 0; j < inst.n; ++j)
        if (plan.pi[src][j] > 0 && mixed.pi[row][j] == 0) return false;
  return true;
}

bool polar_sound(const Instance& inst, const Kernel& kernel) {
  auto phi = gelfand_embed(inst);
  for (size_t i = 0; i < inst.n; ++i) {
    for (size_t j = 0; j < inst.n; ++j) {
      PairSet U;
      U.pairs.emplace_back(i, j);
      if (inst.mu[i] > 0 && inst.nu[j] > 0) {
        std::vector<DualVector> sup;
        for (size_t k : kernel.supports[i]) sup.push_back(phi[k]);
        if (rint_member(phi[j], sup).has_value()) {
          if (max_mass(inst, U, true).first <= 0) return false;
        }
      } else {
        auto v = is_polar(inst, U, false);
        if (!v.polar || !v.decomposition) return false;
      }
    }
  }
  return true;
}

bool brute_agrees(const Instance& inst) {
  auto vertices = brute_vertices(inst);
  auto mask = joint_support(inst);
  auto [plan, kernel] = maximal_kernel(inst);
  for (size_t i = 0; i < inst.n; ++i) {
    for (size_t j = 0; j < inst.n; ++j) {
      bool in_vertex = false;
      for (const auto& v : vertices)
        if (v.pi[i][j] > 0) in_vertex = true;
      if (in_vertex != mask[i][j]) return false;
      if ((plan.pi[i][j] > 0) != mask[i][j]) return false;
    }
  }
  return true;
}

bool poussin_sound(const Instance& inst, SplitMix64& rng) {
  RatVec p(inst.n);
  for (auto& v : p)
    v = Rational(static_cast<long>(rng.below(12)),
                 static_cast<long>(1 + rng.below(3)));
  auto xi = poussin(p, inst.mu, inst.nu);
  for (const auto& t : xi.thresholds) {
    size_t m = 1 + static_cast<size_t>(&t - xi.thresholds.data());
    Rational bound = Rational(1, 1L << m);
    Rational tail_mu = 0, tail_nu = 0;
    for (size_t j = 0; j < inst.n; ++j) {
      if (p[j] >= t) {
        tail_mu += p[j] * inst.mu[j];
        tail_nu += p[j] * inst.nu[j];
      }
    }
    if (tail_mu >= bound || tail_nu >= bound) return false;
  }
  // convex everywhere; nondecreasing and >= max(t, 1) for t >= 0
  Rational prev_val, prev_slope;
  bool first = true, have_slope = false;
  for (long k = -12; k <= 24; ++k) {
    Rational t(k, 2);
    Rational val = xi.eval(t);
    if (t >= 0) {
      Rational floor_v = t > 1 ? t : Rational(1);
      if (val < floor_v) return false;
    }
    if (!first) {
      Rational slope = (val - prev_val) * 2;
      if (t >= 0 && slope < 0) return false;
      if (have_slope && slope < prev_slope) return false;
      prev_slope = slope;
      have_slope = true;
    }
    prev_val = val;
    first = false;
  }
  return true;
}

}  // namespace

PropertyReport property_suite(uint64_t seed, size_t count) {
  SplitMix64 rng(seed);
  SuiteState state;
  for (size_t t = 0; t < count; ++t) {
    GenSpec spec;
    spec.seed = rng.next();
    spec.n = 1 + rng.below(3);
    spec.cone = rng.below(2) ? ConeKind::Martingale : ConeKind::Supermartingale;
    spec.d = 1 + rng.below(spec.cone == ConeKind::Martingale ? 3 : 2);
    // keep the final point count at 8 or below (each spread adds <= 2)
    size_t room = (8 - spec.n) / 2;
    spec.splits = rng.below(std::min<size_t>(4, room + 1));

    auto gen = gen_ordered(spec);
    const Instance& inst = gen.instance;
    state.record("construction-plan-verifies", verify_plan(inst, gen.plan),
                 &inst);

    auto order = check_order(inst);
    state.record("strassen-ordered",
                 order.ordered() && verify_plan(inst, *order.plan), &inst);

    GenSpec uspec = spec;
    uspec.n = std::max<size_t>(2, uspec.n);  // perturbation needs a 2nd point
    auto bad = gen_unordered(uspec);
    auto worder = check_order(bad);
    state.record("strassen-unordered",
                 !worder.ordered() && witness_sound(bad, *worder.witness),
                 &bad);

    auto paving = compute_paving(inst);
    state.record("paving-partition", paving_sound(inst, paving), &inst);

    auto [plan, kernel] = maximal_kernel(inst);
    auto phi = gelfand_embed(inst);
    bool density_ok = true;
    for (size_t probe = 0; probe < 4; ++probe) {
      size_t i = 0;
      do i = rng.below(inst.n);
      while (inst.mu[i] == 0);
      std::vector<DualVector> sup;
      for (size_t j : kernel.supports[i]) sup.push_back(phi[j]);
      DualVector a(inst.num_gens(), Rational(0));
      Rational total = 0;
      RatVec w(sup.size());
      for (auto& v : w) {
        v = Rational(static_cast<long>(rng.below(4)));
        total += v;
      }
      if (total == 0) {
        w[0] = 1;
        total = 1;
      }
      for (size_t k = 0; k < sup.size(); ++k)
        for (size_t r = 0; r < a.size(); ++r) a[r] += w[k] / total * sup[k][r];
      if (rng.below(4) == 0) a[0] += Rational(1, 3);
      if (rint_via_density(inst, kernel, i, a) !=
          rint_member(a, sup).has_value())
        density_ok = false;
    }
    state.record("density-rint-equivalence", density_ok, &inst);

    state.record("polar-characterization", polar_sound(inst, kernel), &inst);

    if (inst.n <= 4)
      state.record("brute-force-agreement", brute_agrees(inst), &inst);

    size_t i1 = 0, i2 = 0;
    {
      std::vector<size_t> pos;
      for (size_t i = 0; i < inst.n; ++i)
        if (inst.mu[i] > 0) pos.push_back(i);
      i1 = pos[rng.below(pos.size())];
      i2 = pos[rng.below(pos.size())];
    }
    state.record("mixing-soundness", mixing_sound(inst, plan, kernel, i1, i2),
                 &inst);

    state.record("poussin-bounds", poussin_sound(inst, rng), &inst);

    // independent geometry oracle pair on a random polytope
    {
      size_t dim = 1 + rng.below(3), nv = 2 + rng.below(6);
      std::vector<DualVector> V;
      for (size_t v = 0; v < nv; ++v) {
        DualVector p(dim + 1);
        for (size_t c = 0; c < dim; ++c) p[c] = rand_coord(rng);
        p[dim] = 1;
        V.push_back(p);
      }
      auto draw = [&] {
        DualVector x(dim + 1, Rational(0));
        Rational total = 0;
        RatVec w(nv);
        for (auto& v : w) {
          v = rng.below(2) ? Rational(static_cast<long>(1 + rng.below(4)))
                           : Rational(0);
          total += v;
        }
        if (total == 0) {
          w[rng.below(nv)] = 1;
          total = 1;
        }
        for (size_t k = 0; k < nv; ++k)
          for (size_t c = 0; c <= dim; ++c) x[c] += w[k] / total * V[k][c];
        return x;
      };
      DualVector a = draw(), b = draw();
      state.record("harnack-gleason-equivalence",
                   harnack_equiv(a, b, V) == gleason_equiv(a, b, V), nullptr);
    }
  }
  return state.report;
}

}  // namespace conepave
