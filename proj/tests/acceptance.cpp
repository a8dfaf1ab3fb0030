// Release gate: each criterion prints one pass/fail line; the binary
// exits nonzero if any criterion fails. Everything is checked in exact
// rational arithmetic — there is no tolerance anywhere.

#include "conepave/geometry.hpp"
#include "conepave/oracle.hpp"
#include "conepave/paving.hpp"
#include "conepave/polar.hpp"
#include "conepave/transport.hpp"

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <vector>

using namespace conepave;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }

GenSpec random_spec(SplitMix64& rng, uint64_t seed) {
  GenSpec spec;
  spec.seed = seed;
  spec.n = 1 + rng.below(3);
  spec.d = 1 + rng.below(3);
  spec.cone = rng.below(2) ? ConeKind::Martingale : ConeKind::Supermartingale;
  size_t room = (8 - spec.n) / 2;
  spec.splits = rng.below(room + 1);
  return spec;
}

// Recompute the witness values and gap from the branch data alone.
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

// 200 seeded instances, half ordered by construction, half perturbed
// past the order: the dichotomy must label every one correctly with a
// verifiable plan or witness.
bool order_dichotomy(std::vector<Instance>& ordered_pool) {
  SplitMix64 rng(0x5eed0001);
  for (int k = 0; k < 100; ++k) {
    GenSpec spec = random_spec(rng, 1000 + k);
    Generated g = gen_ordered(spec);
    auto r = check_order(g.instance);
    if (!r.ordered() || !verify_plan(g.instance, *r.plan)) return false;
    ordered_pool.push_back(g.instance);
  }
  for (int k = 0; k < 100; ++k) {
    GenSpec spec = random_spec(rng, 2000 + k);
    spec.n = std::max<size_t>(2, spec.n);
    Instance bad = gen_unordered(spec);
    auto r = check_order(bad);
    if (r.ordered() || !witness_sound(bad, *r.witness)) return false;
  }
  return true;
}

bool paving_partition(const std::vector<Instance>& pool) {
  for (const auto& inst : pool) {
    Paving paving;
    try {
      paving = compute_paving(inst);
    } catch (const PartitionViolation&) {
      return false;
    }
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
  }
  return true;
}

// The density-ratio LP and the direct relative-interior membership test
// must agree on every (source, query functional) pair.
bool density_rint_agreement(const std::vector<Instance>& pool) {
  SplitMix64 rng(0x5eed0003);
  size_t checked = 0;
  for (const auto& inst : pool) {
    auto [plan, kernel] = maximal_kernel(inst);
    auto phi = gelfand_embed(inst);
    for (size_t i = 0; i < inst.n; ++i) {
      if (inst.mu[i] == 0) continue;
      for (int rep = 0; rep < 3; ++rep) {
        const auto& sup_idx = kernel.supports[i];
        std::vector<DualVector> sup;
        for (size_t j : sup_idx) sup.push_back(phi[j]);
        DualVector a(inst.num_gens(), Rational(0));
        Rational total = 0;
        RatVec w(sup.size());
        for (auto& v : w) {
          v = Rational(static_cast<long>(rng.below(5)));
          total += v;
        }
        if (total == 0) {
          w[rng.below(w.size())] = 1;
          total = 1;
        }
        for (size_t k = 0; k < sup.size(); ++k)
          for (size_t r = 0; r < a.size(); ++r)
            a[r] += w[k] / total * sup[k][r];
        if (rng.below(4) == 0) a[0] += Q(1, 3);  // push some off the hull
        if (rint_via_density(inst, kernel, i, a) !=
            rint_member(a, sup).has_value())
          return false;
        ++checked;
      }
    }
    if (checked >= 500) return true;
  }
  return false;  // pool too small to reach the quota
}

// Two-sided cone comparison and same-open-face membership must coincide
// on random polytopes of dimension <= 4 with <= 10 vertices.
bool harnack_gleason_agreement() {
  SplitMix64 rng(0x5eed0004);
  auto rand_coord = [&rng] {
    long num = static_cast<long>(rng.below(17)) - 8;
    long den = 1L << rng.below(3);
    return Rational(num, den);
  };
  for (size_t checked = 0; checked < 500; ++checked) {
    size_t dim = 1 + rng.below(4), nv = 2 + rng.below(9);
    std::vector<DualVector> V;
    for (size_t v = 0; v < nv; ++v) {
      DualVector p(dim + 1);
      for (size_t c = 0; c < dim; ++c) p[c] = rand_coord();
      p[dim] = 1;  // constants coordinate
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
    if (harnack_equiv(a, b, V) != gleason_equiv(a, b, V)) return false;
  }
  return true;
}

// Positive-mass pairs whose target sits in the source's open component
// must carry mass; pairs with a zero-mass endpoint must be polar with a
// decomposition into zero-mass sets that actually covers them.
bool polar_characterization(const std::vector<Instance>& pool) {
  for (const auto& inst : pool) {
    auto [plan, kernel] = maximal_kernel(inst);
    auto phi = gelfand_embed(inst);
    for (size_t i = 0; i < inst.n; ++i) {
      for (size_t j = 0; j < inst.n; ++j) {
        PairSet U;
        U.pairs.emplace_back(i, j);
        if (inst.mu[i] > 0 && inst.nu[j] > 0) {
          std::vector<DualVector> sup;
          for (size_t k : kernel.supports[i]) sup.push_back(phi[k]);
          if (rint_member(phi[j], sup).has_value() &&
              max_mass(inst, U, true).first <= 0)
            return false;
        } else {
          auto v = is_polar(inst, U, false);
          if (!v.polar || !v.decomposition) return false;
          bool in_n1 = std::binary_search(v.decomposition->first.begin(),
                                          v.decomposition->first.end(), i) &&
                       inst.mu[i] == 0;
          bool in_n2 = std::binary_search(v.decomposition->second.begin(),
                                          v.decomposition->second.end(), j) &&
                       inst.nu[j] == 0;
          if (!in_n1 && !in_n2) return false;
        }
      }
    }
  }
  return true;
}

// On every small instance the exhaustive vertex enumeration, the pair
// probes, and the maximal kernel must report the same joint support.
bool brute_force_agreement(const std::vector<Instance>& pool) {
  size_t small = 0;
  for (const auto& inst : pool) {
    if (inst.n > 4) continue;
    ++small;
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
  }
  return small > 0;
}

// Swap kernel mass between two sources along a common relative-interior
// point; the result must still be an admissible plan whose mixed rows
// cover both input rows.
bool mixing_soundness(const std::vector<Instance>& pool) {
  SplitMix64 rng(0x5eed0007);
  size_t applied = 0;
  while (applied < 100) {
    for (const auto& inst : pool) {
      auto [plan, kernel] = maximal_kernel(inst);
      auto phi = gelfand_embed(inst);
      std::vector<size_t> pos;
      for (size_t i = 0; i < inst.n; ++i)
        if (inst.mu[i] > 0) pos.push_back(i);
      size_t i1 = pos[rng.below(pos.size())];
      size_t i2 = pos[rng.below(pos.size())];
      std::vector<DualVector> v1, v2;
      for (size_t j : kernel.supports[i1]) v1.push_back(phi[j]);
      for (size_t j : kernel.supports[i2]) v2.push_back(phi[j]);
      auto meet = rint_intersect(v1, v2);
      if (!meet) continue;
      RatVec h1(inst.n, Rational(0)), h2(inst.n, Rational(0));
      Rational t(1);
      auto cap = [&](const std::vector<size_t>& sup, const RatVec& w,
                     size_t i) {
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
      if (i1 == i2) {
        if (mixed.pi != plan.pi) return false;
      } else {
        for (size_t row : {i1, i2})
          for (size_t src : {i1, i2})
            for (size_t j = 0; j < inst.n; ++j)
              if (plan.pi[src][j] > 0 && mixed.pi[row][j] == 0) return false;
      }
      if (++applied >= 100) break;
    }
  }
  return true;
}

Instance segment_example() {
  Instance inst;
  inst.n = 4;
  inst.labels = {"-1", "0", "1", "2"};
  inst.coords = {{Q(-1)}, {Q(0)}, {Q(1)}, {Q(2)}};
  inst.cone = ConeKind::Martingale;
  inst.gens = build_cone(ConeKind::Martingale, inst.coords, {});
  inst.mu = {Q(0), Q(1, 2), Q(0), Q(1, 2)};
  inst.nu = {Q(1, 4), Q(0), Q(1, 4), Q(1, 2)};
  inst.validate();
  return inst;
}

Instance companion_example() {
  Instance inst;
  inst.n = 3;
  inst.labels = {"-1", "0", "2"};
  inst.coords = {{Q(-1)}, {Q(0)}, {Q(2)}};
  inst.cone = ConeKind::Martingale;
  inst.gens = build_cone(ConeKind::Martingale, inst.coords, {});
  inst.mu = {Q(0), Q(1), Q(0)};
  inst.nu = {Q(1, 2), Q(1, 4), Q(1, 4)};
  inst.validate();
  return inst;
}

Rational brute_max_on_pair(const Instance& inst, size_t i, size_t j) {
  Rational best = 0;
  for (const auto& v : brute_vertices(inst))
    if (v.pi[i][j] > best) best = v.pi[i][j];
  return best;
}

// The hand-checked segment instance: one open-segment component, one
// point component, a polar pair across them, and a charged pair on the
// companion instance — all re-verified against the vertex enumeration.
bool worked_example() {
  Instance inst = segment_example();
  Paving paving = compute_paving(inst);
  if (paving.components.size() != 2) return false;
  const Component* seg = nullptr;
  const Component* pt = nullptr;
  for (const auto& c : paving.components) {
    if (c.members == std::vector<size_t>{1}) seg = &c;
    if (c.members == std::vector<size_t>{3}) pt = &c;
  }
  if (!seg || !pt) return false;
  if (seg->support != std::vector<size_t>{0, 2} || seg->dim != 1) return false;
  if (pt->support != std::vector<size_t>{3} || pt->dim != 0) return false;

  PairSet across;
  across.pairs.emplace_back(3, 2);  // source 2 cannot reach point 1
  auto verdict = is_polar(inst, across, true);
  if (!verdict.polar || verdict.max_mass != 0) return false;
  if (brute_max_on_pair(inst, 3, 2) != 0) return false;

  Instance comp = companion_example();
  PairSet stay;
  stay.pairs.emplace_back(1, 1);  // mass staying at the origin
  auto v2 = is_polar(comp, stay, true);
  if (v2.polar || v2.max_mass != Q(1, 4) || !v2.plan) return false;
  if (brute_max_on_pair(comp, 1, 1) != Q(1, 4)) return false;
  return true;
}

// The emitted growth function must be convex, nondecreasing, dominate
// max(t, 1), and satisfy every stored geometric tail bound exactly.
bool poussin_utility() {
  SplitMix64 rng(0x5eed0009);
  for (int trial = 0; trial < 100; ++trial) {
    size_t n = 1 + rng.below(8);
    RatVec p(n), mu(n), nu(n);
    for (size_t i = 0; i < n; ++i) {
      p[i] = Rational(static_cast<long>(rng.below(16)),
                      static_cast<long>(1 + rng.below(3)));
      mu[i] = Rational(static_cast<long>(rng.below(5)),
                       static_cast<long>(1 + rng.below(4)));
      nu[i] = Rational(static_cast<long>(rng.below(5)),
                       static_cast<long>(1 + rng.below(4)));
    }
    auto xi = poussin(p, mu, nu);
    for (size_t m = 1; m <= xi.thresholds.size(); ++m) {
      Rational bound = Rational(1, 1L << m);
      Rational tail_mu = 0, tail_nu = 0;
      for (size_t i = 0; i < n; ++i) {
        if (p[i] >= xi.thresholds[m - 1]) {
          tail_mu += p[i] * mu[i];
          tail_nu += p[i] * nu[i];
        }
      }
      if (tail_mu >= bound || tail_nu >= bound) return false;
    }
    Rational prev_val, prev_slope;
    bool have_val = false, have_slope = false;
    for (long k = 0; k <= 48; ++k) {
      Rational t(k, 2);
      Rational val = xi.eval(t);
      if (val < t || val < 1) return false;
      if (have_val) {
        Rational slope = (val - prev_val) * 2;
        if (slope < 0) return false;
        if (have_slope && slope < prev_slope) return false;
        prev_slope = slope;
        have_slope = true;
      }
      prev_val = val;
      have_val = true;
    }
  }
  return true;
}

bool report(const char* name, bool ok) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name << std::endl;
  return ok;
}

}  // namespace

int main() {
  bool all = true;
  std::vector<Instance> pool;
  all &= report("order-dichotomy-with-certificates", order_dichotomy(pool));
  all &= report("paving-is-a-partition", paving_partition(pool));
  all &= report("density-rint-equivalence", density_rint_agreement(pool));
  all &= report("harnack-gleason-equivalence", harnack_gleason_agreement());
  all &= report("polar-characterization", polar_characterization(pool));
  all &= report("brute-force-agreement", brute_force_agreement(pool));
  all &= report("mixing-soundness", mixing_soundness(pool));
  all &= report("worked-segment-example", worked_example());
  all &= report("growth-function-bounds", poussin_utility());
  return all ? 0 : 1;
}
