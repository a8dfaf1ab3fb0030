#include "conepave/paving.hpp"

#include "conepave/lp.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace conepave {

namespace {

std::vector<DualVector> embed_support(const Instance& inst,
                                      const std::vector<size_t>& support) {
  auto phi = gelfand_embed(inst);
  std::vector<DualVector> pts;
  for (size_t j : support) pts.push_back(phi[j]);
  return pts;
}

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), size_t{0});
  }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::pair<std::vector<size_t>, AffineHull> component_of(const Instance& inst,
                                                        const Kernel& kernel,
                                                        size_t i) {
  if (i >= inst.n || inst.mu[i] == 0)
    throw std::invalid_argument("zero-mass source");
  auto support = kernel.supports[i];
  return {support, affine_hull(embed_support(inst, support))};
}

Paving compute_paving(const Instance& inst) {
  auto [plan, kernel] = maximal_kernel(inst);
  std::vector<size_t> sources;
  for (size_t i = 0; i < inst.n; ++i)
    if (inst.mu[i] > 0) sources.push_back(i);

  auto phi = gelfand_embed(inst);
  std::vector<std::vector<DualVector>> embedded(inst.n);
  for (size_t i : sources) embedded[i] = embed_support(inst, kernel.supports[i]);

  UnionFind uf(inst.n);
  for (size_t a = 0; a < sources.size(); ++a) {
    for (size_t b = a + 1; b < sources.size(); ++b) {
      size_t i1 = sources[a], i2 = sources[b];
      if (uf.find(i1) == uf.find(i2)) continue;
      if (rint_intersect(embedded[i1], embedded[i2]).has_value())
        uf.unite(i1, i2);
    }
  }

  Paving paving;
  std::vector<long> class_of_root(inst.n, -1);
  for (size_t i : sources) {
    size_t root = uf.find(i);
    if (class_of_root[root] < 0) {
      class_of_root[root] = static_cast<long>(paving.components.size());
      Component c;
      c.class_id = paving.components.size();
      paving.components.push_back(std::move(c));
    }
    paving.components[class_of_root[root]].members.push_back(i);
  }

  for (auto& comp : paving.components) {
    std::sort(comp.members.begin(), comp.members.end());
    size_t lead = comp.members.front();
    for (size_t i : comp.members) {
      if (kernel.supports[i] != kernel.supports[lead]) {
        throw PartitionViolation(
            lead, i,
            "partition violation: merged sources " + inst.labels[lead] +
                " and " + inst.labels[i] + " have different supports");
      }
    }
    comp.support = kernel.supports[lead];
    comp.hull = affine_hull(embedded[lead]);
    comp.dim = comp.hull.dim;
    comp.mu_cond.assign(inst.n, Rational(0));
    comp.nu_cond.assign(inst.n, Rational(0));
    for (size_t i : comp.members) {
      comp.mu_cond[i] = inst.mu[i];
      for (size_t j = 0; j < inst.n; ++j) comp.nu_cond[j] += plan.pi[i][j];
    }
  }
  return paving;
}

bool theta_member(const Instance& inst, const Kernel& kernel, size_t i,
                  const DualVector& a) {
  if (i >= inst.n || inst.mu[i] == 0)
    throw std::invalid_argument("zero-mass source");
  return conv_member(a, embed_support(inst, kernel.supports[i]))
      .weights.has_value();
}

bool rint_via_density(const Instance& inst, const Kernel& kernel, size_t i,
                      const DualVector& a) {
  if (i >= inst.n || inst.mu[i] == 0)
    throw std::invalid_argument("zero-mass source");
  const auto& support = kernel.supports[i];
  size_t k = support.size(), m = inst.num_gens();
  if (a.size() != m) throw std::invalid_argument("functional size mismatch");
  // vars: eta_j on the support, then t; maximize t subject to
  // eta_j >= t * lambda(omega_i, j), total mass 1, generator moments a.
  auto lp = LPProblem::with_nonneg_vars(k + 1);
  lp.objective.assign(k + 1, Rational(0));
  lp.objective[k] = 1;
  RatVec mass(k + 1, Rational(0));
  for (size_t s = 0; s < k; ++s) mass[s] = 1;
  lp.add_constraint(std::move(mass), Rel::Eq, Rational(1));
  for (size_t r = 0; r < m; ++r) {
    RatVec row(k + 1, Rational(0));
    for (size_t s = 0; s < k; ++s) row[s] = inst.gens[r][support[s]];
    lp.add_constraint(std::move(row), Rel::Eq, a[r]);
  }
  for (size_t s = 0; s < k; ++s) {
    RatVec row(k + 1, Rational(0));
    row[s] = 1;
    row[k] = -kernel.rows[i][support[s]];
    lp.add_constraint(std::move(row), Rel::Ge, Rational(0));
  }
  auto out = solve(lp);
  return out.tag == LPOutcome::Tag::Optimal && out.value > 0;
}

std::vector<std::optional<RatVec>> face_fit(const Instance& inst,
                                            const Paving& paving,
                                            const RatVec& f) {
  if (f.size() != inst.n) throw std::invalid_argument("f size mismatch");
  Rational gap = 0;
  for (size_t j = 0; j < inst.n; ++j) gap += f[j] * (inst.mu[j] - inst.nu[j]);
  if (gap != 0) throw std::invalid_argument("integral gap nonzero");

  size_t m = inst.num_gens();
  std::vector<std::optional<RatVec>> fits;
  for (const auto& comp : paving.components) {
    std::vector<size_t> pts = comp.support;
    for (size_t i : comp.members) pts.push_back(i);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto lp = LPProblem::with_nonneg_vars(m);
    for (size_t j : pts) {
      RatVec row(m);
      for (size_t r = 0; r < m; ++r) row[r] = inst.gens[r][j];
      lp.add_constraint(std::move(row), Rel::Eq, f[j]);
    }
    auto out = solve(lp);
    if (out.tag == LPOutcome::Tag::Optimal)
      fits.emplace_back(out.point);
    else
      fits.emplace_back(std::nullopt);
  }
  return fits;
}

bool fine_intersection(const Instance& inst, const Kernel& kernel, size_t i1,
                       size_t i2, const DualVector& a) {
  for (auto [i, side] : {std::pair<size_t, const char*>{i1, "first"},
                         {i2, "second"}}) {
    if (!theta_member(inst, kernel, i, a))
      throw std::invalid_argument(std::string("functional outside the ") +
                                  side + " component's closed hull");
  }
  auto V1 = embed_support(inst, kernel.supports[i1]);
  auto V2 = embed_support(inst, kernel.supports[i2]);
  auto f1 = minimal_face(a, V1);
  auto f2 = minimal_face(a, V2);
  std::vector<DualVector> a1, a2;
  for (size_t v : f1.active) a1.push_back(V1[v]);
  for (size_t v : f2.active) a2.push_back(V2[v]);
  return affine_hull_equal(affine_hull(a1), affine_hull(a2));
}

}  // namespace conepave
