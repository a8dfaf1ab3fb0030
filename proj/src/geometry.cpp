#include "conepave/geometry.hpp"

#include "conepave/lp.hpp"

#include <stdexcept>

namespace conepave {

namespace {

size_t coord_dim(const std::vector<DualVector>& V) {
  if (V.empty()) throw std::invalid_argument("empty dual vector list");
  size_t m = V[0].size();
  for (const auto& v : V) {
    if (v.size() != m) throw std::invalid_argument("ragged dual vector list");
  }
  return m;
}

// Reduced row echelon by exact rational elimination; returns rank and
// leaves the independent rows in `rows`.
size_t row_reduce(RatMat& rows) {
  if (rows.empty()) return 0;
  size_t m = rows.size(), w = rows[0].size(), rank = 0;
  for (size_t col = 0; col < w && rank < m; ++col) {
    size_t piv = rank;
    while (piv < m && rows[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t r = 0; r < m; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (size_t c = col; c < w; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

// Convex-combination constraints: sum_v w_v = 1 and sum_v w_v v = x.
void add_conv_rows(LPProblem& lp, const std::vector<DualVector>& V,
                   const DualVector& x, size_t offset) {
  size_t m = x.size();
  size_t width = lp.num_vars;
  RatVec ones(width, Rational(0));
  for (size_t v = 0; v < V.size(); ++v) ones[offset + v] = 1;
  lp.add_constraint(std::move(ones), Rel::Eq, Rational(1));
  for (size_t r = 0; r < m; ++r) {
    RatVec row(width, Rational(0));
    for (size_t v = 0; v < V.size(); ++v) row[offset + v] = V[v][r];
    lp.add_constraint(std::move(row), Rel::Eq, x[r]);
  }
}

}  // namespace

AffineHull affine_hull(const std::vector<DualVector>& V) {
  coord_dim(V);
  AffineHull hull;
  hull.base = V[0];
  RatMat diffs;
  for (size_t i = 1; i < V.size(); ++i) {
    RatVec d(V[i].size());
    for (size_t r = 0; r < d.size(); ++r) d[r] = V[i][r] - V[0][r];
    diffs.push_back(std::move(d));
  }
  hull.dim = row_reduce(diffs);
  hull.directions = std::move(diffs);
  return hull;
}

bool in_affine_hull(const DualVector& x, const AffineHull& hull) {
  // x - base must be spanned by the directions: appending it must not
  // raise the rank.
  RatMat rows = hull.directions;
  RatVec d(x.size());
  for (size_t r = 0; r < x.size(); ++r) d[r] = x[r] - hull.base[r];
  rows.push_back(std::move(d));
  return row_reduce(rows) == hull.dim;
}

bool affine_hull_equal(const AffineHull& a, const AffineHull& b) {
  if (a.dim != b.dim) return false;
  if (!in_affine_hull(b.base, a) || !in_affine_hull(a.base, b)) return false;
  for (const auto& d : b.directions) {
    RatVec shifted(d.size());
    for (size_t r = 0; r < d.size(); ++r) shifted[r] = b.base[r] + d[r];
    if (!in_affine_hull(shifted, a)) return false;
  }
  return true;
}

ConvMembership conv_member(const DualVector& x, const std::vector<DualVector>& V) {
  size_t m = coord_dim(V);
  if (x.size() != m) throw std::invalid_argument("query dimension mismatch");
  auto lp = LPProblem::with_nonneg_vars(V.size());
  add_conv_rows(lp, V, x, 0);
  auto out = solve(lp);
  ConvMembership result;
  if (out.tag == LPOutcome::Tag::Optimal) {
    result.weights = out.point;
    return result;
  }
  // Farkas multipliers: z for the sum row, y_r for coordinate rows give a
  // functional a(u) = sum_r y_r u_r with a(v) <= -z < a(x) on all of V.
  const RatVec& y = out.certificate.row_multipliers;
  result.separator.assign(m, Rational(0));
  for (size_t r = 0; r < m; ++r) result.separator[r] = y[1 + r];
  result.threshold = -y[0];
  return result;
}

std::optional<RatVec> rint_member(const DualVector& x,
                                  const std::vector<DualVector>& V) {
  size_t nv = V.size();
  coord_dim(V);
  // max t subject to w_v >= t, convex rows; t > 0 iff x in rint conv V.
  auto lp = LPProblem::with_nonneg_vars(nv + 1);
  lp.objective.assign(nv + 1, Rational(0));
  lp.objective[nv] = 1;
  add_conv_rows(lp, V, x, 0);
  for (size_t v = 0; v < nv; ++v) {
    RatVec row(nv + 1, Rational(0));
    row[v] = 1;
    row[nv] = -1;
    lp.add_constraint(std::move(row), Rel::Ge, Rational(0));
  }
  auto out = solve(lp);
  if (out.tag != LPOutcome::Tag::Optimal || out.value <= 0) return std::nullopt;
  RatVec weights(out.point.begin(), out.point.begin() + nv);
  return weights;
}

FaceDescriptor minimal_face(const DualVector& x, const std::vector<DualVector>& V) {
  size_t nv = V.size();
  coord_dim(V);
  FaceDescriptor face;
  for (size_t v = 0; v < nv; ++v) {
    auto lp = LPProblem::with_nonneg_vars(nv);
    lp.objective.assign(nv, Rational(0));
    lp.objective[v] = 1;
    add_conv_rows(lp, V, x, 0);
    auto out = solve(lp);
    if (out.tag == LPOutcome::Tag::Infeasible) {
      throw std::invalid_argument("minimal_face: point outside the hull");
    }
    if (out.value > 0) face.active.push_back(v);
  }
  return face;
}

bool gleason_equiv(const DualVector& x, const DualVector& y,
                   const std::vector<DualVector>& V) {
  auto fx = minimal_face(x, V);
  auto fy = minimal_face(y, V);
  if (fx.active.empty() || fy.active.empty()) {
    throw std::invalid_argument("gleason_equiv: membership failure");
  }
  auto pick = [&](const std::vector<size_t>& idx) {
    std::vector<DualVector> pts;
    for (size_t i : idx) pts.push_back(V[i]);
    return pts;
  };
  return affine_hull_equal(affine_hull(pick(fx.active)),
                           affine_hull(pick(fy.active)));
}

namespace {

// Largest c >= 0 with b - c a representable as a nonnegative combination
// of V; nullopt when not even c = 0 works (b outside cone V).
std::optional<Rational> max_cone_factor(const DualVector& a, const DualVector& b,
                                        const std::vector<DualVector>& V) {
  size_t m = a.size(), nv = V.size();
  auto lp = LPProblem::with_nonneg_vars(nv + 1);  // y_v, then c
  lp.objective.assign(nv + 1, Rational(0));
  lp.objective[nv] = 1;
  for (size_t r = 0; r < m; ++r) {
    RatVec row(nv + 1, Rational(0));
    for (size_t v = 0; v < nv; ++v) row[v] = V[v][r];
    row[nv] = a[r];
    lp.add_constraint(std::move(row), Rel::Eq, b[r]);
  }
  auto out = solve(lp);
  if (out.tag == LPOutcome::Tag::Infeasible) return std::nullopt;
  if (out.tag == LPOutcome::Tag::Unbounded) return Rational(1);
  return out.value;
}

}  // namespace

bool harnack_equiv(const DualVector& a, const DualVector& b,
                   const std::vector<DualVector>& V) {
  auto c = max_cone_factor(a, b, V);
  if (!c || *c <= 0) return false;
  // Existence of C with C a - b in cone(V): feasibility with C free above.
  size_t m = a.size(), nv = V.size();
  LPProblem lp = LPProblem::with_nonneg_vars(nv + 1);
  for (size_t r = 0; r < m; ++r) {
    RatVec row(nv + 1, Rational(0));
    for (size_t v = 0; v < nv; ++v) row[v] = V[v][r];
    row[nv] = -a[r];
    lp.add_constraint(std::move(row), Rel::Eq, -b[r]);
  }
  auto out = solve(lp);
  return out.tag == LPOutcome::Tag::Optimal;
}

std::optional<RintIntersection> rint_intersect(const std::vector<DualVector>& V1,
                                               const std::vector<DualVector>& V2) {
  size_t m = coord_dim(V1);
  if (coord_dim(V2) != m) throw std::invalid_argument("dimension mismatch");
  size_t n1 = V1.size(), n2 = V2.size();
  // vars: p (n1), q (n2), t; maximize t with p,q >= t and equal moments.
  auto lp = LPProblem::with_nonneg_vars(n1 + n2 + 1);
  size_t tcol = n1 + n2;
  lp.objective.assign(n1 + n2 + 1, Rational(0));
  lp.objective[tcol] = 1;
  RatVec sum1(n1 + n2 + 1, Rational(0)), sum2(n1 + n2 + 1, Rational(0));
  for (size_t v = 0; v < n1; ++v) sum1[v] = 1;
  for (size_t v = 0; v < n2; ++v) sum2[n1 + v] = 1;
  lp.add_constraint(std::move(sum1), Rel::Eq, Rational(1));
  lp.add_constraint(std::move(sum2), Rel::Eq, Rational(1));
  for (size_t r = 0; r < m; ++r) {
    RatVec row(n1 + n2 + 1, Rational(0));
    for (size_t v = 0; v < n1; ++v) row[v] = V1[v][r];
    for (size_t v = 0; v < n2; ++v) row[n1 + v] = -V2[v][r];
    lp.add_constraint(std::move(row), Rel::Eq, Rational(0));
  }
  for (size_t v = 0; v < n1 + n2; ++v) {
    RatVec row(n1 + n2 + 1, Rational(0));
    row[v] = 1;
    row[tcol] = -1;
    lp.add_constraint(std::move(row), Rel::Ge, Rational(0));
  }
  auto out = solve(lp);
  if (out.tag != LPOutcome::Tag::Optimal || out.value <= 0) return std::nullopt;
  RintIntersection hit;
  hit.weights1.assign(out.point.begin(), out.point.begin() + n1);
  hit.weights2.assign(out.point.begin() + n1, out.point.begin() + n1 + n2);
  hit.point.assign(m, Rational(0));
  for (size_t r = 0; r < m; ++r) {
    for (size_t v = 0; v < n1; ++v) hit.point[r] += hit.weights1[v] * V1[v][r];
  }
  return hit;
}

}  // namespace conepave
