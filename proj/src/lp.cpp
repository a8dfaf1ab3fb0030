#include "conepave/lp.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace conepave {

LPProblem LPProblem::with_nonneg_vars(size_t n) {
  LPProblem lp;
  lp.num_vars = n;
  lp.bounds.assign(n, Bound::nonneg());
  lp.objective.assign(n, Rational(0));
  return lp;
}

void LPProblem::add_constraint(RatVec coeffs, Rel rel, Rational rhs) {
  if (coeffs.size() != num_vars) {
    throw std::invalid_argument("constraint row length != variable count");
  }
  constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
}

std::string LPProblem::to_text() const {
  std::ostringstream os;
  os << (direction == Direction::Max ? "max" : "min");
  for (size_t k = 0; k < num_vars; ++k) {
    os << " " << format_rational(k < objective.size() ? objective[k] : Rational(0))
       << "*x" << k;
  }
  os << "\n";
  for (const auto& c : constraints) {
    for (size_t k = 0; k < num_vars; ++k) {
      os << format_rational(c.coeffs[k]) << "*x" << k << (k + 1 < num_vars ? " + " : " ");
    }
    os << (c.rel == Rel::Eq ? "=" : c.rel == Rel::Le ? "<=" : ">=") << " "
       << format_rational(c.rhs) << "\n";
  }
  for (size_t k = 0; k < num_vars; ++k) {
    os << "x" << k << " in ["
       << (bounds[k].lo ? format_rational(*bounds[k].lo) : std::string("-inf")) << ", "
       << (bounds[k].hi ? format_rational(*bounds[k].hi) : std::string("+inf")) << "]\n";
  }
  return os.str();
}

namespace {

// Internal standard form: min c2.x over A x = b, x >= 0, b >= 0,
// built from the user's problem by shifting lower-bounded variables,
// flipping upper-only ones, and splitting free ones. Extra <=-rows carry
// finite upper bounds; their multipliers map back to bound multipliers.

struct ColInfo {
  enum Kind { Structural, Slack, Artificial } kind = Structural;
  size_t var = 0;   // original variable (Structural)
  int scale = 1;    // +1 shift / free-plus, -1 flip / free-minus
  size_t row = 0;   // owning row (Slack / Artificial)
};

struct RowInfo {
  enum Kind { Orig, VarUpper } kind = Orig;
  size_t index = 0;  // constraint index or variable index
  Rel rel = Rel::Eq; // relation before b-sign normalization
  int sigma = 1;     // -1 if the row was negated to make b nonnegative
  size_t id_col = 0; // initial identity column (slack or artificial)
};

class Simplex {
 public:
  explicit Simplex(const LPProblem& lp) : lp_(lp) { build(); }

  LPOutcome run() {
    if (!phase1()) return infeasible_outcome();
    drive_out_artificials();
    return phase2();
  }

 private:
  const LPProblem& lp_;
  size_t n_int_ = 0;               // structural internal columns
  std::vector<ColInfo> cols_;
  std::vector<RowInfo> rows_;
  // per original variable: internal column(s) and offset
  std::vector<std::array<long, 2>> var_cols_;  // [col, col_minus or -1]
  RatVec var_ofs_;
  std::vector<int> var_scale_;

  RatMat T_;       // current tableau rows
  RatVec rhs_;
  RatVec zrow_;    // reduced costs of current phase
  RatVec cost_;    // per-column cost of current phase
  std::vector<size_t> basis_;

  void build() {
    size_t nv = lp_.num_vars;
    if (lp_.bounds.size() != nv) throw std::invalid_argument("bounds size != num_vars");
    var_cols_.assign(nv, {-1, -1});
    var_ofs_.assign(nv, Rational(0));
    var_scale_.assign(nv, 1);

    struct PendingUpper { size_t var; Rational rhs; };
    std::vector<PendingUpper> uppers;

    for (size_t k = 0; k < nv; ++k) {
      const Bound& b = lp_.bounds[k];
      if (b.lo) {
        var_cols_[k][0] = static_cast<long>(n_int_++);
        var_ofs_[k] = *b.lo;
        var_scale_[k] = 1;
        cols_.push_back({ColInfo::Structural, k, +1, 0});
        if (b.hi) uppers.push_back({k, *b.hi - *b.lo});
      } else if (b.hi) {
        var_cols_[k][0] = static_cast<long>(n_int_++);
        var_ofs_[k] = *b.hi;
        var_scale_[k] = -1;
        cols_.push_back({ColInfo::Structural, k, -1, 0});
      } else {
        var_cols_[k][0] = static_cast<long>(n_int_++);
        var_cols_[k][1] = static_cast<long>(n_int_++);
        cols_.push_back({ColInfo::Structural, k, +1, 0});
        cols_.push_back({ColInfo::Structural, k, -1, 0});
      }
    }

    // Rows: original constraints, then finite-upper rows.
    auto internal_row = [&](const RatVec& a, const Rational& b0) {
      RatVec row(n_int_, Rational(0));
      Rational rhs = b0;
      for (size_t k = 0; k < lp_.num_vars; ++k) {
        if (a[k] == 0) continue;
        rhs -= a[k] * var_ofs_[k];
        row[static_cast<size_t>(var_cols_[k][0])] += a[k] * var_scale_[k];
        if (var_cols_[k][1] >= 0) {
          row[static_cast<size_t>(var_cols_[k][1])] -= a[k];
        }
      }
      return std::pair<RatVec, Rational>(std::move(row), std::move(rhs));
    };

    struct RawRow { RatVec coeffs; Rel rel; Rational rhs; RowInfo info; };
    std::vector<RawRow> raw;
    for (size_t i = 0; i < lp_.constraints.size(); ++i) {
      const auto& c = lp_.constraints[i];
      if (c.coeffs.size() != lp_.num_vars) {
        throw std::invalid_argument("constraint row length != variable count");
      }
      auto [row, b] = internal_row(c.coeffs, c.rhs);
      raw.push_back({std::move(row), c.rel, std::move(b),
                     {RowInfo::Orig, i, c.rel, 1, 0}});
    }
    for (const auto& u : uppers) {
      RatVec row(n_int_, Rational(0));
      row[static_cast<size_t>(var_cols_[u.var][0])] = 1;
      raw.push_back({std::move(row), Rel::Le, u.rhs,
                     {RowInfo::VarUpper, u.var, Rel::Le, 1, 0}});
    }

    // Normalize to b >= 0, append slack and artificial columns.
    size_t m = raw.size();
    T_.assign(m, RatVec());
    rhs_.assign(m, Rational(0));
    rows_.resize(m);
    for (size_t r = 0; r < m; ++r) {
      auto& rr = raw[r];
      if (rr.rhs < 0) {
        for (auto& v : rr.coeffs) v = -v;
        rr.rhs = -rr.rhs;
        rr.rel = rr.rel == Rel::Le ? Rel::Ge : rr.rel == Rel::Ge ? Rel::Le : Rel::Eq;
        rr.info.sigma = -1;
      }
      rr.info.rel = rr.rel;
      rows_[r] = rr.info;
      T_[r] = std::move(rr.coeffs);
      rhs_[r] = rr.rhs;
    }
    // slack/surplus columns
    for (size_t r = 0; r < m; ++r) {
      if (raw[r].rel == Rel::Eq) continue;
      size_t col = cols_.size();
      cols_.push_back({ColInfo::Slack, 0, raw[r].rel == Rel::Le ? +1 : -1, r});
      for (size_t r2 = 0; r2 < m; ++r2) {
        T_[r2].push_back(r2 == r ? Rational(cols_.back().scale) : Rational(0));
      }
      if (raw[r].rel == Rel::Le) rows_[r].id_col = col;
    }
    // artificials for Eq and Ge rows
    basis_.assign(m, 0);
    for (size_t r = 0; r < m; ++r) {
      if (raw[r].rel == Rel::Le) {
        basis_[r] = rows_[r].id_col;
        continue;
      }
      size_t col = cols_.size();
      cols_.push_back({ColInfo::Artificial, 0, +1, r});
      for (size_t r2 = 0; r2 < m; ++r2) {
        T_[r2].push_back(r2 == r ? Rational(1) : Rational(0));
      }
      rows_[r].id_col = col;
      basis_[r] = col;
    }
  }

  void set_costs(RatVec cost) {
    cost_ = std::move(cost);
    zrow_.assign(cols_.size(), Rational(0));
    for (size_t j = 0; j < cols_.size(); ++j) {
      Rational z = cost_[j];
      for (size_t r = 0; r < T_.size(); ++r) {
        if (cost_[basis_[r]] != 0 && T_[r][j] != 0) z -= cost_[basis_[r]] * T_[r][j];
      }
      zrow_[j] = z;
    }
  }

  void pivot(size_t row, size_t col) {
    Rational piv = T_[row][col];
    for (auto& v : T_[row]) v /= piv;
    rhs_[row] /= piv;
    for (size_t r = 0; r < T_.size(); ++r) {
      if (r == row || T_[r][col] == 0) continue;
      Rational f = T_[r][col];
      for (size_t j = 0; j < cols_.size(); ++j) {
        if (T_[row][j] != 0) T_[r][j] -= f * T_[row][j];
      }
      rhs_[r] -= f * rhs_[row];
    }
    if (zrow_[col] != 0) {
      Rational f = zrow_[col];
      for (size_t j = 0; j < cols_.size(); ++j) {
        if (T_[row][j] != 0) zrow_[j] -= f * T_[row][j];
      }
    }
    basis_[row] = col;
  }

  // Bland: smallest-index entering among negative reduced costs,
  // smallest basis index on ratio ties. Returns false when optimal,
  // throws Unbounded sentinel when a ray is found (phase 2 only).
  struct UnboundedAt { size_t col; };

  bool iterate(bool allow_unbounded) {
    size_t enter = cols_.size();
    for (size_t j = 0; j < cols_.size(); ++j) {
      if (cols_[j].kind == ColInfo::Artificial) continue;
      if (zrow_[j] < 0) { enter = j; break; }
    }
    if (enter == cols_.size()) return false;

    size_t leave = T_.size();
    Rational best;
    for (size_t r = 0; r < T_.size(); ++r) {
      if (T_[r][enter] <= 0) continue;
      Rational ratio = rhs_[r] / T_[r][enter];
      if (leave == T_.size() || ratio < best ||
          (ratio == best && basis_[r] < basis_[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == T_.size()) {
      if (allow_unbounded) throw UnboundedAt{enter};
      throw std::logic_error("phase-1 objective unbounded below");
    }
    pivot(leave, enter);
    return true;
  }

  bool phase1() {
    RatVec d(cols_.size(), Rational(0));
    for (size_t j = 0; j < cols_.size(); ++j) {
      if (cols_[j].kind == ColInfo::Artificial) d[j] = 1;
    }
    set_costs(std::move(d));
    while (iterate(false)) {}
    Rational obj = 0;
    for (size_t r = 0; r < T_.size(); ++r) {
      if (cost_[basis_[r]] != 0) obj += cost_[basis_[r]] * rhs_[r];
    }
    return obj == 0;
  }

  void drive_out_artificials() {
    for (size_t r = 0; r < T_.size(); ++r) {
      if (cols_[basis_[r]].kind != ColInfo::Artificial) continue;
      // rhs is zero here; pivot on any non-artificial entry. If none, the
      // row is redundant and stays inert with its artificial basic at 0.
      for (size_t j = 0; j < cols_.size(); ++j) {
        if (cols_[j].kind == ColInfo::Artificial) continue;
        if (T_[r][j] != 0) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  RatVec internal_costs() const {
    int dir = lp_.direction == Direction::Max ? -1 : 1;
    RatVec c2(cols_.size(), Rational(0));
    for (size_t j = 0; j < cols_.size(); ++j) {
      if (cols_[j].kind != ColInfo::Structural) continue;
      size_t k = cols_[j].var;
      Rational ck = k < lp_.objective.size() ? lp_.objective[k] : Rational(0);
      c2[j] = dir * cols_[j].scale * ck;
    }
    return c2;
  }

  RatVec extract_point() const {
    RatVec xhat(n_int_, Rational(0));
    for (size_t r = 0; r < T_.size(); ++r) {
      if (basis_[r] < n_int_) xhat[basis_[r]] = rhs_[r];
    }
    RatVec x(lp_.num_vars);
    for (size_t k = 0; k < lp_.num_vars; ++k) {
      x[k] = var_ofs_[k] + var_scale_[k] * xhat[static_cast<size_t>(var_cols_[k][0])];
      if (var_cols_[k][1] >= 0) x[k] -= xhat[static_cast<size_t>(var_cols_[k][1])];
    }
    return x;
  }

  Rational objective_at(const RatVec& x) const {
    Rational v = 0;
    for (size_t k = 0; k < lp_.num_vars && k < lp_.objective.size(); ++k) {
      v += lp_.objective[k] * x[k];
    }
    return v;
  }

  // Row multipliers of the current phase, in original orientation.
  // `flip` negates (used to undo the phase-2 cost negation for Max).
  RatVec row_multipliers(bool flip) const {
    RatVec y(rows_.size());
    for (size_t r = 0; r < rows_.size(); ++r) {
      Rational yr = cost_[rows_[r].id_col] - zrow_[rows_[r].id_col];
      yr *= rows_[r].sigma;
      y[r] = flip ? Rational(-yr) : yr;
    }
    return y;
  }

  LPOutcome infeasible_outcome() {
    LPOutcome out;
    out.tag = LPOutcome::Tag::Infeasible;
    RatVec y = row_multipliers(false);
    RatVec rowm, lom, him;
    // Phase-1 reduced costs of structural columns directly provide the
    // bound multipliers: z_a >= 0 maps to u_lo = z_a (shift) and
    // u_hi = -z_a (flip).
    rowm.assign(lp_.constraints.size(), Rational(0));
    lom.assign(lp_.num_vars, Rational(0));
    him.assign(lp_.num_vars, Rational(0));
    for (size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].kind == RowInfo::Orig) rowm[rows_[r].index] = y[r];
      else him[rows_[r].index] = y[r];
    }
    for (size_t j = 0; j < cols_.size(); ++j) {
      if (cols_[j].kind != ColInfo::Structural) continue;
      size_t k = cols_[j].var;
      if (!lp_.bounds[k].lo && !lp_.bounds[k].hi) continue;
      if (cols_[j].scale == 1) lom[k] = zrow_[j];
      else him[k] = -zrow_[j];
    }
    out.certificate = {std::move(rowm), std::move(lom), std::move(him)};
    return out;
  }

  LPOutcome phase2() {
    set_costs(internal_costs());
    try {
      while (iterate(true)) {}
    } catch (const UnboundedAt& u) {
      LPOutcome out;
      out.tag = LPOutcome::Tag::Unbounded;
      out.point = extract_point();
      RatVec dhat(n_int_, Rational(0));
      if (u.col < n_int_) dhat[u.col] = 1;
      for (size_t r = 0; r < T_.size(); ++r) {
        if (basis_[r] < n_int_) dhat[basis_[r]] = -T_[r][u.col];
      }
      out.ray.assign(lp_.num_vars, Rational(0));
      for (size_t k = 0; k < lp_.num_vars; ++k) {
        out.ray[k] = var_scale_[k] * dhat[static_cast<size_t>(var_cols_[k][0])];
        if (var_cols_[k][1] >= 0) out.ray[k] -= dhat[static_cast<size_t>(var_cols_[k][1])];
      }
      return out;
    }
    LPOutcome out;
    out.tag = LPOutcome::Tag::Optimal;
    out.point = extract_point();
    out.value = objective_at(out.point);
    bool flip = lp_.direction == Direction::Max;
    RatVec y = row_multipliers(flip);
    RatVec rowm, lom, him;
    rowm.assign(lp_.constraints.size(), Rational(0));
    lom.assign(lp_.num_vars, Rational(0));
    him.assign(lp_.num_vars, Rational(0));
    for (size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].kind == RowInfo::Orig) rowm[rows_[r].index] = y[r];
      else him[rows_[r].index] += y[r];
    }
    int sgn = flip ? -1 : 1;
    for (size_t j = 0; j < cols_.size(); ++j) {
      if (cols_[j].kind != ColInfo::Structural) continue;
      size_t k = cols_[j].var;
      if (!lp_.bounds[k].lo && !lp_.bounds[k].hi) continue;
      // Max: u_lo = -z_a (shift), u_hi = +z_a (flip column).
      // Min: u_lo = +z_a (shift), u_hi = -z_a (flip column).
      if (cols_[j].scale == 1) lom[k] += sgn * zrow_[j];
      else him[k] += -sgn * zrow_[j];
    }
    out.dual = {std::move(rowm), std::move(lom), std::move(him)};
    return out;
  }
};

}  // namespace

LPOutcome solve(const LPProblem& lp) {
  Simplex s(lp);
  return s.run();
}

namespace {

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

bool feasible_point(const LPProblem& lp, const RatVec& x) {
  if (x.size() != lp.num_vars) throw std::invalid_argument("point dimension mismatch");
  for (size_t k = 0; k < lp.num_vars; ++k) {
    if (lp.bounds[k].lo && x[k] < *lp.bounds[k].lo) return false;
    if (lp.bounds[k].hi && x[k] > *lp.bounds[k].hi) return false;
  }
  for (const auto& c : lp.constraints) {
    Rational lhs = dot(c.coeffs, x);
    if (c.rel == Rel::Eq && lhs != c.rhs) return false;
    if (c.rel == Rel::Le && lhs > c.rhs) return false;
    if (c.rel == Rel::Ge && lhs < c.rhs) return false;
  }
  return true;
}

}  // namespace

bool check_certificate(const LPProblem& lp, const LPOutcome& outcome) {
  const size_t nc = lp.constraints.size();
  const size_t nv = lp.num_vars;
  switch (outcome.tag) {
    case LPOutcome::Tag::Optimal: {
      if (!feasible_point(lp, outcome.point)) return false;
      RatVec obj = lp.objective;
      obj.resize(nv, Rational(0));
      if (dot(obj, outcome.point) != outcome.value) return false;
      const auto& d = outcome.dual;
      if (d.row_multipliers.size() != nc || d.lower_multipliers.size() != nv ||
          d.upper_multipliers.size() != nv) {
        throw std::invalid_argument("dual dimension mismatch");
      }
      int s = lp.direction == Direction::Max ? 1 : -1;
      for (size_t i = 0; i < nc; ++i) {
        const Rational& y = d.row_multipliers[i];
        if (lp.constraints[i].rel == Rel::Le && s * y < 0) return false;
        if (lp.constraints[i].rel == Rel::Ge && s * y > 0) return false;
        // complementary slackness
        if (y != 0 && dot(lp.constraints[i].coeffs, outcome.point) != lp.constraints[i].rhs) {
          return false;
        }
      }
      for (size_t k = 0; k < nv; ++k) {
        const Rational& ul = d.lower_multipliers[k];
        const Rational& uh = d.upper_multipliers[k];
        if (s * ul > 0 || s * uh < 0) return false;
        if (ul != 0 && (!lp.bounds[k].lo || outcome.point[k] != *lp.bounds[k].lo)) return false;
        if (uh != 0 && (!lp.bounds[k].hi || outcome.point[k] != *lp.bounds[k].hi)) return false;
        // stationarity: c_k = sum_i y_i A[i][k] + u_lo + u_hi
        Rational lhs = ul + uh;
        for (size_t i = 0; i < nc; ++i) {
          if (d.row_multipliers[i] != 0 && lp.constraints[i].coeffs[k] != 0) {
            lhs += d.row_multipliers[i] * lp.constraints[i].coeffs[k];
          }
        }
        if (lhs != obj[k]) return false;
      }
      return true;
    }
    case LPOutcome::Tag::Infeasible: {
      const auto& c = outcome.certificate;
      if (c.row_multipliers.size() != nc || c.lower_multipliers.size() != nv ||
          c.upper_multipliers.size() != nv) {
        throw std::invalid_argument("certificate dimension mismatch");
      }
      Rational total = 0;
      for (size_t i = 0; i < nc; ++i) {
        const Rational& y = c.row_multipliers[i];
        if (lp.constraints[i].rel == Rel::Ge && y < 0) return false;
        if (lp.constraints[i].rel == Rel::Le && y > 0) return false;
        total += y * lp.constraints[i].rhs;
      }
      for (size_t k = 0; k < nv; ++k) {
        const Rational& ul = c.lower_multipliers[k];
        const Rational& uh = c.upper_multipliers[k];
        if (ul < 0 || uh > 0) return false;
        if (ul != 0 && !lp.bounds[k].lo) return false;
        if (uh != 0 && !lp.bounds[k].hi) return false;
        if (ul != 0) total += ul * *lp.bounds[k].lo;
        if (uh != 0) total += uh * *lp.bounds[k].hi;
        Rational column = ul + uh;
        for (size_t i = 0; i < nc; ++i) {
          if (c.row_multipliers[i] != 0 && lp.constraints[i].coeffs[k] != 0) {
            column += c.row_multipliers[i] * lp.constraints[i].coeffs[k];
          }
        }
        if (column != 0) return false;
      }
      return total > 0;
    }
    case LPOutcome::Tag::Unbounded: {
      if (!feasible_point(lp, outcome.point)) return false;
      if (outcome.ray.size() != nv) throw std::invalid_argument("ray dimension mismatch");
      for (size_t k = 0; k < nv; ++k) {
        if (lp.bounds[k].lo && outcome.ray[k] < 0) return false;
        if (lp.bounds[k].hi && outcome.ray[k] > 0) return false;
      }
      for (const auto& cst : lp.constraints) {
        Rational v = dot(cst.coeffs, outcome.ray);
        if (cst.rel == Rel::Eq && v != 0) return false;
        if (cst.rel == Rel::Le && v > 0) return false;
        if (cst.rel == Rel::Ge && v < 0) return false;
      }
      RatVec obj = lp.objective;
      obj.resize(nv, Rational(0));
      Rational drv = dot(obj, outcome.ray);
      return lp.direction == Direction::Max ? drv > 0 : drv < 0;
    }
  }
  return false;
}

}  // namespace conepave
