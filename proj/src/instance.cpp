#include "conepave/instance.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace conepave {

using json = nlohmann::ordered_json;

std::string cone_kind_name(ConeKind kind) {
  switch (kind) {
    case ConeKind::Martingale: return "martingale";
    case ConeKind::Submartingale: return "submartingale";
    case ConeKind::Supermartingale: return "supermartingale";
    case ConeKind::Custom: return "custom";
  }
  return "custom";
}

size_t Instance::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw std::invalid_argument("unknown point label: '" + label + "'");
  }
  return static_cast<size_t>(it - labels.begin());
}

namespace {

Rational sum(const RatVec& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

bool has_row(const RatMat& m, const RatVec& row) {
  return std::find(m.begin(), m.end(), row) != m.end();
}

}  // namespace

void Instance::validate() const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (labels.size() != n) throw std::invalid_argument("labels size != n");
  if (mu.size() != n) throw std::invalid_argument("mu size != n");
  if (nu.size() != n) throw std::invalid_argument("nu size != n");
  if (gens.size() < 2) throw std::invalid_argument("need at least 2 generator rows");
  for (const auto& row : gens) {
    if (row.size() != n) throw std::invalid_argument("generator row length != n");
  }
  if (!coords.empty()) {
    if (coords.size() != n) throw std::invalid_argument("coords size != n");
    size_t d = coords[0].size();
    if (d == 0) throw std::invalid_argument("coords dimension must be >= 1");
    for (const auto& c : coords) {
      if (c.size() != d) throw std::invalid_argument("ragged coords");
    }
  }
  if (!p.empty()) {
    if (p.size() != n) throw std::invalid_argument("p size != n");
    for (const auto& v : p) {
      if (v < 0) throw std::invalid_argument("p has a negative entry");
    }
  }
  for (const auto& v : mu) {
    if (v < 0) throw std::invalid_argument("mu has a negative entry");
  }
  for (const auto& v : nu) {
    if (v < 0) throw std::invalid_argument("nu has a negative entry");
  }
  if (sum(mu) != 1) throw std::invalid_argument("mu does not sum to 1");
  if (sum(nu) != 1) throw std::invalid_argument("nu does not sum to 1");

  RatVec ones(n, Rational(1)), negs(n, Rational(-1));
  if (!has_row(gens, ones) || !has_row(gens, negs)) {
    throw std::invalid_argument("generators must contain the +-constants rows");
  }
  for (size_t j = 0; j < n; ++j) {
    for (size_t k = j + 1; k < n; ++k) {
      bool equal = true;
      for (const auto& row : gens) {
        if (row[j] != row[k]) { equal = false; break; }
      }
      if (equal) {
        throw std::invalid_argument(
            "generators do not separate points '" + labels[j] + "' and '" +
            labels[k] + "'");
      }
    }
  }
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate point label");
  }
}

RatMat build_cone(ConeKind kind, const RatMat& coords, const RatMat& custom) {
  size_t n = kind == ConeKind::Custom && coords.empty()
                 ? (custom.empty() ? 0 : custom[0].size())
                 : coords.size();
  if (n == 0) throw std::invalid_argument("build_cone: empty point set");

  if (!coords.empty()) {
    for (size_t j = 0; j < coords.size(); ++j) {
      for (size_t k = j + 1; k < coords.size(); ++k) {
        if (coords[j] == coords[k]) {
          throw std::invalid_argument("build_cone: duplicate coordinate columns");
        }
      }
    }
  }

  RatMat rows;
  auto coordinate_row = [&](size_t r, int sign) {
    RatVec row(n);
    for (size_t j = 0; j < n; ++j) row[j] = sign * coords[j][r];
    return row;
  };

  if (kind == ConeKind::Custom) {
    rows = custom;
    for (const auto& row : rows) {
      if (row.size() != n) throw std::invalid_argument("build_cone: ragged custom row");
    }
  } else {
    if (coords.empty()) throw std::invalid_argument("build_cone: coords required");
    size_t d = coords[0].size();
    for (size_t r = 0; r < d; ++r) {
      if (kind == ConeKind::Martingale || kind == ConeKind::Submartingale) {
        rows.push_back(coordinate_row(r, +1));
      }
      if (kind == ConeKind::Martingale || kind == ConeKind::Supermartingale) {
        rows.push_back(coordinate_row(r, -1));
      }
    }
  }

  RatVec ones(n, Rational(1)), negs(n, Rational(-1));
  if (!has_row(rows, ones)) rows.push_back(ones);
  if (!has_row(rows, negs)) rows.push_back(negs);
  return rows;
}

std::vector<DualVector> gelfand_embed(const Instance& inst) {
  std::vector<DualVector> out(inst.n, DualVector(inst.num_gens()));
  for (size_t r = 0; r < inst.num_gens(); ++r) {
    for (size_t j = 0; j < inst.n; ++j) out[j][r] = inst.gens[r][j];
  }
  return out;
}

bool dual_consistent(const Instance& inst, const DualVector& values) {
  if (values.size() != inst.num_gens()) return false;
  // values must lie in the column space of gens: solve gens * z = values
  // by Gaussian elimination on the augmented system (rows indexed by
  // generators, unknowns by points).
  size_t m = inst.num_gens(), n = inst.n;
  RatMat aug(m, RatVec(n + 1));
  for (size_t r = 0; r < m; ++r) {
    for (size_t j = 0; j < n; ++j) aug[r][j] = inst.gens[r][j];
    aug[r][n] = values[r];
  }
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t piv = row;
    while (piv < m && aug[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(aug[piv], aug[row]);
    for (size_t r = 0; r < m; ++r) {
      if (r == row || aug[r][col] == 0) continue;
      Rational f = aug[r][col] / aug[row][col];
      for (size_t c = col; c <= n; ++c) aug[r][c] -= f * aug[row][c];
    }
    ++row;
  }
  for (size_t r = row; r < m; ++r) {
    bool zero = true;
    for (size_t c = 0; c < n; ++c) {
      if (aug[r][c] != 0) { zero = false; break; }
    }
    if (zero && aug[r][n] != 0) return false;
  }
  return true;
}

Rational PoussinFunction::eval(const Rational& t) const {
  Rational v = t + 1;
  for (const auto& tm : thresholds) {
    if (t > tm) v += t - tm;
  }
  return v;
}

PoussinFunction poussin(const RatVec& p_values, const RatVec& masses_mu,
                        const RatVec& masses_nu) {
  if (masses_mu.size() != p_values.size() || masses_nu.size() != p_values.size()) {
    throw std::invalid_argument("poussin: length mismatch");
  }
  auto tail = [&](const RatVec& masses, const Rational& t) {
    Rational s = 0;
    for (size_t i = 0; i < p_values.size(); ++i) {
      if (p_values[i] >= t) s += p_values[i] * masses[i];
    }
    return s;
  };

  PoussinFunction out;
  if (p_values.empty()) return out;

  Rational pmax = p_values[0];
  for (const auto& v : p_values) pmax = std::max(pmax, v);
  RatVec candidates = p_values;
  candidates.push_back(pmax + 1);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  if (tail(masses_mu, Rational(0)) == 0 && tail(masses_nu, Rational(0)) == 0) {
    return out;  // no mass anywhere above any threshold
  }

  Rational bound(1, 2);
  while (true) {
    Rational tm;
    bool found = false;
    for (const auto& c : candidates) {
      if (tail(masses_mu, c) < bound && tail(masses_nu, c) < bound) {
        tm = c;
        found = true;
        break;
      }
    }
    // max(p)+1 always yields an empty tail, so a candidate always exists.
    if (!found) throw std::logic_error("poussin: no admissible threshold");
    out.thresholds.push_back(tm);
    if (tail(masses_mu, tm) == 0 && tail(masses_nu, tm) == 0) break;
    bound /= 2;
  }
  return out;
}

namespace {

RatVec parse_rat_array(const json& arr, const std::string& field) {
  if (!arr.is_array()) throw std::invalid_argument("field '" + field + "' must be an array");
  RatVec out;
  for (const auto& v : arr) {
    if (!v.is_string()) {
      throw std::invalid_argument("field '" + field + "' entries must be rational strings");
    }
    try {
      out.push_back(parse_rational(v.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("field '" + field + "': " + e.what());
    }
  }
  return out;
}

json rat_array(const RatVec& v) {
  json arr = json::array();
  for (const auto& q : v) arr.push_back(format_rational(q));
  return arr;
}

}  // namespace

Instance load_instance(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("instance parse error: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("instance document must be an object");

  Instance inst;
  if (!doc.contains("labels")) throw std::invalid_argument("missing field 'labels'");
  for (const auto& l : doc["labels"]) inst.labels.push_back(l.get<std::string>());
  inst.n = inst.labels.size();

  if (doc.contains("coords")) {
    for (const auto& row : doc["coords"]) {
      inst.coords.push_back(parse_rat_array(row, "coords"));
    }
  }

  std::string kind = doc.value("cone", "custom");
  RatMat custom;
  if (kind == "martingale") inst.cone = ConeKind::Martingale;
  else if (kind == "submartingale") inst.cone = ConeKind::Submartingale;
  else if (kind == "supermartingale") inst.cone = ConeKind::Supermartingale;
  else if (kind == "custom") {
    inst.cone = ConeKind::Custom;
    if (!doc.contains("generators")) {
      throw std::invalid_argument("custom cone requires field 'generators'");
    }
    for (const auto& row : doc["generators"]) {
      custom.push_back(parse_rat_array(row, "generators"));
    }
  } else {
    throw std::invalid_argument("unknown cone kind '" + kind + "'");
  }

  inst.gens = build_cone(inst.cone, inst.coords, custom);

  if (!doc.contains("mu")) throw std::invalid_argument("missing field 'mu'");
  if (!doc.contains("nu")) throw std::invalid_argument("missing field 'nu'");
  inst.mu = parse_rat_array(doc["mu"], "mu");
  inst.nu = parse_rat_array(doc["nu"], "nu");
  if (doc.contains("p")) inst.p = parse_rat_array(doc["p"], "p");

  inst.validate();
  return inst;
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_instance(ss.str());
}

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["labels"] = inst.labels;
  if (!inst.coords.empty()) {
    json coords = json::array();
    for (const auto& row : inst.coords) coords.push_back(rat_array(row));
    doc["coords"] = coords;
  }
  doc["cone"] = cone_kind_name(inst.cone);
  if (inst.cone == ConeKind::Custom) {
    json g = json::array();
    for (const auto& row : inst.gens) g.push_back(rat_array(row));
    doc["generators"] = g;
  }
  doc["mu"] = rat_array(inst.mu);
  doc["nu"] = rat_array(inst.nu);
  if (!inst.p.empty()) doc["p"] = rat_array(inst.p);
  return doc.dump();
}

std::string instance_digest(const Instance& inst) {
  std::string bytes = serialize_instance(inst);
  uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace conepave
