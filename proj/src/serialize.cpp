#include "conepave/serialize.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace conepave {

namespace {

using json = nlohmann::ordered_json;

json rat_array(const RatVec& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(format_rational(x));
  return arr;
}

json rat_matrix(const RatMat& m) {
  json arr = json::array();
  for (const auto& row : m) arr.push_back(rat_array(row));
  return arr;
}

json parse_or_throw(const std::string& document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed document: ") + e.what());
  }
}

void check_digest(const Instance& inst, const json& doc) {
  if (!doc.contains("instance") || !doc["instance"].is_string())
    throw std::invalid_argument("missing instance digest");
  if (doc["instance"].get<std::string>() != instance_digest(inst))
    throw std::invalid_argument("document belongs to a different instance");
}

}  // namespace

std::string serialize_plan(const Instance& inst, const TransportPlan& plan) {
  json doc;
  doc["instance"] = instance_digest(inst);
  doc["pi"] = rat_matrix(plan.pi);
  return doc.dump();
}

TransportPlan parse_plan(const Instance& inst, const std::string& document) {
  json doc = parse_or_throw(document);
  check_digest(inst, doc);
  if (!doc.contains("pi") || !doc["pi"].is_array() ||
      doc["pi"].size() != inst.n)
    throw std::invalid_argument("field pi: expected an n x n matrix");
  TransportPlan plan;
  for (const auto& row : doc["pi"]) {
    if (!row.is_array() || row.size() != inst.n)
      throw std::invalid_argument("field pi: expected an n x n matrix");
    RatVec out;
    for (const auto& cell : row)
      out.push_back(parse_rational(cell.get<std::string>()));
    plan.pi.push_back(std::move(out));
  }
  return plan;
}

std::string serialize_witness(const Instance& inst, const Witness& witness) {
  json doc;
  doc["instance"] = instance_digest(inst);
  json branches = json::array();
  for (const auto& b : witness.branches) {
    json entry;
    entry["constant"] = format_rational(b.constant);
    entry["theta"] = rat_array(b.theta);
    branches.push_back(std::move(entry));
  }
  doc["branches"] = branches;
  doc["values"] = rat_array(witness.values);
  doc["gap"] = format_rational(witness.gap);
  return doc.dump();
}

std::string serialize_kernel(const Instance& inst, const TransportPlan& plan,
                             const Kernel& kernel) {
  json doc;
  doc["instance"] = instance_digest(inst);
  doc["pi"] = rat_matrix(plan.pi);
  json rows = json::array();
  for (size_t i = 0; i < inst.n; ++i) {
    if (inst.mu[i] == 0) continue;
    json entry;
    entry["source"] = inst.labels[i];
    entry["lambda"] = rat_array(kernel.rows[i]);
    json sup = json::array();
    for (size_t j : kernel.supports[i]) sup.push_back(inst.labels[j]);
    entry["support"] = sup;
    rows.push_back(std::move(entry));
  }
  doc["kernel"] = rows;
  return doc.dump();
}

std::string serialize_paving(const Instance& inst, const Paving& paving,
                             bool plot) {
  json doc;
  doc["instance"] = instance_digest(inst);
  json classes = json::array();
  for (const auto& comp : paving.components) {
    json entry;
    entry["class_id"] = comp.class_id;
    json members = json::array(), support = json::array();
    for (size_t i : comp.members) members.push_back(inst.labels[i]);
    for (size_t j : comp.support) support.push_back(inst.labels[j]);
    entry["members"] = members;
    entry["support"] = support;
    entry["dim"] = comp.dim;
    entry["mu_class"] = rat_array(comp.mu_cond);
    entry["nu_class"] = rat_array(comp.nu_cond);
    if (plot && inst.dim() == 2) {
      // support points ordered counterclockwise around their centroid
      std::vector<size_t> order = comp.support;
      RatVec center(2, Rational(0));
      for (size_t j : order) {
        center[0] += inst.coords[j][0];
        center[1] += inst.coords[j][1];
      }
      Rational count(static_cast<long>(order.size()));
      center[0] /= count;
      center[1] /= count;
      auto half = [&](size_t j) {
        Rational dx = inst.coords[j][0] - center[0];
        Rational dy = inst.coords[j][1] - center[1];
        return dy > 0 || (dy == 0 && dx > 0) ? 0 : 1;
      };
      std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (half(a) != half(b)) return half(a) < half(b);
        Rational ax = inst.coords[a][0] - center[0];
        Rational ay = inst.coords[a][1] - center[1];
        Rational bx = inst.coords[b][0] - center[0];
        Rational by = inst.coords[b][1] - center[1];
        return ax * by - ay * bx > 0;
      });
      json pts = json::array();
      for (size_t j : order) pts.push_back(rat_array(inst.coords[j]));
      entry["plot_points"] = pts;
    }
    classes.push_back(std::move(entry));
  }
  doc["components"] = classes;
  return doc.dump();
}

std::string serialize_verdict(const Instance& inst, const PairSet& U,
                              const PolarVerdict& verdict, bool constrained) {
  json doc;
  doc["instance"] = instance_digest(inst);
  doc["constrained"] = constrained;
  json pairs = json::array();
  for (auto [i, j] : U.pairs)
    pairs.push_back(json::array({inst.labels[i], inst.labels[j]}));
  doc["pairs"] = pairs;
  doc["max_mass"] = format_rational(verdict.max_mass);
  doc["tag"] = verdict.polar ? "Polar" : "NonPolar";
  if (verdict.plan) doc["plan"] = rat_matrix(verdict.plan->pi);
  if (verdict.decomposition) {
    json n1 = json::array(), n2 = json::array();
    for (size_t i : verdict.decomposition->first) n1.push_back(inst.labels[i]);
    for (size_t j : verdict.decomposition->second) n2.push_back(inst.labels[j]);
    doc["N1"] = n1;
    doc["N2"] = n2;
  }
  return doc.dump();
}

PairSet parse_pairs(const Instance& inst, const std::string& document) {
  json doc = parse_or_throw(document);
  if (!doc.contains("pairs") || !doc["pairs"].is_array())
    throw std::invalid_argument("field pairs: expected an array");
  PairSet U;
  for (const auto& entry : doc["pairs"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
        !entry[1].is_string())
      throw std::invalid_argument(
          "field pairs: expected [source_label, target_label] entries");
    U.pairs.emplace_back(inst.index_of(entry[0].get<std::string>()),
                         inst.index_of(entry[1].get<std::string>()));
  }
  return U;
}

std::string serialize_pairs(const Instance& inst, const PairSet& U) {
  json doc;
  json pairs = json::array();
  for (auto [i, j] : U.pairs)
    pairs.push_back(json::array({inst.labels[i], inst.labels[j]}));
  doc["pairs"] = pairs;
  return doc.dump();
}

std::string plan_to_text(const Instance& inst, const TransportPlan& plan) {
  std::ostringstream out;
  for (size_t i = 0; i < inst.n; ++i) {
    for (size_t j = 0; j < inst.n; ++j) {
      if (plan.pi[i][j] == 0) continue;
      out << inst.labels[i] << " -> " << inst.labels[j] << " : "
          << format_rational(plan.pi[i][j]) << "\n";
    }
  }
  return out.str();
}

std::string witness_to_text(const Instance& inst, const Witness& witness) {
  std::ostringstream out;
  out << "gap " << format_rational(witness.gap) << "\n";
  for (size_t j = 0; j < inst.n; ++j)
    out << "f(" << inst.labels[j]
        << ") = " << format_rational(witness.values[j]) << "\n";
  return out.str();
}

std::string paving_to_text(const Instance& inst, const Paving& paving) {
  std::ostringstream out;
  for (const auto& comp : paving.components) {
    out << "class " << comp.class_id << " (dim " << comp.dim << "): sources {";
    for (size_t k = 0; k < comp.members.size(); ++k)
      out << (k ? ", " : "") << inst.labels[comp.members[k]];
    out << "} support {";
    for (size_t k = 0; k < comp.support.size(); ++k)
      out << (k ? ", " : "") << inst.labels[comp.support[k]];
    out << "}\n";
  }
  return out.str();
}

std::string verdict_to_text(const Instance& inst, const PolarVerdict& verdict) {
  std::ostringstream out;
  out << (verdict.polar ? "Polar" : "NonPolar") << " max_mass "
      << format_rational(verdict.max_mass) << "\n";
  if (verdict.decomposition) {
    out << "N1 {";
    for (size_t k = 0; k < verdict.decomposition->first.size(); ++k)
      out << (k ? ", " : "") << inst.labels[verdict.decomposition->first[k]];
    out << "} N2 {";
    for (size_t k = 0; k < verdict.decomposition->second.size(); ++k)
      out << (k ? ", " : "") << inst.labels[verdict.decomposition->second[k]];
    out << "}\n";
  }
  return out.str();
}

}  // namespace conepave
