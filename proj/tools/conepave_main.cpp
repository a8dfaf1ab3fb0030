#include "conepave/geometry.hpp"
#include "conepave/oracle.hpp"
#include "conepave/paving.hpp"
#include "conepave/polar.hpp"
#include "conepave/serialize.hpp"
#include "conepave/transport.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace conepave;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Output {
  std::string path;  // empty = stdout
  std::string format = "json";

  void emit(const std::string& payload) const {
    if (path.empty()) {
      std::cout << payload << "\n";
      return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << payload << "\n";
  }
};

int cmd_check_order(const std::string& instance_path, const Output& out) {
  Instance inst = load_instance_file(instance_path);
  OrderResult result = check_order(inst);
  if (result.ordered()) {
    out.emit(out.format == "text" ? plan_to_text(inst, *result.plan)
                                  : serialize_plan(inst, *result.plan));
    return kOk;
  }
  out.emit(out.format == "text" ? witness_to_text(inst, *result.witness)
                                : serialize_witness(inst, *result.witness));
  return kNegative;
}

int cmd_transport(const std::string& instance_path,
                  const std::string& plan_path, const Output& out) {
  Instance inst = load_instance_file(instance_path);
  TransportPlan plan = parse_plan(inst, slurp(plan_path));
  bool ok = verify_plan(inst, plan);
  out.emit(ok ? "plan admissible" : "plan rejected");
  return ok ? kOk : kNegative;
}

int cmd_maximal(const std::string& instance_path, const Output& out) {
  Instance inst = load_instance_file(instance_path);
  OrderResult result = check_order(inst);
  if (!result.ordered()) {
    out.emit(out.format == "text" ? witness_to_text(inst, *result.witness)
                                  : serialize_witness(inst, *result.witness));
    return kNegative;
  }
  auto [plan, kernel] = maximal_kernel(inst);
  out.emit(out.format == "text" ? plan_to_text(inst, plan)
                                : serialize_kernel(inst, plan, kernel));
  return kOk;
}

int cmd_paving(const std::string& instance_path, bool emit_plot,
               const Output& out) {
  Instance inst = load_instance_file(instance_path);
  OrderResult result = check_order(inst);
  if (!result.ordered()) {
    out.emit(out.format == "text" ? witness_to_text(inst, *result.witness)
                                  : serialize_witness(inst, *result.witness));
    return kNegative;
  }
  if (emit_plot && inst.dim() != 2)
    std::cerr << "warning: --emit-plot needs 2-D coordinates (got "
              << inst.dim() << "-D); plot data omitted\n";
  Paving paving = compute_paving(inst);
  out.emit(out.format == "text" ? paving_to_text(inst, paving)
                                : serialize_paving(inst, paving, emit_plot));
  return kOk;
}

int cmd_polar(const std::string& instance_path, const std::string& pairs_path,
              bool unconstrained, const Output& out) {
  Instance inst = load_instance_file(instance_path);
  PairSet U = parse_pairs(inst, slurp(pairs_path));
  PolarVerdict verdict = is_polar(inst, U, !unconstrained);
  out.emit(out.format == "text"
               ? verdict_to_text(inst, verdict)
               : serialize_verdict(inst, U, verdict, !unconstrained));
  return verdict.polar ? kOk : kNegative;
}

int cmd_gleason(const std::string& instance_path, const Output& out) {
  Instance inst = load_instance_file(instance_path);
  auto phi = gelfand_embed(inst);
  // Gleason classes of the embedded points inside conv Phi(Omega)
  std::vector<long> class_of(inst.n, -1);
  long next = 0;
  for (size_t j = 0; j < inst.n; ++j) {
    if (class_of[j] >= 0) continue;
    class_of[j] = next;
    for (size_t k = j + 1; k < inst.n; ++k) {
      if (class_of[k] < 0 && gleason_equiv(phi[j], phi[k], phi))
        class_of[k] = next;
    }
    ++next;
  }
  if (out.format == "text") {
    std::ostringstream text;
    for (long c = 0; c < next; ++c) {
      text << "class " << c << ": {";
      bool sep = false;
      for (size_t j = 0; j < inst.n; ++j) {
        if (class_of[j] != c) continue;
        text << (sep ? ", " : "") << inst.labels[j];
        sep = true;
      }
      text << "}\n";
    }
    out.emit(text.str());
  } else {
    json doc;
    doc["instance"] = instance_digest(inst);
    json classes = json::array();
    for (long c = 0; c < next; ++c) {
      json members = json::array();
      for (size_t j = 0; j < inst.n; ++j)
        if (class_of[j] == c) members.push_back(inst.labels[j]);
      classes.push_back(members);
    }
    doc["classes"] = classes;
    out.emit(doc.dump());
  }
  return kOk;
}

int cmd_gen(const GenSpec& spec, bool unordered, const Output& out) {
  Instance inst =
      unordered ? gen_unordered(spec) : gen_ordered(spec).instance;
  out.emit(serialize_instance(inst));
  return kOk;
}

int cmd_verify(uint64_t seed, size_t count, const Output& out) {
  PropertyReport report = property_suite(seed, count);
  out.emit(report.to_text());
  return report.all_passed() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cone-constrained transport toolkit"};
  app.require_subcommand(1);

  Output out;
  app.add_option("--out", out.path, "write the payload to a file")
      ->capture_default_str();
  app.add_option("--format", out.format, "payload format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string instance_path, plan_path, pairs_path;
  bool emit_plot = false, unconstrained = false, unordered = false;
  GenSpec spec;
  uint64_t seed = 0;
  size_t count = 50;
  std::string cone_name = "martingale";

  auto* check = app.add_subcommand(
      "check-order", "decide the order and emit a plan or witness");
  check->add_option("instance", instance_path)->required();

  auto* transport = app.add_subcommand(
      "transport", "verify an externally supplied plan against an instance");
  transport->add_option("instance", instance_path)->required();
  transport->add_option("plan", plan_path)->required();

  auto* maximal =
      app.add_subcommand("maximal", "compute the maximal disintegration");
  maximal->add_option("instance", instance_path)->required();

  auto* paving =
      app.add_subcommand("paving", "compute the irreducible paving");
  paving->add_option("instance", instance_path)->required();
  paving->add_flag("--emit-plot", emit_plot,
                   "include 2-D plot data per component");

  auto* polar =
      app.add_subcommand("polar", "decide whether a pair set is polar");
  polar->add_option("instance", instance_path)->required();
  polar->add_option("pairs", pairs_path)->required();
  polar->add_flag("--unconstrained", unconstrained,
                  "drop the generator constraints");

  auto* gleason = app.add_subcommand(
      "gleason", "group the embedded points into Gleason classes");
  gleason->add_option("instance", instance_path)->required();

  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  gen->add_option("--seed", spec.seed)->capture_default_str();
  gen->add_option("--n", spec.n, "initial source atoms")
      ->capture_default_str();
  gen->add_option("--d", spec.d, "coordinate dimension")
      ->capture_default_str();
  gen->add_option("--splits", spec.splits, "spread depth")
      ->capture_default_str();
  gen->add_option("--cone", cone_name)
      ->check(CLI::IsMember({"martingale", "submartingale", "supermartingale"}))
      ->capture_default_str();
  gen->add_flag("--unordered", unordered, "perturb past the order");

  auto* verify =
      app.add_subcommand("verify", "run the cross-module property suite");
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--count", count)->capture_default_str();

  // let --out / --format appear after the subcommand name too
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check_order(instance_path, out);
    if (transport->parsed())
      return cmd_transport(instance_path, plan_path, out);
    if (maximal->parsed()) return cmd_maximal(instance_path, out);
    if (paving->parsed()) return cmd_paving(instance_path, emit_plot, out);
    if (polar->parsed())
      return cmd_polar(instance_path, pairs_path, unconstrained, out);
    if (gleason->parsed()) return cmd_gleason(instance_path, out);
    if (gen->parsed()) {
      if (cone_name == "submartingale") spec.cone = ConeKind::Submartingale;
      else if (cone_name == "supermartingale")
        spec.cone = ConeKind::Supermartingale;
      else spec.cone = ConeKind::Martingale;
      return cmd_gen(spec, unordered, out);
    }
    if (verify->parsed()) return cmd_verify(seed, count, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}
