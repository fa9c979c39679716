// chatelet: batch front-end for conic-bundle surface analyses.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "chatelet/chatelet.hpp"

using json = nlohmann::ordered_json;
using namespace chatelet;

namespace {

enum Exit { Ok = 0, ValidationFailed = 1, InvariantFalsified = 2, ResourceLimit = 3 };

struct SpecFile {
  SurfaceSpec spec;
  std::optional<Int> height_bound;
  std::vector<std::uint64_t> density_primes;
  std::optional<int> levels;
};

json int_json(const Int& x) {
  if (fits_i64(x)) return json(x.get_si());
  return json(x.get_str());
}

json rat_json(const Rat& q) { return json(to_string(q)); }

template <class T>
json int_list(const std::vector<T>& v) {
  json a = json::array();
  for (const auto& x : v) {
    if constexpr (std::is_same_v<T, Int>) a.push_back(int_json(x));
    else a.push_back(x);
  }
  return a;
}

Int parse_int(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) == 0) return x;
  }
  throw DomainError("spec file: " + what + " must be an integer or a decimal string");
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open spec file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("spec file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("a") || !j.contains("factors")) throw DomainError("spec file needs fields \"a\" and \"factors\"");
  SpecFile sf;
  sf.spec.a = parse_int(j["a"], "a");
  if (!j["factors"].is_array() || j["factors"].empty()) throw DomainError("spec file: factors must be a non-empty list");
  for (const auto& f : j["factors"]) {
    if (!f.is_array() || f.empty()) throw DomainError("spec file: each factor is a non-empty coefficient list");
    std::vector<Int> c;
    for (const auto& x : f) c.push_back(parse_int(x, "factor coefficient"));
    sf.spec.factors.emplace_back(c);
  }
  if (j.contains("height_bound")) sf.height_bound = parse_int(j["height_bound"], "height_bound");
  if (j.contains("density_primes"))
    for (const auto& p : j["density_primes"]) sf.density_primes.push_back(p.get<std::uint64_t>());
  if (j.contains("levels")) sf.levels = j["levels"].get<int>();
  return sf;
}

json spec_json(const SurfaceSpec& s) {
  json f = json::array();
  for (const auto& b : s.factors) f.push_back(int_list(b.coeffs()));
  return {{"a", int_json(s.a)}, {"factors", f}, {"F", s.product().str()}};
}

json validation_json(const ValidationReport& v) {
  json checks = json::array();
  for (const auto& c : v.checks) checks.push_back({{"check", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  return {{"ok", v.ok()}, {"has_unknown", v.has_unknown()}, {"checks", checks}};
}

json label_json(const TorsorLabel& l) { return {{"epsilon", int_list(l.epsilon)}, {"m", int_list(l.m)}}; }

json point_json(const PointRecord& p) {
  return {{"y", int_json(p.y)}, {"z", int_json(p.z)}, {"t", int_json(p.t)}, {"u", int_json(p.u)}, {"v", int_json(p.v)}};
}

json unit_json(const QuadUnit& e) { return {{"x", int_json(e.x)}, {"y", int_json(e.y)}, {"half", e.half}}; }

json field_json(const Int& a) {
  const QuadFieldInfo info = field_info(a);
  json j{{"a", int_json(a)}, {"discriminant", int_json(info.discriminant)}};
  j["h"] = info.h ? json(*info.h) : json(nullptr);
  j["h_plus"] = info.h_plus ? json(*info.h_plus) : json(nullptr);
  j["omega_a"] = info.omega_a;
  if (info.real()) {
    j["fundamental_unit"] = unit_json(info.unit);
    j["order_unit"] = unit_json(info.order_unit);
    j["unit_norm"] = info.unit_norm;
    const NegativePell np = negative_pell_solvable(a);
    j["negative_pell"] = np.solvable ? json{{"solvable", true}, {"x", int_json(np.x)}, {"y", int_json(np.y)}}
                                     : json{{"solvable", false}};
  }
  return j;
}

json invariants_json(const SurfaceSpec& s) {
  const PicLattice lat = build_lattice(s);
  const ConeData cone = effective_cone(s);
  const BetaReport b = beta(s);
  const PicardRanks r = picard_ranks(lat);
  json gens = json::array();
  for (const auto& [p, q] : cone.effective_generators) gens.push_back({{"anticanonical", rat_json(p)}, {"fibre", rat_json(q)}});
  return {{"alpha", rat_json(cone.alpha())},
          {"beta", int_json(b.value())},
          {"beta_methods", {{"closed_form", int_json(b.closed_form)}, {"mod2", int_json(b.mod2)}, {"tate", int_json(b.tate)}}},
          {"picard_ranks", {{"geometric", r.geometric}, {"over_quadratic", r.over_quadratic}, {"over_q", r.over_q}}},
          {"tate_h1", int_list(tate_h1(lat).divisors)},
          {"basis", lat.basis_labels()},
          {"anticanonical", int_list(lat.anticanonical)},
          {"fibre", int_list(lat.fibre())},
          {"cone_generators", gens},
          {"dual_slice", {rat_json(cone.slice_lower), rat_json(cone.slice_upper)}}};
}

json torsor_json(const SurfaceSpec& s) {
  json res = json::array();
  for (std::size_t i = 0; i < s.factors.size(); ++i)
    for (std::size_t j = i + 1; j < s.factors.size(); ++j) {
      const ResultantSplitting rs = resultant_splitting(s, i, j);
      res.push_back({{"i", i + 1}, {"j", j + 1}, {"r", int_json(rs.r)}, {"r_plus", int_json(rs.r_plus)}, {"r_minus", int_json(rs.r_minus)}});
    }
  json sig = json::array(), ms = json::array(), labels = json::array();
  for (const auto& e : sigma_set(s)) sig.push_back(int_list(e));
  for (const auto& m : m_set(s)) ms.push_back(int_list(m));
  for (const auto& l : label_set(s)) labels.push_back(label_json(l));
  return {{"resultants", res}, {"sigma", sig}, {"m", ms}, {"labels", labels}, {"count", labels.size()}};
}

json partition_json(const PartitionReport& p) {
  json per = json::array();
  for (const auto& [l, c] : p.per_label) per.push_back({{"label", label_json(l)}, {"points", c}});
  json zl = json::array(), unk = json::array();
  for (const auto& [pt, l] : p.zero_locus) zl.push_back({{"point", point_json(pt)}, {"label", label_json(l)}});
  for (const auto& [pt, why] : p.unknown) unk.push_back({{"point", point_json(pt)}, {"reason", why}});
  return {{"bound", int_json(p.bound)}, {"points", p.points},     {"labeled", p.labeled},     {"labels_total", p.labels_total},
          {"per_label", per},           {"zero_locus", zl},       {"unknown", unk},           {"violations", p.violations},
          {"ok", p.ok()}};
}

json count_json(const CountReport& c) {
  json per = json::array();
  for (const auto& [l, n] : c.per_label) per.push_back({{"label", label_json(l)}, {"count", int_json(n)}});
  return {{"bound", int_json(c.bound)},  {"raw_quintuples", int_json(c.raw)}, {"total", int_json(c.total)},
          {"labeled", int_json(c.labeled())}, {"zero_locus", int_json(c.zero_locus)}, {"unknown", int_json(c.unknown)},
          {"screened", int_json(c.screened())}, {"per_label", per}, {"consistent", c.consistent()}};
}

unsigned default_jobs() {
  if (const char* env = std::getenv("TORSOR_JOBS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Descent data and point counts for surfaces y^2 - a z^2 = F(u, v)"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  unsigned jobs = default_jobs();
  std::uint64_t seed = 1;
  app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
  app.add_option("--jobs", jobs, "Worker threads (default: $TORSOR_JOBS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for sampling-mode densities");

  std::string spec_path;
  auto add_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("spec", spec_path, "Surface specification (JSON)")->required();
    return c;
  };
  CLI::App* c_validate = add_cmd("validate", "Check the surface hypotheses");
  CLI::App* c_invariants = add_cmd("invariants", "alpha, beta, Picard ranks, Tate H^1, effective cone");
  CLI::App* c_field = add_cmd("field-info", "Class numbers and units of Q(sqrt a)");
  CLI::App* c_torsor = add_cmd("torsor-classes", "Sigma, M and the torsor labels");
  std::string bound_str, x_str, box_str, order_str = "equation";
  std::uint64_t prime = 0;
  int levels = 0;
  std::uint64_t samples = 200000;
  double budget = 5e8;
  CLI::App* c_partition = add_cmd("partition-check", "Label every point up to a height bound");
  c_partition->add_option("--bound", bound_str, "Height bound B");
  CLI::App* c_count = add_cmd("count", "Count points of height <= B by torsor label");
  c_count->add_option("--bound", bound_str, "Height bound B");
  CLI::App* c_sum = add_cmd("sum-ra", "Sum of r_a(F(u, v)) over |u|, |v| <= X with F > 0");
  c_sum->add_option("--x", x_str, "Box size X")->required();
  c_sum->add_option("--box", box_str, "Bound on |y|, |z| (required when a > 0)");
  c_sum->add_option("--order", order_str, "equation (y^2 - a z^2 = n) or maximal (norms from the ring of integers)")
      ->check(CLI::IsMember({"equation", "maximal"}));
  CLI::App* c_density = add_cmd("density", "Truncated local densities for every torsor label");
  c_density->add_option("--p", prime, "Prime p");
  c_density->add_option("--levels", levels, "Levels n = 1..N");
  c_density->add_option("--samples", samples, "Samples per level in sampling mode");
  c_density->add_option("--budget", budget, "Work limit for exhaustive mode");

  CLI11_PARSE(app, argc, argv);

  json report;
  int code = Ok;
  std::string command = app.get_subcommands().front()->get_name();
  report["command"] = command;
  try {
    const SpecFile sf = load_spec(spec_path);
    const SurfaceSpec& spec = sf.spec;
    report["spec"] = spec_json(spec);
    const ValidationReport vr = validate_surface(spec);
    report["validation"] = validation_json(vr);
    auto need_int = [](const std::string& s, const std::optional<Int>& fallback, const char* what) {
      if (!s.empty()) {
        Int x;
        if (x.set_str(s, 10) != 0) throw DomainError(std::string(what) + " must be an integer");
        return x;
      }
      if (fallback) return *fallback;
      throw DomainError(std::string(what) + " is required");
    };

    if (!vr.ok()) {
      code = ValidationFailed;
    } else if (c_validate->parsed()) {
      // report already holds the validation result
    } else if (c_invariants->parsed()) {
      report["result"] = invariants_json(spec);
    } else if (c_field->parsed()) {
      report["result"] = field_json(spec.a);
    } else if (c_torsor->parsed()) {
      report["result"] = torsor_json(spec);
    } else if (c_partition->parsed()) {
      const PartitionReport p = partition_check(spec, need_int(bound_str, sf.height_bound, "--bound"), jobs);
      report["result"] = partition_json(p);
      if (!p.ok()) code = InvariantFalsified;
    } else if (c_count->parsed()) {
      const CountReport c = count_nb(spec, need_int(bound_str, sf.height_bound, "--bound"), jobs);
      report["result"] = count_json(c);
      if (!c.consistent()) code = InvariantFalsified;
    } else if (c_sum->parsed()) {
      const Int X = need_int(x_str, std::nullopt, "--x");
      std::optional<Int> box;
      if (!box_str.empty()) box = need_int(box_str, std::nullopt, "--box");
      const NormOrder order = order_str == "maximal" ? NormOrder::Maximal : NormOrder::Equation;
      json r{{"x", int_json(X)}, {"order", order_str}, {"sum", int_json(sum_r_a(spec, X, box, order))}};
      r["box"] = box ? int_json(*box) : json(nullptr);
      report["result"] = r;
    } else if (c_density->parsed()) {
      if (prime == 0) {
        if (sf.density_primes.empty()) throw DomainError("--p is required");
        prime = sf.density_primes.front();
      }
      if (levels == 0) levels = sf.levels.value_or(2);
      if (levels < 1) throw DomainError("--levels must be positive");
      DensityOptions opt;
      opt.seed = seed;
      opt.samples = samples;
      opt.work_budget = budget;
      json per = json::array();
      for (const auto& l : label_set(spec)) {
        json lv = json::array();
        for (const auto& d : local_density(spec, l, prime, levels, opt)) {
          json e{{"level", d.level}, {"exact", d.exact}};
          if (d.exact) {
            e["value"] = rat_json(d.value);
            e["ambiguous"] = rat_json(d.ambiguous);
          } else {
            e["estimate"] = d.estimate;
            e["standard_error"] = d.standard_error;
            e["samples"] = d.samples;
          }
          lv.push_back(e);
        }
        per.push_back({{"label", label_json(l)}, {"levels", lv}});
      }
      report["result"] = {{"p", prime}, {"inert", is_inert(spec.a, Int(static_cast<unsigned long>(prime)))}, {"densities", per}};
    }
  } catch (const InvariantViolation& e) {
    report["error"] = {{"kind", "invariant_violation"}, {"message", e.what()}};
    code = InvariantFalsified;
  } catch (const FactorLimitError& e) {
    report["error"] = {{"kind", "resource_limit"}, {"message", e.what()}};
    code = ResourceLimit;
  } catch (const ResourceLimitError& e) {
    report["error"] = {{"kind", "resource_limit"}, {"message", e.what()}};
    code = ResourceLimit;
  } catch (const std::bad_alloc&) {
    report["error"] = {{"kind", "resource_limit"}, {"message", "out of memory"}};
    code = ResourceLimit;
  } catch (const std::exception& e) {
    report["error"] = {{"kind", "invalid_input"}, {"message", e.what()}};
    code = ValidationFailed;
  }
  report["exit_code"] = code;

  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return ResourceLimit;
    }
    out << text;
  }
  return code;
}
