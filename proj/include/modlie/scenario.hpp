#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "modlie/classical.hpp"
#include "modlie/config.hpp"
#include "modlie/enveloping.hpp"
#include "modlie/extension.hpp"
#include "modlie/geom.hpp"
#include "modlie/repn.hpp"
#include "modlie/serialize.hpp"

namespace modlie {

/// A scenario document does not match the schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

inline const std::vector<std::string>& scenario_tasks() {
  static const std::vector<std::string> t{"verify-algebra", "extension", "splittings",  "blocks",     "verma",
                                          "induce",         "nice-check", "kw-audit",   "deformation"};
  return t;
}

/// Overrides from the command line; unset fields keep the scenario's values.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> guard_dim;
};

struct ScenarioOutcome {
  json report;  // canonical: scenario echo, results, checks, passed
  bool passed = false;
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw SchemaError(msg);
}

inline long long get_int(const json& j, const std::string& where) {
  require(j.is_number_integer(), where + ": expected an integer");
  return j.get<long long>();
}

inline std::vector<long long> get_int_list(const json& j, const std::string& where) {
  require(j.is_array(), where + ": expected an array of integers");
  std::vector<long long> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  require(j.is_object(), where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    require(allowed.count(it.key()) > 0, where + ": unknown key \"" + it.key() + "\"");
}

struct TaskDefaults {
  json options;
  bool needs_lambda;
};

inline TaskDefaults task_defaults(const std::string& task, unsigned rank) {
  json o = {{"seed", 1}, {"guard_dim", config::kModuleGuard}};
  bool lam = false;
  if (task == "verify-algebra") o["samples"] = 200;
  if (task == "splittings") o["k_max"] = 3;
  if (task == "verma") {
    o["radical_method"] = "auto";
    o["quotients"] = true;
    lam = true;
  }
  if (task == "induce") {
    o["parabolic"] = json::array({1});
    o["module"] = "levi-dual-weyl";
    lam = true;
  }
  if (task == "nice-check") {
    json pars = json::array();
    for (unsigned a = 1; a <= rank; ++a) pars.push_back(json::array({a}));
    o["parabolics"] = pars;
    o["samples"] = 100;
  }
  if (task == "kw-audit" || task == "deformation") lam = true;
  return {o, lam};
}

// The scenario with every default filled in, validated.
inline json normalize(const json& s) {
  only_keys(s, {"task", "algebra", "k", "chi", "lambda", "options"}, "scenario");
  require(s.contains("task") && s["task"].is_string(), "scenario: \"task\" must be a string");
  const std::string task = s["task"];
  const auto& tasks = scenario_tasks();
  require(std::find(tasks.begin(), tasks.end(), task) != tasks.end(), "scenario: unknown task \"" + task + "\"");
  require(s.contains("algebra"), "scenario: \"algebra\" is required");
  const json& a = s["algebra"];
  only_keys(a, {"family", "n", "p"}, "algebra");
  require(a.contains("family") && a["family"].is_string() && (a["family"] == "sl" || a["family"] == "gl"),
          "algebra.family: expected \"sl\" or \"gl\"");
  require(a.contains("n") && a.contains("p"), "algebra: \"n\" and \"p\" are required");
  const long long n = get_int(a["n"], "algebra.n"), p = get_int(a["p"], "algebra.p");
  require(n >= 1 && n <= 8, "algebra.n: expected 1..8");
  require(p >= 3 && p < 256, "algebra.p: expected an odd prime below 256");
  const unsigned rank = a["family"] == "sl" ? static_cast<unsigned>(n - 1) : static_cast<unsigned>(n);

  json out;
  out["task"] = task;
  out["algebra"] = {{"family", a["family"]}, {"n", n}, {"p", p}};
  out["k"] = s.contains("k") ? get_int(s["k"], "k") : 1;
  require(out["k"].get<long long>() >= 1 && out["k"].get<long long>() <= 6, "k: expected 1..6");

  json chi = {{"kind", "zero"}};
  if (s.contains("chi")) {
    const json& c = s["chi"];
    only_keys(c, {"matrix", "covector", "partition"}, "chi");
    require(c.size() == 1, "chi: give exactly one of matrix, covector, partition");
    if (c.contains("matrix")) {
      require(c["matrix"].is_array() && c["matrix"].size() == static_cast<std::size_t>(n), "chi.matrix: expected n rows");
      json rows = json::array();
      for (std::size_t i = 0; i < c["matrix"].size(); ++i) {
        auto r = get_int_list(c["matrix"][i], "chi.matrix[" + std::to_string(i) + "]");
        require(r.size() == static_cast<std::size_t>(n), "chi.matrix: expected n columns");
        rows.push_back(r);
      }
      chi = {{"kind", "matrix"}, {"matrix", rows}};
    } else if (c.contains("covector")) {
      chi = {{"kind", "covector"}, {"covector", get_int_list(c["covector"], "chi.covector")}};
    } else {
      auto part = get_int_list(c["partition"], "chi.partition");
      long long sum = 0;
      for (auto b : part) {
        require(b >= 1, "chi.partition: parts must be positive");
        sum += b;
      }
      require(sum == n, "chi.partition: parts must sum to n");
      chi = {{"kind", "partition"}, {"partition", part}};
    }
  }
  out["chi"] = chi;

  const TaskDefaults d = task_defaults(task, rank);
  if (d.needs_lambda) {
    std::vector<long long> lam(rank, 0);
    if (s.contains("lambda")) lam = get_int_list(s["lambda"], "lambda");
    require(lam.size() == rank, "lambda: expected " + std::to_string(rank) + " entries");
    out["lambda"] = lam;
  } else {
    require(!s.contains("lambda"), "lambda: not used by task " + task);
  }
  json opts = d.options;
  if (s.contains("options")) {
    require(s["options"].is_object(), "options: expected an object");
    for (auto it = s["options"].begin(); it != s["options"].end(); ++it) {
      require(opts.contains(it.key()), "options: unknown option \"" + it.key() + "\" for task " + task);
      require(std::string(it.value().type_name()) == opts[it.key()].type_name() ||
                  (it.value().is_number_integer() && opts[it.key()].is_number_integer()),
              "options." + it.key() + ": expected " + opts[it.key()].type_name());
      opts[it.key()] = it.value();
    }
  }
  out["options"] = opts;
  return out;
}

inline Matrix chi_matrix(const json& chi, const FieldPtr& f, unsigned n) {
  if (chi["kind"] == "matrix") {
    std::vector<std::vector<long long>> rows = chi["matrix"];
    return Matrix::from_ints(f, rows);
  }
  if (chi["kind"] == "partition") {
    std::vector<unsigned> part = chi["partition"];
    return nilpotent_from_partition(f, part);
  }
  if (chi["kind"] == "zero") return Matrix(f, n, n);
  throw SchemaError("chi: this task needs chi as a matrix or partition");
}

inline Functional make_chi(const json& chi, const LiePtr& g) {
  if (chi["kind"] == "covector") {
    std::vector<long long> v = chi["covector"];
    require(v.size() == g->dim(), "chi.covector: expected " + std::to_string(g->dim()) + " entries");
    Vec c;
    for (auto x : v) c.push_back(g->base()->from_int(x));
    return {g, g->base(), c};
  }
  if (chi["kind"] == "zero") return Functional::zero(g, g->base());
  return trace_dual(g, chi_matrix(chi, g->base(), classical_data(g).n));
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline void guard_dim(std::uint64_t dim, std::size_t guard, const std::string& what) {
  if (dim > guard)
    throw GuardError(what + ": dimension " + std::to_string(dim) + " exceeds guard " + std::to_string(guard));
}

inline std::size_t positive_roots(const LiePtr& g) { return classical_data(g).indices(BasisKind::positive_root).size(); }

inline json dims_json(const std::vector<std::size_t>& d) { return json(d); }

inline json run_verma(const json& sc, const LiePtr& g, const Functional& chi, Report& rep) {
  const json& o = sc["options"];
  const std::uint64_t seed = o["seed"];
  const Weight lambda{sc["lambda"].get<std::vector<long long>>()};
  const FieldPtr F = Field::make(g->p(), sc["k"].get<unsigned>());
  guard_dim(ipow(g->p(), positive_roots(g)), o["guard_dim"], "verma");
  const FdModule m = baby_verma(g, borel_and_parabolic(g, {}), F == g->base() ? chi : chi.over(F), lambda);
  json r;
  r["dim"] = m.dim();
  rep.add("dim_formula", m.dim() == ipow(g->p(), positive_roots(g)), std::to_string(m.dim()));
  rep.merge(m.check_invariants());
  const auto cf = composition_factors(m, seed);
  r["composition_factor_dims"] = cf.dims();
  std::size_t total = 0;
  for (auto d : cf.dims()) total += d;
  rep.add("composition_total", total == m.dim(), std::to_string(total));
  const std::string method = o["radical_method"];
  RadicalMethod rm = RadicalMethod::Auto;
  if (method == "algebra") rm = RadicalMethod::Algebra;
  else if (method == "hom-kernel") rm = RadicalMethod::HomKernel;
  else if (method == "brute-force") rm = RadicalMethod::BruteForce;
  else require(method == "auto", "options.radical_method: expected auto, algebra, hom-kernel or brute-force");
  r["radical_dim"] = radical(m, rm, seed).dim();
  if (o["quotients"].get<bool>()) {
    json q = json::array();
    for (const auto& s : simple_quotients(m, rm, seed)) q.push_back({{"dim", s.module.dim()}, {"multiplicity", s.multiplicity}});
    r["simple_quotients"] = q;
    r["simple_quotient_count"] = q.size();
  }
  return r;
}

inline json run_task(const json& sc, Report& rep) {
  const std::string task = sc["task"];
  const json& a = sc["algebra"];
  const Family fam = a["family"] == "sl" ? Family::sl : Family::gl;
  const unsigned n = a["n"], p = a["p"];
  const json& o = sc["options"];
  const std::uint64_t seed = o["seed"];
  const std::size_t guard = o["guard_dim"];
  const LiePtr g = construct_classical(fam, n, p);
  const Functional chi = make_chi(sc["chi"], g);
  const unsigned k = sc["k"];
  const FieldPtr F = Field::make(p, k);
  json r;

  if (task == "verify-algebra") {
    r["dim"] = g->dim();
    r["basis"] = g->basis_names();
    rep.merge(verify_restricted(g));
    rep.merge(restricted_audit(g, F, o["samples"], seed));
  } else if (task == "extension") {
    const auto E = central_extension(g, chi);
    r["dim"] = E.carrier()->dim();
    r["basis"] = E.carrier()->basis_names();
    r["pbasis"] = E.carrier()->pbasis();
    rep.merge(verify_restricted(E.carrier()));
    const LieElement c = E.c(g->base());
    rep.add("c_p_map", p_power(c) == c, p_power(c).str());
  } else if (task == "splittings") {
    const auto E = central_extension(g, chi);
    const bool perfect = is_perfect(g);
    const auto betas = find_splittings(E, o["k_max"], seed);
    json bs = json::array();
    bool has_zero = false;
    for (const auto& b : betas) {
      bs.push_back(to_json(b));
      has_zero = has_zero || b.is_zero();
    }
    r["perfect"] = perfect;
    r["splittings"] = bs;
    r["searched_degrees"] = o["k_max"];
    if (chi.is_zero()) rep.add("zero_splits", has_zero);
    if (perfect && !chi.is_zero()) rep.add("perfect_no_splitting", betas.empty(), std::to_string(betas.size()) + " found");
    for (const auto& b : betas) rep.merge(check_splitting(E, b, 20, seed), "beta: ");
  } else if (task == "blocks") {
    const auto E = central_extension(g, chi);
    const auto bd = block_decompose(E);
    json table = json::array();
    std::string line = std::to_string(bd.total_dim) + " =";
    for (std::size_t i = 0; i < bd.blocks.size(); ++i) {
      table.push_back({{"eta", bd.blocks[i].eta}, {"dim", bd.blocks[i].dim}});
      line += (i ? " + " : " ") + std::to_string(bd.blocks[i].dim);
    }
    bool equal = !bd.blocks.empty();
    for (const auto& b : bd.blocks) equal = equal && b.dim == bd.blocks[0].dim;
    if (equal) line = std::to_string(bd.total_dim) + " = " + std::to_string(bd.blocks.size()) + " x " + std::to_string(bd.blocks[0].dim);
    r["blocks"] = table;
    r["total_dim"] = bd.total_dim;
    r["table"] = line;
    r["materialized"] = bd.materialized;
    rep.merge(bd.report);
  } else if (task == "verma") {
    r = run_verma(sc, g, chi, rep);
  } else if (task == "induce") {
    std::set<unsigned> roots;
    for (auto x : get_int_list(o["parabolic"], "options.parabolic")) {
      require(x >= 1 && x < static_cast<long long>(classical_data(g).n), "options.parabolic: invalid simple root");
      roots.insert(static_cast<unsigned>(x));
    }
    const auto P = borel_and_parabolic(g, roots);
    const Weight lambda{sc["lambda"].get<std::vector<long long>>()};
    const std::string kind = o["module"];
    const LiePtr pl = P.as_algebra("p");
    std::optional<FdModule> m;
    if (kind == "levi-dual-weyl") m = levi_dual_weyl(g, P, lambda);
    else if (kind == "one-dimensional") m = one_dimensional(g, P, lambda);
    else if (kind == "zero") m = zero_module(pl, Functional::zero(pl, g->base()));
    else throw SchemaError("options.module: expected levi-dual-weyl, one-dimensional or zero");
    const std::uint64_t expect = ipow(p, g->dim() - P.dim()) * m->dim();
    guard_dim(expect, guard, "induce");
    const FdModule ind = induce(g, P, chi, *m);
    r["inducing_dim"] = m->dim();
    r["dim"] = ind.dim();
    r["codim"] = g->dim() - P.dim();
    rep.add("dim_formula", ind.dim() == expect, std::to_string(ind.dim()) + " vs " + std::to_string(expect));
    rep.merge(ind.check_invariants());
  } else if (task == "nice-check") {
    detail::require_sl(g, "nice-check");
    const Matrix e = chi_matrix(sc["chi"], g->base(), n);
    json pars = json::array();
    for (const auto& pj : o["parabolics"]) {
      std::set<unsigned> roots;
      for (auto x : get_int_list(pj, "options.parabolics")) roots.insert(static_cast<unsigned>(x));
      const bool nice = parabolic_nice(g, borel_and_parabolic(g, roots), chi);
      pars.push_back({{"simple_roots", roots}, {"nice", nice}});
    }
    r["parabolics"] = pars;
    const FiberSample s = sample_fiber(g, e, o["samples"], k, seed);
    std::size_t in_fiber = 0, t3 = 0;
    for (const auto& pt : s.points) {
      in_fiber += in_springer_fiber(pt, s.chi);
      const auto h = test3_at(pt, s.chi);
      t3 += h.has_value() && tangency_splitting_check(pt, s.chi, fiber_tangent_bound(pt, s.chi));
    }
    r["points"] = s.points.size();
    r["weyl_seeds"] = s.weyl_seeds;
    r["test3_successes"] = t3;
    r["sample"] = to_json(s);
    r["caveat"] = "no counterexample among " + std::to_string(s.points.size()) + " sampled points over GF(" +
                  std::to_string(p) + "^" + std::to_string(k) + ")";
    rep.add("fiber_membership", in_fiber == s.points.size());
    rep.add("test3", t3 == s.points.size(), std::to_string(s.points.size() - t3) + " points without a witness");
  } else if (task == "kw-audit") {
    guard_dim(ipow(p, positive_roots(g)), guard, "kw-audit");
    const Weight lambda{sc["lambda"].get<std::vector<long long>>()};
    const FdModule m = baby_verma(g, borel_and_parabolic(g, {}), chi, lambda);
    const KwResult kw = kw_check(m, chi, g, seed);
    r["orbit_dim"] = kw.orbit_dim;
    r["divisor"] = kw.divisor;
    r["composition_factor_dims"] = kw.factor_dims;
    rep.merge(kw.report);
  } else if (task == "deformation") {
    guard_dim(ipow(p, positive_roots(g)), guard, "deformation");
    const Weight lambda{sc["lambda"].get<std::vector<long long>>()};
    const auto d = compare_deformation(g, borel_and_parabolic(g, {}), lambda, chi, seed);
    r["dim"] = d.dim;
    r["dims_chi"] = d.dims_chi;
    r["dims_zero"] = d.dims_zero;
    rep.merge(d.report);
  }
  return r;
}

}  // namespace detail

/// Validates and runs a scenario. Throws SchemaError, GuardError,
/// InvariantError or other library errors; check failures are reported,
/// not thrown.
inline ScenarioOutcome run_scenario(const json& scenario, const RunOverrides& ov = {}) {
  json sc = detail::normalize(scenario);
  if (ov.seed) sc["options"]["seed"] = *ov.seed;
  if (ov.guard_dim) sc["options"]["guard_dim"] = *ov.guard_dim;
  Report rep;
  json results = detail::run_task(sc, rep);
  ScenarioOutcome out;
  out.passed = rep.all_passed();
  out.report = {{"scenario", sc}, {"results", results}, {"checks", to_json(rep)}, {"passed", out.passed}};
  return out;
}

}  // namespace modlie
