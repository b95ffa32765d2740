// modlie: run JSON scenarios and compare them against golden reports.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modlie/scenario.hpp"

namespace fs = std::filesystem;
using modlie::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kSchema = 2, kGuard = 3, kInvariant = 4 };

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw modlie::SchemaError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Attempt {
  int code = kOk;
  std::string error;
  modlie::ScenarioOutcome outcome;
  double millis = 0;
};

Attempt attempt(const fs::path& file, const modlie::RunOverrides& ov) {
  Attempt a;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const json doc = json::parse(read_file(file));
    a.outcome = modlie::run_scenario(doc, ov);
    a.code = a.outcome.passed ? kOk : kCheckFailed;
  } catch (const json::parse_error& e) {
    a.code = kSchema;
    a.error = std::string("malformed JSON: ") + e.what();
  } catch (const json::exception& e) {
    a.code = kSchema;
    a.error = std::string("schema: ") + e.what();
  } catch (const modlie::GuardError& e) {
    a.code = kGuard;
    a.error = std::string("guard: ") + e.what();
  } catch (const modlie::InvariantError& e) {
    a.code = kInvariant;
    a.error = std::string("invariant: ") + e.what();
  } catch (const modlie::Error& e) {
    a.code = kSchema;
    a.error = std::string("invalid scenario: ") + e.what();
  }
  a.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return a;
}

void print_human(const Attempt& a) {
  const json& r = a.outcome.report;
  const json& sc = r["scenario"];
  std::cout << "task: " << sc["task"].get<std::string>() << "  algebra: " << sc["algebra"]["family"].get<std::string>()
            << "_" << sc["algebra"]["n"] << "  p = " << sc["algebra"]["p"] << "  k = " << sc["k"] << "\n";
  std::cout << "options: " << sc["options"].dump() << "\n";
  json res = r["results"];
  res.erase("sample");
  std::cout << "results: " << res.dump(2) << "\n";
  for (const auto& c : r["checks"]) {
    std::cout << (c["passed"].get<bool>() ? "  PASS " : "  FAIL ") << c["name"].get<std::string>();
    if (!c["witness"].get<std::string>().empty()) std::cout << "  (" << c["witness"].get<std::string>() << ")";
    std::cout << "\n";
  }
  std::cout << (a.outcome.passed ? "all checks passed" : "some checks FAILED") << "  [" << static_cast<long>(a.millis)
            << " ms]\n";
}

int cmd_run(const std::string& file, const std::string& out, const modlie::RunOverrides& ov) {
  const Attempt a = attempt(file, ov);
  if (!a.error.empty()) {
    std::cerr << "modlie: " << a.error << "\n";
    return a.code;
  }
  print_human(a);
  if (!out.empty()) {
    std::ofstream o(out, std::ios::binary);
    if (!o) {
      std::cerr << "modlie: cannot write " << out << "\n";
      return kSchema;
    }
    o << modlie::canonical_dump(a.outcome.report);
  }
  return a.code;
}

int cmd_goldens(const std::string& dir, bool update) {
  if (!fs::is_directory(dir)) {
    std::cerr << "modlie: no such directory " << dir << "\n";
    return kSchema;
  }
  std::vector<fs::path> cases;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.size() > 14 && name.ends_with(".scenario.json")) cases.push_back(e.path());
  }
  std::sort(cases.begin(), cases.end());
  std::vector<std::future<Attempt>> jobs;
  for (const auto& c : cases) jobs.push_back(std::async(std::launch::async, attempt, c, modlie::RunOverrides{}));
  std::size_t failed = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Attempt a = jobs[i].get();
    std::string name = cases[i].filename().string();
    name.resize(name.size() - 14);
    const fs::path expected = cases[i].parent_path() / (name + ".expected.json");
    if (!a.error.empty()) {
      std::cout << "FAIL " << name << ": " << a.error << "\n";
      ++failed;
      continue;
    }
    const std::string got = modlie::canonical_dump(a.outcome.report);
    if (update) {
      std::ofstream(expected, std::ios::binary) << got;
      std::cout << "WROTE " << name << "\n";
      continue;
    }
    if (!fs::exists(expected)) {
      std::cout << "FAIL " << name << ": missing " << expected.filename().string() << "\n";
      ++failed;
      continue;
    }
    const std::string want = read_file(expected);
    if (got == want) {
      std::cout << "ok   " << name << "  [" << static_cast<long>(a.millis) << " ms]\n";
      continue;
    }
    ++failed;
    std::cout << "FAIL " << name << ": report differs from golden\n";
    try {
      std::cout << json::diff(json::parse(want), a.outcome.report).dump(2) << "\n";
    } catch (const json::exception&) {
      std::cout << "  golden is not valid JSON\n";
    }
  }
  std::cout << cases.size() - failed << "/" << cases.size() << " cases passed\n";
  return failed ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modlie: restricted Lie algebras, reduced enveloping algebras and baby Verma modules"};
  app.require_subcommand(1);
  std::size_t guard_dim = 0;
  app.add_option("--guard-dim", guard_dim, "largest module dimension a scenario may build");

  std::string file, out;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "run one scenario file");
  run->add_option("file", file, "scenario JSON")->required();
  run->add_option("--out", out, "write the canonical JSON report here");
  auto* seed_opt = run->add_option("--seed", seed, "override options.seed");

  std::string dir;
  bool update = false;
  auto* gold = app.add_subcommand("goldens", "run every NAME.scenario.json in a directory against NAME.expected.json");
  gold->add_option("dir", dir, "directory of scenario/golden pairs")->required();
  gold->add_flag("--update", update, "rewrite the goldens from the current results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kSchema;
  }
  modlie::RunOverrides ov;
  if (*seed_opt) ov.seed = seed;
  if (guard_dim) ov.guard_dim = guard_dim;
  if (*run) return cmd_run(file, out, ov);
  return cmd_goldens(dir, update);
}
