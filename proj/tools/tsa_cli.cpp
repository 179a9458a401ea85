// Command-line front end.  All computation goes through the shared library's
// C interface (tsa/tsa.h); this file only parses arguments, moves JSON around
// and maps results to exit codes.
//
// Exit codes: 0 success / all checks pass; 1 usage, I/O, parse or
// construction errors; 2 a verification, recovery or audit check failed;
// 3 audit passed but some independence checks were skipped for budget.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsa/tsa.h"

namespace {

using nlohmann::json;

struct CString {
  char* ptr = nullptr;
  ~CString() { tsa_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct SchemeHandle {
  tsa_scheme* ptr = nullptr;
  ~SchemeHandle() { tsa_scheme_free(ptr); }
};

int complain(tsa_status st) {
  std::cerr << "error: " << tsa_last_error() << "\n";
  return st == TSA_OK ? 1 : 1;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int load_scheme(const std::string& path, SchemeHandle& scheme) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    return 1;
  }
  if (tsa_status st = tsa_scheme_from_json(text->c_str(), &scheme.ptr)) return complain(st);
  return 0;
}

void print_summary(const tsa_scheme* scheme) {
  CString info;
  if (tsa_scheme_info(scheme, &info.ptr) != TSA_OK) return;
  json j = json::parse(info.str());
  std::ostringstream field;
  field << "F_" << j["field"]["p"].get<std::uint64_t>();
  if (j["field"]["degree"] == 2)
    field << "^2 (x^2 = " << j["field"]["delta"].get<std::uint64_t>() << ")";
  std::cerr << j["kind"].get<std::string>() << " on " << j["K"] << " users, degree "
            << j["d"] << ", field " << field.str() << ", rates (R_X, R_Z, R_Ztotal) = ("
            << j["rates"]["rx"][0] << ", " << j["rates"]["rz"][0] << ", "
            << j["rates"]["rzs"][0] << ")\n";
}

int cmd_build(const std::string& topology, int size, const std::string& out_path) {
  SchemeHandle scheme;
  if (tsa_status st = tsa_scheme_build(topology.c_str(), size, &scheme.ptr))
    return complain(st);
  CString text;
  if (tsa_status st = tsa_scheme_to_json(scheme.ptr, &text.ptr)) return complain(st);
  print_summary(scheme.ptr);
  if (out_path.empty()) {
    std::cout << text.str() << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
    out << text.str() << "\n";
    std::cerr << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& scheme_path) {
  SchemeHandle scheme;
  if (int rc = load_scheme(scheme_path, scheme)) return rc;
  CString report;
  int pass = 0;
  if (tsa_status st = tsa_scheme_verify(scheme.ptr, &report.ptr, &pass)) return complain(st);

  json j = json::parse(report.str());
  print_summary(scheme.ptr);
  std::cerr << "recovery condition: " << (j["recovery_ok"].get<bool>() ? "ok" : "VIOLATED")
            << ", kernel dimension " << j["kernel_dim"] << "\n";
  for (const auto& u : j["users"]) {
    std::cerr << "user " << u["user"] << ": rank with self " << u["rank_with_self"]["actual"]
              << "/" << u["rank_with_self"]["expected"] << ", without self "
              << u["rank_without_self"]["actual"] << "/" << u["rank_without_self"]["expected"]
              << (u["ok"].get<bool>() ? " ok" : " FAIL") << "\n";
  }
  std::cerr << (pass ? "PASS" : "FAIL") << "\n";
  std::cout << report.str() << "\n";
  return pass ? 0 : 2;
}

int cmd_run(const std::string& scheme_path, int rounds, std::uint64_t seed,
            const std::string& inputs_path, bool force) {
  SchemeHandle scheme;
  if (int rc = load_scheme(scheme_path, scheme)) return rc;

  CString report;
  int pass = 0;
  if (tsa_status st = tsa_scheme_verify(scheme.ptr, &report.ptr, &pass)) return complain(st);
  if (!pass && !force) {
    std::cerr << "error: scheme fails verification; pass --force to run it anyway\n";
    return 1;
  }

  std::optional<std::string> inputs;
  if (!inputs_path.empty()) {
    inputs = read_file(inputs_path);
    if (!inputs) {
      std::cerr << "error: cannot read " << inputs_path << "\n";
      return 1;
    }
  }

  CString lines;
  int all_ok = 0;
  if (tsa_status st = tsa_scheme_run(scheme.ptr, rounds, seed,
                                     inputs ? inputs->c_str() : nullptr, &lines.ptr, &all_ok))
    return complain(st);
  std::cout << lines.str();
  if (!all_ok) {
    std::cerr << "recovery FAILED in at least one round\n";
    return 2;
  }
  return 0;
}

int cmd_audit(const std::string& scheme_path, std::uint64_t budget, bool reduced) {
  SchemeHandle scheme;
  if (int rc = load_scheme(scheme_path, scheme)) return rc;
  CString report;
  int verdict = 0;
  if (tsa_status st = tsa_scheme_audit(scheme.ptr, budget, reduced ? 1 : 0, &report.ptr,
                                       &verdict))
    return complain(st);

  json j = json::parse(report.str());
  print_summary(scheme.ptr);
  for (const auto& m : j["mi"])
    std::cerr << "user " << m["user"] << ": independence " << m["status"].get<std::string>()
              << "\n";
  std::cerr << "entropy floors: " << (j["entropy_pass"].get<bool>() ? "ok" : "VIOLATED")
            << "; skipped " << j["skipped"] << " of " << j["mi"].size() << " users\n";
  std::cerr << (verdict == 0 ? "PASS" : verdict == 3 ? "PASS (with skips)" : "FAIL") << "\n";
  std::cout << report.str() << "\n";
  return verdict;
}

int cmd_search(const std::string& topology, int k, int m, const std::string& topology_file,
               std::uint64_t p, std::optional<std::uint64_t> delta, const std::string& strategy,
               const std::string& blocks, std::uint64_t cap) {
  std::string topo_json;
  if (!topology_file.empty()) {
    auto text = read_file(topology_file);
    if (!text) {
      std::cerr << "error: cannot read " << topology_file << "\n";
      return 1;
    }
    topo_json = *text;
  } else {
    int size = topology == "prism" ? m : k;
    if (size <= 0) {
      std::cerr << "error: missing or invalid size (--k / --m)\n";
      return 1;
    }
    CString t;
    if (tsa_status st = tsa_topology_json(topology.c_str(), size, &t.ptr)) return complain(st);
    topo_json = t.str();
  }

  json field{{"p", p}, {"degree", delta ? 2 : 1}};
  if (delta)
    field["delta"] = *delta;
  else
    field["delta"] = nullptr;

  CString result;
  if (tsa_status st = tsa_search(topo_json.c_str(), field.dump().c_str(), strategy.c_str(),
                                 blocks.empty() ? nullptr : blocks.c_str(), cap, &result.ptr))
    return complain(st);

  json j = json::parse(result.str());
  std::cerr << "searched " << j["candidates"] << " candidates, best kernel dimension "
            << j["kernel_dim"];
  if (!j["d"].is_null())
    std::cerr << " (need " << j["d"] << ": "
              << (j["feasible"].get<bool>() ? "feasible" : "infeasible") << ")";
  std::cerr << "\n";
  std::cout << result.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"builds, verifies, executes and audits one-shot secure"
               " neighborhood-sum aggregation schemes over regular graphs"};
  app.require_subcommand(1);

  std::string topology, out_path, scheme_path, inputs_path, topology_file, blocks;
  std::string strategy = "uniform";
  int k = -1, m = -1, rounds = 1;
  std::uint64_t seed = 0, budget = 100'000'000, cap = 1'000'000, p = 0;
  std::optional<std::uint64_t> delta;
  bool force = false, reduced = false;

  auto* build = app.add_subcommand("build", "construct a scheme for a named topology");
  build->add_option("--topology", topology, "ring|prism|complete")
      ->required()
      ->check(CLI::IsMember({"ring", "prism", "complete"}));
  build->add_option("--k", k, "user count (ring, complete)");
  build->add_option("--m", m, "cycle length (prism; users = 2M)");
  build->add_option("--out", out_path, "output scheme file (default: stdout)");

  auto* verify = app.add_subcommand("verify", "check recovery and rank conditions");
  verify->add_option("scheme", scheme_path, "scheme JSON file")->required();

  auto* run = app.add_subcommand("run", "execute protocol rounds");
  run->add_option("scheme", scheme_path, "scheme JSON file")->required();
  run->add_option("--rounds", rounds, "number of rounds (default 1)");
  run->add_option("--seed", seed, "RNG seed (default 0)");
  run->add_option("--inputs", inputs_path, "JSON input vector or list of vectors");
  run->add_flag("--force", force, "run even if verification fails");

  auto* audit = app.add_subcommand("audit", "exhaustive security audit");
  audit->add_option("scheme", scheme_path, "scheme JSON file")->required();
  audit->add_option("--budget", budget, "state-count ceiling (default 1e8)");
  audit->add_flag("--reduced-conditioning", reduced,
                  "drop the user's own input from the conditioning tuple");

  auto* search = app.add_subcommand("search", "maximize the modulated-adjacency kernel");
  search->add_option("--topology", topology, "ring|prism|complete")
      ->check(CLI::IsMember({"ring", "prism", "complete"}));
  search->add_option("--k", k, "user count (ring, complete)");
  search->add_option("--m", m, "cycle length (prism)");
  search->add_option("--topology-file", topology_file, "custom topology JSON");
  search->add_option("--p", p, "field characteristic")->required();
  search->add_option("--delta", delta, "non-square for a quadratic extension");
  search->add_option("--strategy", strategy, "uniform|blockwise|exhaustive")
      ->check(CLI::IsMember({"uniform", "blockwise", "exhaustive"}));
  search->add_option("--blocks", blocks, "comma-separated block id per vertex");
  search->add_option("--cap", cap, "candidate ceiling (default 1e6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (build->parsed()) {
    int size = topology == "prism" ? m : k;
    if (size <= 0) {
      std::cerr << "error: missing or invalid size (--k for ring/complete, --m for prism)\n";
      return 1;
    }
    return cmd_build(topology, size, out_path);
  }
  if (verify->parsed()) return cmd_verify(scheme_path);
  if (run->parsed()) return cmd_run(scheme_path, rounds, seed, inputs_path, force);
  if (audit->parsed()) return cmd_audit(scheme_path, budget, reduced);
  if (search->parsed()) {
    if (topology.empty() && topology_file.empty()) {
      std::cerr << "error: search needs --topology or --topology-file\n";
      return 1;
    }
    return cmd_search(topology, k, m, topology_file, p, delta, strategy, blocks, cap);
  }
  return 1;
}
