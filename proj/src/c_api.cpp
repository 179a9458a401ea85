#include "tsa/tsa.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "tsa/json_io.hpp"

using nlohmann::json;

struct tsa_scheme {
  tsa::Scheme impl;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tsa_status status_of(const tsa::Error& e) {
  switch (e.code()) {
    case tsa::errc::parse_error:
      return TSA_ERR_PARSE;
    case tsa::errc::budget_exceeded:
      return TSA_ERR_BUDGET;
    case tsa::errc::construction_failed:
    case tsa::errc::kernel_too_small:
    case tsa::errc::rank_condition_failed:
      return TSA_ERR_CONSTRUCTION;
    default:
      return TSA_ERR_INVALID;
  }
}

template <typename Fn>
tsa_status guarded(Fn&& fn) {
  try {
    fn();
    return TSA_OK;
  } catch (const tsa::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TSA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TSA_ERR_INTERNAL;
  }
}

tsa_status require(bool cond, const char* message) {
  if (cond) return TSA_OK;
  g_last_error = message;
  return TSA_ERR_INVALID;
}

tsa::Topology named_topology(const std::string& kind, int size) {
  if (kind == "ring") return tsa::Topology::ring(size);
  if (kind == "prism") return tsa::Topology::prism(size);
  if (kind == "complete") return tsa::Topology::complete(size);
  tsa::fail(tsa::errc::invalid_argument, "unknown topology '" + kind + "'");
}

}  // namespace

extern "C" {

const char* tsa_version(void) { return "1.0.0"; }

const char* tsa_last_error(void) { return g_last_error.c_str(); }

void tsa_string_free(char* s) { std::free(s); }

void tsa_scheme_free(tsa_scheme* s) { delete s; }

tsa_status tsa_scheme_build(const char* topology, int size, tsa_scheme** out) {
  if (auto st = require(topology && out, "null argument")) return st;
  return guarded([&] {
    std::string kind(topology);
    if (kind == "ring")
      *out = new tsa_scheme{tsa::build_ring(size)};
    else if (kind == "prism")
      *out = new tsa_scheme{tsa::build_prism(size)};
    else if (kind == "complete")
      *out = new tsa_scheme{tsa::build_complete(size)};
    else
      tsa::fail(tsa::errc::invalid_argument, "unknown topology '" + kind + "'");
  });
}

tsa_status tsa_scheme_from_json(const char* json_text, tsa_scheme** out) {
  if (auto st = require(json_text && out, "null argument")) return st;
  return guarded([&] {
    *out = new tsa_scheme{tsa::scheme_from_json(tsa::parse_json(json_text))};
  });
}

tsa_status tsa_scheme_to_json(const tsa_scheme* s, char** json_out) {
  if (auto st = require(s && json_out, "null argument")) return st;
  return guarded([&] { *json_out = dup_string(tsa::scheme_to_json(s->impl).dump()); });
}

tsa_status tsa_scheme_info(const tsa_scheme* s, char** json_out) {
  if (auto st = require(s && json_out, "null argument")) return st;
  return guarded([&] {
    const tsa::Scheme& sc = s->impl;
    json info{{"kind", tsa::graph_kind_name(sc.topology.kind())},
              {"K", sc.topology.user_count()},
              {"d", sc.d},
              {"field", tsa::field_to_json(*sc.field)},
              {"rates",
               json{{"rx", json::array({sc.rates.message.num, sc.rates.message.den})},
                    {"rz", json::array({sc.rates.user_key.num, sc.rates.user_key.den})},
                    {"rzs", json::array({sc.rates.source_key.num, sc.rates.source_key.den})}}}};
    *json_out = dup_string(info.dump());
  });
}

tsa_status tsa_scheme_verify(const tsa_scheme* s, char** report_json_out, int* pass_out) {
  if (auto st = require(s && report_json_out && pass_out, "null argument")) return st;
  return guarded([&] {
    tsa::VerificationReport rep = tsa::verify(s->impl);
    *report_json_out = dup_string(tsa::verification_report_to_json(rep).dump());
    *pass_out = rep.pass() ? 1 : 0;
  });
}

tsa_status tsa_scheme_run(const tsa_scheme* s, int rounds, uint64_t seed,
                          const char* inputs_json, char** transcripts_jsonl_out,
                          int* all_ok_out) {
  if (auto st = require(s && transcripts_jsonl_out && all_ok_out, "null argument")) return st;
  return guarded([&] {
    const tsa::Scheme& sc = s->impl;
    const std::size_t K = static_cast<std::size_t>(sc.topology.user_count());

    std::vector<std::vector<tsa::FieldElement>> fixed_inputs;
    bool inputs_per_round = false;
    if (inputs_json != nullptr) {
      json j = tsa::parse_json(inputs_json);
      if (!j.is_array() || j.empty())
        tsa::fail(tsa::errc::parse_error, "inputs must be a non-empty array");
      if (j[0].is_array() && !j[0].empty() && j[0][0].is_array()) {
        inputs_per_round = true;
        for (const auto& row : j) fixed_inputs.push_back(tsa::elements_from_json(row, sc.field));
      } else {
        fixed_inputs.push_back(tsa::elements_from_json(j, sc.field));
      }
      for (const auto& w : fixed_inputs)
        if (w.size() != K)
          tsa::fail(tsa::errc::shape_mismatch, "each input vector needs one symbol per user");
    }

    int total = inputs_per_round ? static_cast<int>(fixed_inputs.size()) : rounds;
    if (total < 1) tsa::fail(tsa::errc::invalid_argument, "need at least one round");

    std::mt19937_64 rng(seed);
    std::ostringstream out;
    bool all_ok = true;
    for (int r = 0; r < total; ++r) {
      std::vector<tsa::FieldElement> w;
      if (inputs_per_round)
        w = fixed_inputs[static_cast<std::size_t>(r)];
      else if (!fixed_inputs.empty())
        w = fixed_inputs.front();
      else
        w = tsa::sample_elements(sc.field, K, rng);
      auto n = tsa::sample_elements(sc.field, static_cast<std::size_t>(sc.d), rng);
      tsa::Transcript t = tsa::run_round(sc, w, n);
      all_ok = all_ok && tsa::check_recovery(t).all_ok;
      out << tsa::transcript_to_json(t).dump() << '\n';
    }
    *transcripts_jsonl_out = dup_string(out.str());
    *all_ok_out = all_ok ? 1 : 0;
  });
}

tsa_status tsa_scheme_audit(const tsa_scheme* s, uint64_t budget, int reduced_conditioning,
                            char** report_json_out, int* verdict_out) {
  if (auto st = require(s && report_json_out && verdict_out, "null argument")) return st;
  return guarded([&] {
    tsa::MiOptions opt;
    opt.budget = budget;
    opt.condition_on_self_input = reduced_conditioning == 0;
    tsa::AuditReport rep = tsa::audit_scheme(s->impl, opt);
    *report_json_out = dup_string(tsa::audit_report_to_json(rep).dump());
    *verdict_out = !rep.pass() ? 2 : rep.skipped > 0 ? 3 : 0;
  });
}

tsa_status tsa_topology_json(const char* kind, int size, char** json_out) {
  if (auto st = require(kind && json_out, "null argument")) return st;
  return guarded([&] {
    *json_out = dup_string(tsa::topology_to_json(named_topology(kind, size)).dump());
  });
}

tsa_status tsa_search(const char* topology_json, const char* field_json,
                      const char* strategy, const char* blocks_csv, uint64_t cap,
                      char** result_json_out) {
  if (auto st = require(topology_json && field_json && strategy && result_json_out,
                        "null argument"))
    return st;
  return guarded([&] {
    tsa::Topology t = tsa::topology_from_json(tsa::parse_json(topology_json));
    auto f = tsa::field_from_json(tsa::parse_json(field_json));

    tsa::SearchOptions opt;
    opt.cap = cap;
    std::string strat(strategy);
    if (strat == "uniform")
      opt.kind = tsa::SearchKind::uniform;
    else if (strat == "exhaustive")
      opt.kind = tsa::SearchKind::exhaustive;
    else if (strat == "blockwise")
      opt.kind = tsa::SearchKind::blockwise;
    else
      tsa::fail(tsa::errc::invalid_argument, "unknown strategy '" + strat + "'");

    if (opt.kind == tsa::SearchKind::blockwise) {
      if (blocks_csv == nullptr) {
        opt.blocks = tsa::default_blocks(t);
      } else {
        std::stringstream ss(blocks_csv);
        std::string item;
        while (std::getline(ss, item, ',')) opt.blocks.push_back(std::stoi(item));
      }
    }

    tsa::SearchResult r = tsa::search_modulation(t, f, opt);
    json out = tsa::search_result_to_json(r, t);
    out["strategy"] = strat;
    *result_json_out = dup_string(out.dump());
  });
}

}  // extern "C"
