#include "tsa/json_io.hpp"

#include <string>

namespace tsa {

using nlohmann::json;

namespace {

const json& expect(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(errc::parse_error, std::string("missing key '") + key + "'");
  return *it;
}

std::uint64_t expect_u64(const json& j, const char* key) {
  const json& v = expect(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    fail(errc::parse_error, std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, "malformed JSON");
  return j;
}

json field_to_json(const Field& f) {
  json j{{"p", f.p()}, {"degree", f.degree()}};
  if (auto d = f.delta())
    j["delta"] = *d;
  else
    j["delta"] = nullptr;
  return j;
}

std::shared_ptr<const Field> field_from_json(const json& j) {
  std::uint64_t p = expect_u64(j, "p");
  std::uint64_t degree = expect_u64(j, "degree");
  const json& delta = expect(j, "delta");
  if (degree == 1) {
    if (!delta.is_null()) fail(errc::parse_error, "degree-1 field must have null delta");
    return Field::prime(p);
  }
  if (degree == 2) {
    if (!delta.is_number()) fail(errc::parse_error, "degree-2 field needs an integer delta");
    return Field::quadratic(p, delta.get<std::uint64_t>());
  }
  fail(errc::parse_error, "degree must be 1 or 2");
}

json element_to_json(const FieldElement& x) { return json::array({x.a, x.b}); }

FieldElement element_from_json(const json& j, const std::shared_ptr<const Field>& f) {
  if (!j.is_array() || j.size() != 2)
    fail(errc::parse_error, "field element must be a pair [a, b]");
  std::uint64_t a = j[0].get<std::uint64_t>();
  std::uint64_t b = j[1].get<std::uint64_t>();
  if (a >= f->p() || b >= f->p())
    fail(errc::parse_error, "element residue out of range");
  if (f->degree() == 1 && b != 0)
    fail(errc::parse_error, "prime-field element must have b = 0");
  return f->make(a, b);
}

json elements_to_json(const std::vector<FieldElement>& xs) {
  json j = json::array();
  for (const auto& x : xs) j.push_back(element_to_json(x));
  return j;
}

std::vector<FieldElement> elements_from_json(const json& j,
                                             const std::shared_ptr<const Field>& f) {
  if (!j.is_array()) fail(errc::parse_error, "expected an array of elements");
  std::vector<FieldElement> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(element_from_json(e, f));
  return out;
}

json topology_to_json(const Topology& t) {
  json edges = json::array();
  for (auto [i, j] : t.edges()) edges.push_back(json::array({i, j}));
  return json{{"kind", graph_kind_name(t.kind())}, {"K", t.user_count()}, {"edges", edges}};
}

Topology topology_from_json(const json& j) {
  GraphKind kind = graph_kind_from_name(expect(j, "kind").get<std::string>());
  int K = static_cast<int>(expect_u64(j, "K"));
  const json& edges_json = expect(j, "edges");
  if (!edges_json.is_array()) fail(errc::parse_error, "'edges' must be an array");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : edges_json) {
    if (!e.is_array() || e.size() != 2) fail(errc::parse_error, "edge must be a pair");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }

  Topology parsed = Topology::from_edges(K, edges);
  if (kind == GraphKind::custom) return parsed;

  // named kinds must carry exactly their canonical edge set
  Topology canonical = [&] {
    switch (kind) {
      case GraphKind::ring: return Topology::ring(K);
      case GraphKind::prism:
        if (K % 2 != 0) fail(errc::parse_error, "prism needs an even user count");
        return Topology::prism(K / 2);
      default: return Topology::complete(K);
    }
  }();
  if (parsed.edges() != canonical.edges())
    fail(errc::parse_error, std::string("edge list does not match a ") +
                                graph_kind_name(kind) + " on " + std::to_string(K) + " users");
  return canonical;
}

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) data.push_back(element_to_json(m.at(r, c)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const json& j, const std::shared_ptr<const Field>& f) {
  std::size_t rows = expect_u64(j, "rows");
  std::size_t cols = expect_u64(j, "cols");
  const json& data = expect(j, "data");
  if (!data.is_array() || data.size() != rows * cols)
    fail(errc::parse_error, "matrix data length must be rows*cols");
  Matrix m(f, rows, cols);
  std::size_t i = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = element_from_json(data[i++], f);
  return m;
}

json scheme_to_json(const Scheme& s) {
  return json{{"topology", topology_to_json(s.topology)},
              {"field", field_to_json(*s.field)},
              {"alpha", elements_to_json(s.alpha)},
              {"H", matrix_to_json(s.key_matrix)},
              {"d", s.d},
              {"rates",
               json{{"rx", json::array({s.rates.message.num, s.rates.message.den})},
                    {"rz", json::array({s.rates.user_key.num, s.rates.user_key.den})},
                    {"rzs", json::array({s.rates.source_key.num, s.rates.source_key.den})}}}};
}

Scheme scheme_from_json(const json& j) {
  Topology t = topology_from_json(expect(j, "topology"));
  auto f = field_from_json(expect(j, "field"));
  auto alpha = elements_from_json(expect(j, "alpha"), f);
  Matrix h = matrix_from_json(expect(j, "H"), f);
  int d = static_cast<int>(expect_u64(j, "d"));

  Scheme s = make_scheme(std::move(t), f, std::move(alpha), std::move(h));
  if (s.d != d) fail(errc::parse_error, "'d' does not match the topology's degree");

  const json& rates = expect(j, "rates");
  auto check_ratio = [&](const char* key, const Ratio& want) {
    const json& r = expect(rates, key);
    if (!r.is_array() || r.size() != 2 || r[0].get<std::int64_t>() * want.den !=
                                              r[1].get<std::int64_t>() * want.num)
      fail(errc::parse_error, std::string("rate '") + key + "' is inconsistent");
  };
  check_ratio("rx", s.rates.message);
  check_ratio("rz", s.rates.user_key);
  check_ratio("rzs", s.rates.source_key);
  return s;
}

json transcript_to_json(const Transcript& t) {
  return json{{"W", elements_to_json(t.inputs)},      {"N", elements_to_json(t.source_key)},
              {"Z", elements_to_json(t.keys)},        {"X", elements_to_json(t.messages)},
              {"recovered", elements_to_json(t.recovered)},
              {"expected", elements_to_json(t.expected)}};
}

json verification_report_to_json(const VerificationReport& r) {
  json users = json::array();
  for (const auto& u : r.users) {
    users.push_back(json{{"user", u.user},
                         {"alpha_is_zero", u.alpha_is_zero},
                         {"rank_with_self", json{{"expected", u.rank_closed_expected},
                                                 {"actual", u.rank_closed}}},
                         {"rank_without_self", json{{"expected", u.rank_open_expected},
                                                    {"actual", u.rank_open}}},
                         {"ok", u.ok()}});
  }
  return json{{"recovery_ok", r.recovery_ok},
              {"kernel_dim", r.kernel_dim},
              {"users", users},
              {"pass", r.pass()}};
}

json audit_report_to_json(const AuditReport& r) {
  json entropy = json::array();
  for (const auto& e : r.entropy) {
    entropy.push_back(json{{"user", e.user},
                           {"closed_entropy", e.closed_entropy},
                           {"closed_floor", e.closed_floor},
                           {"open_given_self", e.open_given_self},
                           {"open_floor", e.open_floor},
                           {"ok", e.ok()}});
  }
  json mi = json::array();
  for (const auto& m : r.mi) {
    json entry{{"user", m.user}, {"states", m.states}};
    switch (m.status) {
      case MiStatus::zero: entry["status"] = "zero"; break;
      case MiStatus::positive: entry["status"] = "positive"; break;
      case MiStatus::skipped: entry["status"] = "skipped (budget)"; break;
    }
    if (m.witness) {
      const MiWitness& w = *m.witness;
      entry["witness"] = json{{"neighborhood_sum", element_to_json(w.neighborhood_sum)},
                              {"self_input", element_to_json(w.self_input)},
                              {"self_key", element_to_json(w.self_key)},
                              {"messages", elements_to_json(w.messages)},
                              {"inputs", elements_to_json(w.inputs)},
                              {"joint_count", w.joint_count},
                              {"message_marginal", w.message_marginal},
                              {"input_marginal", w.input_marginal},
                              {"class_count", w.class_count}};
    }
    mi.push_back(std::move(entry));
  }
  return json{{"entropy", entropy},
              {"mi", mi},
              {"entropy_pass", r.entropy_pass},
              {"mi_pass", r.mi_pass},
              {"skipped", r.skipped},
              {"pass", r.pass()}};
}

json search_result_to_json(const SearchResult& r, const Topology& t) {
  json maxers = json::array();
  for (const auto& a : r.maximizers) maxers.push_back(elements_to_json(a));
  json j{{"best_alpha", elements_to_json(r.best_alpha)},
         {"kernel_dim", r.best_kernel_dim},
         {"candidates", r.candidates},
         {"maximizers", maxers}};
  if (auto d = t.regular_degree()) {
    j["d"] = *d;
    j["feasible"] = r.best_kernel_dim >= static_cast<std::size_t>(*d);
  } else {
    j["d"] = nullptr;
    j["feasible"] = nullptr;
  }
  return j;
}

}  // namespace tsa
