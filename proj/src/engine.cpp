#include "tsa/engine.hpp"

#include <limits>

namespace tsa {
namespace {

std::uint64_t uniform_residue(std::uint64_t p, std::mt19937_64& rng) {
  // rejection sampling: accept only draws below the largest multiple of p
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (max % p + 1) % p;  // 2^64 mod p
  for (;;) {
    std::uint64_t r = rng();
    if (rem == 0 || r <= max - rem) return r % p;
  }
}

}  // namespace

std::vector<FieldElement> sample_elements(const std::shared_ptr<const Field>& field,
                                          std::size_t n, std::mt19937_64& rng) {
  std::vector<FieldElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t a = uniform_residue(field->p(), rng);
    std::uint64_t b = field->degree() == 2 ? uniform_residue(field->p(), rng) : 0;
    out.push_back(field->make(a, b));
  }
  return out;
}

std::vector<FieldElement> sample_source_key(const std::shared_ptr<const Field>& field,
                                            int d, std::uint64_t seed) {
  if (d < 1) fail(errc::invalid_argument, "source key needs at least one symbol");
  std::mt19937_64 rng(seed);
  return sample_elements(field, static_cast<std::size_t>(d), rng);
}

std::vector<FieldElement> derive_keys(const Scheme& s, const std::vector<FieldElement>& source_key) {
  if (source_key.size() != static_cast<std::size_t>(s.d))
    fail(errc::shape_mismatch, "source key must have d symbols");
  return mat_vec(s.key_matrix, source_key);
}

FieldElement recover_user(const FieldElement& alpha_k, const FieldElement& own_key,
                          std::span<const FieldElement> neighbor_messages) {
  FieldElement acc = alpha_k * own_key;
  for (const FieldElement& x : neighbor_messages) acc += x;
  return acc;
}

Transcript run_round(const Scheme& s, const std::vector<FieldElement>& inputs,
                     const std::vector<FieldElement>& source_key) {
  const int K = s.topology.user_count();
  if (inputs.size() != static_cast<std::size_t>(K))
    fail(errc::shape_mismatch, "one input symbol per user required");

  Transcript t;
  t.inputs = inputs;
  t.source_key = source_key;
  t.keys = derive_keys(s, source_key);
  t.messages.reserve(K);
  for (int k = 0; k < K; ++k) t.messages.push_back(inputs[k] + t.keys[k]);

  t.recovered.reserve(K);
  t.expected.reserve(K);
  std::vector<FieldElement> visible;
  for (int k = 1; k <= K; ++k) {
    visible.clear();
    FieldElement want = s.field->zero();
    for (int i : s.topology.neighbors(k)) {
      visible.push_back(t.messages[i - 1]);
      want += inputs[i - 1];
    }
    t.recovered.push_back(recover_user(s.alpha[k - 1], t.keys[k - 1], visible));
    t.expected.push_back(want);
  }
  return t;
}

RecoveryCheck check_recovery(const Transcript& t) {
  RecoveryCheck c;
  c.user_ok.reserve(t.recovered.size());
  for (std::size_t k = 0; k < t.recovered.size(); ++k) {
    bool ok = t.recovered[k] == t.expected[k];
    c.user_ok.push_back(ok);
    c.all_ok = c.all_ok && ok;
  }
  return c;
}

}  // namespace tsa
