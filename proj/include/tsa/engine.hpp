#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tsa/scheme.hpp"

namespace tsa {

/// One protocol round.  Message formation is X_k = W_k + Z_k; user k then
/// recovers its neighborhood input sum from alpha_k * Z_k plus the messages
/// it can actually see.  `expected` is computed straight from the inputs so
/// recovery checking never trusts the recovery path.
struct Transcript {
  std::vector<FieldElement> inputs;      // W, one per user
  std::vector<FieldElement> source_key;  // N, d symbols
  std::vector<FieldElement> keys;        // Z = H N
  std::vector<FieldElement> messages;    // X = W + Z
  std::vector<FieldElement> recovered;   // per user
  std::vector<FieldElement> expected;    // per user: sum of neighbor inputs
};

/// Uniform field elements by rejection sampling from a seeded mt19937_64;
/// identical (field, n, seed) always yields identical output.
std::vector<FieldElement> sample_elements(const std::shared_ptr<const Field>& field,
                                          std::size_t n, std::mt19937_64& rng);

std::vector<FieldElement> sample_source_key(const std::shared_ptr<const Field>& field,
                                            int d, std::uint64_t seed);

/// Z = H N.
std::vector<FieldElement> derive_keys(const Scheme& s, const std::vector<FieldElement>& source_key);

/// Recovery as seen by one user: only its own coefficient, its own key and
/// the messages broadcast inside its neighborhood enter the computation.
FieldElement recover_user(const FieldElement& alpha_k, const FieldElement& own_key,
                          std::span<const FieldElement> neighbor_messages);

Transcript run_round(const Scheme& s, const std::vector<FieldElement>& inputs,
                     const std::vector<FieldElement>& source_key);

struct RecoveryCheck {
  std::vector<bool> user_ok;
  bool all_ok = true;
};

RecoveryCheck check_recovery(const Transcript& t);

}  // namespace tsa
