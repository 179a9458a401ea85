#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tsa/scheme.hpp"

namespace tsa {

/// Exact joint-outcome counts over a tuple of bounded components.  Keys are
/// the canonical mixed-radix encoding (first component most significant), so
/// iteration over cells() is deterministic.
class DistributionTable {
 public:
  explicit DistributionTable(std::vector<std::uint64_t> radices);

  std::uint64_t encode(std::span<const std::uint64_t> tuple) const;
  std::vector<std::uint64_t> decode(std::uint64_t key) const;

  void add(std::uint64_t key, std::uint64_t count);
  std::uint64_t count(std::span<const std::uint64_t> tuple) const;
  std::uint64_t total() const { return total_; }
  const std::map<std::uint64_t, std::uint64_t>& cells() const { return cells_; }
  const std::vector<std::uint64_t>& radices() const { return radices_; }

 private:
  std::vector<std::uint64_t> radices_;
  std::map<std::uint64_t, std::uint64_t> cells_;
  std::uint64_t total_ = 0;
};

enum class MiStatus { zero, positive, skipped };

/// A concrete independence failure: one conditioning value and one cell of
/// the conditional joint whose counts do not cross-multiply.
struct MiWitness {
  FieldElement neighborhood_sum;
  FieldElement self_input;  // meaningful only under full conditioning
  FieldElement self_key;
  std::vector<FieldElement> messages;  // observed X over the neighborhood
  std::vector<FieldElement> inputs;    // neighbor inputs W over the neighborhood
  std::uint64_t joint_count = 0;
  std::uint64_t message_marginal = 0;
  std::uint64_t input_marginal = 0;
  std::uint64_t class_count = 0;
};

struct MiResult {
  int user = 0;
  MiStatus status = MiStatus::skipped;
  std::optional<MiWitness> witness;
  std::uint64_t states = 0;  // q^(K+d), the audited joint state space
};

struct MiOptions {
  /// Ceiling on q^(K+d); larger instances raise BudgetExceeded.
  std::uint64_t budget = 100'000'000;
  /// Condition on the user's own input as the security definition states.
  /// Dropping it gives the cheaper reduced form.
  bool condition_on_self_input = true;
  /// Swap the roles of messages and inputs in the factorization check; the
  /// verdict must not change (used by sanity tests).
  bool swap_factors = false;
};

/// Decides I(X over N_k ; W over N_k | neighborhood sum, W_k, Z_k) == 0 by
/// exhaustive enumeration and exact integer counting; no logarithms, no
/// floating point.  Returns a witness cell when the answer is positive.
MiResult brute_force_mi(const Scheme& s, int user, const MiOptions& options = {});

/// Recounts only the witness's conditioning class and confirms that the
/// factorization failure is real.
bool recheck_witness(const Scheme& s, int user, const MiWitness& w,
                     const MiOptions& options = {});

/// Lemma-style key-entropy floors, computed through ranks: for linear keys
/// over i.i.d. uniform source symbols, H(Z over S) = rank(H rows S) in q-ary
/// units.
struct EntropyCheck {
  int user = 0;
  std::size_t closed_entropy = 0;     // H(Z over N_k + self) = rank
  std::size_t closed_floor = 0;       // d
  std::size_t open_given_self = 0;    // H(Z over N_k | Z_k)
  std::size_t open_floor = 0;         // d-1
  bool ok() const { return closed_entropy >= closed_floor && open_given_self >= open_floor; }
};

std::vector<EntropyCheck> entropy_checks(const Scheme& s);

/// Independent oracle for the rank identity: enumerates every source key,
/// tabulates the joint key outcome over S, asserts the distribution is
/// uniform on its support, and returns log_q of the support size.
/// Throws NonUniformSupport if the linearity assumption is ever violated.
std::size_t empirical_entropy(const Scheme& s, const std::vector<int>& users,
                              std::uint64_t budget = 100'000'000);

struct AuditReport {
  std::vector<EntropyCheck> entropy;
  std::vector<MiResult> mi;  // one per user; status skipped when over budget
  bool entropy_pass = true;
  bool mi_pass = true;  // over executed checks only
  int skipped = 0;
  bool pass() const { return entropy_pass && mi_pass; }
};

/// Runs the entropy checks always and the per-user exhaustive independence
/// audit whenever the state space fits the budget.
AuditReport audit_scheme(const Scheme& s, const MiOptions& options = {});

}  // namespace tsa
