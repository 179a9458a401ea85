#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tsa/matrix.hpp"
#include "tsa/topology.hpp"

namespace tsa {

struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// Per-input-symbol rates: broadcast message symbols, key symbols held per
/// user, and total source-key symbols.  Every scheme built here achieves
/// (1, 1, d).
struct Rates {
  Ratio message;     // R_X
  Ratio user_key;    // R_Z
  Ratio source_key;  // R_Z_total
  friend bool operator==(const Rates&, const Rates&) = default;
};

/// A complete one-shot aggregation design over a d-regular graph.
///
/// Invariants for a sound scheme (checked by verify(), re-verified by every
/// builder before returning):
///   - recovery: (diag(alpha) + A) * H = 0, so the key contributions cancel
///     simultaneously at all users;
///   - security: rank(H restricted to N_k and user k) = d for every k, and
///     rank(H restricted to N_k) = d-1 when alpha_k = 0, d otherwise.
struct Scheme {
  Topology topology;
  std::shared_ptr<const Field> field;
  std::vector<FieldElement> alpha;  // neutralization coefficient per user
  Matrix key_matrix;                // H, K x d
  int d = 0;
  Rates rates;
};

/// diag(alpha) + A over the field of alpha: the modulated adjacency matrix
/// whose kernel must contain the key-generation matrix.
Matrix dmam(const Topology& t, const std::shared_ptr<const Field>& field,
            const std::vector<FieldElement>& alpha);

/// Assembles a scheme from parts without any security verification (used for
/// fixtures, file loading and negative tests).  Validates shapes, requires a
/// regular topology, and fills in rates (1, 1, d).
Scheme make_scheme(Topology topology, std::shared_ptr<const Field> field,
                   std::vector<FieldElement> alpha, Matrix key_matrix);

/// Ring design: smallest prime q with K | q-1, a primitive K-th root of
/// unity w, uniform alpha = -(w + 1/w), H columns (w^j) and (w^-j).
Scheme build_ring(int K);

/// Prism design on K = 2M users: smallest prime p = 1 (mod M), primitive
/// M-th root w, lambda_t = w^t + w^-t, discriminant D = lambda_1(lambda_1-4);
/// works in F_p when D is a square there and in F_p[x]/(x^2-D) otherwise.
/// Blockwise alpha: (-(lambda_1+2) +- sqrt(D))/2 on the two M-cycles.
Scheme build_prism(int M);

/// Complete-graph design over F_2: alpha all ones, H = identity of size K-1
/// stacked over an all-ones row.
Scheme build_complete(int K);

/// Generic path: H = first d canonical kernel basis vectors of the modulated
/// adjacency matrix.  Throws KernelTooSmall when the kernel has fewer than d
/// dimensions and RankConditionFailed when the canonical basis fails the
/// per-user rank conditions.
Scheme from_kernel(const Topology& t, const std::shared_ptr<const Field>& field,
                   const std::vector<FieldElement>& alpha);

struct UserCheck {
  int user = 0;
  bool alpha_is_zero = false;
  std::size_t rank_closed = 0;           // rank of H rows N_k + self
  std::size_t rank_closed_expected = 0;  // d
  std::size_t rank_open = 0;             // rank of H rows N_k
  std::size_t rank_open_expected = 0;    // d-1 if alpha_k = 0 else d
  bool ok() const {
    return rank_closed == rank_closed_expected && rank_open == rank_open_expected;
  }
};

struct VerificationReport {
  bool recovery_ok = false;
  std::size_t kernel_dim = 0;  // dim ker(diag(alpha) + A)
  std::vector<UserCheck> users;
  bool pass() const {
    if (!recovery_ok) return false;
    for (const auto& u : users)
      if (!u.ok()) return false;
    return true;
  }
};

/// Checks the recovery condition and the per-user rank conditions exactly.
/// Failures are data, never exceptions.
VerificationReport verify(const Scheme& s);

enum class SearchKind { uniform, blockwise, exhaustive };

struct SearchOptions {
  SearchKind kind = SearchKind::uniform;
  /// Block id per vertex (size K); used only by blockwise.  Ids are
  /// relabeled by first occurrence, so any labeling works.
  std::vector<int> blocks;
  /// Candidate-count ceiling; exceeding it raises BudgetExceeded up front.
  std::uint64_t cap = 1'000'000;
};

struct SearchResult {
  std::vector<FieldElement> best_alpha;  // lexicographically first maximizer
  std::size_t best_kernel_dim = 0;
  std::uint64_t candidates = 0;
  std::vector<std::vector<FieldElement>> maximizers;
};

/// Enumerates modulation vectors in canonical order under the strategy and
/// maximizes the kernel dimension of diag(alpha) + A.
SearchResult search_modulation(const Topology& t, const std::shared_ptr<const Field>& field,
                               const SearchOptions& options);

/// Natural block structure for blockwise search: the two M-cycles of a prism,
/// one block for everything else.
std::vector<int> default_blocks(const Topology& t);

/// 0-based H row indices for a set of users, ascending.
std::vector<std::size_t> user_rows(const std::vector<int>& users);

}  // namespace tsa
