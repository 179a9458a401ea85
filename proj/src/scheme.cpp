#include "tsa/scheme.hpp"

#include <algorithm>
#include <string>

namespace tsa {
namespace {

std::uint64_t smallest_prime_with_divisor(std::uint64_t n) {
  // smallest prime q with n | q-1 (exists by Dirichlet); upward scan
  for (std::uint64_t q = n + 1;; q += n) {
    try {
      Field::prime(q);
      return q;
    } catch (const Error&) {
      continue;
    }
  }
}

Scheme assemble_verified(Topology t, std::shared_ptr<const Field> field,
                         std::vector<FieldElement> alpha, Matrix h, const char* what) {
  Scheme s = make_scheme(std::move(t), std::move(field), std::move(alpha), std::move(h));
  VerificationReport rep = verify(s);
  if (!rep.pass())
    fail(errc::construction_failed,
         std::string(what) + " construction violates its own invariants");
  return s;
}

}  // namespace

std::vector<std::size_t> user_rows(const std::vector<int>& users) {
  std::vector<std::size_t> rows;
  rows.reserve(users.size());
  for (int u : users) {
    if (u < 1) fail(errc::bad_vertex, "user ids are 1-based");
    rows.push_back(static_cast<std::size_t>(u - 1));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

Matrix dmam(const Topology& t, const std::shared_ptr<const Field>& field,
            const std::vector<FieldElement>& alpha) {
  const int K = t.user_count();
  if (static_cast<int>(alpha.size()) != K)
    fail(errc::shape_mismatch, "modulation vector length != user count");
  Matrix a = adjacency(t, field);
  for (int k = 0; k < K; ++k) {
    if (!same_field(*field, *alpha[k].field))
      fail(errc::field_mismatch, "modulation entries must live in the scheme field");
    a.at(k, k) = field->make(alpha[k].a, alpha[k].b);
  }
  return a;
}

Scheme make_scheme(Topology topology, std::shared_ptr<const Field> field,
                   std::vector<FieldElement> alpha, Matrix key_matrix) {
  const int K = topology.user_count();
  auto d = topology.regular_degree();
  if (!d)
    fail(errc::invalid_argument, "schemes require a regular topology");
  if (static_cast<int>(alpha.size()) != K)
    fail(errc::shape_mismatch, "alpha length != user count");
  if (key_matrix.rows() != static_cast<std::size_t>(K))
    fail(errc::shape_mismatch, "key matrix must have one row per user");
  if (key_matrix.cols() != static_cast<std::size_t>(*d))
    fail(errc::shape_mismatch, "key matrix must have d columns");
  for (const auto& a : alpha)
    if (!same_field(*field, *a.field))
      fail(errc::field_mismatch, "alpha entries must live in the scheme field");
  if (!same_field(*field, *key_matrix.field()))
    fail(errc::field_mismatch, "key matrix must live in the scheme field");

  Scheme s{std::move(topology), field, {}, std::move(key_matrix), *d,
           Rates{{1, 1}, {1, 1}, {*d, 1}}};
  s.alpha.reserve(alpha.size());
  for (const auto& a : alpha) s.alpha.push_back(field->make(a.a, a.b));
  return s;
}

Scheme build_ring(int K) {
  Topology t = Topology::ring(K);
  std::uint64_t q = smallest_prime_with_divisor(static_cast<std::uint64_t>(K));
  auto f = Field::prime(q);
  FieldElement w = f->root_of_unity(static_cast<std::uint64_t>(K));
  FieldElement winv = inv(w);
  FieldElement a = -(w + winv);

  std::vector<std::vector<FieldElement>> cols(2);
  FieldElement fwd = f->one(), bwd = f->one();
  for (int k = 0; k < K; ++k) {
    cols[0].push_back(fwd);
    cols[1].push_back(bwd);
    fwd *= w;
    bwd *= winv;
  }
  Matrix h = Matrix::from_columns(f, cols);
  std::vector<FieldElement> alpha(K, a);
  return assemble_verified(std::move(t), f, std::move(alpha), std::move(h), "ring");
}

Scheme build_prism(int M) {
  Topology t = Topology::prism(M);
  std::uint64_t p = smallest_prime_with_divisor(static_cast<std::uint64_t>(M));
  auto fp = Field::prime(p);
  FieldElement wp = fp->root_of_unity(static_cast<std::uint64_t>(M));
  FieldElement lambda1_p = wp + inv(wp);
  FieldElement disc_p = lambda1_p * (lambda1_p - fp->from_int(4));

  // stay in F_p when the discriminant is a square there, otherwise adjoin
  // x with x^2 = disc
  std::shared_ptr<const Field> f;
  if (fp->sqrt(disc_p).has_value())
    f = fp;
  else
    f = Field::quadratic(p, disc_p.a);

  FieldElement w = f->make(wp.a);
  FieldElement disc = f->make(disc_p.a);
  FieldElement root = *f->sqrt(disc);
  FieldElement lambda1 = f->make(lambda1_p.a);
  FieldElement half = inv(f->from_int(2));
  FieldElement base = -(lambda1 + f->from_int(2));
  FieldElement alpha_plus = (base + root) * half;
  FieldElement alpha_minus = (base - root) * half;

  const std::uint64_t ts[3] = {0, 1, static_cast<std::uint64_t>(M - 1)};
  auto build_for = [&](const FieldElement& a1, const FieldElement& a2) {
    std::vector<std::vector<FieldElement>> cols(3);
    for (int c = 0; c < 3; ++c) {
      FieldElement wt = f->pow(w, ts[c]);
      FieldElement lambda_t = wt + inv(wt);
      FieldElement mult = -(a1 + lambda_t);
      FieldElement v = f->one();
      std::vector<FieldElement> top, bottom;
      for (int r = 0; r < M; ++r) {
        top.push_back(v);
        bottom.push_back(mult * v);
        v *= wt;
      }
      cols[c] = top;
      cols[c].insert(cols[c].end(), bottom.begin(), bottom.end());
    }
    Matrix h = Matrix::from_columns(f, cols);
    std::vector<FieldElement> alpha(M, a1);
    alpha.insert(alpha.end(), M, a2);
    return make_scheme(t, f, std::move(alpha), std::move(h));
  };

  // the quadratic gives the two branch assignments in either order; take the
  // +root branch for the first cycle and fall back to the swap
  Scheme s = build_for(alpha_plus, alpha_minus);
  if (verify(s).pass()) return s;
  s = build_for(alpha_minus, alpha_plus);
  if (verify(s).pass()) return s;
  fail(errc::construction_failed, "prism construction violates its own invariants");
}

Scheme build_complete(int K) {
  Topology t = Topology::complete(K);
  auto f = Field::prime(2);
  Matrix h(f, K, K - 1);
  for (int i = 0; i < K - 1; ++i) h.at(i, i) = f->one();
  for (int j = 0; j < K - 1; ++j) h.at(K - 1, j) = f->one();  // -1 = 1 over F_2
  std::vector<FieldElement> alpha(K, f->one());
  return assemble_verified(std::move(t), f, std::move(alpha), std::move(h), "complete");
}

Scheme from_kernel(const Topology& t, const std::shared_ptr<const Field>& field,
                   const std::vector<FieldElement>& alpha) {
  auto d = t.regular_degree();
  if (!d) fail(errc::invalid_argument, "kernel construction requires a regular topology");
  Matrix a = dmam(t, field, alpha);
  auto basis = kernel_basis(a);
  if (basis.size() < static_cast<std::size_t>(*d))
    fail(errc::kernel_too_small, "kernel dimension " + std::to_string(basis.size()) +
                                     " < required degree " + std::to_string(*d));
  basis.resize(*d);
  Scheme s = make_scheme(t, field, alpha, Matrix::from_columns(field, basis));
  VerificationReport rep = verify(s);
  if (!rep.pass()) {
    std::string detail = "canonical kernel basis fails the rank conditions at users";
    for (const auto& u : rep.users)
      if (!u.ok()) detail += " " + std::to_string(u.user);
    fail(errc::rank_condition_failed, detail);
  }
  return s;
}

VerificationReport verify(const Scheme& s) {
  VerificationReport rep;
  const int K = s.topology.user_count();
  const std::size_t d = static_cast<std::size_t>(s.d);

  Matrix a = dmam(s.topology, s.field, s.alpha);
  rep.recovery_ok = is_zero(mat_mat(a, s.key_matrix));
  rep.kernel_dim = a.cols() - rank(a);

  for (int k = 1; k <= K; ++k) {
    UserCheck c;
    c.user = k;
    c.alpha_is_zero = s.alpha[k - 1].is_zero();
    std::vector<int> closed = s.topology.neighbors(k);
    closed.push_back(k);
    c.rank_closed = rank(submatrix_rows(s.key_matrix, user_rows(closed)));
    c.rank_closed_expected = d;
    c.rank_open = rank(submatrix_rows(s.key_matrix, user_rows(s.topology.neighbors(k))));
    c.rank_open_expected = c.alpha_is_zero ? d - 1 : d;
    rep.users.push_back(c);
  }
  return rep;
}

std::vector<int> default_blocks(const Topology& t) {
  const int K = t.user_count();
  std::vector<int> blocks(K, 0);
  if (t.kind() == GraphKind::prism)
    for (int v = K / 2; v < K; ++v) blocks[v] = 1;
  return blocks;
}

SearchResult search_modulation(const Topology& t, const std::shared_ptr<const Field>& field,
                               const SearchOptions& options) {
  const int K = t.user_count();
  std::vector<int> blocks;
  switch (options.kind) {
    case SearchKind::uniform:
      blocks.assign(K, 0);
      break;
    case SearchKind::exhaustive:
      blocks.resize(K);
      for (int v = 0; v < K; ++v) blocks[v] = v;
      break;
    case SearchKind::blockwise: {
      if (static_cast<int>(options.blocks.size()) != K)
        fail(errc::shape_mismatch, "blockwise search needs one block id per vertex");
      // relabel by first occurrence so block 0 contains vertex 1; the
      // candidate odometer then enumerates alpha vectors lexicographically
      std::vector<int> relabel;
      blocks.resize(K);
      for (int v = 0; v < K; ++v) {
        int id = options.blocks[v];
        auto it = std::find(relabel.begin(), relabel.end(), id);
        if (it == relabel.end()) {
          relabel.push_back(id);
          blocks[v] = static_cast<int>(relabel.size()) - 1;
        } else {
          blocks[v] = static_cast<int>(it - relabel.begin());
        }
      }
      break;
    }
  }
  const int B = *std::max_element(blocks.begin(), blocks.end()) + 1;
  const std::uint64_t q = field->size();

  unsigned __int128 candidates = 1;
  for (int i = 0; i < B; ++i) {
    candidates *= q;
    if (candidates > options.cap)
      fail(errc::budget_exceeded, "candidate count exceeds the search cap of " +
                                      std::to_string(options.cap));
  }

  SearchResult result;
  std::vector<std::uint64_t> digits(B, 0);
  std::vector<FieldElement> alpha(K, field->zero());
  for (;;) {
    for (int v = 0; v < K; ++v) alpha[v] = field->element_at(digits[blocks[v]]);
    std::size_t dim = static_cast<std::size_t>(K) - rank(dmam(t, field, alpha));
    ++result.candidates;
    if (result.maximizers.empty() || dim > result.best_kernel_dim) {
      result.best_kernel_dim = dim;
      result.maximizers.clear();
      result.maximizers.push_back(alpha);
    } else if (dim == result.best_kernel_dim) {
      result.maximizers.push_back(alpha);
    }
    // odometer: last block is least significant
    int i = B - 1;
    while (i >= 0 && digits[i] == q - 1) {
      digits[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++digits[i];
  }
  result.best_alpha = result.maximizers.front();
  return result;
}

}  // namespace tsa
