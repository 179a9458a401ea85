#include "tsa/audit.hpp"

#include <algorithm>
#include <string>

namespace tsa {
namespace {

using u128 = unsigned __int128;

u128 ipow128(std::uint64_t base, unsigned exp) {
  u128 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    r *= base;
    if (r > (u128(1) << 100)) return u128(1) << 100;  // saturate, way past any budget
  }
  return r;
}

std::uint64_t ipow64(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

// Everything the per-user enumeration needs, precomputed on canonical element
// codes: an addition table and the key codes of the relevant H rows for every
// source-key assignment.
struct UserTables {
  std::uint64_t q = 0;
  std::size_t nk = 0;
  std::uint64_t n_states = 0;                       // q^d
  std::vector<std::uint32_t> add;                   // q*q
  std::vector<std::vector<std::uint32_t>> key_row;  // neighbor rows then self
};

UserTables build_user_tables(const Scheme& s, int user) {
  const Field& f = *s.field;
  UserTables t;
  t.q = f.size();
  const auto& nb = s.topology.neighbors(user);
  t.nk = nb.size();
  t.n_states = ipow64(t.q, static_cast<unsigned>(s.d));

  t.add.resize(t.q * t.q);
  for (std::uint64_t i = 0; i < t.q; ++i)
    for (std::uint64_t j = 0; j < t.q; ++j)
      t.add[i * t.q + j] =
          static_cast<std::uint32_t>(f.index_of(f.element_at(i) + f.element_at(j)));

  std::vector<int> rows(nb.begin(), nb.end());
  rows.push_back(user);
  t.key_row.assign(rows.size(), std::vector<std::uint32_t>(t.n_states));
  std::vector<FieldElement> n_vec(s.d, f.zero());
  std::vector<std::uint64_t> digits(s.d, 0);
  for (std::uint64_t idx = 0; idx < t.n_states; ++idx) {
    for (int j = 0; j < s.d; ++j) n_vec[j] = f.element_at(digits[j]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      FieldElement z = f.zero();
      for (int j = 0; j < s.d; ++j) z += s.key_matrix.at(rows[r] - 1, j) * n_vec[j];
      t.key_row[r][idx] = static_cast<std::uint32_t>(f.index_of(z));
    }
    for (int j = s.d - 1; j >= 0; --j) {
      if (++digits[j] < t.q) break;
      digits[j] = 0;
    }
  }
  return t;
}

std::uint64_t mi_states_or_throw(const Scheme& s, const MiOptions& opt) {
  u128 states = ipow128(s.field->size(),
                        static_cast<unsigned>(s.topology.user_count() + s.d));
  if (states > opt.budget)
    fail(errc::budget_exceeded, "joint state space exceeds the audit budget of " +
                                    std::to_string(opt.budget) + " states");
  return static_cast<std::uint64_t>(states);
}

std::uint64_t pack(std::span<const std::uint64_t> digits, std::uint64_t q) {
  std::uint64_t code = 0;
  for (std::uint64_t d : digits) code = code * q + d;
  return code;
}

std::uint64_t pack_elements(const Field& f, const std::vector<FieldElement>& xs) {
  std::uint64_t code = 0;
  for (const auto& x : xs) code = code * f.size() + f.index_of(x);
  return code;
}

}  // namespace

DistributionTable::DistributionTable(std::vector<std::uint64_t> radices)
    : radices_(std::move(radices)) {}

std::uint64_t DistributionTable::encode(std::span<const std::uint64_t> tuple) const {
  if (tuple.size() != radices_.size()) fail(errc::shape_mismatch, "tuple arity mismatch");
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= radices_[i]) fail(errc::bad_index, "tuple component out of range");
    key = key * radices_[i] + tuple[i];
  }
  return key;
}

std::vector<std::uint64_t> DistributionTable::decode(std::uint64_t key) const {
  std::vector<std::uint64_t> tuple(radices_.size(), 0);
  for (std::size_t i = radices_.size(); i-- > 0;) {
    tuple[i] = key % radices_[i];
    key /= radices_[i];
  }
  return tuple;
}

void DistributionTable::add(std::uint64_t key, std::uint64_t count) {
  cells_[key] += count;
  total_ += count;
}

std::uint64_t DistributionTable::count(std::span<const std::uint64_t> tuple) const {
  auto it = cells_.find(encode(tuple));
  return it == cells_.end() ? 0 : it->second;
}

// Enumerates the joint outcome of (messages over N_k, inputs over N_k,
// neighborhood sum, [own input,] own key).  Input coordinates outside the
// closed neighborhood never enter the tuple, so each visited combination
// stands for exactly q^(number of free coordinates) full states; the
// resulting counts equal those of the full product enumeration.
//
// The independence decision is pure integer counting.  Within a conditioning
// class c, write Nc for the class count, Nc(x), Nc(w) for the marginals and
// Nc(x,w) for the joint.  Checking
//   Nc(x,w) * Nc == Nc(x) * Nc(w)
// on every occupied joint cell decides factorization outright: summing the
// cross-products over occupied cells gives Nc^2 when all of them pass, which
// is already the total product mass sum(Nc(x))*sum(Nc(w)), so every empty
// cell must have zero marginal product as well.
MiResult brute_force_mi(const Scheme& s, int user, const MiOptions& opt) {
  const Field& f = *s.field;
  MiResult result;
  result.user = user;
  result.states = mi_states_or_throw(s, opt);

  UserTables t = build_user_tables(s, user);
  const std::uint64_t q = t.q;
  const std::size_t nk = t.nk;
  const int K = s.topology.user_count();
  const bool full = opt.condition_on_self_input;

  // tuple layout: (block A, block B, sum, [own input,] own key); block A
  // holds the messages unless the factor roles are swapped
  const std::size_t arity = 2 * nk + (full ? 3 : 2);
  DistributionTable table(std::vector<std::uint64_t>(arity, q));

  const std::uint64_t weight =
      ipow64(q, static_cast<unsigned>(static_cast<std::uint64_t>(K) - nk - (full ? 1 : 0)));
  const std::uint64_t block = ipow64(q, static_cast<unsigned>(nk));
  const std::uint64_t suffix_size = full ? q * q * q : q * q;

  std::vector<std::uint64_t> w_digits(nk, 0);
  std::vector<std::uint64_t> x_digits(nk, 0);
  for (std::uint64_t n_idx = 0; n_idx < t.n_states; ++n_idx) {
    const std::uint64_t zk = t.key_row[nk][n_idx];
    std::fill(w_digits.begin(), w_digits.end(), 0);
    for (;;) {
      std::uint64_t sum = 0;
      for (std::size_t j = 0; j < nk; ++j) {
        x_digits[j] = t.add[w_digits[j] * q + t.key_row[j][n_idx]];
        sum = t.add[sum * q + w_digits[j]];
      }
      std::uint64_t a_code = pack(opt.swap_factors ? w_digits : x_digits, q);
      std::uint64_t b_code = pack(opt.swap_factors ? x_digits : w_digits, q);
      std::uint64_t base = (a_code * block + b_code) * suffix_size;
      if (full) {
        std::uint64_t head = base + sum * q * q + zk;
        for (std::uint64_t wk = 0; wk < q; ++wk) table.add(head + wk * q, weight);
      } else {
        table.add(base + sum * q + zk, weight);
      }
      std::size_t j = nk;
      while (j > 0 && w_digits[j - 1] == q - 1) w_digits[--j] = 0;
      if (j == 0) break;
      ++w_digits[j - 1];
    }
  }

  // class and marginal counts, keyed by packed suffix (and block code)
  std::map<std::uint64_t, std::uint64_t> cls, am, bm;
  for (const auto& [key, c] : table.cells()) {
    std::uint64_t suffix = key % suffix_size;
    std::uint64_t rest = key / suffix_size;
    cls[suffix] += c;
    am[suffix * block + rest / block] += c;
    bm[suffix * block + rest % block] += c;
  }

  for (const auto& [key, c] : table.cells()) {
    std::uint64_t suffix = key % suffix_size;
    std::uint64_t rest = key / suffix_size;
    std::uint64_t a_code = rest / block;
    std::uint64_t b_code = rest % block;
    std::uint64_t a_cnt = am[suffix * block + a_code];
    std::uint64_t b_cnt = bm[suffix * block + b_code];
    std::uint64_t c_cnt = cls[suffix];
    if (u128(c) * c_cnt == u128(a_cnt) * b_cnt) continue;

    MiWitness w;
    std::uint64_t sfx = suffix;
    w.self_key = f.element_at(sfx % q);
    sfx /= q;
    if (full) {
      w.self_input = f.element_at(sfx % q);
      sfx /= q;
    } else {
      w.self_input = f.zero();
    }
    w.neighborhood_sum = f.element_at(sfx % q);
    std::uint64_t x_code = opt.swap_factors ? b_code : a_code;
    std::uint64_t w_code = opt.swap_factors ? a_code : b_code;
    std::vector<std::uint64_t> xd(nk, 0), wd(nk, 0);
    for (std::size_t i = nk; i-- > 0;) {
      xd[i] = x_code % q;
      x_code /= q;
      wd[i] = w_code % q;
      w_code /= q;
    }
    for (std::size_t i = 0; i < nk; ++i) {
      w.messages.push_back(f.element_at(xd[i]));
      w.inputs.push_back(f.element_at(wd[i]));
    }
    w.joint_count = c;
    w.message_marginal = opt.swap_factors ? b_cnt : a_cnt;
    w.input_marginal = opt.swap_factors ? a_cnt : b_cnt;
    w.class_count = c_cnt;
    result.status = MiStatus::positive;
    result.witness = std::move(w);
    return result;
  }
  result.status = MiStatus::zero;
  return result;
}

bool recheck_witness(const Scheme& s, int user, const MiWitness& w, const MiOptions& opt) {
  const Field& f = *s.field;
  mi_states_or_throw(s, opt);
  UserTables t = build_user_tables(s, user);
  const std::uint64_t q = t.q;
  const std::size_t nk = t.nk;
  if (w.messages.size() != nk || w.inputs.size() != nk)
    fail(errc::shape_mismatch, "witness arity does not match the neighborhood");
  const bool full = opt.condition_on_self_input;
  // Under full conditioning only the slice with the witness's own-input value
  // is in the class; that value never affects the observed tuple, so each
  // visited combination contributes the free-coordinate weight exactly once.
  const std::uint64_t weight = ipow64(
      q, static_cast<unsigned>(static_cast<std::uint64_t>(s.topology.user_count()) - nk -
                               (full ? 1 : 0)));

  const std::uint64_t want_x = pack_elements(f, w.messages);
  const std::uint64_t want_w = pack_elements(f, w.inputs);
  const std::uint64_t want_sum = f.index_of(w.neighborhood_sum);
  const std::uint64_t want_zk = f.index_of(w.self_key);

  std::uint64_t cls = 0, xm = 0, wm = 0, joint = 0;
  std::vector<std::uint64_t> w_digits(nk, 0), x_digits(nk, 0);
  for (std::uint64_t n_idx = 0; n_idx < t.n_states; ++n_idx) {
    if (t.key_row[nk][n_idx] != want_zk) continue;
    std::fill(w_digits.begin(), w_digits.end(), 0);
    for (;;) {
      std::uint64_t sum = 0;
      for (std::size_t j = 0; j < nk; ++j) {
        x_digits[j] = t.add[w_digits[j] * q + t.key_row[j][n_idx]];
        sum = t.add[sum * q + w_digits[j]];
      }
      if (sum == want_sum) {
        cls += weight;
        bool xh = pack(x_digits, q) == want_x;
        bool wh = pack(w_digits, q) == want_w;
        if (xh) xm += weight;
        if (wh) wm += weight;
        if (xh && wh) joint += weight;
      }
      std::size_t j = nk;
      while (j > 0 && w_digits[j - 1] == q - 1) w_digits[--j] = 0;
      if (j == 0) break;
      ++w_digits[j - 1];
    }
  }
  return u128(joint) * cls != u128(xm) * wm;
}

std::vector<EntropyCheck> entropy_checks(const Scheme& s) {
  std::vector<EntropyCheck> out;
  const std::size_t d = static_cast<std::size_t>(s.d);
  for (int k = 1; k <= s.topology.user_count(); ++k) {
    EntropyCheck c;
    c.user = k;
    std::vector<int> closed = s.topology.neighbors(k);
    closed.push_back(k);
    std::size_t closed_rank = rank(submatrix_rows(s.key_matrix, user_rows(closed)));
    std::size_t self_rank = rank(submatrix_rows(s.key_matrix, user_rows({k})));
    c.closed_entropy = closed_rank;
    c.closed_floor = d;
    c.open_given_self = closed_rank - self_rank;
    c.open_floor = d - 1;
    out.push_back(c);
  }
  return out;
}

std::size_t empirical_entropy(const Scheme& s, const std::vector<int>& users,
                              std::uint64_t budget) {
  const Field& f = *s.field;
  const std::uint64_t q = f.size();
  u128 states = ipow128(q, static_cast<unsigned>(s.d));
  if (states > budget)
    fail(errc::budget_exceeded, "source-key space exceeds the budget");
  for (int u : users)
    if (u < 1 || u > s.topology.user_count()) fail(errc::bad_vertex, "no such user");

  std::map<std::vector<std::uint32_t>, std::uint64_t> outcomes;
  std::vector<std::uint64_t> digits(s.d, 0);
  std::vector<FieldElement> n_vec(s.d, f.zero());
  std::vector<std::uint32_t> key(users.size());
  const std::uint64_t n_states = static_cast<std::uint64_t>(states);
  for (std::uint64_t idx = 0; idx < n_states; ++idx) {
    for (int j = 0; j < s.d; ++j) n_vec[j] = f.element_at(digits[j]);
    for (std::size_t r = 0; r < users.size(); ++r) {
      FieldElement z = f.zero();
      for (int j = 0; j < s.d; ++j) z += s.key_matrix.at(users[r] - 1, j) * n_vec[j];
      key[r] = static_cast<std::uint32_t>(f.index_of(z));
    }
    ++outcomes[key];
    for (int j = s.d - 1; j >= 0; --j) {
      if (++digits[j] < q) break;
      digits[j] = 0;
    }
  }

  const std::uint64_t first = outcomes.begin()->second;
  for (const auto& [outcome, count] : outcomes)
    if (count != first)
      fail(errc::non_uniform_support, "key image is not uniform on its support");
  std::uint64_t support = outcomes.size();
  std::size_t ent = 0;
  std::uint64_t acc = 1;
  while (acc < support) {
    acc *= q;
    ++ent;
  }
  if (acc != support)
    fail(errc::non_uniform_support, "support size is not a power of the field size");
  return ent;
}

AuditReport audit_scheme(const Scheme& s, const MiOptions& opt) {
  AuditReport report;
  report.entropy = entropy_checks(s);
  for (const auto& e : report.entropy) report.entropy_pass = report.entropy_pass && e.ok();

  u128 states = ipow128(s.field->size(),
                        static_cast<unsigned>(s.topology.user_count() + s.d));
  for (int k = 1; k <= s.topology.user_count(); ++k) {
    if (states > opt.budget) {
      MiResult skipped;
      skipped.user = k;
      skipped.status = MiStatus::skipped;
      skipped.states =
          states > u128(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(states);
      report.mi.push_back(skipped);
      ++report.skipped;
      continue;
    }
    MiResult r = brute_force_mi(s, k, opt);
    report.mi_pass = report.mi_pass && r.status == MiStatus::zero;
    report.mi.push_back(std::move(r));
  }
  return report;
}

}  // namespace tsa
