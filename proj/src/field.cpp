#include "tsa/field.hpp"

#include <limits>

namespace tsa {
namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin; the witness set covers all n < 2^64.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

const Field& require_same(const FieldElement& x, const FieldElement& y) {
  if (x.field == nullptr || y.field == nullptr)
    fail(errc::invalid_argument, "operation on a default-constructed field element");
  if (x.field != y.field && !same_field(*x.field, *y.field))
    fail(errc::field_mismatch, "elements belong to different fields");
  return *x.field;
}

const Field& require_field(const FieldElement& x) {
  if (x.field == nullptr)
    fail(errc::invalid_argument, "operation on a default-constructed field element");
  return *x.field;
}

}  // namespace

Field::Field(std::uint64_t p, int degree, std::uint64_t delta)
    : p_(p), degree_(degree), delta_(delta), q_(degree == 2 ? p * p : p) {}

std::shared_ptr<const Field> Field::prime(std::uint64_t p) {
  if (!is_prime_u64(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
  if (p > (1ULL << 31)) fail(errc::invalid_argument, "modulus too large for this toolkit");
  return std::shared_ptr<const Field>(new Field(p, 1, 0));
}

std::shared_ptr<const Field> Field::quadratic(std::uint64_t p, std::uint64_t delta) {
  if (!is_prime_u64(p)) fail(errc::not_prime, std::to_string(p) + " is not prime");
  if (p > (1ULL << 31)) fail(errc::invalid_argument, "modulus too large for this toolkit");
  if (p == 2)
    fail(errc::invalid_argument, "quadratic extension requires odd characteristic");
  delta %= p;
  // Euler criterion; 0 counts as a square.
  if (delta == 0 || powmod(delta, (p - 1) / 2, p) == 1)
    fail(errc::delta_is_square, std::to_string(delta) + " is a square mod " + std::to_string(p));
  return std::shared_ptr<const Field>(new Field(p, 2, delta));
}

std::shared_ptr<const Field> make_field(std::uint64_t p, std::optional<std::uint64_t> delta) {
  return delta.has_value() ? Field::quadratic(p, *delta) : Field::prime(p);
}

std::optional<std::uint64_t> Field::delta() const {
  if (degree_ == 2) return delta_;
  return std::nullopt;
}

FieldElement Field::make(std::uint64_t a, std::uint64_t b) const {
  if (degree_ == 1 && b % p_ != 0)
    fail(errc::invalid_argument, "nonzero extension part in a prime field");
  return FieldElement{a % p_, b % p_, this};
}

FieldElement Field::from_int(long long v) const {
  long long m = static_cast<long long>(p_);
  long long r = v % m;
  if (r < 0) r += m;
  return make(static_cast<std::uint64_t>(r), 0);
}

FieldElement Field::element_at(std::uint64_t index) const {
  if (index >= q_) fail(errc::bad_index, "element index out of range");
  if (degree_ == 1) return FieldElement{index, 0, this};
  return FieldElement{index / p_, index % p_, this};
}

std::uint64_t Field::index_of(const FieldElement& x) const {
  if (degree_ == 1) return x.a;
  return x.a * p_ + x.b;
}

bool same_field(const Field& x, const Field& y) {
  if (x.p() != y.p() || x.degree() != y.degree()) return false;
  return x.degree() == 1 || x.delta() == y.delta();
}

bool operator==(const FieldElement& x, const FieldElement& y) {
  if (x.field == nullptr || y.field == nullptr) return x.field == y.field && x.a == y.a && x.b == y.b;
  return same_field(*x.field, *y.field) && x.a == y.a && x.b == y.b;
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  const Field& f = require_same(x, y);
  return FieldElement{(x.a + y.a) % f.p(), (x.b + y.b) % f.p(), x.field};
}

FieldElement operator-(const FieldElement& x) {
  const Field& f = require_field(x);
  return FieldElement{(f.p() - x.a) % f.p(), (f.p() - x.b) % f.p(), x.field};
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  require_same(x, y);
  return x + (-y);
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  const Field& f = require_same(x, y);
  const std::uint64_t p = f.p();
  if (f.degree() == 1) return FieldElement{mulmod(x.a, y.a, p), 0, x.field};
  // (a + bx)(c + dx) = (ac + bd*delta) + (ad + bc)x
  const std::uint64_t delta = *f.delta();
  std::uint64_t a = (mulmod(x.a, y.a, p) + mulmod(mulmod(x.b, y.b, p), delta, p)) % p;
  std::uint64_t b = (mulmod(x.a, y.b, p) + mulmod(x.b, y.a, p)) % p;
  return FieldElement{a, b, x.field};
}

FieldElement& operator+=(FieldElement& x, const FieldElement& y) { return x = x + y; }
FieldElement& operator-=(FieldElement& x, const FieldElement& y) { return x = x - y; }
FieldElement& operator*=(FieldElement& x, const FieldElement& y) { return x = x * y; }

FieldElement inv(const FieldElement& x) {
  const Field& f = require_field(x);
  if (x.is_zero()) fail(errc::division_by_zero, "inverse of zero");
  const std::uint64_t p = f.p();
  if (f.degree() == 1) return FieldElement{powmod(x.a, p - 2, p), 0, x.field};
  // 1/(a + bx) = (a - bx) / (a^2 - delta*b^2); the norm is nonzero because
  // delta is a non-square.
  const std::uint64_t delta = *f.delta();
  std::uint64_t norm = (mulmod(x.a, x.a, p) + p - mulmod(mulmod(x.b, x.b, p), delta, p) % p) % p;
  std::uint64_t ninv = powmod(norm, p - 2, p);
  return FieldElement{mulmod(x.a, ninv, p), mulmod((p - x.b) % p, ninv, p), x.field};
}

FieldElement Field::pow(const FieldElement& x, std::uint64_t e) const {
  FieldElement r = one();
  FieldElement base = x;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

FieldElement Field::root_of_unity(std::uint64_t n) const {
  if (n == 0) fail(errc::invalid_argument, "order must be positive");
  if ((q_ - 1) % n != 0)
    fail(errc::no_such_root,
         std::to_string(n) + " does not divide " + std::to_string(q_ - 1));
  for (std::uint64_t i = 1; i < q_; ++i) {
    FieldElement cand = element_at(i);
    FieldElement acc = cand;
    bool early = false;
    for (std::uint64_t m = 1; m < n; ++m) {
      if (acc == one()) {
        early = true;
        break;
      }
      acc = acc * cand;
    }
    if (!early && acc == one()) return cand;
  }
  fail(errc::no_such_root, "no element of order " + std::to_string(n));
}

std::optional<FieldElement> Field::sqrt(const FieldElement& x) const {
  for (std::uint64_t i = 0; i < q_; ++i) {
    FieldElement r = element_at(i);
    if (r * r == x) return r;
  }
  return std::nullopt;
}

std::string to_string(const FieldElement& x) {
  if (x.field != nullptr && x.field->degree() == 1) return std::to_string(x.a);
  return "(" + std::to_string(x.a) + "," + std::to_string(x.b) + ")";
}

}  // namespace tsa
