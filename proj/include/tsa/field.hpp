#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "tsa/errors.hpp"

namespace tsa {

class Field;

/// One element of a prime field F_p or of a quadratic extension
/// F_p[x]/(x^2 - delta), stored as the residue pair (a, b) = a + b*x.
/// b is always 0 in a prime field.  Elements of distinct fields never
/// mix in one operation; attempting to throws FieldMismatch.
struct FieldElement {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  const Field* field = nullptr;

  bool is_zero() const { return a == 0 && b == 0; }
};

bool operator==(const FieldElement& x, const FieldElement& y);
inline bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

FieldElement operator+(const FieldElement& x, const FieldElement& y);
FieldElement operator-(const FieldElement& x, const FieldElement& y);
FieldElement operator*(const FieldElement& x, const FieldElement& y);
FieldElement operator-(const FieldElement& x);
FieldElement& operator+=(FieldElement& x, const FieldElement& y);
FieldElement& operator-=(FieldElement& x, const FieldElement& y);
FieldElement& operator*=(FieldElement& x, const FieldElement& y);

/// Multiplicative inverse.  Throws DivisionByZero on zero input.
FieldElement inv(const FieldElement& x);

std::string to_string(const FieldElement& x);

/// Immutable description of F_p (degree 1) or F_p[x]/(x^2 - delta) (degree 2).
/// Always heap-allocated and shared; FieldElement keeps a raw pointer into it,
/// so the owning shared_ptr must outlive the elements.
///
/// The canonical ordering of elements is lexicographic on (a, b); it fixes a
/// deterministic enumeration used for root and square-root selection so that
/// generated schemes are byte-reproducible.
class Field {
 public:
  /// F_p.  p must be prime (deterministic Miller-Rabin); p = 2 is allowed.
  static std::shared_ptr<const Field> prime(std::uint64_t p);

  /// F_p[x]/(x^2 - delta).  Requires p an odd prime and delta a non-square
  /// mod p (otherwise the quotient is not a field); throws DeltaIsSquare to
  /// signal the caller should stay in F_p.
  static std::shared_ptr<const Field> quadratic(std::uint64_t p, std::uint64_t delta);

  std::uint64_t p() const { return p_; }
  int degree() const { return degree_; }
  std::optional<std::uint64_t> delta() const;
  /// q = p^degree, the number of elements.
  std::uint64_t size() const { return q_; }

  FieldElement make(std::uint64_t a, std::uint64_t b = 0) const;
  FieldElement from_int(long long v) const;  // reduces signed values, e.g. -2
  FieldElement zero() const { return make(0, 0); }
  FieldElement one() const { return make(1, 0); }

  /// Canonical enumeration: index i <-> element at position i in (a, b)
  /// lexicographic order.
  FieldElement element_at(std::uint64_t index) const;
  std::uint64_t index_of(const FieldElement& x) const;

  FieldElement pow(const FieldElement& x, std::uint64_t e) const;

  /// The canonically first element of exact multiplicative order n.
  /// Requires n | q - 1; throws NoSuchRoot otherwise.
  FieldElement root_of_unity(std::uint64_t n) const;

  /// The canonically smaller of the two square roots of x, if any exists.
  /// Absence is a value, not an error.
  std::optional<FieldElement> sqrt(const FieldElement& x) const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field(std::uint64_t p, int degree, std::uint64_t delta);

  std::uint64_t p_;
  int degree_;
  std::uint64_t delta_;  // meaningful only when degree_ == 2
  std::uint64_t q_;
};

/// Same mathematical field (p, degree, delta all equal), regardless of which
/// instance the elements came from.
bool same_field(const Field& x, const Field& y);

/// Factory matching the construction branch: delta given selects degree 2.
std::shared_ptr<const Field> make_field(std::uint64_t p,
                                        std::optional<std::uint64_t> delta = std::nullopt);

}  // namespace tsa
