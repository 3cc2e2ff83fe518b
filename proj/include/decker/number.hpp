#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace decker {

// Exact rational. gmp keeps it canonical (reduced, positive denominator).
using Scalar = mpq_class;
using Integer = mpz_class;

Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& q);
int sign(const Scalar& q);

class FieldMismatch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Element a + b*sqrt(d) of a real quadratic field.
///
/// d is either 0 (rational value, b == 0) or a positive integer that is not a
/// perfect square; small square factors are pulled into b. Arithmetic is only
/// defined between values of the same field (or with rationals); comparisons
/// work across fields and are decided algebraically.
class Algebraic {
 public:
  Algebraic() = default;
  Algebraic(const Scalar& q) : a_(q) {}  // NOLINT(implicit)
  Algebraic(long q) : a_(q) {}           // NOLINT(implicit)
  Algebraic(const Scalar& a, const Scalar& b, const Integer& d);

  /// Exact square root of a nonnegative rational.
  static Algebraic sqrt_of(const Scalar& q);

  const Scalar& rational_part() const { return a_; }
  const Scalar& radical_coeff() const { return b_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return d_ == 0; }
  const Scalar& as_rational() const;

  Algebraic conjugate() const;

  friend Algebraic operator+(const Algebraic& x, const Algebraic& y);
  friend Algebraic operator-(const Algebraic& x, const Algebraic& y);
  friend Algebraic operator*(const Algebraic& x, const Algebraic& y);
  friend Algebraic operator/(const Algebraic& x, const Algebraic& y);
  Algebraic operator-() const;
  Algebraic& operator+=(const Algebraic& y) { return *this = *this + y; }
  Algebraic& operator-=(const Algebraic& y) { return *this = *this - y; }
  Algebraic& operator*=(const Algebraic& y) { return *this = *this * y; }

  friend bool operator==(const Algebraic& x, const Algebraic& y);
  friend std::strong_ordering operator<=>(const Algebraic& x, const Algebraic& y);

  int sign() const;
  double to_double() const;
  /// Decimal approximation for display; never used in predicates.
  std::string to_decimal(int digits) const;
  /// Exact text form "a", "a+b*sqrt(d)" or "a-b*sqrt(d)".
  std::string str() const;
  static Algebraic parse(std::string_view text);

 private:
  void normalize();

  Scalar a_{0};
  Scalar b_{0};
  Integer d_{0};
};

int compare(const Algebraic& x, const Algebraic& y);

/// Sign of p + q*sqrt(d1) + r*sqrt(d2), decided exactly.
int sign_of_sum(const Scalar& p, const Scalar& q, const Integer& d1,
                const Scalar& r, const Integer& d2);

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Scalar simplest_between(const Scalar& lo, const Scalar& hi);

}  // namespace decker
