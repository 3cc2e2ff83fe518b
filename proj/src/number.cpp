#include "decker/number.hpp"

#include <gmp.h>

#include <cctype>
#include <vector>

namespace decker {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Integer floor_of(const Scalar& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool perfect_square(const Integer& n) { return mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

int sgn(const Scalar& q) { return ::sgn(q); }

// sign of a + b*sqrt(e), e >= 0
int sign_two(const Scalar& a, const Scalar& b, const Integer& e) {
  int sa = sgn(a);
  int sb = (e == 0) ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Scalar lhs = a * a;
  Scalar rhs = b * b * Scalar(e);
  int c = cmp(lhs, rhs);
  if (c > 0) return sa;
  if (c < 0) return sb;
  return 0;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty number");
  bool neg = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  Scalar result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den)) throw std::invalid_argument("bad rational: " + std::string(text));
    Integer n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    result = Scalar(n, d);
    result.canonicalize();
  } else {
    long exponent = 0;
    std::string_view mant = body;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      mant = body.substr(0, e);
      auto ex = body.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!is_digits(ex) || ex.size() > 6) throw std::invalid_argument("bad exponent: " + std::string(text));
      exponent = std::stol(std::string(ex));
      if (eneg) exponent = -exponent;
    }
    std::string digits;
    long frac = 0;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
      auto ip = mant.substr(0, dot);
      auto fp = mant.substr(dot + 1);
      if ((!ip.empty() && !is_digits(ip)) || (!fp.empty() && !is_digits(fp)) || (ip.empty() && fp.empty()))
        throw std::invalid_argument("bad decimal: " + std::string(text));
      digits = std::string(ip) + std::string(fp);
      frac = static_cast<long>(fp.size());
    } else {
      if (!is_digits(mant)) throw std::invalid_argument("bad number: " + std::string(text));
      digits = std::string(mant);
    }
    Integer n(digits, 10);
    long shift = exponent - frac;
    if (shift >= 0) {
      result = Scalar(n * pow10(static_cast<unsigned long>(shift)));
    } else {
      result = Scalar(n, pow10(static_cast<unsigned long>(-shift)));
      result.canonicalize();
    }
  }
  return neg ? Scalar(-result) : result;
}

std::string to_string(const Scalar& q) { return q.get_str(); }

int sign(const Scalar& q) { return sgn(q); }

int sign_of_sum(const Scalar& p, const Scalar& q, const Integer& d1, const Scalar& r, const Integer& d2) {
  int sq = (d1 == 0) ? 0 : sgn(q);
  int sr = (d2 == 0) ? 0 : sgn(r);
  // s = sign(q sqrt d1 + r sqrt d2)
  int s;
  if (sq == 0) {
    s = sr;
  } else if (sr == 0 || sq == sr) {
    s = sq;
  } else {
    int c = cmp(Scalar(q * q * Scalar(d1)), Scalar(r * r * Scalar(d2)));
    s = c > 0 ? sq : (c < 0 ? sr : 0);
  }
  int sp = sgn(p);
  if (sp == 0) return s;
  if (s == 0 || s == sp) return sp;
  // opposite signs: compare (q sqrt d1 + r sqrt d2)^2 with p^2
  Scalar q2d1 = (sq == 0) ? Scalar(0) : Scalar(q * q * Scalar(d1));
  Scalar r2d2 = (sr == 0) ? Scalar(0) : Scalar(r * r * Scalar(d2));
  Scalar cross = (sq == 0 || sr == 0) ? Scalar(0) : Scalar(2 * q * r);
  Integer e = (sq == 0 || sr == 0) ? Integer(0) : Integer(d1 * d2);
  Scalar rest = q2d1 + r2d2 - p * p;
  if (e != 0 && perfect_square(e)) {
    rest += cross * Scalar(isqrt(e));
    cross = 0;
    e = 0;
  }
  int c = sign_two(rest, cross, e);
  return c > 0 ? s : (c < 0 ? sp : 0);
}

Algebraic::Algebraic(const Scalar& a, const Scalar& b, const Integer& d) : a_(a), b_(b), d_(d) {
  if (d_ < 0) throw std::domain_error("negative radicand");
  normalize();
}

void Algebraic::normalize() {
  if (b_ == 0 || d_ == 0) {
    b_ = 0;
    d_ = 0;
    return;
  }
  if (perfect_square(d_)) {
    a_ += b_ * Scalar(isqrt(d_));
    b_ = 0;
    d_ = 0;
  }
}

Algebraic Algebraic::sqrt_of(const Scalar& q) {
  if (q < 0) throw std::domain_error("square root of negative rational");
  if (q == 0) return Algebraic();
  const Integer& den = q.get_den();
  Integer n = q.get_num() * den;
  Integer outside = 1;
  if (perfect_square(n)) {
    Scalar root(isqrt(n), den);
    root.canonicalize();
    return Algebraic(root);
  }
  for (unsigned long f = 2; f <= 2000; ++f) {
    Integer f2 = f * f;
    if (f2 > n) break;
    while (mpz_divisible_p(n.get_mpz_t(), f2.get_mpz_t())) {
      n /= f2;
      outside *= f;
    }
  }
  Scalar b(outside, den);
  b.canonicalize();
  return Algebraic(Scalar(0), b, n);
}

const Scalar& Algebraic::as_rational() const {
  if (!is_rational()) throw std::domain_error("value is irrational: " + str());
  return a_;
}

Algebraic Algebraic::conjugate() const {
  Algebraic r = *this;
  r.b_ = -r.b_;
  return r;
}

Algebraic Algebraic::operator-() const {
  Algebraic r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

namespace {

// Brings y's radical onto x's radicand when both describe the same field.
Integer common_radicand(const Algebraic& x, const Algebraic& y, Scalar& yb) {
  yb = y.radical_coeff();
  if (x.is_rational()) return y.radicand();
  if (y.is_rational() || x.radicand() == y.radicand()) return x.radicand();
  Integer prod = x.radicand() * y.radicand();
  if (!perfect_square(prod))
    throw FieldMismatch("arithmetic across quadratic fields: " + x.str() + " and " + y.str());
  // sqrt(d2) = sqrt(d1*d2) / d1 * sqrt(d1)
  Scalar factor(isqrt(prod), x.radicand());
  factor.canonicalize();
  yb = yb * factor;
  return x.radicand();
}

}  // namespace

Algebraic operator+(const Algebraic& x, const Algebraic& y) {
  Scalar yb;
  Integer d = common_radicand(x, y, yb);
  return Algebraic(x.a_ + y.a_, x.b_ + yb, d);
}

Algebraic operator-(const Algebraic& x, const Algebraic& y) { return x + (-y); }

Algebraic operator*(const Algebraic& x, const Algebraic& y) {
  Scalar yb;
  Integer d = common_radicand(x, y, yb);
  Scalar a = x.a_ * y.a_ + x.b_ * yb * Scalar(d);
  Scalar b = x.a_ * yb + x.b_ * y.a_;
  return Algebraic(a, b, d);
}

Algebraic operator/(const Algebraic& x, const Algebraic& y) {
  Scalar yb;
  Integer d = common_radicand(x, y, yb);
  Scalar norm = y.a_ * y.a_ - yb * yb * Scalar(d);
  if (norm == 0) throw std::domain_error("division by zero");
  // x * conj(y) / norm
  Scalar a = (x.a_ * y.a_ - x.b_ * yb * Scalar(d)) / norm;
  Scalar b = (x.b_ * y.a_ - x.a_ * yb) / norm;
  return Algebraic(a, b, d);
}

int compare(const Algebraic& x, const Algebraic& y) {
  return sign_of_sum(x.rational_part() - y.rational_part(), x.radical_coeff(), x.radicand(),
                     -y.radical_coeff(), y.radicand());
}

bool operator==(const Algebraic& x, const Algebraic& y) { return compare(x, y) == 0; }

std::strong_ordering operator<=>(const Algebraic& x, const Algebraic& y) {
  int c = compare(x, y);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int Algebraic::sign() const { return sign_two(a_, b_, d_); }

double Algebraic::to_double() const {
  mpf_class v(a_, 256);
  if (!is_rational()) {
    mpf_class r(d_, 256);
    r = sqrt(r);
    v += mpf_class(b_, 256) * r;
  }
  return v.get_d();
}

std::string Algebraic::to_decimal(int digits) const {
  mpf_class v(a_, 512);
  if (!is_rational()) {
    mpf_class r(d_, 512);
    r = sqrt(r);
    v += mpf_class(b_, 512) * r;
  }
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, v.get_mpf_t());
  return std::string(buf.data());
}

std::string Algebraic::str() const {
  if (is_rational()) return a_.get_str();
  std::string s = a_.get_str();
  s += (b_ < 0) ? "-" : "+";
  s += Scalar(abs(b_)).get_str();
  s += "*sqrt(" + d_.get_str() + ")";
  return s;
}

Algebraic Algebraic::parse(std::string_view text) {
  auto pos = text.find("*sqrt(");
  if (pos == std::string_view::npos) return Algebraic(parse_scalar(text));
  if (text.back() != ')') throw std::invalid_argument("bad algebraic: " + std::string(text));
  std::string_view dtext = text.substr(pos + 6, text.size() - pos - 7);
  size_t sep = pos;
  while (sep > 0 && text[sep - 1] != '+' && text[sep - 1] != '-') --sep;
  if (sep == 0) throw std::invalid_argument("bad algebraic: " + std::string(text));
  --sep;
  Scalar a = sep == 0 ? Scalar(0) : parse_scalar(text.substr(0, sep));
  Scalar b = parse_scalar(text.substr(sep + 1, pos - sep - 1));
  if (text[sep] == '-') b = -b;
  if (!is_digits(dtext)) throw std::invalid_argument("bad radicand: " + std::string(text));
  return Algebraic(a, b, Integer(std::string(dtext), 10));
}

Scalar simplest_between(const Scalar& lo, const Scalar& hi) {
  if (lo > hi) return simplest_between(hi, lo);
  if (lo <= 0 && hi >= 0) return Scalar(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  Integer fl = floor_of(lo);
  if (Scalar(fl) == lo) return lo;
  if (fl < floor_of(hi)) return Scalar(fl + 1);
  Scalar lo_frac = lo - Scalar(fl);
  Scalar hi_frac = hi - Scalar(fl);
  Scalar inner = simplest_between(Scalar(1) / hi_frac, Scalar(1) / lo_frac);
  return Scalar(fl) + Scalar(1) / inner;
}

}  // namespace decker
