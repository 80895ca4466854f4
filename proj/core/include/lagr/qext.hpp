#pragma once

#include <string>
#include <utility>

#include "lagr/rat.hpp"

namespace lagr {

// Element a + b*sqrt(d) of a real or imaginary quadratic extension of Q.
// d is squarefree and fixed to 0 whenever b == 0, so equality is plain
// member comparison. Mixing two different extensions is an error, not an
// implicit tower: the library never needs more than one square root at a
// time, and silently compounding them would hide bugs.
class QExt {
 public:
  QExt() : a_(0), b_(0), d_(0) {}
  QExt(long n) : a_(n), b_(0), d_(0) {}  // NOLINT: implicit by design
  QExt(Rat r) : a_(std::move(r)), b_(0), d_(0) {}
  QExt(Rat a, Rat b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (b_ == 0) d_ = 0;
    check(d_ != 1 && (b_ == 0) == (d_ == 0), "QExt: d must be squarefree, nonzero with irrational part");
  }

  const Rat& rational_part() const { return a_; }
  const Rat& radical_part() const { return b_; }
  long radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  friend bool operator==(const QExt& x, const QExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend bool operator!=(const QExt& x, const QExt& y) { return !(x == y); }

  QExt operator-() const { return raw(-a_, -b_, d_); }

  friend QExt operator+(const QExt& x, const QExt& y) {
    long d = merged(x, y);
    return raw(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QExt operator-(const QExt& x, const QExt& y) { return x + (-y); }

  friend QExt operator*(const QExt& x, const QExt& y) {
    long d = merged(x, y);
    Rat a = x.a_ * y.a_;
    if (d != 0) a += x.b_ * y.b_ * rat(d);
    return raw(a, x.a_ * y.b_ + x.b_ * y.a_, d);
  }

  friend QExt operator/(const QExt& x, const QExt& y) { return x * y.inverse(); }

  QExt& operator+=(const QExt& y) { return *this = *this + y; }
  QExt& operator-=(const QExt& y) { return *this = *this - y; }
  QExt& operator*=(const QExt& y) { return *this = *this * y; }
  QExt& operator/=(const QExt& y) { return *this = *this / y; }

  QExt conjugate() const { return raw(a_, -b_, d_); }

  // a^2 - b^2 d; zero only for the zero element since d is not a square.
  Rat norm() const { return a_ * a_ - b_ * b_ * rat(d_); }

  QExt inverse() const {
    Rat n = norm();
    check(n != 0, "QExt: division by zero");
    return raw(a_ / n, -b_ / n, d_);
  }

  std::string str() const {
    if (is_rational()) return a_.get_str();
    std::string s;
    if (a_ != 0) s = a_.get_str() + (b_ > 0 ? "+" : "");
    if (b_ == 1)
      s += "sqrt(" + std::to_string(d_) + ")";
    else if (b_ == -1)
      s += "-sqrt(" + std::to_string(d_) + ")";
    else
      s += b_.get_str() + "*sqrt(" + std::to_string(d_) + ")";
    return s;
  }

 private:
  static QExt raw(Rat a, Rat b, long d) {
    QExt r;
    r.a_ = std::move(a);
    r.b_ = std::move(b);
    r.d_ = (r.b_ == 0) ? 0 : d;
    return r;
  }

  static long merged(const QExt& x, const QExt& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
    throw check_error("QExt: mixing sqrt(" + std::to_string(x.d_) + ") with sqrt(" + std::to_string(y.d_) + ")");
  }

  Rat a_, b_;
  long d_;
};

// Splits m into s^2 * f with f squarefree (m != 0; sign stays on f).
inline void squarefree_split(long m, long& s, long& f) {
  check(m != 0, "squarefree_split: zero input");
  s = 1;
  long sign = m < 0 ? -1 : 1;
  m = m < 0 ? -m : m;
  for (long k = 2; k * k <= m; ++k) {
    while (m % (k * k) == 0) {
      m /= k * k;
      s *= k;
    }
  }
  f = sign * m;
}

// Exact square root of a rational as an element of Q(sqrt(f)).
inline QExt qext_sqrt(const Rat& q) {
  if (q == 0) return QExt();
  Rat c = q;
  // q = num/den = (num*den)/den^2, so sqrt(q) = sqrt(num*den)/den.
  Int nd = c.get_num() * c.get_den();
  check(nd.fits_slong_p(), "qext_sqrt: radicand too large");
  long s, f;
  squarefree_split(nd.get_si(), s, f);
  Rat outer = Rat(s) / c.get_den();
  if (f == 1) return QExt(outer);
  return QExt(Rat(0), outer, f);
}

}  // namespace lagr
