// Exact integers, rationals and univariate rational polynomials.

#ifndef CJT_RATIONAL_HPP_
#define CJT_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace cjt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Generalized binomial coefficient C(n, k) for any integer n and k >= 0.
inline BigInt binomial(const BigInt& n, long k) {
  if (k < 0) return 0;
  BigInt num = 1, den = 1;
  for (long j = 0; j < k; ++j) {
    num *= (n - j);
    den *= (j + 1);
  }
  return num / den;
}

inline BigInt factorial(long n) {
  BigInt f = 1;
  for (long k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Number of monomials of degree d in r variables, zero for d < 0.
inline std::size_t monomial_count(long d, int r) {
  if (d < 0) return 0;
  return static_cast<std::size_t>(binomial(BigInt(d + r - 1), r - 1));
}

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline BigInt mod_floor(const BigInt& a, long m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Polynomial in one variable with rational coefficients, constant first.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  /// Interpolating polynomial of degree < xs.size() (Newton form).
  static QPoly interpolate(const std::vector<long>& xs, const std::vector<Rational>& ys) {
    const std::size_t n = xs.size();
    std::vector<Rational> dd(ys.begin(), ys.end());
    for (std::size_t lvl = 1; lvl < n; ++lvl)
      for (std::size_t i = n - 1; i >= lvl; --i) {
        dd[i] = (dd[i] - dd[i - 1]) / Rational(xs[i] - xs[i - lvl]);
        if (i == lvl) break;
      }
    QPoly result;
    QPoly basis(std::vector<Rational>{1});
    for (std::size_t i = 0; i < n; ++i) {
      result = result + basis * dd[i];
      basis = basis * QPoly(std::vector<Rational>{Rational(-xs[i]), 1});
    }
    return result;
  }

  /// C(x + a, k) as a polynomial in x.
  static QPoly binomial_in(long a, long k) {
    QPoly out(std::vector<Rational>{1});
    for (long j = 0; j < k; ++j) out = out * QPoly(std::vector<Rational>{Rational(a - j), 1});
    return out * Rational(1, static_cast<long>(1)) / Rational(factorial(k));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
  }

  QPoly operator+(const QPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(k) + o.coeff(k);
    return QPoly(std::move(r));
  }
  QPoly operator-(const QPoly& o) const { return *this + o * Rational(-1); }
  QPoly operator*(const Rational& s) const {
    auto r = c_;
    for (auto& x : r) x *= s;
    return QPoly(std::move(r));
  }
  QPoly operator/(const Rational& s) const { return *this * (Rational(1) / s); }
  QPoly operator*(const QPoly& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return QPoly(std::move(r));
  }
  /// p(x + s).
  QPoly shifted(long s) const {
    QPoly out;
    QPoly lin(std::vector<Rational>{Rational(s), 1});
    QPoly pw(std::vector<Rational>{1});
    for (const auto& c : c_) {
      out = out + pw * c;
      pw = pw * lin;
    }
    return out;
  }

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  /// e.g. "1/2*d^2 + 3/2*d + 1".
  std::string str(const std::string& var = "d") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      Rational c = c_[k];
      if (c == 0) continue;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      if (k == 0 || c != 1) {
        os << c;
        if (k > 0) os << "*";
      }
      if (k >= 1) os << var;
      if (k >= 2) os << "^" << k;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

}  // namespace cjt

#endif  // CJT_RATIONAL_HPP_
