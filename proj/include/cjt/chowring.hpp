// Chern classes in A*(P^{r-1}) = Z[h]/(h^r), Chern characters, Todd class and
// Hirzebruch-Riemann-Roch in both directions.

#ifndef CJT_CHOWRING_HPP_
#define CJT_CHOWRING_HPP_

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cjt/gfalg.hpp"
#include "cjt/rational.hpp"

namespace cjt {

class NonIntegralChern : public Error {
 public:
  using Error::Error;
};

/// Total Chern class c_0 + c_1 h + ... + c_{r-1} h^{r-1} of a rank s bundle.
struct ChowClass {
  int r = 1;
  BigInt rank = 0;
  std::vector<BigInt> c;  // size r

  static ChowClass one(int r, BigInt rank = 1) {
    ChowClass k{r, std::move(rank), std::vector<BigInt>(r, 0)};
    k.c[0] = 1;
    return k;
  }
  /// c(O(a)) = 1 + a h.
  static ChowClass line(int r, long a) {
    auto k = one(r, 1);
    if (r > 1) k.c[1] = a;
    return k;
  }
  static ChowClass from(int r, BigInt rank, std::vector<BigInt> coeffs) {
    if (static_cast<int>(coeffs.size()) > r) throw Error("Chow class has more than r coefficients");
    coeffs.resize(r, 0);
    return {r, std::move(rank), std::move(coeffs)};
  }

  const BigInt& operator[](int m) const { return c[m]; }
  friend bool operator==(const ChowClass& a, const ChowClass& b) { return a.r == b.r && a.rank == b.rank && a.c == b.c; }

  /// e.g. "1+h+h^2", "1-2h".
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (int m = 0; m < r; ++m) {
      BigInt v = c[m];
      if (v == 0) continue;
      if (v < 0) {
        os << "-";
        v = -v;
      } else if (!first) {
        os << "+";
      }
      first = false;
      if (m == 0 || v != 1) os << v;
      if (m >= 1) os << "h";
      if (m >= 2) os << "^" << m;
    }
    return first ? "0" : os.str();
  }
};

inline void require_same_ambient(const ChowClass& a, const ChowClass& b) {
  if (a.r != b.r) throw Error("Chow classes live on different projective spaces");
}

inline ChowClass whitney(const ChowClass& a, const ChowClass& b) {
  require_same_ambient(a, b);
  ChowClass out{a.r, a.rank + b.rank, std::vector<BigInt>(a.r, 0)};
  for (int i = 0; i < a.r; ++i)
    for (int j = 0; i + j < a.r; ++j) out.c[i + j] += a.c[i] * b.c[j];
  return out;
}

/// c_m(F(i)) = sum_j i^j C(s-m+j, j) c_{m-j}(F).
inline ChowClass twist(const ChowClass& f, long i) {
  ChowClass out{f.r, f.rank, std::vector<BigInt>(f.r, 0)};
  for (int m = 0; m < f.r; ++m) {
    BigInt ip = 1;
    for (int j = 0; j <= m; ++j) {
      out.c[m] += ip * binomial(f.rank - m + j, j) * f.c[m - j];
      ip *= i;
    }
  }
  return out;
}

inline ChowClass dual_class(const ChowClass& f) {
  auto out = f;
  for (int m = 1; m < f.r; m += 2) out.c[m] = -out.c[m];
  return out;
}

/// Pullback along Frobenius: h |-> p h.
inline ChowClass frobenius_pullback(const ChowClass& f, int p) {
  auto out = f;
  BigInt pw = 1;
  for (int m = 0; m < f.r; ++m) {
    out.c[m] *= pw;
    pw *= p;
  }
  return out;
}

struct CongruenceReport {
  ChowClass product;
  int window = 0;                 // coefficients h^0..h^{window-1} were compared
  std::vector<BigInt> residues;   // product coefficients mod p
  std::vector<BigInt> expected;   // 1 - s h^{p-1} mod p
  bool holds = true;

  std::string str() const {
    std::ostringstream os;
    os << "c(F)c(F(1))...c(F(p-1)) = " << product.str() << "\n  mod p, up to h^" << window - 1 << ":";
    for (const auto& v : residues) os << " " << v;
    os << "\n  expected:";
    for (const auto& v : expected) os << " " << v;
    os << "\n  " << (holds ? "congruence holds" : "congruence FAILS");
    return os.str();
  }
};

/// c(F) c(F(1)) ... c(F(p-1)), checked against 1 - s h^{p-1} mod (p, h^p).
inline CongruenceReport product_twists(const ChowClass& f, int p) {
  CongruenceReport rep;
  rep.product = f;
  for (int i = 1; i < p; ++i) rep.product = whitney(rep.product, twist(f, i));
  rep.window = std::min(p, f.r);
  for (int m = 0; m < rep.window; ++m) {
    BigInt want = m == 0 ? BigInt(1) : BigInt(0);
    if (m == p - 1) want -= f.rank;
    rep.residues.push_back(mod_floor(rep.product.c[m], p));
    rep.expected.push_back(mod_floor(want, p));
    if (rep.residues.back() != rep.expected.back()) rep.holds = false;
  }
  return rep;
}

struct DivisibilityReport {
  int p = 2;
  std::vector<std::pair<int, BigInt>> residues;  // (m, c_m mod p) for 1 <= m <= p-2
  bool pass = true;

  bool vacuous() const { return residues.empty(); }
  std::string str() const {
    std::ostringstream os;
    if (vacuous()) {
      os << "no Chern numbers constrained for p = " << p << " (vacuous pass)";
      return os.str();
    }
    for (const auto& [m, v] : residues) os << "c_" << m << " mod " << p << " = " << v << "\n";
    os << (pass ? "pass" : "FAIL");
    return os.str();
  }
};

/// p | c_m for 1 <= m <= p-2 (only m < r is visible on P^{r-1}).
inline DivisibilityReport divisibility_check(const ChowClass& f, int p) {
  DivisibilityReport rep;
  rep.p = p;
  for (int m = 1; m <= p - 2 && m < f.r; ++m) {
    rep.residues.emplace_back(m, mod_floor(f.c[m], p));
    if (rep.residues.back().second != 0) rep.pass = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Chern characters

struct ChernCharacter {
  int r = 1;
  std::vector<Rational> ch;  // ch_0 .. ch_{r-1}

  friend bool operator==(const ChernCharacter& a, const ChernCharacter& b) { return a.r == b.r && a.ch == b.ch; }
};

/// Newton's identities, with p_m = m! ch_m the power sums of the Chern roots.
inline ChernCharacter chern_character(const ChowClass& f) {
  std::vector<Rational> e(f.r), pw(f.r);
  for (int m = 0; m < f.r; ++m) e[m] = Rational(f.c[m]);
  ChernCharacter out{f.r, std::vector<Rational>(f.r)};
  out.ch[0] = Rational(f.rank);
  for (int m = 1; m < f.r; ++m) {
    Rational s = (m % 2 ? 1 : -1) * Rational(m) * e[m];
    for (int k = 1; k < m; ++k) s += (k % 2 ? 1 : -1) * e[k] * pw[m - k];
    pw[m] = s;
    out.ch[m] = s / Rational(factorial(m));
  }
  return out;
}

/// Inverse of chern_character; throws NonIntegralChern if any c_m or the rank
/// fails to be an integer.
inline ChowClass chern_class(const ChernCharacter& x) {
  if (!is_integer(x.ch[0])) throw NonIntegralChern("rank " + x.ch[0].str() + " is not an integer");
  std::vector<Rational> pw(x.r), e(x.r);
  for (int m = 1; m < x.r; ++m) pw[m] = x.ch[m] * Rational(factorial(m));
  e[0] = 1;
  ChowClass out = ChowClass::one(x.r, boost::multiprecision::numerator(x.ch[0]));
  for (int m = 1; m < x.r; ++m) {
    Rational s = 0;
    for (int k = 1; k <= m; ++k) s += (k % 2 ? 1 : -1) * e[m - k] * pw[k];
    e[m] = s / Rational(m);
    if (!is_integer(e[m])) throw NonIntegralChern("c_" + std::to_string(m) + " = " + e[m].str() + " is not an integer");
    out.c[m] = boost::multiprecision::numerator(e[m]);
  }
  return out;
}

/// Todd class of P^{r-1}: (h / (1 - e^{-h}))^r truncated below h^r.
inline std::vector<Rational> todd_class(int r) {
  // (1 - e^{-h}) / h = sum_k (-1)^k h^k / (k+1)!
  std::vector<Rational> q(r), inv(r, 0);
  for (int k = 0; k < r; ++k) q[k] = Rational(k % 2 ? -1 : 1) / Rational(factorial(k + 1));
  inv[0] = 1;
  for (int k = 1; k < r; ++k) {
    Rational s = 0;
    for (int j = 1; j <= k; ++j) s += q[j] * inv[k - j];
    inv[k] = -s;
  }
  std::vector<Rational> td(r, 0);
  td[0] = 1;
  for (int t = 0; t < r; ++t) {
    std::vector<Rational> nx(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; i + j < r; ++j) nx[i + j] += td[i] * inv[j];
    td = std::move(nx);
  }
  return td;
}

/// chi(F(d)) as a polynomial in d: the h^{r-1} coefficient of
/// ch(F) e^{dh} Td(P^{r-1}).
inline QPoly hrr_polynomial(const ChernCharacter& x) {
  const int r = x.r;
  auto td = todd_class(r);
  std::vector<Rational> coeffs(r, 0);
  for (int a = 0; a < r; ++a)
    for (int b = 0; a + b < r; ++b)
      coeffs[b] += x.ch[a] * td[r - 1 - a - b] / Rational(factorial(b));
  return QPoly(std::move(coeffs));
}

inline Rational hrr_chi(const ChernCharacter& x, long d) { return hrr_polynomial(x)(Rational(d)); }

/// The Chern character whose Hilbert polynomial on P^{r-1} is `chi`.
inline ChernCharacter character_from_hilbert(const QPoly& chi, int r) {
  if (chi.degree() > r - 1) throw NonIntegralChern("Hilbert polynomial has degree above r-1");
  auto td = todd_class(r);
  ChernCharacter x{r, std::vector<Rational>(r, 0)};
  // Coefficient of d^b involves ch_a for a <= r-1-b, with ch_{r-1-b} weighted 1/b!.
  for (int b = r - 1; b >= 0; --b) {
    int a0 = r - 1 - b;
    Rational rest = 0;
    for (int a = 0; a < a0; ++a) rest += x.ch[a] * td[r - 1 - a - b] / Rational(factorial(b));
    x.ch[a0] = (chi.coeff(b) - rest) * Rational(factorial(b));
  }
  return x;
}

inline ChowClass chern_from_hilbert(const QPoly& chi, int r) { return chern_class(character_from_hilbert(chi, r)); }

}  // namespace cjt

#endif  // CJT_CHOWRING_HPP_
