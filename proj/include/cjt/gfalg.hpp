// Exact arithmetic over GF(p) and GF(p^e) together with deterministic dense
// linear algebra (echelon forms, rank, kernels, linear solves).
//
// Elements of GF(p^e) are packed as integers sum_k c_k p^k where c_k is the
// coefficient of t^k in the residue modulo the defining polynomial. The
// prime subfield is therefore the range [0, p).

#ifndef CJT_GFALG_HPP_
#define CJT_GFALG_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cjt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

// Dense polynomials over GF(p), coefficients low degree first.
using Poly = std::vector<int>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int inv_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
  }
  return r;
}

// Remainder of a modulo a nonzero b.
inline Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  int lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    int c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k)
      a[shift + k] = ((a[shift + k] - c * b[k]) % p + p) % p;
    trim(a);
  }
  return a;
}

// Monic polynomial of the given degree whose lower coefficients are the
// base-p digits of idx (c_0 least significant).
inline Poly monic_from_index(int p, int degree, long long idx) {
  Poly f(degree + 1, 0);
  f[degree] = 1;
  for (int k = 0; k < degree; ++k) {
    f[k] = static_cast<int>(idx % p);
    idx /= p;
  }
  return f;
}

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, int p) {
  int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= deg; ++d) {
    long long count = ipow(p, d);
    for (long long idx = 0; idx < count; ++idx) {
      if (poly_mod(f, monic_from_index(p, d, idx), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// A finite field GF(p^e), 2 <= p <= 13, 1 <= e <= 4.
///
/// The defining polynomial is the least monic irreducible polynomial of
/// degree e when the lower coefficients are read as a base-p number with the
/// coefficient of t^{e-1} most significant. For e = 1 the modulus is t.
class Field {
 public:
  using Elem = std::uint16_t;

  static constexpr int kMaxPrime = 13;
  static constexpr int kMaxDegree = 4;

  static std::shared_ptr<const Field> make(int p, int e = 1) {
    if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    if (p > kMaxPrime) throw FieldError("characteristic " + std::to_string(p) + " exceeds supported maximum 13");
    if (e < 1) throw FieldError("extension degree must be at least 1");
    if (e > kMaxDegree) throw FieldError("extension degree must be at most 4");
    return std::shared_ptr<const Field>(new Field(p, e));
  }

  int p() const { return p_; }
  int degree() const { return e_; }
  std::uint32_t order() const { return q_; }
  bool is_prime_field() const { return e_ == 1; }
  /// Coefficients of the modulus, constant term first; always monic.
  const std::vector<int>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const {
    if (e_ == 1) return static_cast<Elem>((a + b) % p_);
    return digitwise(a, b, +1);
  }
  Elem sub(Elem a, Elem b) const {
    if (e_ == 1) return static_cast<Elem>((a + p_ - b) % p_);
    return digitwise(a, b, -1);
  }
  Elem neg(Elem a) const { return sub(0, a); }
  Elem mul(Elem a, Elem b) const {
    if (e_ == 1) return static_cast<Elem>(a * b % p_);
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw FieldError("division by zero");
    if (e_ == 1) return static_cast<Elem>(detail::inv_mod(a, p_));
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, unsigned long long n) const {
    Elem r = 1;
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }
  Elem frobenius(Elem a) const { return pow(a, static_cast<unsigned>(p_)); }
  /// Image of an integer in the prime subfield.
  Elem from_int(long long v) const { return static_cast<Elem>(((v % p_) + p_) % p_); }

  /// A generator of the multiplicative group.
  Elem primitive() const { return e_ == 1 ? primitive_prime() : exp_[1]; }

  Elem random(std::mt19937_64& rng) const {
    return static_cast<Elem>(std::uniform_int_distribution<std::uint32_t>(0, q_ - 1)(rng));
  }

  std::string describe() const {
    std::ostringstream os;
    os << "GF(" << p_;
    if (e_ > 1) os << "^" << e_;
    os << ")";
    return os.str();
  }

  std::string modulus_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = e_; k >= 0; --k) {
      int c = modulus_[k];
      if (c == 0) continue;
      if (!first) os << "+";
      first = false;
      if (k == 0 || c != 1) os << c;
      if (k >= 1) os << "t";
      if (k >= 2) os << "^" << k;
    }
    if (first) os << "0";
    return os.str();
  }

  bool same_as(const Field& o) const { return p_ == o.p_ && e_ == o.e_; }

 private:
  Field(int p, int e) : p_(p), e_(e), q_(static_cast<std::uint32_t>(detail::ipow(p, e))) {
    if (e == 1) {
      modulus_ = {0, 1};
      return;
    }
    long long count = detail::ipow(p, e);
    for (long long idx = 0; idx < count; ++idx) {
      auto f = detail::monic_from_index(p, e, idx);
      if (detail::is_irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
    build_tables();
  }

  Elem digitwise(Elem a, Elem b, int sign) const {
    Elem r = 0, scale = 1;
    for (int k = 0; k < e_; ++k) {
      int da = a % p_, db = b % p_;
      a = static_cast<Elem>(a / p_);
      b = static_cast<Elem>(b / p_);
      int d = ((da + sign * db) % p_ + p_) % p_;
      r = static_cast<Elem>(r + d * scale);
      scale = static_cast<Elem>(scale * p_);
    }
    return r;
  }

  detail::Poly unpack(Elem a) const {
    detail::Poly v(e_);
    for (int k = 0; k < e_; ++k) {
      v[k] = a % p_;
      a = static_cast<Elem>(a / p_);
    }
    return v;
  }

  Elem pack(const detail::Poly& v) const {
    Elem r = 0, scale = 1;
    for (std::size_t k = 0; k < v.size(); ++k) {
      r = static_cast<Elem>(r + v[k] * scale);
      scale = static_cast<Elem>(scale * p_);
    }
    return r;
  }

  Elem slow_mul(Elem a, Elem b) const {
    auto x = unpack(a), y = unpack(b);
    detail::Poly prod(2 * e_ - 1, 0);
    for (int i = 0; i < e_; ++i)
      for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    return pack(detail::poly_mod(prod, modulus_, p_));
  }

  void build_tables() {
    exp_.assign(q_, 0);
    log_.assign(q_, 0);
    for (Elem g = 2; g < q_; ++g) {
      Elem x = 1;
      std::uint32_t k = 0;
      do {
        exp_[k] = x;
        log_[x] = k;
        x = slow_mul(x, g);
        ++k;
      } while (x != 1 && k < q_);
      if (k == q_ - 1) return;
    }
    throw FieldError("no primitive element found");  // unreachable for irreducible moduli
  }

  Elem primitive_prime() const {
    for (int g = 1; g < p_; ++g) {
      int x = g, k = 1;
      while (x != 1) {
        x = x * g % p_;
        ++k;
      }
      if (k == p_ - 1) return static_cast<Elem>(g);
    }
    return 1;
  }

  int p_;
  int e_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Convenience wrapper matching the build_field operation.
inline FieldPtr build_field(int p, int e = 1) { return Field::make(p, e); }

/// Dense row-major matrix over a finite field.
class FFMatrix {
 public:
  using Elem = Field::Elem;

  FFMatrix() = default;
  FFMatrix(FieldPtr f, std::size_t rows, std::size_t cols)
      : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FFMatrix identity(FieldPtr f, std::size_t n) {
    FFMatrix m(std::move(f), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix over the prime field from integer rows (reduced mod p).
  static FFMatrix from_rows(FieldPtr f, const std::vector<std::vector<long long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    FFMatrix m(f, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw ShapeError("ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = f->from_int(rows[i][j]);
    }
    return m;
  }

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem* row(std::size_t i) { return data_.data() + i * cols_; }
  const Elem* row(std::size_t i) const { return data_.data() + i * cols_; }
  const std::vector<Elem>& data() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
  }

  friend bool operator==(const FFMatrix& a, const FFMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  FFMatrix operator+(const FFMatrix& o) const {
    check_same_shape(o);
    FFMatrix r(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_->add(data_[k], o.data_[k]);
    return r;
  }
  FFMatrix operator-(const FFMatrix& o) const {
    check_same_shape(o);
    FFMatrix r(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_->sub(data_[k], o.data_[k]);
    return r;
  }
  FFMatrix operator-() const { return FFMatrix(field_, rows_, cols_) - *this; }

  FFMatrix operator*(const FFMatrix& o) const {
    if (cols_ != o.rows_)
      throw ShapeError("matrix product shape mismatch: " + shape() + " * " + o.shape());
    FFMatrix r(field_, rows_, o.cols_);
    if (field_->is_prime_field()) {
      // Accumulate in 32 bits and reduce once per entry.
      const unsigned p = static_cast<unsigned>(field_->p());
      std::vector<std::uint32_t> acc(o.cols_);
      for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0u);
        const Elem* a = row(i);
        for (std::size_t k = 0; k < cols_; ++k) {
          if (a[k] == 0) continue;
          const Elem* b = o.row(k);
          const std::uint32_t s = a[k];
          for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += s * b[j];
          if ((k & 0xFFFF) == 0xFFFF)
            for (auto& x : acc) x %= p;
        }
        Elem* out = r.row(i);
        for (std::size_t j = 0; j < o.cols_; ++j) out[j] = static_cast<Elem>(acc[j] % p);
      }
      return r;
    }
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        Elem a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = field_->add(r(i, j), field_->mul(a, o(k, j)));
      }
    return r;
  }

  FFMatrix scaled(Elem c) const {
    FFMatrix r(*this);
    for (auto& x : r.data_) x = field_->mul(x, c);
    return r;
  }

  FFMatrix transpose() const {
    FFMatrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  FFMatrix pow(unsigned n) const {
    FFMatrix r = identity(field_, rows_);
    for (unsigned k = 0; k < n; ++k) r = r * *this;
    return r;
  }

  FFMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    FFMatrix r(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }

  void set_block(std::size_t r0, std::size_t c0, const FFMatrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  FFMatrix column(std::size_t j) const { return block(0, j, rows_, 1); }

  FFMatrix select_columns(const std::vector<std::size_t>& idx) const {
    FFMatrix r(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) r(i, k) = (*this)(i, idx[k]);
    return r;
  }

  /// Same entries, reinterpreted over an extension of the prime field.
  FFMatrix lifted_to(const FieldPtr& ext) const {
    if (ext->p() != field_->p()) throw FieldError("field characteristic mismatch");
    FFMatrix r(ext, rows_, cols_);
    r.data_ = data_;
    return r;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same_shape(const FFMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeError("shape mismatch: " + shape() + " vs " + o.shape());
  }

  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

inline FFMatrix hstack(const FFMatrix& a, const FFMatrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("hstack: row mismatch");
  FFMatrix r(a.field(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

inline FFMatrix vstack(const FFMatrix& a, const FFMatrix& b) {
  if (a.cols() != b.cols()) throw ShapeError("vstack: column mismatch");
  FFMatrix r(a.field(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

/// Block diagonal sum.
inline FFMatrix block_diag(const FFMatrix& a, const FFMatrix& b) {
  FFMatrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

namespace detail {

// In-place row reduction. Pivots are chosen deterministically: columns are
// scanned left to right and the first row at or below the current one with a
// nonzero entry is used. When `reduced` is set the result is the reduced row
// echelon form with unit pivots; otherwise pivot rows are normalized but
// entries above pivots are left alone.
template <int P>
std::vector<std::size_t> echelon_prime(FFMatrix& m, bool reduced, std::size_t col_limit) {
  using Elem = Field::Elem;
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Elem inv[P];
  inv[0] = 0;
  for (int a = 1; a < P; ++a) inv[a] = static_cast<Elem>(inv_mod(a, P));
  for (std::size_t c = 0; c < col_limit && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) std::swap_ranges(m.row(piv) + c, m.row(piv) + cols, m.row(r) + c);
    Elem* pr = m.row(r);
    if (pr[c] != 1) {
      const Elem s = inv[pr[c]];
      for (std::size_t k = c; k < cols; ++k) pr[k] = static_cast<Elem>(pr[k] * s % P);
    }
    const std::size_t start = reduced ? 0 : r + 1;
    for (std::size_t i = start; i < rows; ++i) {
      if (i == r) continue;
      Elem* ri = m.row(i);
      const Elem f = ri[c];
      if (f == 0) continue;
      const Elem g = static_cast<Elem>(P - f);
      for (std::size_t k = c; k < cols; ++k) ri[k] = static_cast<Elem>((ri[k] + g * pr[k]) % P);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::vector<std::size_t> echelon_generic(FFMatrix& m, bool reduced, std::size_t col_limit) {
  const Field& f = *m.field();
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < col_limit && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) std::swap_ranges(m.row(piv) + c, m.row(piv) + cols, m.row(r) + c);
    auto* pr = m.row(r);
    const auto s = f.inv(pr[c]);
    for (std::size_t k = c; k < cols; ++k) pr[k] = f.mul(pr[k], s);
    for (std::size_t i = reduced ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      auto* ri = m.row(i);
      const auto fac = ri[c];
      if (fac == 0) continue;
      for (std::size_t k = c; k < cols; ++k) ri[k] = f.sub(ri[k], f.mul(fac, pr[k]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Row reduces `m` in place and returns the pivot columns. Only the first
/// `col_limit` columns are eligible as pivots (default: all).
inline std::vector<std::size_t> row_echelon(FFMatrix& m, bool reduced = true,
                                            std::size_t col_limit = static_cast<std::size_t>(-1)) {
  col_limit = std::min(col_limit, m.cols());
  if (!m.field()->is_prime_field()) return detail::echelon_generic(m, reduced, col_limit);
  switch (m.field()->p()) {
    case 2: return detail::echelon_prime<2>(m, reduced, col_limit);
    case 3: return detail::echelon_prime<3>(m, reduced, col_limit);
    case 5: return detail::echelon_prime<5>(m, reduced, col_limit);
    case 7: return detail::echelon_prime<7>(m, reduced, col_limit);
    case 11: return detail::echelon_prime<11>(m, reduced, col_limit);
    case 13: return detail::echelon_prime<13>(m, reduced, col_limit);
    default: return detail::echelon_generic(m, reduced, col_limit);
  }
}

inline std::size_t rank(FFMatrix m) {
  // Eliminate along the shorter dimension.
  if (m.rows() > m.cols()) m = m.transpose();
  return row_echelon(m, false).size();
}

/// Basis of the row space of `m`, as the nonzero rows of an echelon form.
inline FFMatrix row_basis(FFMatrix m) {
  auto piv = row_echelon(m, false);
  return m.block(0, 0, piv.size(), m.cols());
}

/// Columns form a basis of {x : m x = 0}. One vector per free column f, with
/// x_f = 1, other free coordinates 0 (reduced echelon normalization).
/// When `free_out` is given it receives the free columns; the basis restricted
/// to those rows is the identity.
inline FFMatrix kernel_basis(const FFMatrix& m, std::vector<std::size_t>* free_out = nullptr) {
  FFMatrix r = m;
  auto piv = row_echelon(r, true);
  const Field& f = *m.field();
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  FFMatrix k(m.field(), m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t fc = free_cols[j];
    k(fc, j) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], j) = f.neg(r(i, fc));
  }
  if (free_out) *free_out = std::move(free_cols);
  return k;
}

/// One solution X of A X = B, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
inline std::optional<FFMatrix> solve(const FFMatrix& a, const FFMatrix& b) {
  if (a.rows() != b.rows())
    throw ShapeError("solve: A is " + a.shape() + " but B is " + b.shape());
  FFMatrix aug = hstack(a, b);
  auto piv = row_echelon(aug, true, a.cols());
  // Any nonzero entry in the right-hand side below the pivot rows means
  // inconsistency.
  for (std::size_t i = piv.size(); i < aug.rows(); ++i)
    for (std::size_t j = a.cols(); j < aug.cols(); ++j)
      if (aug(i, j) != 0) return std::nullopt;
  FFMatrix x(a.field(), a.cols(), b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = aug(i, a.cols() + j);
  return x;
}

inline std::optional<FFMatrix> inverse(const FFMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, FFMatrix::identity(a.field(), a.rows()));
}

/// Column indices of a maximal set of linearly independent columns, chosen
/// greedily left to right.
inline std::vector<std::size_t> independent_columns(const FFMatrix& m) {
  FFMatrix t = m;
  return row_echelon(t, false);
}

}  // namespace cjt

#endif  // CJT_GFALG_HPP_
