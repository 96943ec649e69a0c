// Modules over the group algebra kE of an elementary abelian p-group
// E = <g_1, ..., g_r>, k = GF(p). A module is stored as the matrices of the
// commuting nilpotent operators X_i = g_i - 1.

#ifndef CJT_KEMOD_HPP_
#define CJT_KEMOD_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cjt/gfalg.hpp"

namespace cjt {

class ModuleError : public Error {
 public:
  using Error::Error;
};

class NonCommuting : public ModuleError {
 public:
  NonCommuting(int i, int j)
      : ModuleError("X_" + std::to_string(i) + " and X_" + std::to_string(j) + " do not commute"), i(i), j(j) {}
  int i, j;  // 1-based
};

class NotPNilpotent : public ModuleError {
 public:
  explicit NotPNilpotent(int i) : ModuleError("X_" + std::to_string(i) + "^p is not zero"), i(i) {}
  int i;  // 1-based
};

/// Exponent vectors of the monomial basis X^b of kE = k[X_1..X_r]/(X_i^p).
/// Index of b is b_1 + b_2 p + ... + b_r p^{r-1}.
class GroupAlgebra {
 public:
  GroupAlgebra(int p, int r) : p_(p), r_(r) {
    dim_ = 1;
    for (int i = 0; i < r; ++i) dim_ *= static_cast<std::size_t>(p);
    exps_.resize(dim_);
    for (std::size_t idx = 0; idx < dim_; ++idx) {
      std::vector<int> b(r);
      std::size_t t = idx;
      for (int i = 0; i < r; ++i) {
        b[i] = static_cast<int>(t % p);
        t /= p;
      }
      exps_[idx] = std::move(b);
    }
  }

  int p() const { return p_; }
  int r() const { return r_; }
  std::size_t dim() const { return dim_; }
  const std::vector<int>& exponents(std::size_t idx) const { return exps_[idx]; }

  std::size_t index(const std::vector<int>& b) const {
    std::size_t idx = 0, scale = 1;
    for (int i = 0; i < r_; ++i) {
      idx += static_cast<std::size_t>(b[i]) * scale;
      scale *= static_cast<std::size_t>(p_);
    }
    return idx;
  }

  /// Index of X^b * X_i, or nullopt when it vanishes.
  std::optional<std::size_t> times(std::size_t idx, int i) const {
    if (exps_[idx][i] == p_ - 1) return std::nullopt;
    std::size_t scale = 1;
    for (int t = 0; t < i; ++t) scale *= static_cast<std::size_t>(p_);
    return idx + scale;
  }

  /// Index of the socle monomial X_1^{p-1} ... X_r^{p-1}.
  std::size_t top_index() const { return dim_ - 1; }

  /// Index of the complementary monomial X^{(p-1,...,p-1) - b}.
  std::size_t complement(std::size_t idx) const { return dim_ - 1 - idx; }

 private:
  int p_, r_;
  std::size_t dim_;
  std::vector<std::vector<int>> exps_;
};

/// A finite dimensional kE-module.
class KEModule {
 public:
  KEModule() = default;

  /// Validates commutativity and X_i^p = 0.
  static KEModule make(int p, int r, std::vector<FFMatrix> xs) {
    KEModule m = make_unchecked(p, r, std::move(xs));
    m.validate();
    return m;
  }

  /// For modules produced by constructions that preserve the invariants.
  static KEModule make_unchecked(int p, int r, std::vector<FFMatrix> xs) {
    if (r < 1) throw ModuleError("rank of E must be at least 1");
    if (static_cast<int>(xs.size()) != r)
      throw ModuleError("expected " + std::to_string(r) + " matrices, got " + std::to_string(xs.size()));
    KEModule m;
    m.p_ = p;
    m.r_ = r;
    m.field_ = xs.front().field() ? xs.front().field() : Field::make(p);
    m.n_ = xs.front().rows();
    for (auto& x : xs) {
      if (x.rows() != m.n_ || x.cols() != m.n_) throw ShapeError("action matrices must be square of equal size");
      if (x.field() && x.field()->p() != p) throw FieldError("matrix field does not match p");
    }
    m.x_ = std::move(xs);
    return m;
  }

  static KEModule zero(int p, int r) {
    auto f = Field::make(p);
    return make_unchecked(p, r, std::vector<FFMatrix>(r, FFMatrix(f, 0, 0)));
  }

  int p() const { return p_; }
  int r() const { return r_; }
  std::size_t dim() const { return n_; }
  const FieldPtr& field() const { return field_; }
  /// Action of X_{i+1} (0-based index).
  const FFMatrix& action(int i) const { return x_[i]; }
  const std::vector<FFMatrix>& actions() const { return x_; }

  friend bool operator==(const KEModule& a, const KEModule& b) {
    return a.p_ == b.p_ && a.r_ == b.r_ && a.x_ == b.x_;
  }

  void validate() const {
    for (int i = 0; i < r_; ++i)
      for (int j = i + 1; j < r_; ++j)
        if (!(x_[i] * x_[j] == x_[j] * x_[i])) throw NonCommuting(i + 1, j + 1);
    for (int i = 0; i < r_; ++i)
      if (!x_[i].pow(static_cast<unsigned>(p_)).is_zero()) throw NotPNilpotent(i + 1);
  }

  /// Matrix of the monomial X^b, b given as an exponent vector.
  FFMatrix monomial(const std::vector<int>& b) const {
    FFMatrix m = FFMatrix::identity(field_, n_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < b[i]; ++k) m = x_[i] * m;
    return m;
  }

  /// Matrices of every monomial X^b of kE, indexed as in GroupAlgebra.
  std::vector<FFMatrix> all_monomials() const {
    GroupAlgebra ka(p_, r_);
    std::vector<FFMatrix> out(ka.dim());
    out[0] = FFMatrix::identity(field_, n_);
    for (std::size_t idx = 1; idx < ka.dim(); ++idx) {
      const auto& b = ka.exponents(idx);
      int i = 0;
      while (b[i] == 0) ++i;
      auto prev = b;
      --prev[i];
      out[idx] = x_[i] * out[ka.index(prev)];
    }
    return out;
  }

  /// Matrix of the norm element X_1^{p-1} ... X_r^{p-1}.
  FFMatrix norm_element() const { return monomial(std::vector<int>(r_, p_ - 1)); }

 private:
  int p_ = 2;
  int r_ = 1;
  std::size_t n_ = 0;
  FieldPtr field_;
  std::vector<FFMatrix> x_;
};

/// Linear map between modules commuting with every X_i.
struct ModuleHom {
  KEModule source;
  KEModule target;
  FFMatrix matrix;  // target.dim() x source.dim()

  static ModuleHom make(KEModule source, KEModule target, FFMatrix matrix) {
    if (matrix.rows() != target.dim() || matrix.cols() != source.dim())
      throw ShapeError("homomorphism matrix has shape " + matrix.shape());
    for (int i = 0; i < source.r(); ++i)
      if (!(matrix * source.action(i) == target.action(i) * matrix))
        throw ModuleError("map does not commute with X_" + std::to_string(i + 1));
    return {std::move(source), std::move(target), std::move(matrix)};
  }
};

inline bool is_module_hom(const KEModule& src, const KEModule& tgt, const FFMatrix& m) {
  if (m.rows() != tgt.dim() || m.cols() != src.dim()) return false;
  for (int i = 0; i < src.r(); ++i)
    if (!(m * src.action(i) == tgt.action(i) * m)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Jordan types

/// Multiplicities a_1..a_p of Jordan blocks; a[i-1] counts blocks of length i.
struct JordanType {
  std::vector<std::size_t> a;

  std::size_t mult(int len) const { return len >= 1 && len <= static_cast<int>(a.size()) ? a[len - 1] : 0; }
  std::size_t dim() const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (i + 1) * a[i];
    return d;
  }
  /// a_1..a_{p-1}, the free part dropped.
  JordanType stable() const {
    JordanType s = *this;
    if (!s.a.empty()) s.a.back() = 0;
    return s;
  }
  friend bool operator==(const JordanType&, const JordanType&) = default;

  JordanType operator+(const JordanType& o) const {
    JordanType s;
    s.a.resize(std::max(a.size(), o.a.size()));
    for (std::size_t i = 0; i < s.a.size(); ++i) s.a[i] = mult(static_cast<int>(i + 1)) + o.mult(static_cast<int>(i + 1));
    return s;
  }

  /// e.g. "[2][1]^2"; "0" for the zero module.
  std::string str() const {
    std::ostringstream os;
    for (std::size_t len = a.size(); len >= 1; --len) {
      if (a[len - 1] == 0) continue;
      os << "[" << len << "]";
      if (a[len - 1] > 1) os << "^" << a[len - 1];
    }
    std::string s = os.str();
    return s.empty() ? "0" : s;
  }
};

/// Jordan type of a nilpotent X with X^p = 0, from ranks of powers.
inline JordanType jordan_type_of(const FFMatrix& x, int p) {
  std::vector<std::size_t> rk(p + 2, 0);
  rk[0] = x.rows();
  FFMatrix pw = x;
  for (int k = 1; k <= p; ++k) {
    rk[k] = rank(pw);
    if (rk[k] == 0) break;
    if (k < p) pw = pw * x;
  }
  JordanType jt;
  jt.a.assign(p, 0);
  for (int i = 1; i <= p; ++i)
    jt.a[i - 1] = rk[i - 1] - 2 * rk[i] + rk[i + 1];
  return jt;
}

// ---------------------------------------------------------------------------
// Points of projective space over GF(p^e)

struct Point {
  FieldPtr field;
  std::vector<Field::Elem> coords;

  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](auto c) { return c == 0; });
  }

  /// Scales so that the first nonzero coordinate is 1.
  Point normalized() const {
    Point q = *this;
    auto it = std::find_if(q.coords.begin(), q.coords.end(), [](auto c) { return c != 0; });
    if (it == q.coords.end()) return q;
    auto s = field->inv(*it);
    for (auto& c : q.coords) c = field->mul(c, s);
    return q;
  }

  Point scaled(Field::Elem s) const {
    Point q = *this;
    for (auto& c : q.coords) c = field->mul(c, s);
    return q;
  }

  std::string str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
    os << ")";
    if (field && field->degree() > 1) os << " over " << field->describe();
    return os.str();
  }

  static Point prime(int p, std::vector<long long> c) {
    Point q;
    q.field = Field::make(p);
    for (auto v : c) q.coords.push_back(q.field->from_int(v));
    return q;
  }
};

/// All points of P^{r-1}(GF(q)) with first nonzero coordinate 1, ordered by
/// the position of that coordinate and then lexicographically.
inline std::vector<Point> projective_points(const FieldPtr& f, int r) {
  std::vector<Point> pts;
  const std::uint32_t q = f->order();
  for (int lead = 0; lead < r; ++lead) {
    int free = r - lead - 1;
    std::uint64_t count = 1;
    for (int k = 0; k < free; ++k) count *= q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Point pt;
      pt.field = f;
      pt.coords.assign(r, 0);
      pt.coords[lead] = 1;
      std::uint64_t t = idx;
      for (int k = r - 1; k > lead; --k) {
        pt.coords[k] = static_cast<Field::Elem>(t % q);
        t /= q;
      }
      pts.push_back(std::move(pt));
    }
  }
  return pts;
}

inline FFMatrix x_alpha(const KEModule& m, const Point& alpha) {
  if (alpha.is_zero()) throw ModuleError("point must be nonzero");
  if (static_cast<int>(alpha.coords.size()) != m.r()) throw ShapeError("point has wrong number of coordinates");
  if (alpha.field->p() != m.p()) throw FieldError("point field has wrong characteristic");
  const Field& f = *alpha.field;
  FFMatrix out(alpha.field, m.dim(), m.dim());
  for (int i = 0; i < m.r(); ++i) {
    auto l = alpha.coords[i];
    if (l == 0) continue;
    const auto& x = m.action(i);
    for (std::size_t a = 0; a < m.dim(); ++a)
      for (std::size_t b = 0; b < m.dim(); ++b)
        if (x(a, b)) out(a, b) = f.add(out(a, b), f.mul(l, x(a, b)));
  }
  return out;
}

inline JordanType jordan_type_at(const KEModule& m, const Point& alpha) {
  return jordan_type_of(x_alpha(m, alpha), m.p());
}

struct SamplingPlan {
  std::size_t extra = 200;           // seeded random points
  int max_extension = 4;             // random points live over GF(p^e), e <= this
  std::uint64_t seed = 0xC0FFEE;
  std::size_t quadratic_limit = 10000;  // enumerate GF(p^2)-points when at most this many
};

struct ConstancyVerdict {
  bool constant = true;
  JordanType type;                 // reference type (constant case: the type)
  std::size_t points_checked = 0;
  std::vector<int> fields_used;    // extension degrees visited
  std::optional<Point> witness;
  JordanType type_at_witness;
};

namespace detail {

inline std::uint64_t count_points(std::uint64_t q, int r) {
  std::uint64_t n = 1;
  for (int i = 0; i < r; ++i) n *= q;
  return (n - 1) / (q - 1);
}

inline bool all_in_prime_field(const Point& pt) {
  const int p = pt.field->p();
  return std::all_of(pt.coords.begin(), pt.coords.end(), [p](auto c) { return c < p; });
}

}  // namespace detail

/// Deterministic list of points visited by check_constant.
inline std::vector<Point> sample_points(int p, int r, const SamplingPlan& plan) {
  std::vector<Point> pts = projective_points(Field::make(p), r);
  if (plan.max_extension >= 2 && detail::count_points(static_cast<std::uint64_t>(p) * p, r) <= plan.quadratic_limit) {
    for (auto& pt : projective_points(Field::make(p, 2), r))
      if (!detail::all_in_prime_field(pt)) pts.push_back(std::move(pt));
  }
  std::mt19937_64 rng(plan.seed);
  const int emax = std::clamp(plan.max_extension, 1, Field::kMaxDegree);
  std::vector<FieldPtr> fields;
  for (int e = 1; e <= emax; ++e) fields.push_back(Field::make(p, e));
  for (std::size_t k = 0; k < plan.extra; ++k) {
    const auto& f = fields[k % fields.size()];
    Point pt;
    pt.field = f;
    do {
      pt.coords.assign(r, 0);
      for (auto& c : pt.coords) c = f->random(rng);
    } while (pt.is_zero());
    pts.push_back(std::move(pt));
  }
  return pts;
}

/// Sampling-based falsifier for constant Jordan type. The reference type is
/// the type at (1,0,...,0); the first disagreeing point is reported.
inline ConstancyVerdict check_constant(const KEModule& m, const SamplingPlan& plan = {}) {
  ConstancyVerdict v;
  auto pts = sample_points(m.p(), m.r(), plan);
  std::set<int> degs;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    auto jt = jordan_type_at(m, pts[k]);
    degs.insert(pts[k].field->degree());
    ++v.points_checked;
    if (k == 0) {
      v.type = jt;
      continue;
    }
    if (!(jt == v.type)) {
      v.constant = false;
      v.witness = pts[k];
      v.type_at_witness = jt;
      break;
    }
  }
  v.fields_used.assign(degs.begin(), degs.end());
  return v;
}

/// Jordan type at a generic point: ranks of X_alpha^k maximized over the
/// axis point and `samples` seeded random points over GF(p^4). Agrees with
/// the constant type when there is one.
inline JordanType generic_jordan_type(const KEModule& m, std::size_t samples = 8, std::uint64_t seed = 0xC0FFEE) {
  const int p = m.p();
  std::vector<Point> pts;
  std::vector<long long> axis(m.r(), 0);
  axis[0] = 1;
  pts.push_back(Point::prime(p, axis));
  auto f = Field::make(p, Field::kMaxDegree);
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    Point pt;
    pt.field = f;
    do {
      pt.coords.assign(m.r(), 0);
      for (auto& c : pt.coords) c = f->random(rng);
    } while (pt.is_zero());
    pts.push_back(std::move(pt));
  }
  std::vector<std::size_t> best(p + 2, 0);
  best[0] = m.dim();
  for (const auto& pt : pts) {
    FFMatrix x = x_alpha(m, pt);
    FFMatrix pw = x;
    for (int k = 1; k < p; ++k) {
      best[k] = std::max(best[k], rank(pw));
      pw = pw * x;
    }
  }
  JordanType jt;
  jt.a.assign(p, 0);
  for (int i = 1; i <= p; ++i) jt.a[i - 1] = best[i - 1] - 2 * best[i] + best[i + 1];
  return jt;
}

// ---------------------------------------------------------------------------
// Built-in modules

inline KEModule trivial_module(int p, int r) {
  auto f = Field::make(p);
  return KEModule::make_unchecked(p, r, std::vector<FFMatrix>(r, FFMatrix(f, 1, 1)));
}

/// Free module kE^b on the monomial basis, generator-major ordering.
inline KEModule free_module(int p, int r, std::size_t b = 1) {
  auto f = Field::make(p);
  GroupAlgebra ka(p, r);
  const std::size_t d = ka.dim();
  std::vector<FFMatrix> xs(r, FFMatrix(f, b * d, b * d));
  for (int i = 0; i < r; ++i)
    for (std::size_t g = 0; g < b; ++g)
      for (std::size_t idx = 0; idx < d; ++idx)
        if (auto t = ka.times(idx, i)) xs[i](g * d + *t, g * d + idx) = 1;
  return KEModule::make_unchecked(p, r, std::move(xs));
}

inline KEModule regular_module(int p, int r) { return free_module(p, r, 1); }

/// kE / J^m on monomials of total degree < m.
inline KEModule rad_quotient(int p, int r, int m) {
  if (m < 1 || m > r * (p - 1) + 1)
    throw ModuleError("rad_quotient: m must lie in [1, r(p-1)+1]");
  auto f = Field::make(p);
  GroupAlgebra ka(p, r);
  std::vector<std::size_t> keep;
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t idx = 0; idx < ka.dim(); ++idx) {
    const auto& b = ka.exponents(idx);
    if (std::accumulate(b.begin(), b.end(), 0) < m) {
      pos[idx] = keep.size();
      keep.push_back(idx);
    }
  }
  std::vector<FFMatrix> xs(r, FFMatrix(f, keep.size(), keep.size()));
  for (int i = 0; i < r; ++i)
    for (std::size_t c = 0; c < keep.size(); ++c)
      if (auto t = ka.times(keep[c], i))
        if (auto it = pos.find(*t); it != pos.end()) xs[i](it->second, c) = 1;
  return KEModule::make_unchecked(p, r, std::move(xs));
}

/// Permutation module on the cosets of the subgroup omitting g_i (1-based):
/// X_i is a single Jordan block of length p, the other X_j vanish.
inline KEModule perm_module(int p, int r, int i) {
  if (i < 1 || i > r) throw ModuleError("perm: index must lie in [1, r]");
  auto f = Field::make(p);
  std::vector<FFMatrix> xs(r, FFMatrix(f, p, p));
  for (int k = 0; k + 1 < p; ++k) xs[i - 1](k + 1, k) = 1;
  return KEModule::make_unchecked(p, r, std::move(xs));
}

/// Zig-zag module for r = 2 of dimension 2n+1 with F_1 = O(-n). Basis
/// w_0..w_n (generators) followed by v_1..v_n (socle), with
/// X_1 w_j = v_j (j >= 1) and X_2 w_j = v_{j+1} (j < n).
inline KEModule zigzag_module(int p, int r, int n) {
  if (r != 2) throw ModuleError("zigzag modules require r = 2");
  if (n < 0) throw ModuleError("zigzag: n must be nonnegative");
  auto f = Field::make(p);
  const std::size_t dim = 2 * static_cast<std::size_t>(n) + 1;
  std::vector<FFMatrix> xs(2, FFMatrix(f, dim, dim));
  auto w = [](int j) { return static_cast<std::size_t>(j); };
  auto v = [n](int j) { return static_cast<std::size_t>(n + j); };  // j in 1..n
  for (int j = 0; j <= n; ++j) {
    if (j >= 1) xs[0](v(j), w(j)) = 1;
    if (j < n) xs[1](v(j + 1), w(j)) = 1;
  }
  return KEModule::make_unchecked(p, 2, std::move(xs));
}

// ---------------------------------------------------------------------------
// Algebraic operations

inline void require_compatible(const KEModule& a, const KEModule& b) {
  if (a.p() != b.p() || a.r() != b.r())
    throw ModuleError("modules have different p or r");
}

inline KEModule direct_sum(const KEModule& a, const KEModule& b) {
  require_compatible(a, b);
  std::vector<FFMatrix> xs;
  for (int i = 0; i < a.r(); ++i) xs.push_back(block_diag(a.action(i), b.action(i)));
  return KEModule::make_unchecked(a.p(), a.r(), std::move(xs));
}

inline FFMatrix kronecker(const FFMatrix& a, const FFMatrix& b) {
  const Field& f = *a.field();
  FFMatrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      auto s = a(i, j);
      if (s == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = f.mul(s, b(k, l));
    }
  return r;
}

/// Diagonal action: g acts as g (x) g, so X acts as X(x)1 + 1(x)X + X(x)X.
inline KEModule tensor(const KEModule& a, const KEModule& b) {
  require_compatible(a, b);
  auto ia = FFMatrix::identity(a.field(), a.dim());
  auto ib = FFMatrix::identity(a.field(), b.dim());
  std::vector<FFMatrix> xs;
  for (int i = 0; i < a.r(); ++i)
    xs.push_back(kronecker(a.action(i), ib) + kronecker(ia, b.action(i)) +
                 kronecker(a.action(i), b.action(i)));
  return KEModule::make_unchecked(a.p(), a.r(), std::move(xs));
}

/// k-linear dual with (g.phi)(m) = phi(g^{-1} m): X acts by ((1+X)^{-1} - 1)^T.
inline KEModule dual(const KEModule& m) {
  std::vector<FFMatrix> xs;
  const Field& f = *m.field();
  for (int i = 0; i < m.r(); ++i) {
    const auto& x = m.action(i);
    FFMatrix neg_x = x.scaled(f.neg(1));
    FFMatrix acc(m.field(), m.dim(), m.dim());
    FFMatrix pw = neg_x;
    for (int k = 1; k < m.p(); ++k) {
      acc = acc + pw;
      pw = pw * neg_x;
    }
    xs.push_back(acc.transpose());
  }
  return KEModule::make_unchecked(m.p(), m.r(), std::move(xs));
}

/// Dual of a homomorphism f: M -> N as a map N^* -> M^*.
inline FFMatrix dual_map(const FFMatrix& f) { return f.transpose(); }

/// Restriction of the action to an invariant subspace with column basis k.
inline KEModule submodule(const KEModule& m, const FFMatrix& basis) {
  std::vector<FFMatrix> xs;
  for (int i = 0; i < m.r(); ++i) {
    auto sol = solve(basis, m.action(i) * basis);
    if (!sol) throw ModuleError("subspace is not invariant");
    xs.push_back(std::move(*sol));
  }
  return KEModule::make_unchecked(m.p(), m.r(), std::move(xs));
}

/// Submodule given by a kernel basis in the normal form produced by
/// kernel_basis: coordinates are read off at the free columns.
struct KernelSubmodule {
  KEModule module;
  FFMatrix inclusion;  // ambient.dim() x module.dim()
};

inline KernelSubmodule kernel_submodule(const KEModule& m, const FFMatrix& map_from_m) {
  std::vector<std::size_t> free_rows;
  FFMatrix k = kernel_basis(map_from_m, &free_rows);
  std::vector<FFMatrix> xs;
  for (int i = 0; i < m.r(); ++i) {
    FFMatrix img = m.action(i) * k;
    FFMatrix coords(m.field(), k.cols(), k.cols());
    for (std::size_t a = 0; a < k.cols(); ++a)
      for (std::size_t b = 0; b < k.cols(); ++b) coords(a, b) = img(free_rows[a], b);
    xs.push_back(std::move(coords));
  }
  return {KEModule::make_unchecked(m.p(), m.r(), std::move(xs)), std::move(k)};
}

struct QuotientModule {
  KEModule module;
  FFMatrix projection;  // module.dim() x ambient.dim()
  FFMatrix section;     // ambient.dim() x module.dim(), projection * section = 1
};

/// M / W for an invariant subspace W given by spanning columns.
inline QuotientModule quotient_module(const KEModule& m, const FFMatrix& w) {
  const std::size_t n = m.dim();
  FFMatrix rt = w.transpose();
  auto piv = row_echelon(rt, true);
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_piv[c]) rest.push_back(c);
  const Field& f = *m.field();
  FFMatrix proj(m.field(), rest.size(), n);
  for (std::size_t q = 0; q < rest.size(); ++q) proj(q, rest[q]) = 1;
  for (std::size_t t = 0; t < piv.size(); ++t)
    for (std::size_t q = 0; q < rest.size(); ++q) proj(q, piv[t]) = f.neg(rt(t, rest[q]));
  FFMatrix incl = FFMatrix(m.field(), n, rest.size());
  for (std::size_t q = 0; q < rest.size(); ++q) incl(rest[q], q) = 1;
  std::vector<FFMatrix> xs;
  for (int i = 0; i < m.r(); ++i) xs.push_back(proj * m.action(i) * incl);
  return {KEModule::make_unchecked(m.p(), m.r(), std::move(xs)), std::move(proj), std::move(incl)};
}

/// Rows lambda * X^{b} for every monomial b, laid out so that the row for the
/// coefficient of X^b equals lambda * X^{complement(b)}. For a functional
/// lambda this is the matrix of the module map M -> kE,
/// m |-> sum_b lambda(X^{(p-1)-b} m) X^b.
inline FFMatrix functional_to_free(const KEModule& m, const FFMatrix& lambda,
                                   const std::vector<FFMatrix>& monomials) {
  GroupAlgebra ka(m.p(), m.r());
  FFMatrix out(m.field(), ka.dim(), m.dim());
  for (std::size_t b = 0; b < ka.dim(); ++b) {
    FFMatrix row = lambda * monomials[ka.complement(b)];
    for (std::size_t c = 0; c < m.dim(); ++c) out(b, c) = row(0, c);
  }
  return out;
}

/// Socle: common kernel of the X_i, as columns.
inline FFMatrix socle_basis(const KEModule& m) {
  FFMatrix stacked(m.field(), 0, m.dim());
  for (int i = 0; i < m.r(); ++i) stacked = vstack(stacked, m.action(i));
  return kernel_basis(stacked);
}

struct ProjectiveCover {
  std::size_t generators = 0;  // b, cover is kE^b
  FFMatrix generator_vectors;  // n x b
  FFMatrix map;                // n x b p^r
};

/// Minimal projective cover. Generators are the standard basis vectors at
/// coordinates complementary to the pivots of J M.
inline ProjectiveCover projective_cover(const KEModule& m) {
  const std::size_t n = m.dim();
  FFMatrix jm(m.field(), n, 0);
  for (int i = 0; i < m.r(); ++i) jm = hstack(jm, m.action(i));
  FFMatrix t = jm.transpose();
  auto piv = row_echelon(t, false);
  std::vector<bool> is_piv(n, false);
  for (auto c : piv) is_piv[c] = true;
  ProjectiveCover pc;
  std::vector<std::size_t> gens;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_piv[c]) gens.push_back(c);
  pc.generators = gens.size();
  pc.generator_vectors = FFMatrix(m.field(), n, gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) pc.generator_vectors(gens[g], g) = 1;
  auto mons = m.all_monomials();
  GroupAlgebra ka(m.p(), m.r());
  pc.map = FFMatrix(m.field(), n, gens.size() * ka.dim());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t b = 0; b < ka.dim(); ++b)
      for (std::size_t row = 0; row < n; ++row) pc.map(row, g * ka.dim() + b) = mons[b](row, gens[g]);
  return pc;
}

struct InjectiveHull {
  std::size_t copies = 0;  // s, hull is kE^s
  FFMatrix embedding;      // s p^r x n, a module map into free_module(p, r, s)
};

/// Minimal injective hull. The embedding restricts to an isomorphism from the
/// socle of M onto the socle of kE^s: functionals dual to a socle basis are
/// transported to module maps M -> kE.
inline InjectiveHull injective_hull(const KEModule& m) {
  FFMatrix soc = socle_basis(m);
  const std::size_t s = soc.cols();
  InjectiveHull h;
  h.copies = s;
  GroupAlgebra ka(m.p(), m.r());
  h.embedding = FFMatrix(m.field(), s * ka.dim(), m.dim());
  if (s == 0) return h;
  auto lambdas_t = solve(soc.transpose(), FFMatrix::identity(m.field(), s));
  if (!lambdas_t) throw ModuleError("socle basis is not independent");
  FFMatrix lambdas = lambdas_t->transpose();  // s x n
  auto mons = m.all_monomials();
  for (std::size_t j = 0; j < s; ++j) {
    auto piece = functional_to_free(m, lambdas.block(j, 0, 1, m.dim()), mons);
    h.embedding.set_block(j * ka.dim(), 0, piece);
  }
  return h;
}

/// Omega^1 M: kernel of the minimal projective cover.
inline KernelSubmodule syzygy(const KEModule& m) {
  auto pc = projective_cover(m);
  KEModule cover = free_module(m.p(), m.r(), pc.generators);
  return kernel_submodule(cover, pc.map);
}

/// Omega^{-1} M: cokernel of the minimal injective hull.
inline QuotientModule cosyzygy(const KEModule& m) {
  auto h = injective_hull(m);
  KEModule hull = free_module(m.p(), m.r(), h.copies);
  return quotient_module(hull, h.embedding);
}

/// Heller shift Omega^n M. Negative n iterates the cosyzygy. For n != 0 the
/// result has no free summands.
inline KEModule omega(const KEModule& m, int n) {
  KEModule cur = m;
  for (int k = 0; k < n; ++k) cur = syzygy(cur).module;
  for (int k = 0; k < -n; ++k) cur = cosyzygy(cur).module;
  return cur;
}

struct StripResult {
  KEModule module;          // summand with no free part
  std::size_t free_count = 0;
  FFMatrix inclusion;       // original.dim() x module.dim(), a split monomorphism
};

/// Splits off free summands: M = kE^a (+) M' with a = rank of the norm
/// element on M. M' is the kernel of a module retraction onto the free part.
inline StripResult strip_free(const KEModule& m) {
  FFMatrix z = m.norm_element();
  auto gens = independent_columns(z);
  StripResult res;
  res.free_count = gens.size();
  if (gens.empty()) {
    res.module = m;
    res.inclusion = FFMatrix::identity(m.field(), m.dim());
    return res;
  }
  GroupAlgebra ka(m.p(), m.r());
  auto mons = m.all_monomials();
  const std::size_t a = gens.size(), d = ka.dim();
  // Basis of the free part: X^b m_j for all b, j.
  FFMatrix fb(m.field(), m.dim(), a * d);
  for (std::size_t j = 0; j < a; ++j)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t row = 0; row < m.dim(); ++row) fb(row, j * d + b) = mons[b](row, gens[j]);
  // Functionals lambda_k with lambda_k(X^b m_j) = [j = k][b = top].
  FFMatrix target(m.field(), a * d, a);
  for (std::size_t j = 0; j < a; ++j) target(j * d + ka.top_index(), j) = 1;
  auto lam_t = solve(fb.transpose(), target);
  if (!lam_t) throw ModuleError("free part basis is not independent");
  FFMatrix lambdas = lam_t->transpose();
  FFMatrix retraction(m.field(), a * d, m.dim());
  for (std::size_t k = 0; k < a; ++k)
    retraction.set_block(k * d, 0, functional_to_free(m, lambdas.block(k, 0, 1, m.dim()), mons));
  auto ks = kernel_submodule(m, retraction);
  res.module = std::move(ks.module);
  res.inclusion = std::move(ks.inclusion);
  return res;
}

/// True iff the module map f: A -> B factors through a projective module,
/// i.e. through the injective hull of A. When it does, `extension` receives
/// the images d_j in B of the free generators of the hull.
inline bool factors_through_projective(const KEModule& a, const KEModule& b, const FFMatrix& f,
                                       const InjectiveHull& hull, FFMatrix* extension = nullptr) {
  GroupAlgebra ka(a.p(), a.r());
  const std::size_t d = ka.dim(), s = hull.copies, nb = b.dim();
  if (a.dim() == 0 || nb == 0) {
    if (extension) *extension = FFMatrix(b.field(), nb, s);
    return true;
  }
  if (s == 0) return f.is_zero();
  auto gens = projective_cover(a).generator_vectors;
  auto mons = b.all_monomials();
  // u(iota(a_g)) = sum_{j,b} iota(a_g)_{(j,b)} X^b d_j must equal f(a_g).
  FFMatrix iota_g = hull.embedding * gens;
  FFMatrix fg = f * gens;
  const std::size_t ng = gens.cols();
  FFMatrix coef(b.field(), ng * nb, s * nb);
  FFMatrix rhs(b.field(), ng * nb, 1);
  for (std::size_t g = 0; g < ng; ++g) {
    for (std::size_t j = 0; j < s; ++j) {
      FFMatrix blk(b.field(), nb, nb);
      for (std::size_t m = 0; m < d; ++m) {
        auto c = iota_g(j * d + m, g);
        if (c == 0) continue;
        blk = blk + mons[m].scaled(c);
      }
      coef.set_block(g * nb, j * nb, blk);
    }
    for (std::size_t row = 0; row < nb; ++row) rhs(g * nb + row, 0) = fg(row, g);
  }
  auto sol = solve(coef, rhs);
  if (!sol) return false;
  if (extension) {
    *extension = FFMatrix(b.field(), nb, s);
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t row = 0; row < nb; ++row) (*extension)(row, j) = (*sol)(j * nb + row, 0);
  }
  return true;
}

/// Matrix of the module map kE^s -> B sending the j-th free generator to
/// column j of `images`.
inline FFMatrix free_map(const KEModule& b, const FFMatrix& images) {
  GroupAlgebra ka(b.p(), b.r());
  auto mons = b.all_monomials();
  const std::size_t d = ka.dim();
  FFMatrix out(b.field(), b.dim(), images.cols() * d);
  for (std::size_t j = 0; j < images.cols(); ++j) {
    FFMatrix col = images.column(j);
    for (std::size_t m = 0; m < d; ++m) {
      FFMatrix v = mons[m] * col;
      for (std::size_t row = 0; row < b.dim(); ++row) out(row, j * d + m) = v(row, 0);
    }
  }
  return out;
}

}  // namespace cjt

#endif  // CJT_KEMOD_HPP_
