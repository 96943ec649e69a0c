// The operator theta_M = sum_i X_i (x) Y_i on M (x) k[Y_1..Y_r], the graded
// pieces of the subquotients F_{i,j}(M), their Hilbert functions, and the
// fitted Hilbert polynomials of the bundles F_i(M).
//
// Every graded dimension reduces to I(m, d) = dim theta^m((M (x) S)_{d-m}),
// the degree d part of the image of theta^m:
//
//   dim (Ker theta^a  cap  Im theta^b)_d = I(b, d) - I(a + b, d + a).

#ifndef CJT_THETASHEAF_HPP_
#define CJT_THETASHEAF_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cjt/gfalg.hpp"
#include "cjt/kemod.hpp"
#include "cjt/rational.hpp"

namespace cjt {

class StabilizationFailed : public Error {
 public:
  using Error::Error;
};

/// Monomials of k[Y_1..Y_r] by degree, with multiplication-by-Y_i tables.
class MonomialTable {
 public:
  explicit MonomialTable(int r) : r_(r) { by_degree_.push_back({std::vector<int>(r, 0)}); }

  int r() const { return r_; }

  const std::vector<std::vector<int>>& of_degree(long d) {
    ensure(d + 1);
    return by_degree_[d];
  }
  std::size_t count(long d) {
    if (d < 0) return 0;
    ensure(d + 1);
    return by_degree_[d].size();
  }
  /// Index in degree d+1 of Y_i times monomial `idx` of degree d.
  std::size_t up(long d, std::size_t idx, int i) {
    ensure(d + 1);
    return up_[d][idx * r_ + i];
  }
  std::size_t index(const std::vector<int>& e) {
    long d = 0;
    for (int x : e) d += x;
    ensure(d);
    return lookup_[d].at(e);
  }

 private:
  void ensure(long d) {
    while (static_cast<long>(by_degree_.size()) <= d) {
      long nd = static_cast<long>(by_degree_.size());
      std::vector<std::vector<int>> mons;
      std::vector<int> e(r_, 0);
      gen(e, 0, static_cast<int>(nd), mons);
      by_degree_.push_back(std::move(mons));
    }
    while (lookup_.size() < by_degree_.size()) {
      std::map<std::vector<int>, std::size_t> m;
      const auto& mons = by_degree_[lookup_.size()];
      for (std::size_t k = 0; k < mons.size(); ++k) m[mons[k]] = k;
      lookup_.push_back(std::move(m));
    }
    while (up_.size() + 1 < by_degree_.size()) {
      std::size_t d = up_.size();
      std::vector<std::size_t> tab(by_degree_[d].size() * r_);
      for (std::size_t k = 0; k < by_degree_[d].size(); ++k)
        for (int i = 0; i < r_; ++i) {
          auto e = by_degree_[d][k];
          ++e[i];
          tab[k * r_ + i] = lookup_[d + 1].at(e);
        }
      up_.push_back(std::move(tab));
    }
  }

  // Lexicographic: larger exponent of Y_1 first.
  void gen(std::vector<int>& e, int pos, int left, std::vector<std::vector<int>>& out) {
    if (pos == r_ - 1) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[pos] = k;
      gen(e, pos + 1, left - k, out);
    }
    e[pos] = 0;
  }

  int r_;
  std::vector<std::vector<std::vector<int>>> by_degree_;
  std::vector<std::map<std::vector<int>, std::size_t>> lookup_;
  std::vector<std::vector<std::size_t>> up_;
};

/// theta_M as a family of degree-wise linear maps, with cached image
/// dimensions. Vectors in (M (x) S)_d are indexed monomial-major:
/// position = monomial_index * dim M + basis_index.
class ThetaEngine {
 public:
  explicit ThetaEngine(KEModule m) : m_(std::move(m)), mons_(m_.r()) {
    for (int i = 0; i < m_.r(); ++i) {
      const auto& x = m_.action(i);
      std::vector<Entry> es;
      for (std::size_t a = 0; a < x.rows(); ++a)
        for (std::size_t b = 0; b < x.cols(); ++b)
          if (x(a, b)) es.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), x(a, b)});
      nz_.push_back(std::move(es));
    }
  }

  const KEModule& module() const { return m_; }
  int p() const { return m_.p(); }
  int r() const { return m_.r(); }

  std::size_t piece_dim(long d) { return m_.dim() * mons_.count(d); }

  /// Applies theta to each row (a vector in degree d); rows of the result
  /// live in degree d + 1.
  FFMatrix apply(const FFMatrix& rows, long d) {
    const std::size_t n = m_.dim();
    const std::size_t nm = mons_.count(d), out_cols = piece_dim(d + 1);
    const unsigned p = static_cast<unsigned>(m_.p());
    FFMatrix out(m_.field(), rows.rows(), out_cols);
    std::vector<std::uint32_t> acc(out_cols);
    for (std::size_t row = 0; row < rows.rows(); ++row) {
      std::fill(acc.begin(), acc.end(), 0u);
      const auto* w = rows.row(row);
      for (std::size_t g = 0; g < nm; ++g) {
        const auto* slice = w + g * n;
        bool any = false;
        for (std::size_t b = 0; b < n && !any; ++b) any = slice[b] != 0;
        if (!any) continue;
        for (int i = 0; i < m_.r(); ++i) {
          std::uint32_t* dst = acc.data() + mons_.up(d, g, i) * n;
          for (const auto& e : nz_[i]) dst[e.a] += static_cast<std::uint32_t>(e.v) * slice[e.b];
        }
      }
      auto* o = out.row(row);
      for (std::size_t c = 0; c < out_cols; ++c) o[c] = static_cast<Field::Elem>(acc[c] % p);
    }
    return out;
  }

  /// Matrix of theta: (M (x) S)_d -> (M (x) S)_{d+1} (column convention).
  FFMatrix degree_map(long d) {
    return apply(FFMatrix::identity(m_.field(), piece_dim(d)), d).transpose();
  }

  /// I(m, d): dimension of the degree d part of Im theta^m.
  std::size_t image_dim(int m, long d) {
    if (d < 0 || m > d) return 0;
    if (m == 0) return piece_dim(d);
    if (m >= m_.p()) {
      extend_to(d);
      return images_[d][m_.p()];
    }
    extend_to(d);
    return images_[d][m];
  }

  /// dim (Ker theta^a cap Im theta^b)_d.
  std::size_t kernel_image_dim(int a, int b, long d) {
    if (d < 0) return 0;
    return image_dim(b, d) - image_dim(a + b, d + a);
  }

  /// Degree d piece of F_{i,j}(M), 0 <= j < i <= p.
  std::size_t graded_dim(int i, int j, long d) {
    if (j < 0 || j >= i || i > m_.p()) throw Error("graded_dim: need 0 <= j < i <= p");
    if (d < 0) throw Error("graded_dim: degree must be nonnegative");
    long v = static_cast<long>(kernel_image_dim(j + 1, i - j - 1, d)) -
             static_cast<long>(kernel_image_dim(j + 1, i - j, d)) -
             static_cast<long>(kernel_image_dim(j, i - j - 1, d)) +
             static_cast<long>(kernel_image_dim(j, i - j, d));
    return static_cast<std::size_t>(v);
  }

  /// Highest degree for which all image dimensions are cached.
  long computed_degree() const { return static_cast<long>(images_.size()) - 1; }

 private:
  struct Entry {
    std::uint32_t a, b;
    Field::Elem v;
  };

  void extend_to(long d) {
    const int p = m_.p();
    while (computed_degree() < d) {
      long nd = computed_degree() + 1;
      std::vector<std::size_t> dims(p + 1, 0);
      dims[0] = piece_dim(nd);
      std::vector<FFMatrix> next(p);
      if (nd > 0) {
        for (int m = 1; m <= p && m <= nd; ++m) {
          FFMatrix src = m == 1 ? FFMatrix::identity(m_.field(), piece_dim(nd - 1)) : bases_[m - 1];
          if (src.rows() == 0) break;
          FFMatrix img = row_basis(apply(src, nd - 1));
          dims[m] = img.rows();
          if (m < p) next[m] = std::move(img);
        }
      }
      bases_ = std::move(next);
      images_.push_back(std::move(dims));
    }
  }

  KEModule m_;
  MonomialTable mons_;
  std::vector<std::vector<Entry>> nz_;
  std::vector<std::vector<std::size_t>> images_;  // [d][m]
  std::vector<FFMatrix> bases_;                   // row bases of Im theta^m at the last degree
};

// ---------------------------------------------------------------------------
// Fibers

struct FiberReport {
  Point point;
  std::vector<std::size_t> dims;  // dims[i-1] = dim F_{i,alpha}(M)
};

namespace detail {

inline FFMatrix column_space(const FFMatrix& m) {
  if (m.cols() == 0) return m;
  return row_basis(m.transpose()).transpose();
}

inline std::size_t intersection_dim(const FFMatrix& a, const FFMatrix& b) {
  return a.cols() + b.cols() - rank(hstack(a, b));
}

}  // namespace detail

/// dim (Ker X cap Im X^{i-1}) / (Ker X cap Im X^i) at alpha, by explicit
/// subspace intersection.
inline FiberReport fiber(const KEModule& m, const Point& alpha) {
  FFMatrix x = x_alpha(m, alpha);
  FFMatrix ker = kernel_basis(x);
  std::vector<std::size_t> inter(m.p() + 1, 0);
  FFMatrix pw = FFMatrix::identity(x.field(), m.dim());
  for (int k = 0; k <= m.p(); ++k) {
    FFMatrix img = detail::column_space(pw);
    inter[k] = detail::intersection_dim(ker, img);
    pw = x * pw;
  }
  FiberReport rep{alpha, std::vector<std::size_t>(m.p(), 0)};
  for (int i = 1; i <= m.p(); ++i) rep.dims[i - 1] = inter[i - 1] - inter[i];
  return rep;
}

// ---------------------------------------------------------------------------
// Hilbert functions and polynomials

struct HilbertOptions {
  /// Fixed top degree. Negative means adaptive: stop at the first degree
  /// where the window fits and the rank law holds, never beyond
  /// dim M + p + 5 plus two extensions.
  long degree_cap = -1;
  /// Expected rank a_i; taken from the generic Jordan type when absent.
  std::optional<std::size_t> expected_rank;
};

struct HilbertData {
  int i = 1, j = 0;
  std::vector<long long> samples;  // samples[d] = graded dim in degree d
  QPoly fitted;
  long stable_from = 0;
  long window_start = 0;
  long max_degree = 0;
  int extensions = 0;
  std::size_t rank = 0;

  std::string report() const {
    std::ostringstream os;
    os << "F_" << i;
    if (j) os << "," << j;
    os << ": rank " << rank << "\n  samples d=0.." << max_degree << ":";
    for (auto s : samples) os << " " << s;
    os << "\n  fitted chi(d) = " << fitted.str() << "\n  stable from d = " << stable_from << " (window "
       << window_start << ".." << max_degree << ", heuristic regularity window";
    if (extensions) os << ", extended " << extensions << "x";
    os << ")";
    return os.str();
  }
};

namespace detail {

// Polynomial of degree <= deg through the last deg+1 samples of the window,
// or nullopt if some window sample disagrees.
inline std::optional<QPoly> fit_window(const std::vector<long long>& samples, long lo, long hi, int deg) {
  std::vector<long> xs;
  std::vector<Rational> ys;
  for (long d = hi - deg; d <= hi; ++d) {
    xs.push_back(d);
    ys.push_back(Rational(samples[d]));
  }
  QPoly fit = QPoly::interpolate(xs, ys);
  for (long d = lo; d <= hi; ++d)
    if (fit(Rational(d)) != Rational(samples[d])) return std::nullopt;
  return fit;
}

inline bool rank_law(const QPoly& f, int r, std::size_t rank) {
  return f.coeff(r - 1) * Rational(factorial(r - 1)) == Rational(rank);
}

}  // namespace detail

/// Samples the Hilbert function of F_{i,j}(M) and fits its Hilbert
/// polynomial (degree <= r-1) on a window of r+3 top degrees.
inline HilbertData hilbert(ThetaEngine& eng, int i, int j = 0, const HilbertOptions& opt = {}) {
  const KEModule& m = eng.module();
  const int r = m.r(), p = m.p();
  if (i < 1 || i > p || j < 0 || j >= i) throw Error("hilbert: need 0 <= j < i <= p");
  HilbertData hd;
  hd.i = i;
  hd.j = j;
  hd.rank = opt.expected_rank ? *opt.expected_rank : generic_jordan_type(m).mult(i);
  const long window = r + 3;
  const bool adaptive = opt.degree_cap < 0;
  long cap = adaptive ? static_cast<long>(m.dim()) + p + 5 : opt.degree_cap;
  cap = std::max(cap, window - 1);
  const long floor_degree = adaptive ? p + r : cap;

  auto sample = [&](long d) {
    while (static_cast<long>(hd.samples.size()) <= d)
      hd.samples.push_back(static_cast<long long>(eng.graded_dim(i, j, static_cast<long>(hd.samples.size()))));
  };
  auto accept = [&](long top) -> bool {
    long lo = top - window + 1;
    auto fit = detail::fit_window(hd.samples, lo, top, r - 1);
    if (!fit || !detail::rank_law(*fit, r, hd.rank)) return false;
    hd.fitted = *fit;
    hd.window_start = lo;
    hd.max_degree = top;
    long s = lo;
    while (s > 0 && fit->operator()(Rational(s - 1)) == Rational(hd.samples[s - 1])) --s;
    hd.stable_from = s;
    return true;
  };

  for (int ext = 0; ext <= 2; ++ext) {
    long top = cap + ext * window;
    long start = adaptive ? std::max(window - 1, floor_degree) : top;
    if (ext > 0) start = top - window + 1;
    for (long d = start; d <= top; ++d) {
      sample(d);
      if (!adaptive && d < top) continue;
      if (accept(d)) {
        hd.extensions = ext;
        return hd;
      }
    }
  }
  std::ostringstream os;
  os << "Hilbert function of F_" << i << "," << j << " did not stabilize by degree " << cap + 2 * window
     << " (samples:";
  for (auto s : hd.samples) os << " " << s;
  os << ")";
  throw StabilizationFailed(os.str());
}

inline HilbertData hilbert(const KEModule& m, int i, const HilbertOptions& opt = {}) {
  ThetaEngine eng(m);
  return hilbert(eng, i, 0, opt);
}

/// graded_dim(M,i,j,d) == graded_dim(M,i,0,d+j) across the stabilized range.
inline bool twist_shift_check(ThetaEngine& eng, int i, int j, const HilbertOptions& opt = {}) {
  if (j == 0) return true;
  auto h0 = hilbert(eng, i, 0, opt);
  auto hj = hilbert(eng, i, j, opt);
  long lo = std::max(hj.stable_from, h0.stable_from - j);
  long hi = std::max(hj.max_degree, h0.max_degree - j);
  if (lo < 0) lo = 0;
  for (long d = lo; d <= hi; ++d)
    if (eng.graded_dim(i, j, d) != eng.graded_dim(i, 0, d + j)) return false;
  return true;
}

/// dim M * C(d+r-1, r-1) = sum_{i,j} graded_dim(M,i,0,d+j) across the range
/// where every F_i has stabilized.
inline bool filtration_check(ThetaEngine& eng, const HilbertOptions& opt = {}) {
  const KEModule& m = eng.module();
  long lo = 0, hi = 0;
  for (int i = 1; i <= m.p(); ++i) {
    auto h = hilbert(eng, i, 0, opt);
    lo = std::max(lo, h.stable_from);
    hi = std::max(hi, h.max_degree);
  }
  for (long d = lo; d <= hi; ++d) {
    std::size_t total = 0;
    for (int i = 1; i <= m.p(); ++i)
      for (int j = 0; j < i; ++j) total += eng.graded_dim(i, 0, d + j);
    if (total != m.dim() * monomial_count(d, m.r())) return false;
  }
  return true;
}

}  // namespace cjt

#endif  // CJT_THETASHEAF_HPP_
