// Realizing vector bundles on P^{r-1} as modules of constant Jordan type.
//
// A bundle is given by a finite resolution by sums of line bundles O(a) whose
// maps are matrices of homogeneous polynomials. Each O(a) becomes a Heller
// shift Omega^{-eps a} k (eps = 1 for p = 2, eps = 2 for p odd), each
// monomial becomes a composite of cocycles between those shifts, and the
// resolution is folded up from the top by mapping cones.

#ifndef CJT_REALIZE_HPP_
#define CJT_REALIZE_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cjt/gfalg.hpp"
#include "cjt/kemod.hpp"

namespace cjt {

class SpecInvalid : public Error {
 public:
  using Error::Error;
};

class ResourceCap : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

struct ResourceCaps {
  std::size_t max_dim = 5000;
  int max_levels = 6;
};

// ---------------------------------------------------------------------------
// Polynomials in Y_1..Y_r over GF(p)

struct Polynomial {
  std::map<std::vector<int>, int> terms;  // exponent tuple -> coefficient in [1, p)

  bool is_zero() const { return terms.empty(); }

  /// Common total degree, nullopt for zero or mixed degrees.
  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& [e, c] : terms) {
      int t = 0;
      for (int x : e) t += x;
      if (d && *d != t) return std::nullopt;
      d = t;
    }
    return d;
  }

  void add_term(int p, const std::vector<int>& e, long c) {
    long v = ((c % p) + p) % p;
    if (v == 0) return;
    int& slot = terms[e];
    slot = static_cast<int>((slot + v) % p);
    if (slot == 0) terms.erase(e);
  }

  static Polynomial monomial(int p, const std::vector<int>& e, long c = 1) {
    Polynomial q;
    q.add_term(p, e, c);
    return q;
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      bool unit = true;
      std::ostringstream mono;
      for (std::size_t i = 0; i < it->first.size(); ++i) {
        if (it->first[i] == 0) continue;
        if (!unit) mono << "*";
        unit = false;
        mono << "Y" << i + 1;
        if (it->first[i] > 1) mono << "^" << it->first[i];
      }
      if (unit || it->second != 1) os << it->second << (unit ? "" : "*");
      os << mono.str();
    }
    return os.str();
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b, int p) {
  Polynomial out;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(p, e, static_cast<long>(ca) * cb);
    }
  return out;
}

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b, int p) {
  Polynomial out = a;
  for (const auto& [e, c] : b.terms) out.add_term(p, e, c);
  return out;
}

/// Value at a point of P^{r-1} (well defined up to a nonzero scalar).
inline Field::Elem evaluate(const Polynomial& f, const Point& pt) {
  const Field& k = *pt.field;
  Field::Elem v = 0;
  for (const auto& [e, c] : f.terms) {
    Field::Elem t = k.from_int(c);
    for (std::size_t i = 0; i < e.size(); ++i) t = k.mul(t, k.pow(pt.coords[i], e[i]));
    v = k.add(v, t);
  }
  return v;
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;  // [row][col]

/// 0 -> L_top -> ... -> L_1 -> L_0 with L_i = sum_j O(twists[i][j]) and
/// maps[i-1]: L_i -> L_{i-1}, rows indexed by level i-1.
struct ResolutionSpec {
  int p = 2, r = 2;
  std::vector<std::vector<long>> twists;
  std::vector<PolyMatrix> maps;

  int length() const { return static_cast<int>(twists.size()) - 1; }

  /// Rank of the resolved bundle.
  long rank() const {
    long s = 0;
    for (std::size_t i = 0; i < twists.size(); ++i) s += (i % 2 ? -1 : 1) * static_cast<long>(twists[i].size());
    return s;
  }

  /// Homogeneity (entry degree = target twist - source twist), shapes and the
  /// complex condition maps[i-1] * maps[i] = 0.
  void validate() const {
    if (twists.empty()) throw SpecInvalid("spec has no levels");
    if (maps.size() + 1 != twists.size())
      throw SpecInvalid("spec has " + std::to_string(twists.size()) + " levels but " + std::to_string(maps.size()) +
                        " maps");
    for (std::size_t i = 0; i < twists.size(); ++i)
      if (twists[i].empty()) throw SpecInvalid("level " + std::to_string(i) + " is empty");
    for (std::size_t lvl = 1; lvl < twists.size(); ++lvl) {
      const auto& m = maps[lvl - 1];
      const auto& src = twists[lvl];
      const auto& tgt = twists[lvl - 1];
      std::string where = "map " + std::to_string(lvl);
      if (m.size() != tgt.size()) throw SpecInvalid(where + ": expected " + std::to_string(tgt.size()) + " rows");
      for (std::size_t row = 0; row < m.size(); ++row) {
        if (m[row].size() != src.size())
          throw SpecInvalid(where + ": expected " + std::to_string(src.size()) + " columns");
        for (std::size_t col = 0; col < src.size(); ++col) {
          const auto& f = m[row][col];
          for (const auto& [e, c] : f.terms)
            if (static_cast<int>(e.size()) != r) throw SpecInvalid(where + ": exponent tuple of wrong length");
          if (f.is_zero()) continue;
          long want = tgt[row] - src[col];
          auto deg = f.degree();
          if (!deg || *deg != want)
            throw SpecInvalid(where + " entry (" + std::to_string(row + 1) + "," + std::to_string(col + 1) +
                              "): " + f.str() + " is not homogeneous of degree " + std::to_string(want));
        }
      }
    }
    for (std::size_t lvl = 2; lvl < twists.size(); ++lvl) {
      const auto& a = maps[lvl - 2];
      const auto& b = maps[lvl - 1];
      for (std::size_t row = 0; row < a.size(); ++row)
        for (std::size_t col = 0; col < b[0].size(); ++col) {
          Polynomial s;
          for (std::size_t k = 0; k < b.size(); ++k) s = poly_add(s, poly_mul(a[row][k], b[k][col], p), p);
          if (!s.is_zero())
            throw SpecInvalid("maps " + std::to_string(lvl - 1) + " and " + std::to_string(lvl) +
                              " do not compose to zero (entry " + std::to_string(row + 1) + "," +
                              std::to_string(col + 1) + ")");
        }
    }
  }
};

inline int omega_step(int p) { return p == 2 ? 1 : 2; }

/// Columns: the free generators of kE^b in the generator-major basis.
inline FFMatrix free_generators(int p, int r, std::size_t b) {
  GroupAlgebra ka(p, r);
  FFMatrix g(Field::make(p), b * ka.dim(), b);
  for (std::size_t j = 0; j < b; ++j) g(j * ka.dim(), j) = 1;
  return g;
}

// ---------------------------------------------------------------------------
// Minimal resolution of k and cocycles

/// Omega^m k for m = 0, 1, ... with covers, inclusions into the previous
/// projective, and cocycle representatives. Everything is built on demand
/// and cached.
class Resolution {
 public:
  Resolution(int p, int r, ResourceCaps caps = {}) : p_(p), r_(r), caps_(caps) {
    omegas_.push_back(trivial_module(p, r));
    inclusions_.emplace_back();
  }

  int p() const { return p_; }
  int r() const { return r_; }
  int eps() const { return omega_step(p_); }

  const KEModule& omega(int m) {
    ensure(m);
    return omegas_[m];
  }
  const ProjectiveCover& cover(int m) {
    ensure(m);
    while (static_cast<int>(covers_.size()) <= m) covers_.push_back(projective_cover(omegas_[covers_.size()]));
    return covers_[m];
  }
  /// Omega^m k -> kE^{b_{m-1}}, m >= 1.
  const FFMatrix& inclusion(int m) {
    ensure(m);
    return inclusions_[m];
  }
  std::size_t generators(int m) { return cover(m).generators; }

  /// Given f: Omega^a k -> Omega^b k, a map Omega^{a+1} k -> Omega^{b+1} k
  /// induced on kernels by a lift through the projective covers.
  FFMatrix lift(const FFMatrix& f, int a, int b) {
    const auto& ca = cover(a);
    const auto& cb = cover(b);
    FFMatrix images = solve_or_throw(cb.map, f * ca.generator_vectors, "lift through projective cover");
    KEModule pb = free_module(p_, r_, cb.generators);
    FFMatrix lifted = free_map(pb, images);
    return solve_or_throw(inclusion(b + 1), lifted * inclusion(a + 1), "restriction to syzygies");
  }

  FFMatrix lift_times(FFMatrix f, int a, int b, int times) {
    for (int t = 0; t < times; ++t) f = lift(f, a + t, b + t);
    return f;
  }

  /// Cocycle for the degree-one generator i (0-based): Omega k -> k dual to
  /// X_i for p = 2; for p odd, Omega^2 k -> k from the 2-fold extension
  /// k -> k[X_i]/(X_i^p) -> k[X_i]/(X_i^p) -> k with middle map X_i.
  FFMatrix generator(int i) {
    if (i < 0 || i >= r_) throw Error("generator index out of range");
    GroupAlgebra ka(p_, r_);
    if (p_ == 2) {
      FFMatrix coef(omega(1).field(), 1, ka.dim());
      std::vector<int> e(r_, 0);
      e[i] = 1;
      coef(0, ka.index(e)) = 1;
      return coef * inclusion(1);
    }
    KEModule cyc = perm_module(p_, r_, i + 1);
    FFMatrix unit(cyc.field(), p_, 1);
    unit(0, 0) = 1;
    FFMatrix phi0 = free_map(cyc, unit);                 // kE -> cyc
    FFMatrix d1 = inclusion(1) * cover(1).map;            // P_1 -> kE
    FFMatrix images = solve_or_throw(cyc.action(i), phi0 * d1 * free_generators(p_, r_, generators(1)),
                                     "lift through multiplication by X_i");
    FFMatrix psi = free_map(cyc, images);                 // P_1 -> cyc
    FFMatrix on_omega2 = psi * inclusion(2);
    return on_omega2.block(p_ - 1, 0, 1, on_omega2.cols());
  }

  /// Generator cocycle i lifted eps*j times: Omega^{eps(1+j)} k -> Omega^{eps j} k.
  const FFMatrix& cocycle(int i, int j) {
    auto key = std::make_pair(i, j);
    if (auto it = cocycles_.find(key); it != cocycles_.end()) return it->second;
    FFMatrix m = j == 0 ? generator(i) : lift_times(cocycle(i, j - 1), eps() * j, eps() * (j - 1), eps());
    return cocycles_.emplace(key, std::move(m)).first->second;
  }

  /// Composite Omega^{eps(n+j)} k -> Omega^{eps j} k for the monomial with
  /// exponents e (total degree n >= 1).
  FFMatrix monomial(const std::vector<int>& e, int j) {
    if (static_cast<int>(e.size()) != r_) throw Error("exponent tuple has wrong length");
    std::vector<int> factors;
    for (int i = 0; i < r_; ++i) {
      if (e[i] < 0) throw Error("negative exponent");
      for (int t = 0; t < e[i]; ++t) factors.push_back(i);
    }
    if (factors.empty()) throw Error("monomial cocycles need positive degree");
    FFMatrix out = cocycle(factors[0], j);
    for (std::size_t t = 1; t < factors.size(); ++t) out = out * cocycle(factors[t], j + static_cast<int>(t));
    return out;
  }

 private:
  static FFMatrix solve_or_throw(const FFMatrix& a, const FFMatrix& b, const std::string& what) {
    auto x = solve(a, b);
    if (!x) throw NoSolution("no solution: " + what);
    return std::move(*x);
  }

  void ensure(int m) {
    if (m < 0) throw Error("negative syzygy index");
    while (static_cast<int>(omegas_.size()) <= m) {
      auto ks = syzygy(omegas_.back());
      if (ks.module.dim() > caps_.max_dim)
        throw ResourceCap("Omega^" + std::to_string(omegas_.size()) + " k has dimension " +
                          std::to_string(ks.module.dim()) + " above the cap " + std::to_string(caps_.max_dim));
      omegas_.push_back(std::move(ks.module));
      inclusions_.push_back(std::move(ks.inclusion));
    }
  }

  int p_, r_;
  ResourceCaps caps_;
  std::vector<KEModule> omegas_;
  std::vector<ProjectiveCover> covers_;
  std::vector<FFMatrix> inclusions_;
  std::map<std::pair<int, int>, FFMatrix> cocycles_;
};

// ---------------------------------------------------------------------------
// Mapping cones

/// Cone of f: A -> B, the cokernel of a |-> (f a, iota a) in B (+) I(A).
struct Cone {
  KEModule module;
  InjectiveHull hull;       // of A
  FFMatrix projection;      // module.dim() x (B.dim() + hull size)
  FFMatrix section;         // (B.dim() + hull size) x module.dim()
  FFMatrix from_target;     // B -> C
  FFMatrix to_shift;        // C -> Omega^{-1} A
  KEModule shift;           // Omega^{-1} A
};

inline Cone cone(const KEModule& a, const KEModule& b, const FFMatrix& f) {
  require_compatible(a, b);
  if (!is_module_hom(a, b, f)) throw ModuleError("cone: map is not a module homomorphism");
  Cone c;
  c.hull = injective_hull(a);
  KEModule inj = free_module(a.p(), a.r(), c.hull.copies);
  KEModule amb = direct_sum(b, inj);
  auto q = quotient_module(amb, vstack(f, c.hull.embedding));
  c.module = std::move(q.module);
  c.projection = std::move(q.projection);
  c.section = std::move(q.section);
  c.from_target = c.projection.block(0, 0, c.projection.rows(), b.dim());
  auto cs = cosyzygy(a);
  c.shift = cs.module;
  c.to_shift = cs.projection * c.section.block(b.dim(), 0, inj.dim(), c.module.dim());
  return c;
}

namespace detail {

/// E with u(x) = E * vec(U) for the module map u: kE^s -> B sending free
/// generator j to column j of U (vec stacks columns).
inline FFMatrix free_eval(const std::vector<FFMatrix>& mons, std::size_t nb, const FFMatrix& x, std::size_t s) {
  const std::size_t d = mons.size();
  FFMatrix e(x.field(), nb, s * nb);
  const Field& f = *x.field();
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t m = 0; m < d; ++m) {
      auto c = x(j * d + m, 0);
      if (c == 0) continue;
      const auto& mm = mons[m];
      for (std::size_t r = 0; r < nb; ++r)
        for (std::size_t k = 0; k < nb; ++k)
          if (mm(r, k)) e(r, j * nb + k) = f.add(e(r, j * nb + k), f.mul(c, mm(r, k)));
    }
  return e;
}

inline FFMatrix unvec(const FFMatrix& v, std::size_t offset, std::size_t rows, std::size_t cols) {
  FFMatrix u(v.field(), rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) u(i, j) = v(offset + j * rows + i, 0);
  return u;
}

}  // namespace detail

/// Extends phi: B -> N over the cone of g: A -> B, restricted along
/// `incl` (a split inclusion C' -> C). The part on I(A) is -u with
/// u iota = phi g. When psi: N -> N' is given, u is chosen so that
/// psi h also factors through a projective; this fixes the Toda bracket
/// indeterminacy so the next extension exists.
inline FFMatrix extend_over_cone(const KEModule& a, const FFMatrix& g, const Cone& c, const FFMatrix& incl,
                                 const KEModule& cprime, const KEModule& n, const FFMatrix& phi,
                                 const KEModule* next = nullptr, const FFMatrix* psi = nullptr) {
  const std::size_t s = c.hull.copies, nb = phi.cols(), nn = n.dim();
  GroupAlgebra ka(a.p(), a.r());
  const std::size_t d = ka.dim();
  FFMatrix sec = c.section * incl;
  FFMatrix sb = sec.block(0, 0, nb, sec.cols());
  FFMatrix sx = sec.block(nb, 0, s * d, sec.cols());
  auto mons_n = n.all_monomials();

  const bool toda = next && psi;
  InjectiveHull hull_c;
  std::size_t sc = 0, nnext = 0;
  std::vector<FFMatrix> mons_next;
  if (toda) {
    hull_c = injective_hull(cprime);
    sc = hull_c.copies;
    nnext = next->dim();
    mons_next = next->all_monomials();
  }
  const std::size_t unknowns = s * nn + sc * nnext;

  FFMatrix gens_a = projective_cover(a).generator_vectors;
  FFMatrix iota_a = c.hull.embedding * gens_a;
  FFMatrix rhs_a = phi * g * gens_a;
  FFMatrix sys(a.field(), 0, unknowns), rhs(a.field(), 0, 1);
  for (std::size_t t = 0; t < gens_a.cols(); ++t) {
    FFMatrix row(a.field(), nn, unknowns);
    row.set_block(0, 0, detail::free_eval(mons_n, nn, iota_a.column(t), s));
    sys = vstack(sys, row);
    rhs = vstack(rhs, rhs_a.column(t));
  }
  if (toda) {
    FFMatrix gens_c = projective_cover(cprime).generator_vectors;
    FFMatrix iota_c = hull_c.embedding * gens_c;
    FFMatrix target = (*psi) * phi * sb * gens_c;
    FFMatrix xs = sx * gens_c;
    for (std::size_t t = 0; t < gens_c.cols(); ++t) {
      FFMatrix row(a.field(), nnext, unknowns);
      row.set_block(0, 0, (*psi) * detail::free_eval(mons_n, nn, xs.column(t), s));
      row.set_block(0, s * nn, detail::free_eval(mons_next, nnext, iota_c.column(t), sc));
      sys = vstack(sys, row);
      rhs = vstack(rhs, target.column(t));
    }
  }
  auto sol = solve(sys, rhs);
  if (!sol) throw NoSolution(toda ? "no extension over the cone compatible with the next map"
                                  : "map does not extend over the cone");
  FFMatrix u = free_map(n, detail::unvec(*sol, 0, nn, s));
  return phi * sb - u * sx;
}

// ---------------------------------------------------------------------------
// Assembly

struct RealizeReport {
  std::vector<std::string> lines;
  long shift = 0;  // twists were lowered by this amount before assembly
  std::size_t stripped = 0;

  std::string str() const {
    std::ostringstream os;
    for (const auto& l : lines) os << l << "\n";
    return os.str();
  }
};

struct Realization {
  KEModule module;
  RealizeReport report;
};

namespace detail {

struct ShiftSum {
  KEModule module;
  std::vector<int> syzygy;        // per summand: Omega^{syzygy} k
  std::vector<std::size_t> offset;
};

inline ShiftSum shift_sum(Resolution& res, const std::vector<long>& twists) {
  ShiftSum out{KEModule::zero(res.p(), res.r()), {}, {}};
  for (long a : twists) {
    int m = static_cast<int>(-a) * res.eps();
    out.offset.push_back(out.module.dim());
    out.syzygy.push_back(m);
    out.module = direct_sum(out.module, res.omega(m));
  }
  return out;
}

inline FFMatrix realize_map(Resolution& res, const PolyMatrix& m, const ShiftSum& src, const ShiftSum& tgt) {
  FFMatrix out(res.omega(0).field(), tgt.module.dim(), src.module.dim());
  const int e = res.eps();
  for (std::size_t row = 0; row < m.size(); ++row)
    for (std::size_t col = 0; col < m[row].size(); ++col) {
      const auto& f = m[row][col];
      if (f.is_zero()) continue;
      int j = tgt.syzygy[row] / e;
      FFMatrix blk(out.field(), res.omega(tgt.syzygy[row]).dim(), res.omega(src.syzygy[col]).dim());
      for (const auto& [ex, c] : f.terms) {
        int deg = 0;
        for (int x : ex) deg += x;
        FFMatrix t = deg == 0 ? FFMatrix::identity(out.field(), blk.rows()) : res.monomial(ex, j);
        blk = blk + t.scaled(static_cast<Field::Elem>(c));
      }
      out.set_block(tgt.offset[row], src.offset[col], blk);
    }
  return out;
}

inline void check_cap(const KEModule& m, const ResourceCaps& caps, const std::string& what) {
  if (m.dim() > caps.max_dim)
    throw ResourceCap(what + " has dimension " + std::to_string(m.dim()) + " above the cap " +
                      std::to_string(caps.max_dim));
}

}  // namespace detail

/// Builds M with F_1(M) = F for p = 2 and F_1(M) = F^*(F) (Frobenius
/// pullback) for p odd, where F is the bundle resolved by `spec`.
inline Realization realize_bundle(const ResolutionSpec& spec, const ResourceCaps& caps = {}) {
  spec.validate();
  if (spec.length() > caps.max_levels)
    throw ResourceCap("spec has " + std::to_string(spec.length()) + " levels above the cap " +
                      std::to_string(caps.max_levels));
  Realization out;
  auto& rep = out.report;
  long top = spec.twists[0][0];
  for (const auto& lvl : spec.twists)
    for (long a : lvl) top = std::max(top, a);
  rep.shift = std::max(0L, top);
  std::vector<std::vector<long>> tw = spec.twists;
  for (auto& lvl : tw)
    for (auto& a : lvl) a -= rep.shift;

  Resolution res(spec.p, spec.r, caps);
  const int L = spec.length();
  std::vector<detail::ShiftSum> sums;
  for (int i = 0; i <= L; ++i) {
    sums.push_back(detail::shift_sum(res, tw[i]));
    detail::check_cap(sums.back().module, caps, "level " + std::to_string(i));
    std::ostringstream os;
    os << "level " << i << ":";
    for (int m : sums.back().syzygy) os << " Omega^" << m << "k";
    os << " (dim " << sums.back().module.dim() << ")";
    rep.lines.push_back(os.str());
  }
  std::vector<FFMatrix> phis(L + 1);  // phis[i]: N_i -> N_{i-1}
  for (int i = 1; i <= L; ++i) phis[i] = detail::realize_map(res, spec.maps[i - 1], sums[i], sums[i - 1]);

  KEModule cur = sums[L].module;
  FFMatrix g = L >= 1 ? phis[L] : FFMatrix();
  for (int i = L; i >= 1; --i) {
    const KEModule& target = sums[i - 1].module;
    Cone c = cone(cur, target, g);
    detail::check_cap(c.module, caps, "cone at level " + std::to_string(i));
    auto st = strip_free(c.module);
    rep.stripped += st.free_count;
    std::ostringstream os;
    os << "cone " << i << " -> " << i - 1 << ": dim " << c.module.dim() << ", stripped " << st.free_count
       << " free summand(s), now dim " << st.module.dim();
    rep.lines.push_back(os.str());
    if (i >= 2) {
      const KEModule* next = i >= 3 ? &sums[i - 3].module : nullptr;
      const FFMatrix* psi = i >= 3 ? &phis[i - 2] : nullptr;
      g = extend_over_cone(cur, g, c, st.inclusion, st.module, sums[i - 2].module, phis[i - 1], next, psi);
    }
    cur = std::move(st.module);
  }
  if (rep.shift > 0 && cur.dim() > 0) {
    cur = omega(cur, -static_cast<int>(rep.shift) * res.eps());
    detail::check_cap(cur, caps, "shifted result");
    rep.lines.push_back("applied Omega^-" + std::to_string(rep.shift * res.eps()) + ": dim " +
                        std::to_string(cur.dim()));
  }
  auto st = strip_free(cur);
  rep.stripped += st.free_count;
  out.module = std::move(st.module);
  rep.lines.push_back("result: dim " + std::to_string(out.module.dim()));
  return out;
}

}  // namespace cjt

#endif  // CJT_REALIZE_HPP_
