// Named verification suites shared by the command-line tool and the
// acceptance tests. Each suite returns one row per checked case.

#ifndef CJT_VERIFY_HPP_
#define CJT_VERIFY_HPP_

#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cjt/chowring.hpp"
#include "cjt/formats.hpp"
#include "cjt/kemod.hpp"
#include "cjt/realize.hpp"
#include "cjt/thetasheaf.hpp"

namespace cjt::verify {

struct Case {
  std::string id;
  bool pass = true;
  std::string detail;
  bool applicable = true;  // false: reported as n/a, counts as passing
};

struct SuiteResult {
  std::string name;
  std::vector<Case> cases;
  double seconds = 0;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : cases) n += c.pass ? 0 : 1;
    return n;
  }
  bool pass() const { return !cases.empty() && failures() == 0; }

  std::string table() const {
    std::size_t w = 4;
    for (const auto& c : cases) w = std::max(w, c.id.size());
    std::ostringstream os;
    os << "suite " << name << "\n";
    for (const auto& c : cases) {
      const char* tag = !c.applicable ? "n/a " : c.pass ? "PASS" : "FAIL";
      os << "  " << tag << "  " << std::left << std::setw(static_cast<int>(w)) << c.id << "  " << c.detail << "\n";
    }
    os << "  " << (pass() ? "PASS" : "FAIL") << ": " << cases.size() - failures() << "/" << cases.size()
       << " cases (" << std::fixed << std::setprecision(2) << seconds << " s)\n";
    return os.str();
  }
};

struct Options {
  std::optional<int> p, r;
  std::optional<std::string> module;  // builtin:<name> or a module file
  std::optional<int> n;
  std::uint64_t seed = 0xC0FFEE;
  long degree_cap = -1;
  std::size_t samples = 200;
  int field_ext = 4;
  ResourceCaps caps;

  HilbertOptions hilbert() const {
    HilbertOptions h;
    h.degree_cap = degree_cap;
    return h;
  }
  SamplingPlan sampling() const {
    SamplingPlan s;
    s.extra = samples;
    s.max_extension = field_ext;
    s.seed = seed;
    return s;
  }
};

// ---------------------------------------------------------------------------
// Modules and their sheaves

struct Named {
  std::string name;
  KEModule module;
};

inline std::string pr_tag(int p, int r) { return "p=" + std::to_string(p) + " r=" + std::to_string(r); }

/// (p, r) pairs a suite runs over: the requested pair, or the default grid.
inline std::vector<std::pair<int, int>> grid(const Options& o, const std::vector<std::pair<int, int>>& dflt) {
  if (o.p || o.r) return {{o.p.value_or(2), o.r.value_or(2)}};
  return dflt;
}

inline const std::vector<std::pair<int, int>>& default_grid() {
  static const std::vector<std::pair<int, int>> g = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
  return g;
}

/// The standard battery of modules for one (p, r).
inline std::vector<Named> battery(int p, int r) {
  std::vector<std::string> names = {"trivial", "regular", "radq2"};
  if (r * (p - 1) >= 3) names.push_back("radq3");
  names.push_back("perm1");
  if (r >= 2) names.push_back("perm2");
  if (r == 2) {
    names.push_back("zigzag1");
    names.push_back("zigzag2");
  }
  for (const char* s : {"omega1", "omega-1", "omega2", "omega-2"}) names.push_back(s);
  std::vector<Named> out;
  for (const auto& n : names) out.push_back({n, *builtin_module("builtin:" + n, p, r)});
  return out;
}

/// Modules a structural suite runs over: the one named by --module, or the
/// battery on every grid pair.
inline std::vector<Named> modules_for(const Options& o, const std::vector<std::pair<int, int>>& dflt) {
  std::vector<Named> out;
  if (o.module) {
    int p = o.p.value_or(2), r = o.r.value_or(2);
    auto m = load_module(*o.module, p, r);
    std::string name = o.module->rfind("builtin:", 0) == 0 ? o.module->substr(8) : *o.module;
    out.push_back({pr_tag(m.p(), m.r()) + " " + name, std::move(m)});
    return out;
  }
  for (auto [p, r] : grid(o, dflt))
    for (auto& nm : battery(p, r)) out.push_back({pr_tag(p, r) + " " + nm.name, std::move(nm.module)});
  return out;
}

/// Lazily computed Hilbert data of the F_{i,j}(M), sharing one engine.
class Sheaves {
 public:
  Sheaves(KEModule m, HilbertOptions opt) : eng_(std::move(m)), opt_(opt), generic_(generic_jordan_type(module())) {}

  const KEModule& module() const { return eng_.module(); }
  ThetaEngine& engine() { return eng_; }
  const JordanType& generic() const { return generic_; }

  const HilbertData& F(int i, int j = 0) {
    auto key = std::make_pair(i, j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    HilbertOptions o = opt_;
    o.expected_rank = generic_.mult(i);
    return cache_.emplace(key, hilbert(eng_, i, j, o)).first->second;
  }
  ChowClass chern(int i, int j = 0) { return chern_from_hilbert(F(i, j).fitted, module().r()); }

 private:
  ThetaEngine eng_;
  HilbertOptions opt_;
  JordanType generic_;
  std::map<std::pair<int, int>, HilbertData> cache_;
};

/// "O(-6)" for line bundles, otherwise "rank s, c = ...".
inline std::string describe(const ChowClass& c) {
  if (c.rank == 1) {
    bool line = true;
    for (int m = 2; m < c.r; ++m) line = line && c.c[m] == 0;
    if (line) return "O(" + c.c[1].str() + ")";
  }
  return "rank " + c.rank.str() + ", c = " + c.str();
}

namespace detail {

template <class F>
SuiteResult timed(const std::string& name, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult res;
  res.name = name;
  body(res);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

// Runs one case, turning library errors into a failing row.
template <class F>
void run_case(SuiteResult& res, const std::string& id, F&& body) {
  Case c;
  c.id = id;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("error: ") + e.what();
  }
  res.cases.push_back(std::move(c));
}

inline std::string poly_str(const QPoly& f) { return f.str("d"); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Structural suites

/// graded_dim(M,i,j,d) = graded_dim(M,i,0,d+j), so F_{i,j}(M) = F_i(M)(j).
inline SuiteResult fij_shift(const Options& o) {
  return detail::timed("fij-shift", [&](SuiteResult& res) {
    for (auto& nm : modules_for(o, default_grid())) {
      Sheaves sh(nm.module, o.hilbert());
      const int p = nm.module.p();
      for (int i = 2; i <= p; ++i)
        for (int j = 1; j < i; ++j)
          detail::run_case(res, nm.name + " F_" + std::to_string(i) + "," + std::to_string(j), [&](Case& c) {
            const auto& fi = sh.F(i);
            const auto& fij = sh.F(i, j);
            bool poly = fij.fitted == fi.fitted.shifted(j);
            HilbertOptions h = o.hilbert();
            h.expected_rank = sh.generic().mult(i);
            bool pointwise = twist_shift_check(sh.engine(), i, j, h);
            c.pass = poly && pointwise;
            c.detail = "chi = " + detail::poly_str(fij.fitted) + (c.pass ? " = chi_i(d+j)" : " (mismatch)");
          });
    }
  });
}

/// sum_{i,j} chi_{F_i}(d+j) = dim M * C(d+r-1, r-1), as polynomials and
/// degree by degree on the stable range.
inline SuiteResult filtration(const Options& o) {
  return detail::timed("filtration", [&](SuiteResult& res) {
    for (auto& nm : modules_for(o, default_grid())) {
      detail::run_case(res, nm.name, [&](Case& c) {
        Sheaves sh(nm.module, o.hilbert());
        const auto& m = sh.module();
        QPoly total;
        for (int i = 1; i <= m.p(); ++i)
          for (int j = 0; j < i; ++j) total = total + sh.F(i).fitted.shifted(j);
        QPoly want = QPoly::binomial_in(m.r() - 1, m.r() - 1) * Rational(static_cast<long>(m.dim()));
        HilbertOptions h = o.hilbert();
        bool pointwise = filtration_check(sh.engine(), h);
        c.pass = total == want && pointwise;
        c.detail = "sum = " + detail::poly_str(total) + (c.pass ? "" : ", want " + detail::poly_str(want));
      });
    }
  });
}

/// Constant Jordan type makes each F_i(M) a bundle of rank a_i: the fitted
/// rank agrees with the type, every sampled fiber has dimension a_i and the
/// Chern class recovered from chi is integral.
inline SuiteResult prop_bundles(const Options& o) {
  return detail::timed("prop-bundles", [&](SuiteResult& res) {
    for (auto& nm : modules_for(o, default_grid())) {
      detail::run_case(res, nm.name, [&](Case& c) {
        auto v = check_constant(nm.module, o.sampling());
        if (!v.constant) {
          c.applicable = false;
          c.detail = "not constant Jordan type: " + v.type.str() + " vs " + v.type_at_witness.str() + " at " +
                     v.witness->str();
          return;
        }
        Sheaves sh(nm.module, o.hilbert());
        const int p = nm.module.p();
        std::ostringstream os;
        os << "type " << v.type.str() << ";";
        for (int i = 1; i <= p; ++i) {
          const auto& h = sh.F(i);
          c.pass = c.pass && h.rank == v.type.mult(i);
          if (h.rank > 0) os << " F_" << i << " " << describe(sh.chern(i)) << ";";
        }
        for (const auto& pt : sample_points(p, nm.module.r(), o.sampling())) {
          auto f = fiber(nm.module, pt);
          for (int i = 1; i <= p; ++i)
            if (f.dims[i - 1] != v.type.mult(i)) {
              c.pass = false;
              os << " fiber of F_" << i << " at " << pt.str() << " has dim " << f.dims[i - 1] << ";";
            }
        }
        c.detail = os.str();
      });
    }
  });
}

namespace detail {

inline std::vector<Named> shift_battery(const Options& o) {
  if (o.module) return modules_for(o, {});
  std::vector<Named> out;
  for (auto [p, r] : grid(o, default_grid()))
    for (const char* n : {"trivial", "radq2", "perm2", "omega-1"}) {
      std::string name = pr_tag(p, r) + " " + n;
      out.push_back({name, *builtin_module(std::string("builtin:") + n, p, r)});
    }
  if (!o.p && !o.r) out.push_back({pr_tag(3, 2) + " zigzag3", zigzag_module(3, 2, 3)});
  return out;
}

}  // namespace detail

/// F_{p-i}(Omega M) = F_i(M)(-p+i) for 1 <= i < p.
inline SuiteResult omega_shift(const Options& o) {
  return detail::timed("omega-shift", [&](SuiteResult& res) {
    for (auto& nm : detail::shift_battery(o)) {
      const int p = nm.module.p();
      Sheaves a(nm.module, o.hilbert());
      Sheaves b(omega(nm.module, 1), o.hilbert());
      for (int i = 1; i < p; ++i)
        detail::run_case(res, nm.name + " i=" + std::to_string(i), [&](Case& c) {
          QPoly lhs = b.F(p - i).fitted, rhs = a.F(i).fitted.shifted(i - p);
          c.pass = lhs == rhs;
          c.detail = "chi F_" + std::to_string(p - i) + "(Omega M) = " + detail::poly_str(lhs) +
                     (c.pass ? " = chi F_" + std::to_string(i) + "(M)(" + std::to_string(i - p) + ")"
                             : ", want " + detail::poly_str(rhs));
        });
    }
  });
}

/// F_i(Omega^2 M) = F_i(M)(-p) for 1 <= i < p.
inline SuiteResult omega2(const Options& o) {
  return detail::timed("omega2", [&](SuiteResult& res) {
    for (auto& nm : detail::shift_battery(o)) {
      const int p = nm.module.p();
      Sheaves a(nm.module, o.hilbert());
      Sheaves b(omega(nm.module, 2), o.hilbert());
      for (int i = 1; i < p; ++i)
        detail::run_case(res, nm.name + " i=" + std::to_string(i), [&](Case& c) {
          QPoly lhs = b.F(i).fitted, rhs = a.F(i).fitted.shifted(-p);
          c.pass = lhs == rhs;
          c.detail = "chi = " + detail::poly_str(lhs) + (c.pass ? "" : ", want " + detail::poly_str(rhs));
        });
    }
  });
}

/// F_1(Omega^{2n} k) = O(-np) for p odd, F_1(Omega^n k) = O(-n) for p = 2.
inline SuiteResult omegank(const Options& o) {
  return detail::timed("omegank", [&](SuiteResult& res) {
    for (auto [p, r] : grid(o, default_grid())) {
      std::vector<int> ns;
      if (o.n)
        ns = {*o.n};
      else if (p == 2)
        ns = {1, 2, 3};
      else
        ns = r <= 2 ? std::vector<int>{1, 2} : std::vector<int>{1};
      for (int n : ns) {
        const int e = omega_step(p) * n;
        detail::run_case(res, pr_tag(p, r) + " Omega^" + std::to_string(e) + "k", [&](Case& c) {
          Sheaves sh(omega(trivial_module(p, r), e), o.hilbert());
          long want = p == 2 ? -n : -static_cast<long>(n) * p;
          auto got = sh.chern(1);
          c.pass = sh.F(1).rank == 1 && got == ChowClass::line(r, want);
          c.detail = "F_1 = " + describe(got) + (c.pass ? "" : ", want O(" + std::to_string(want) + ")");
        });
      }
    }
  });
}

/// F_i(M^*) has the rank of F_i(M) and, for constant Jordan type,
/// c(F_i(M^*)) = c(F_i(M)^dual (1-i)).
inline SuiteResult duality(const Options& o) {
  return detail::timed("duality", [&](SuiteResult& res) {
    for (auto& nm : modules_for(o, default_grid())) {
      const int p = nm.module.p();
      Sheaves a(nm.module, o.hilbert());
      Sheaves b(dual(nm.module), o.hilbert());
      const bool constant = check_constant(nm.module, o.sampling()).constant;
      for (int i = 1; i <= p; ++i)
        detail::run_case(res, nm.name + " i=" + std::to_string(i), [&](Case& c) {
          c.pass = a.F(i).rank == b.F(i).rank;
          c.detail = "rank " + std::to_string(b.F(i).rank);
          if (!constant || a.F(i).rank == 0) return;
          auto got = b.chern(i);
          auto want = twist(dual_class(a.chern(i)), 1 - i);
          c.pass = c.pass && got == want;
          c.detail += ", c = " + got.str() + (got == want ? "" : ", want " + want.str());
        });
    }
  });
}

// ---------------------------------------------------------------------------
// Resolutions of bundles on P^{r-1}

namespace specs {

inline Polynomial Y(int p, int r, int i, int pw = 1, long c = 1) {
  std::vector<int> e(r, 0);
  e[i] = pw;
  return Polynomial::monomial(p, e, c);
}

inline ResolutionSpec line(int p, int r, long a) { return {p, r, {{a}}, {}}; }

inline ResolutionSpec sum(int p, int r, std::vector<long> twists) { return {p, r, {std::move(twists)}, {}}; }

/// 0 -> O(-1) -> O^r -> T(-1) -> 0
inline ResolutionSpec euler(int p, int r) {
  ResolutionSpec s{p, r, {std::vector<long>(r, 0), {-1}}, {}};
  PolyMatrix m(r, std::vector<Polynomial>(1));
  for (int i = 0; i < r; ++i) m[i][0] = Y(p, r, i);
  s.maps.push_back(m);
  return s;
}

/// 0 -> O(-2) -> O^2 -> O(2) -> 0 on P^1 via (Y_1^2, Y_2^2).
inline ResolutionSpec squares(int p) {
  ResolutionSpec s{p, 2, {{0, 0}, {-2}}, {}};
  s.maps.push_back({{Y(p, 2, 1, 2)}, {Y(p, 2, 0, 2, -1)}});
  return s;
}

/// Koszul complex on P^2; it resolves the zero sheaf.
inline ResolutionSpec koszul(int p) {
  ResolutionSpec s{p, 3, {{0}, {-1, -1, -1}, {-2, -2, -2}, {-3}}, {}};
  PolyMatrix d1(1, std::vector<Polynomial>(3));
  for (int i = 0; i < 3; ++i) d1[0][i] = Y(p, 3, i);
  PolyMatrix d2(3, std::vector<Polynomial>(3));
  d2[0][0] = Y(p, 3, 1, 1, -1);
  d2[1][0] = Y(p, 3, 0);
  d2[0][1] = Y(p, 3, 2, 1, -1);
  d2[2][1] = Y(p, 3, 0);
  d2[1][2] = Y(p, 3, 2, 1, -1);
  d2[2][2] = Y(p, 3, 1);
  PolyMatrix d3(3, std::vector<Polynomial>(1));
  d3[0][0] = Y(p, 3, 2);
  d3[1][0] = Y(p, 3, 1, 1, -1);
  d3[2][0] = Y(p, 3, 0);
  s.maps = {d1, d2, d3};
  return s;
}

struct Entry {
  std::string name;
  ResolutionSpec spec;
};

inline std::vector<Entry> standard(int p) {
  if (p == 2)
    return {{"O(-2) on P^1", line(2, 2, -2)}, {"O(1) on P^1", line(2, 2, 1)},
            {"T(-1) on P^1", euler(2, 2)},    {"T(-1) on P^2", euler(2, 3)},
            {"O(2) on P^1", squares(2)},      {"Koszul on P^2", koszul(2)}};
  return {{"O(-1) on P^1", line(p, 2, -1)},
          {"O(-2) on P^1", line(p, 2, -2)},
          {"O+O(-1) on P^1", sum(p, 2, {0, -1})},
          {"T(-1) on P^1", euler(p, 2)},
          {"O(2) on P^1", squares(p)},
          {"T(-1) on P^2", euler(p, 3)},
          {"Koszul on P^2", koszul(p)}};
}

}  // namespace specs

/// Chern class of the sheaf resolved by `s`: even levels over odd levels.
inline ChowClass spec_chern(const ResolutionSpec& s) {
  ChowClass num = ChowClass::one(s.r, 0), den = ChowClass::one(s.r, 0);
  for (std::size_t i = 0; i < s.twists.size(); ++i)
    for (long a : s.twists[i]) {
      ChowClass& side = i % 2 ? den : num;
      side = whitney(side, ChowClass::line(s.r, a));
    }
  std::vector<BigInt> inv(s.r, 0);
  inv[0] = 1;
  for (int m = 1; m < s.r; ++m)
    for (int k = 1; k <= m; ++k) inv[m] -= den.c[k] * inv[m - k];
  return whitney(num, ChowClass::from(s.r, -den.rank, inv));
}

struct RealizedCheck {
  bool pass = true;
  std::string detail;
  std::optional<ChowClass> chern;
};

/// Realizes `spec` and checks stable type [1]^s and c(F_1(M)) = c(F) for
/// p = 2, c(F_1(M)) = c(F^*F) for p odd.
inline RealizedCheck check_realization(const ResolutionSpec& spec, const Options& o) {
  RealizedCheck out;
  auto rz = realize_bundle(spec, o.caps);
  const auto& m = rz.module;
  const long s = spec.rank();
  std::ostringstream os;
  os << "dim " << m.dim();
  if (s == 0) {
    out.pass = m.dim() == 0;
    os << (out.pass ? ", zero sheaf" : ", expected the zero module");
    out.detail = os.str();
    return out;
  }
  auto v = check_constant(m, o.sampling());
  bool stable = v.constant && static_cast<long>(v.type.mult(1)) == s;
  for (int i = 2; i < spec.p; ++i) stable = stable && v.type.mult(i) == 0;
  os << ", type " << v.type.str() << " at " << v.points_checked << " points";
  Sheaves sh(m, o.hilbert());
  auto c = sh.chern(1);
  auto want = spec_chern(spec);
  if (spec.p != 2) want = frobenius_pullback(want, spec.p);
  out.pass = stable && c == want;
  out.chern = c;
  os << ", c(F_1) = " << c.str();
  if (c != want) os << ", want " << want.str();
  if (!stable) os << ", not of stable constant type [1]^" << s;
  out.detail = os.str();
  return out;
}

namespace detail {

inline std::vector<specs::Entry> spec_list(const Options& o) {
  std::vector<specs::Entry> out;
  for (int p : {2, 3}) {
    if (o.p && *o.p != p) continue;
    for (auto& e : specs::standard(p))
      if (!o.r || *o.r == e.spec.r) out.push_back({"p=" + std::to_string(p) + " " + e.name, std::move(e.spec)});
  }
  return out;
}

}  // namespace detail

/// Every standard resolution is realized by a module of stable constant type
/// [1]^s whose F_1 has the expected Chern class.
inline SuiteResult main_theorem(const Options& o) {
  return detail::timed("main-theorem", [&](SuiteResult& res) {
    for (auto& e : detail::spec_list(o))
      detail::run_case(res, e.name, [&](Case& c) {
        auto chk = check_realization(e.spec, o);
        c.pass = chk.pass;
        c.detail = chk.detail;
      });
  });
}


// ---------------------------------------------------------------------------
// Exactness and the images of generators

namespace detail {

struct Triangle {
  std::string name;
  KEModule a, mid, c;
};

// A -> B with cone C gives 0 -> A -> B + I(A) -> C -> 0.
inline Triangle triangle(std::string name, const KEModule& a, const KEModule& b, const FFMatrix& f) {
  auto cn = cone(a, b, f);
  return {std::move(name), a, direct_sum(b, free_module(a.p(), a.r(), cn.hull.copies)), cn.module};
}

inline std::vector<Triangle> triangles(int p, int r) {
  Resolution res(p, r);
  const int e = res.eps();
  std::vector<Triangle> out;
  KEModule k = trivial_module(p, r);
  const bool twisted = p == 2 || r <= 2;
  KEModule b = KEModule::zero(p, r), b1 = KEModule::zero(p, r);
  FFMatrix f(k.field(), 0, res.omega(e).dim()), f1(k.field(), 0, twisted ? res.omega(2 * e).dim() : 0);
  for (int i = 0; i < r; ++i) {
    b = direct_sum(b, k);
    f = vstack(f, res.generator(i));
    if (!twisted) continue;
    b1 = direct_sum(b1, res.omega(e));
    f1 = vstack(f1, res.cocycle(i, 1));
  }
  out.push_back(triangle("Euler", res.omega(e), b, f));
  if (twisted) out.push_back(triangle("Euler(-1)", res.omega(2 * e), b1, f1));
  auto x = rad_quotient(p, r, 2), y = omega(k, 1);
  out.push_back(triangle("split radq2 -> radq2+Omega k", x, direct_sum(x, y), vstack(FFMatrix::identity(x.field(), x.dim()), FFMatrix(x.field(), y.dim(), x.dim()))));
  return out;
}

}  // namespace detail

/// For locally split 0 -> A -> B -> C -> 0, Jordan types add at every point
/// and chi F_i(B) = chi F_i(A) + chi F_i(C) for 1 <= i < p.
inline SuiteResult exactness(const Options& o) {
  return detail::timed("exactness", [&](SuiteResult& res) {
    for (auto [p, r] : grid(o, default_grid())) {
      std::vector<detail::Triangle> tris;
      try {
        tris = detail::triangles(p, r);
      } catch (const std::exception& e) {
        res.cases.push_back({pr_tag(p, r), false, std::string("error: ") + e.what()});
        continue;
      }
      for (auto& t : tris) {
        Sheaves a(t.a, o.hilbert()), mid(t.mid, o.hilbert()), c(t.c, o.hilbert());
        detail::run_case(res, pr_tag(p, r) + " " + t.name + " pointwise", [&](Case& cs) {
          std::size_t n = 0;
          for (const auto& pt : sample_points(p, r, o.sampling())) {
            ++n;
            if (!(jordan_type_at(t.mid, pt) == jordan_type_at(t.a, pt) + jordan_type_at(t.c, pt))) {
              cs.pass = false;
              cs.detail = "not locally split at " + pt.str();
              return;
            }
          }
          cs.detail = "types add at " + std::to_string(n) + " points";
        });
        for (int i = 1; i < p; ++i)
          detail::run_case(res, pr_tag(p, r) + " " + t.name + " F_" + std::to_string(i), [&](Case& cs) {
            QPoly lhs = mid.F(i).fitted, rhs = a.F(i).fitted + c.F(i).fitted;
            cs.pass = lhs == rhs;
            cs.detail = "chi(B) = " + detail::poly_str(lhs) + (cs.pass ? "" : ", chi(A)+chi(C) = " + detail::poly_str(rhs));
          });
      }
    }
  });
}

namespace detail {

// F_1 of the cone of the cocycle for Y^e (p = 2) or x^e (p odd) is supported
// on the zero locus of Y^e and has the Hilbert polynomial of a hypersurface
// of degree |e| (p = 2) or p|e| (p odd).
inline SuiteResult rho(const Options& o, int want_p, const std::string& name) {
  return timed(name, [&](SuiteResult& res) {
    std::vector<std::pair<int, int>> pairs;
    for (auto [p, r] : grid(o, default_grid()))
      if ((want_p == 2) == (p == 2)) pairs.push_back({p, r});
    for (auto [p, r] : pairs) {
      Resolution res_k(p, r, o.caps);
      std::vector<std::vector<int>> exps;
      for (int i = 0; i < r; ++i) {
        std::vector<int> e(r, 0);
        e[i] = 1;
        exps.push_back(e);
      }
      std::vector<int> mixed(r, 0);
      mixed[0] = 1;
      mixed[r - 1] += 1;
      exps.push_back(mixed);
      std::vector<int> sq(r, 0);
      sq[1] = 2;
      exps.push_back(sq);
      for (const auto& e : exps) {
        auto mono = Polynomial::monomial(p, e);
        run_case(res, pr_tag(p, r) + " " + mono.str(), [&](Case& c) {
          int deg = 0;
          for (int x : e) deg += x;
          auto f = res_k.monomial(e, 0);
          auto cn = cone(res_k.omega(res_k.eps() * deg), trivial_module(p, r), f);
          SamplingPlan plan = o.sampling();
          plan.extra = std::min<std::size_t>(plan.extra, 40);
          for (const auto& pt : sample_points(p, r, plan)) {
            bool zero = evaluate(mono, pt) == 0;
            auto dims = fiber(cn.module, pt).dims;
            if ((dims[0] == 0) == zero) {
              c.pass = false;
              c.detail = "fiber of F_1 at " + pt.str() + " has dim " + std::to_string(dims[0]);
              return;
            }
          }
          HilbertOptions h = o.hilbert();
          h.expected_rank = 0;
          auto chi = hilbert(cn.module, 1, h).fitted;
          const long hd = p == 2 ? deg : static_cast<long>(p) * deg;
          QPoly want = QPoly::binomial_in(r - 1, r - 1) - QPoly::binomial_in(r - 1, r - 1).shifted(-hd);
          c.pass = chi == want;
          c.detail = "support = zero locus; chi = " + poly_str(chi) + " (degree " + std::to_string(hd) + " hypersurface)";
        });
      }
    }
  });
}

}  // namespace detail

inline SuiteResult rho_even(const Options& o) { return detail::rho(o, 2, "rho-even"); }
inline SuiteResult rho_odd(const Options& o) { return detail::rho(o, 3, "rho-odd"); }

// ---------------------------------------------------------------------------
// Chow ring identities

namespace detail {

inline ChowClass random_class(std::mt19937_64& rng, int r, long rank, long bound = 9) {
  std::uniform_int_distribution<long> coef(-bound, bound);
  std::vector<BigInt> c(r, 0);
  c[0] = 1;
  for (int m = 1; m < r; ++m) c[m] = coef(rng);
  return ChowClass::from(r, rank, c);
}

}  // namespace detail

/// c(F(i)) from the twisting formula agrees with the class recovered from
/// chi_F(d+i); F_{i,j}(M) has the class of F_i(M)(j).
inline SuiteResult chern_twist(const Options& o) {
  return detail::timed("chern-twist", [&](SuiteResult& res) {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> rr(2, 8), ss(1, 10), tw(-5, 5);
    for (int k = 0; k < 100; ++k) {
      int r = rr(rng), i = tw(rng);
      auto f = detail::random_class(rng, r, ss(rng));
      detail::run_case(res, "random " + std::to_string(k + 1), [&](Case& c) {
        auto want = twist(f, i);
        auto got = chern_from_hilbert(hrr_polynomial(chern_character(f)).shifted(i), r);
        c.pass = got == want;
        c.detail = "r=" + std::to_string(r) + " s=" + f.rank.str() + " i=" + std::to_string(i) + ": " + want.str();
      });
    }
    for (auto& nm : modules_for(o, {{2, 2}, {3, 2}})) {
      if (!check_constant(nm.module, o.sampling()).constant) continue;
      Sheaves sh(nm.module, o.hilbert());
      for (int i = 2; i <= nm.module.p(); ++i)
        for (int j = 1; j < i; ++j) {
          if (sh.generic().mult(i) == 0) continue;
          detail::run_case(res, nm.name + " F_" + std::to_string(i) + "," + std::to_string(j), [&](Case& c) {
            auto got = sh.chern(i, j), want = twist(sh.chern(i), j);
            c.pass = got == want;
            c.detail = "c = " + got.str() + (c.pass ? "" : ", want " + want.str());
          });
        }
    }
  });
}

/// c(F)c(F(1))...c(F(p-1)) = 1 - s h^{p-1} mod p.
inline SuiteResult product_twists_suite(const Options& o) {
  return detail::timed("product-twists", [&](SuiteResult& res) {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> rr(2, 8), ss(1, 10);
    const int primes[] = {2, 3, 5, 7};
    for (int k = 0; k < 100; ++k) {
      int p = primes[k % 4], r = rr(rng);
      auto f = detail::random_class(rng, r, ss(rng), 50);
      detail::run_case(res, "random " + std::to_string(k + 1), [&](Case& c) {
        auto rep = product_twists(f, p);
        c.pass = rep.holds;
        c.detail = "p=" + std::to_string(p) + " r=" + std::to_string(r) + " s=" + f.rank.str() + " c=" + f.str();
      });
    }
  });
}

/// p | c_m(F_1(M)) for 1 <= m <= p-2 when M has stable constant type [1]^s.
inline SuiteResult divisibility(const Options& o) {
  return detail::timed("divisibility", [&](SuiteResult& res) {
    if (!o.p || *o.p == 3) {
      for (auto& e : specs::standard(3)) {
        if (e.spec.rank() == 0 || (o.r && *o.r != e.spec.r)) continue;
        detail::run_case(res, "p=3 realized " + e.name, [&](Case& c) {
          auto chk = check_realization(e.spec, o);
          if (!chk.chern) throw Error(chk.detail);
          auto rep = divisibility_check(*chk.chern, 3);
          c.pass = chk.pass && rep.pass && chk.chern->c[1] % 3 == 0;
          c.detail = "c = " + chk.chern->str() + ", c_1 mod 3 = " + BigInt(chk.chern->c[1] % 3).str();
        });
      }
    }
    for (auto [p, r] : grid(o, {{3, 2}, {3, 3}})) {
      if (p == 2) continue;
      for (int n : {2, -2}) {
        detail::run_case(res, pr_tag(p, r) + " Omega^" + std::to_string(n) + "k", [&](Case& c) {
          Sheaves sh(omega(trivial_module(p, r), n), o.hilbert());
          auto rep = divisibility_check(sh.chern(1), p);
          c.pass = rep.pass;
          c.detail = "c = " + sh.chern(1).str();
        });
      }
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> rr(2, 8), ss(1, 10);
    for (int p : {5, 7}) {
      if (o.p && *o.p != p) continue;
      for (int k = 0; k < 10; ++k) {
        auto f = detail::random_class(rng, rr(rng), ss(rng));
        detail::run_case(res, "p=" + std::to_string(p) + " Frobenius pullback " + std::to_string(k + 1), [&](Case& c) {
          auto g = frobenius_pullback(f, p);
          c.pass = divisibility_check(g, p).pass;
          c.detail = "c = " + g.str();
        });
      }
    }
  });
}

/// No twist of a rank 2 class on P^4 with c = 1+5h+10h^2 satisfies the
/// divisibility condition for p = 7, so none is F_1 of a module of stable
/// constant type [1]^2.
inline SuiteResult hm_obstruction(const Options&) {
  return detail::timed("hm-obstruction", [&](SuiteResult& res) {
    const auto hm = ChowClass::from(5, 2, {1, 5, 10});
    bool any = false;
    for (int i = 0; i < 7; ++i) {
      detail::run_case(res, "twist " + std::to_string(i), [&](Case& c) {
        auto t = twist(hm, i);
        long c1 = static_cast<long>(t.c[1] % 7), c2 = static_cast<long>(t.c[2] % 7);
        bool ok = divisibility_check(t, 7).pass;
        any = any || ok;
        c.pass = !ok && (c1 != 0 || c2 != 0);
        c.detail = "c1 = " + t.c[1].str() + " = " + std::to_string(c1) + ", c2 = " + t.c[2].str() + " = " +
                   std::to_string(c2) + " mod 7";
      });
    }
    res.cases.push_back({"scan", !any, "no i with 7 | 2i+5 and 7 | i^2+5i+10"});
  });
}

// ---------------------------------------------------------------------------
// Registry

using SuiteFn = SuiteResult (*)(const Options&);

inline const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all = {
      {"fij-shift", fij_shift},
      {"filtration", filtration},
      {"prop-bundles", prop_bundles},
      {"omega-shift", omega_shift},
      {"omega2", omega2},
      {"omegank", omegank},
      {"duality", duality},
      {"exactness", exactness},
      {"rho-even", rho_even},
      {"rho-odd", rho_odd},
      {"main-theorem", main_theorem},
      {"chern-twist", chern_twist},
      {"product-twists", product_twists_suite},
      {"divisibility", divisibility},
      {"hm-obstruction", hm_obstruction},
  };
  return all;
}

inline std::optional<SuiteFn> find_suite(const std::string& name) {
  for (const auto& [n, f] : suites())
    if (n == name) return f;
  return std::nullopt;
}

}  // namespace cjt::verify

#endif  // CJT_VERIFY_HPP_
