// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cjt/chowring.hpp"
#include "cjt/formats.hpp"
#include "cjt/kemod.hpp"
#include "cjt/realize.hpp"
#include "cjt/thetasheaf.hpp"
#include "cjt/verify.hpp"

using namespace cjt;
namespace vf = cjt::verify;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
};

int failures = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("error: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > limit_s) {
    out.pass = false;
    out.note += " [over the " + std::to_string(static_cast<int>(limit_s)) + " s limit]";
  }
  if (!out.pass) ++failures;
  std::printf("criterion %d: %s  %s (%.2f s)  %s\n", n, out.pass ? "PASS" : "FAIL", title.c_str(), s,
              out.note.c_str());
  std::fflush(stdout);
}

Outcome from_suite(const vf::SuiteResult& r) {
  return {r.pass(), std::to_string(r.cases.size() - r.failures()) + "/" + std::to_string(r.cases.size()) + " cases"};
}

Outcome merge(std::initializer_list<Outcome> parts) {
  Outcome o;
  for (const auto& p : parts) {
    o.pass = o.pass && p.pass;
    o.note += (o.note.empty() ? "" : "; ") + p.note;
  }
  return o;
}

}  // namespace

int main() {
  criterion(1, "kE/J^2 on P^2: F_1 = T(-1), F_2 = O(-1)", 10, [] {
    Outcome o;
    for (int p : {2, 3}) {
      vf::Sheaves sh(rad_quotient(p, 3, 2), {});
      auto c1 = sh.chern(1), c2 = sh.chern(2);
      bool ok = c1 == ChowClass::from(3, 2, {1, 1, 1}) && c2 == ChowClass::from(3, 1, {1, -1, 0});
      o.pass = o.pass && ok;
      o.note += "p=" + std::to_string(p) + ": F_1 rank " + c1.rank.str() + " c=" + c1.str() + ", F_2 rank " +
                c2.rank.str() + " c=" + c2.str() + "; ";
    }
    return o;
  });

  criterion(2, "Omega-shift for p=3, r=2 on k, radq2, zigzag3", 60, [] {
    Outcome o;
    for (const char* m : {"builtin:trivial", "builtin:radq2", "builtin:zigzag3"}) {
      vf::Options opt;
      opt.p = 3;
      opt.r = 2;
      opt.module = m;
      auto r = vf::omega_shift(opt);
      o.pass = o.pass && r.pass() && r.cases.size() == 2;
      o.note += std::string(m + 8) + " " + from_suite(r).note + "; ";
    }
    return o;
  });

  criterion(3, "F_1(Omega^{2n}k) = O(-3n) for p=3, F_1(Omega^n k) = O(-n) for p=2", 60, [] {
    vf::Options a, b;
    a.p = 3;
    a.r = 2;
    b.p = 2;
    b.r = 3;
    auto ra = vf::omegank(a), rb = vf::omegank(b);
    return merge({from_suite(ra), from_suite(rb)});
  });

  criterion(4, "p=2 Euler sequence on P^2 realizes T(-1)", 120, [] {
    auto rz = realize_bundle(vf::specs::euler(2, 3));
    auto v = check_constant(rz.module);
    auto c = vf::Sheaves(rz.module, {}).chern(1);
    auto st = v.type.stable();
    bool ok = v.constant && v.points_checked >= 200 && st.mult(1) == 2 && st.dim() == 2 &&
              rz.module.dim() <= 5000 && c == ChowClass::from(3, 2, {1, 1, 1});
    return Outcome{ok, "dim " + std::to_string(rz.module.dim()) + ", type " + v.type.str() + " (stable " +
                           st.str() + ") at " + std::to_string(v.points_checked) + " points, c(F_1) = " + c.str()};
  });

  criterion(5, "p=3: O(-1) on P^1 gives Omega^2 k; Euler on P^2 has c_1 = 3", 300, [] {
    auto line = realize_bundle(vf::specs::line(3, 2, -1)).module;
    auto o2 = omega(trivial_module(3, 2), 2);
    bool same = line.dim() == o2.dim();
    for (int i = 0; same && i < 2; ++i) same = line.action(i) == o2.action(i);
    auto cl = vf::Sheaves(line, {}).chern(1);
    auto eu = realize_bundle(vf::specs::euler(3, 3)).module;
    auto ce = vf::Sheaves(eu, {}).chern(1);
    auto div = divisibility_check(ce, 3);
    bool ok = same && cl == ChowClass::line(2, -3) && ce.c[1] == 3 && div.pass;
    return Outcome{ok, std::string(same ? "M = Omega^2 k" : "M differs from Omega^2 k") + ", F_1 = " +
                           vf::describe(cl) + "; Euler: dim " + std::to_string(eu.dim()) + ", c = " + ce.str() +
                           (div.pass ? ", divisibility holds" : ", divisibility fails")};
  });

  criterion(6, "product of twists is 1 - s h^{p-1} mod p", 60, [] {
    auto r = vf::product_twists_suite({});
    return from_suite(r);
  });

  criterion(7, "divisibility for p=3 realizations and the mod 7 scan", 300, [] {
    vf::Options o;
    o.p = 3;
    auto d = vf::divisibility(o);
    std::size_t realized = 0;
    for (const auto& c : d.cases) realized += c.id.rfind("p=3 realized", 0) == 0 && c.pass ? 1 : 0;
    auto hm = vf::hm_obstruction({});
    auto out = merge({from_suite(d), from_suite(hm)});
    out.pass = out.pass && realized >= 5;
    out.note += "; " + std::to_string(realized) + " realized specs";
    return out;
  });

  criterion(8, "structural suites over the battery; full verify all", 900, [] {
    Outcome o;
    std::ostringstream os;
    for (const auto& [name, fn] : vf::suites()) {
      auto r = fn({});
      if (!r.pass()) std::cout << r.table();
      o.pass = o.pass && r.pass();
      os << name << " " << r.cases.size() - r.failures() << "/" << r.cases.size() << ", ";
    }
    o.note = os.str();
    return o;
  });

  criterion(9, "non-constant module is falsified with a witness", 10, [] {
    auto m = load_module(std::string(CJT_DATA_DIR) + "/nonconstant_p2r2.mod", 0, 0);
    auto v = check_constant(m);
    if (v.constant || !v.witness) return Outcome{false, "no witness found"};
    auto ref = jordan_type_at(m, Point::prime(2, {1, 0}));
    auto at = jordan_type_at(m, *v.witness);
    bool ok = !(ref == at) && at == v.type_at_witness;
    return Outcome{ok, ref.str() + " at (1,0) vs " + at.str() + " at " + v.witness->str()};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
