// cjt: command-line front end. Exit status 0 on success, 1 when a check
// fails or a computation gives up, 2 on usage and input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cjt/chowring.hpp"
#include "cjt/formats.hpp"
#include "cjt/kemod.hpp"
#include "cjt/realize.hpp"
#include "cjt/thetasheaf.hpp"
#include "cjt/verify.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  int p = 2, r = 2;
  bool p_set = false, r_set = false;
  std::uint64_t seed = 0xC0FFEE;
  std::size_t max_dim = 5000;
  long degree_cap = -1;
  std::size_t samples = 200;
  int field_ext = 4;

  cjt::SamplingPlan plan() const {
    cjt::SamplingPlan s;
    s.extra = samples;
    s.max_extension = field_ext;
    s.seed = seed;
    return s;
  }
  cjt::HilbertOptions hilbert() const {
    cjt::HilbertOptions h;
    h.degree_cap = degree_cap;
    return h;
  }
};

cjt::KEModule load(const std::string& ref, const Globals& g) {
  try {
    return cjt::load_module(ref, g.p, g.r);
  } catch (const cjt::Error& e) {
    throw UsageError(e.what());
  }
}

cjt::Point parse_point(const std::string& text, int p, int r) {
  std::vector<long long> c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      c.push_back(std::stoll(tok));
    } catch (const std::logic_error&) {
      throw UsageError("bad point coordinate '" + tok + "'");
    }
  }
  if (static_cast<int>(c.size()) != r) throw UsageError("point needs " + std::to_string(r) + " coordinates");
  auto pt = cjt::Point::prime(p, c);
  if (pt.is_zero()) throw UsageError("point must be nonzero");
  return pt;
}

void write_module(const cjt::KEModule& m, const std::string& out) {
  if (out.empty()) {
    std::cout << cjt::print_module(m);
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write '" + out + "'");
  f << cjt::print_module(m);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector bundles from modules of constant Jordan type"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--p", g.p, "characteristic (builtin modules)")->each([&](const std::string&) { g.p_set = true; });
  app.add_option("--r", g.r, "rank of E (builtin modules)")->each([&](const std::string&) { g.r_set = true; });
  app.add_option("--seed", g.seed, "seed for random points")->envname("CJT_SEED");
  app.add_option("--max-dim", g.max_dim, "dimension cap for intermediate modules");
  app.add_option("--degree-cap", g.degree_cap, "fixed top degree for Hilbert fitting");
  app.add_option("--samples", g.samples, "random points for constancy checks");
  app.add_option("--field-ext", g.field_ext, "largest extension degree for random points")->check(CLI::Range(1, 4));

  std::string module, module2, point, out, suite, spec_path, verify_module;
  int functor = 1, twist_j = 0, n = 1;
  std::optional<int> verify_n;

  auto* jt = app.add_subcommand("jordan-type", "Jordan type at a point (default (1,0,...,0))");
  jt->add_option("module", module)->required();
  jt->add_option("--point", point, "comma-separated coordinates in GF(p)");

  auto* cc = app.add_subcommand("check-constant", "sample points looking for a change of Jordan type");
  cc->add_option("module", module)->required();

  auto* fb = app.add_subcommand("fiber", "dims of the fibers F_{i,alpha}(M)");
  fb->add_option("module", module)->required();
  fb->add_option("--point", point)->required();

  auto* hb = app.add_subcommand("hilbert", "Hilbert function and polynomial of F_{i,j}(M)");
  hb->add_option("module", module)->required();
  hb->add_option("--functor", functor)->required();
  hb->add_option("--twist", twist_j, "j in F_{i,j}");

  auto* ch = app.add_subcommand("chern", "Chern class of F_i(M)");
  ch->add_option("module", module)->required();
  ch->add_option("--functor", functor)->required();

  auto* om = app.add_subcommand("omega", "Heller shift Omega^n M");
  om->add_option("n", n)->required();
  om->add_option("module", module)->required();
  om->add_option("-o,--out", out);

  auto* du = app.add_subcommand("dual", "dual module");
  du->add_option("module", module)->required();
  du->add_option("-o,--out", out);

  auto* su = app.add_subcommand("sum", "direct sum");
  su->add_option("first", module)->required();
  su->add_option("second", module2)->required();
  su->add_option("-o,--out", out);

  auto* te = app.add_subcommand("tensor", "tensor product over k with the diagonal action");
  te->add_option("first", module)->required();
  te->add_option("second", module2)->required();
  te->add_option("-o,--out", out);

  auto* sf = app.add_subcommand("strip-free", "remove free summands");
  sf->add_option("module", module)->required();
  sf->add_option("-o,--out", out);

  auto* rz = app.add_subcommand("realize", "module of stable constant type realizing a resolved bundle");
  rz->add_option("spec", spec_path)->required();
  rz->add_option("-o,--out", out);

  auto* vf = app.add_subcommand("verify", "run a verification suite");
  std::vector<std::string> names = {"all"};
  for (const auto& [nm, fn] : cjt::verify::suites()) names.push_back(nm);
  vf->add_option("suite", suite)->required()->check(CLI::IsMember(names));
  vf->add_option("--module", verify_module, "restrict structural suites to one module");
  vf->add_option("--n", verify_n, "syzygy index for omegank");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*jt) {
      auto m = load(module, g);
      auto pt = point.empty() ? cjt::Point::prime(m.p(), [&] {
        std::vector<long long> c(m.r(), 0);
        c[0] = 1;
        return c;
      }())
                              : parse_point(point, m.p(), m.r());
      std::cout << cjt::jordan_type_at(m, pt).str() << "\n";
      return 0;
    }
    if (*cc) {
      auto m = load(module, g);
      auto v = cjt::check_constant(m, g.plan());
      if (v.constant) {
        std::cout << "constant Jordan type " << v.type.str() << " (" << v.points_checked << " points)\n";
        return 0;
      }
      std::cout << "not constant: " << v.type.str() << " at (1,0,...,0), " << v.type_at_witness.str() << " at "
                << v.witness->str() << "\n";
      return 1;
    }
    if (*fb) {
      auto m = load(module, g);
      auto rep = cjt::fiber(m, parse_point(point, m.p(), m.r()));
      for (std::size_t i = 0; i < rep.dims.size(); ++i)
        std::cout << "F_" << i + 1 << ": " << rep.dims[i] << "\n";
      return 0;
    }
    if (*hb || *ch) {
      auto m = load(module, g);
      if (functor < 1 || functor > m.p()) throw UsageError("--functor must lie in 1..p");
      if (twist_j < 0 || twist_j >= functor) throw UsageError("--twist must lie in 0..i-1");
      cjt::ThetaEngine eng(m);
      auto h = cjt::hilbert(eng, functor, *hb ? twist_j : 0, g.hilbert());
      if (*hb) {
        std::cout << h.report() << "\n";
        return 0;
      }
      auto c = cjt::chern_from_hilbert(h.fitted, m.r());
      std::cout << "rank " << c.rank << "\nc = " << c.str() << "\nF_" << functor << " = "
                << cjt::verify::describe(c) << "\n";
      return 0;
    }
    if (*om) {
      write_module(cjt::omega(load(module, g), n), out);
      return 0;
    }
    if (*du) {
      write_module(cjt::dual(load(module, g)), out);
      return 0;
    }
    if (*su || *te) {
      auto a = load(module, g), b = load(module2, g);
      if (a.p() != b.p() || a.r() != b.r()) throw UsageError("modules live over different group algebras");
      write_module(*su ? cjt::direct_sum(a, b) : cjt::tensor(a, b), out);
      return 0;
    }
    if (*sf) {
      auto s = cjt::strip_free(load(module, g));
      std::cerr << "removed " << s.free_count << " free summand(s)\n";
      write_module(s.module, out);
      return 0;
    }
    if (*rz) {
      cjt::ResolutionSpec spec;
      try {
        spec = cjt::load_spec(spec_path);
      } catch (const cjt::Error& e) {
        throw UsageError(e.what());
      }
      cjt::ResourceCaps caps;
      caps.max_dim = g.max_dim;
      auto res = cjt::realize_bundle(spec, caps);
      std::cerr << res.report.str();
      write_module(res.module, out);
      return 0;
    }
    if (*vf) {
      cjt::verify::Options o;
      if (g.p_set) o.p = g.p;
      if (g.r_set) o.r = g.r;
      if (!verify_module.empty()) {
        if (verify_module.rfind("builtin:", 0) == 0 && !(g.p_set && g.r_set))
          throw UsageError("--module builtin:... needs --p and --r");
        o.module = verify_module;
      }
      o.n = verify_n;
      o.seed = g.seed;
      o.degree_cap = g.degree_cap;
      o.samples = g.samples;
      o.field_ext = g.field_ext;
      o.caps.max_dim = g.max_dim;
      bool ok = true;
      for (const auto& [nm, fn] : cjt::verify::suites()) {
        if (suite != "all" && suite != nm) continue;
        auto res = fn(o);
        std::cout << res.table();
        ok = ok && res.pass();
      }
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "cjt: " << e.what() << "\n";
    return 2;
  } catch (const cjt::ParseError& e) {
    std::cerr << "cjt: " << e.what() << "\n";
    return 2;
  } catch (const cjt::SpecInvalid& e) {
    std::cerr << "cjt: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "cjt: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
