#pragma once

#include "hkm/anomaly/anomaly.hpp"
#include "hkm/anomaly/quadrature.hpp"
#include "hkm/cli/report.hpp"
#include "hkm/current/clifford.hpp"
#include "hkm/current/extension.hpp"
#include "hkm/current/free_field.hpp"
#include "hkm/current/invariant.hpp"
#include "hkm/current/lie.hpp"
#include "hkm/current/linf.hpp"
#include "hkm/homological/cyclic.hpp"
#include "hkm/homological/hopf.hpp"
#include "hkm/homological/hpl.hpp"
#include "hkm/homological/lqt.hpp"
#include "hkm/jouanolou/cohomology.hpp"
#include "hkm/jouanolou/residue.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkm::cli {

/// Bad flags or inputs; exit code 2.
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Unset fields take per-suite defaults.
struct SuiteConfig {
  std::optional<int> dim;
  std::string lie = "sl2";
  std::string rep = "fundamental";
  std::string theta;
  std::optional<int> weight_box;
  std::optional<int> kmax;
  std::optional<int> deg_max;
  std::optional<int> sym_cutoff;
  std::optional<int> cutoff;
  std::optional<int> samples;
  std::uint64_t seed = 1;
  std::string statistics = "bosonic";
  bool timings = false;
};

namespace detail {

inline std::string wstr(const std::vector<int>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string yes(bool b) { return b ? "true" : "false"; }

struct LieInput {
  FiniteLieAlgebra g;
  std::optional<Representation> rep;
  bool builtin = true;
};

/// Built-in name, or a path to a text description.
inline LieInput load_lie(const std::string& lie, const std::string& rep) {
  LieInput in;
  try {
    if (std::filesystem::exists(lie)) {
      auto f = load_lie_file(lie);
      in.g = f.algebra;
      in.rep = f.rep;
      in.builtin = false;
      if (rep != "file" && rep != "fundamental") {
        if (rep == "adjoint") in.rep = adjoint(in.g);
        else if (rep == "trivial") in.rep = trivial_rep(in.g);
        else throw config_error("unknown representation: " + rep);
      }
      return in;
    }
    in.g = builtin_lie(lie);
    in.rep = builtin_rep(lie, rep);
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
  return in;
}

inline const Representation& need_rep(const LieInput& in) {
  if (!in.rep) throw config_error("this suite needs a representation (--rep, or a rep block in the lie file)");
  return *in.rep;
}

inline std::size_t gl_rank(const std::string& lie) {
  if (lie.rfind("gl", 0) != 0 || lie.size() < 3) throw config_error("expected --lie glN, got " + lie);
  try {
    return std::stoul(lie.substr(2));
  } catch (const std::exception&) {
    throw config_error("expected --lie glN, got " + lie);
  }
}

inline int positive(const std::optional<int>& v, int def, const char* what, int lo = 0) {
  int x = v.value_or(def);
  if (x < lo) throw config_error(std::string(what) + " must be >= " + std::to_string(lo));
  return x;
}

class Stopwatch {
 public:
  explicit Stopwatch(Report& r) : r_(r), t0_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& phase) {
    auto t = std::chrono::steady_clock::now();
    r_.timings[phase] = std::chrono::duration<double, std::milli>(t - t0_).count();
    t0_ = t;
  }

 private:
  Report& r_;
  std::chrono::steady_clock::time_point t0_;
};

inline InvariantPolynomial pick_theta(const SuiteConfig& c, const LieInput& in, int d, std::string& name) {
  name = c.theta.empty() ? (d == 1 ? "killing" : "chern") : c.theta;
  InvariantPolynomial th = [&] {
    if (name == "killing") return killing_form(in.g);
    if (name == "trace") return trace_form(need_rep(in));
    if (name == "chern") return chern_character(need_rep(in), d);
    if (name == "power") return theta_kN(d + 1, gl_rank(c.lie));
    throw config_error("unknown --theta " + name + " (killing, trace, chern, power)");
  }();
  if (th.degree() != d + 1)
    throw config_error("--theta " + name + " has degree " + std::to_string(th.degree()) + ", need d + 1 = " +
                       std::to_string(d + 1));
  return th;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Report suite_ad_cohomology(const SuiteConfig& c) {
  using namespace detail;
  Report r;
  r.suite = "ad-cohomology";
  WeightWindow w{positive(c.dim, 2, "--dim", 1), positive(c.weight_box, 3, "--weight-box"),
                 positive(c.deg_max, 8, "--deg-max"), positive(c.kmax, 5, "--kmax")};
  try {
    w.validate();
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
  r.params = {{"dim", std::to_string(w.d)},
              {"weight_box", std::to_string(w.radius)},
              {"deg_max", std::to_string(w.deg_max)},
              {"kmax", std::to_string(w.k_max)},
              {"p", "0"}};
  Stopwatch sw(r);
  auto h = cohomology_ad(w, 0);
  sw.lap("cohomology");
  for (const auto& wt : w.weights()) {
    bool pos = true, neg = true;
    for (int x : wt) {
      pos = pos && x >= 0;
      neg = neg && x <= -1;
    }
    for (int q = 0; q <= w.d; ++q) {
      std::size_t expect = 0;
      if (w.d == 1) expect = q == 0;
      else if (q == 0) expect = pos;
      else if (q == w.d - 1) expect = neg;
      const std::size_t got = h.dim(q, wt);
      std::string anchor = q == 0 ? "H^{0,0}: polynomial functions"
                                  : (q == w.d - 1 ? "H^{0,d-1}: dual monomials in z^{-1}" : "vanishing degree");
      r.add({"H0" + std::to_string(q) + wstr(wt), anchor, Provenance::oracle,
             "d=" + std::to_string(w.d) + " w=" + wstr(wt) + " kmax=" + std::to_string(w.k_max) +
                 " deg=" + std::to_string(w.deg_max),
             std::to_string(expect), std::to_string(got), got == expect});
    }
  }
  for (const auto& [q, wt] : h.unstable) r.stability["H0" + std::to_string(q) + wstr(wt)] = false;
  r.stability["window"] = h.stable();
  return r;
}

inline Report suite_residue(const SuiteConfig& c) {
  using namespace detail;
  Report r;
  r.suite = "residue";
  const int d = positive(c.dim, 2, "--dim", 1);
  const int kmax = positive(c.kmax, 7, "--kmax", 1);
  const int samples = positive(c.samples, 100, "--samples");
  if (d > 3) throw config_error("residue: --dim must be 1..3");
  r.params = {{"dim", std::to_string(d)},
              {"kmax", std::to_string(kmax)},
              {"samples", std::to_string(samples)},
              {"seed", std::to_string(c.seed)}};
  ResidueMap res(d, kmax);
  const ADElement omega = bm_kernel(d) * top_holomorphic(d);
  // z^alpha against the kernel, |alpha| <= 3
  std::vector<int> a(static_cast<std::size_t>(d), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == d) {
      ADElement x = omega;
      bool zero = true;
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < a[static_cast<std::size_t>(j)]; ++k) {
          x = ADElement::z(d, j) * x;
          zero = false;
        }
      Scalar v = res(x);
      Scalar e = zero ? Scalar(1) : Scalar();
      r.add({"monomial" + wstr(a), "residue of z^alpha times the kernel", Provenance::definition,
             "d=" + std::to_string(d) + " alpha=" + wstr(a), e.str(), v.str(), v == e});
      return;
    }
    for (int x = 0; x <= left; ++x) {
      a[static_cast<std::size_t>(i)] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, 3);
  if (samples > 0 && d >= 2) {
    // sources of type (d, d-2); at d = 1 nothing is dbar-exact
    std::vector<ADElement> pool;
    std::vector<int> wt(static_cast<std::size_t>(d), -1);
    while (true) {
      for (auto& m : window_members(d, d, d - 2, wt, std::min(kmax, 3), 6)) pool.push_back(m);
      std::size_t i = 0;
      while (i < wt.size() && wt[i] == 1) wt[i++] = -1;
      if (i == wt.size()) break;
      ++wt[i];
    }
    if (pool.empty()) throw config_error("residue: empty sample pool");
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::size_t nonzero = 0, bad = 0;
    for (int t = 0; t < samples; ++t) {
      ADElement x(d);
      for (int j = 0; j < 3; ++j) x += Scalar(coef(rng)) * pool[pick(rng)];
      if (!x.dbar().is_zero()) ++nonzero;
      if (!res(x.dbar()).is_zero()) ++bad;
    }
    r.add({"dbar-exact", "residue kills dbar-exact forms", Provenance::identity,
           "d=" + std::to_string(d) + " samples=" + std::to_string(samples) + " seed=" + std::to_string(c.seed),
           "0 nonzero residues", std::to_string(bad) + " nonzero residues (" + std::to_string(nonzero) +
                                     " nonzero inputs)",
           bad == 0});
  }
  return r;
}

inline Report suite_extension(const SuiteConfig& c) {
  using namespace detail;
  Report r;
  r.suite = "extension-check";
  const int d = positive(c.dim, 1, "--dim", 1);
  if (d > 2) throw config_error("extension-check: --dim must be 1 or 2");
  const int samples = positive(c.samples, 100, "--samples");
  WeightWindow w = d == 1 ? WeightWindow{1, 3, 6, 3} : WeightWindow{2, 1, 3, 2};
  if (c.weight_box) w.radius = *c.weight_box;
  if (c.deg_max) w.deg_max = *c.deg_max;
  if (c.kmax) w.k_max = *c.kmax;
  auto in = load_lie(c.lie, c.rep);
  std::string tname;
  auto theta = pick_theta(c, in, d, tname);
  r.params = {{"dim", std::to_string(d)},       {"lie", c.lie},
              {"theta", tname},                 {"samples", std::to_string(samples)},
              {"seed", std::to_string(c.seed)}, {"window", wstr({w.radius, w.deg_max, w.k_max})}};
  if (samples == 0) return r;
  Stopwatch sw(r);
  auto ext = build_extension(in.g, theta, d, w);
  sw.lap("build");
  LInfinityCheckOptions opt;
  opt.seed = c.seed;
  opt.terms = 3;
  opt.dense_tuples = 1;
  auto rep = check_l_infinity(ext, static_cast<std::size_t>(samples), opt);
  sw.lap("check");
  std::string act = "tuples=" + std::to_string(rep.tuples) + " identities=" + std::to_string(rep.identities);
  if (!rep.passed) {
    act += " failing arity " + std::to_string(rep.failing_arity) + ": " + rep.failure;
    for (const auto& s : rep.witness) act += " | " + s;
  }
  r.add({"l-infinity", "generalized Jacobi identities and graded antisymmetry", Provenance::identity,
         "d=" + std::to_string(d) + " lie=" + c.lie + " theta=" + tname + " samples=" + std::to_string(samples) +
             " seed=" + std::to_string(c.seed),
         "all identities hold", act, rep.passed});
  return r;
}

inline Report suite_lqt(const SuiteConfig& c) {
  using namespace detail;
  Report r;
  r.suite = "lqt";
  const int d = positive(c.dim, 1, "--dim", 1);
  if (d > 2) throw config_error("lqt: --dim must be 1 or 2");
  const std::string lie = c.lie == "sl2" ? "gl2" : c.lie;
  const std::size_t N = gl_rank(lie);
  const int samples = positive(c.samples, 50, "--samples");
  r.params = {{"dim", std::to_string(d)},
              {"lie", lie},
              {"samples", std::to_string(samples)},
              {"seed", std::to_string(c.seed)}};
  auto lqt = lqt_pullback(theta_infinity(d), static_cast<int>(N));
  auto theta = theta_kN(d + 1, N);
  auto ext = build_extension(gl(N), theta, d, d == 1 ? WeightWindow{1, 3, 4, 2} : WeightWindow{2, 1, 3, 2});
  ResidueOracle res(d);
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<int> slot(0, d);
  std::size_t nonzero = 0;
  for (int t = 0; t < samples; ++t) {
    std::vector<SphereElement> xs;
    const int one = slot(rng);
    for (int i = 0; i <= d; ++i) xs.push_back(ext.sample(rng, (d == 2 && i == one) ? 1 : 0, 3));
    const Scalar e = fhk_cocycle(theta, xs, res);
    const Scalar v = lqt(xs);
    if (!e.is_zero()) ++nonzero;
    char name[32];
    std::snprintf(name, sizeof name, "tuple%03d", t);
    r.add({name, "trace pullback equals the local cocycle of tr X^{d+1}", Provenance::identity,
           "d=" + std::to_string(d) + " N=" + std::to_string(N) + " seed=" + std::to_string(c.seed) +
               " tuple=" + std::to_string(t),
           e.str(), v.str(), v == e});
  }
  return r;
}

inline Report suite_hopf(const SuiteConfig& c) {
  using namespace detail;
  Report r;
  r.suite = "hopf-homology";
  const int cutoff = positive(c.sym_cutoff, 4, "--sym-cutoff");
  auto in = load_lie(c.lie, "adjoint");
  std::optional<InvariantPolynomial> theta;
  bool abel = true;
  for (std::size_t i = 0; i < in.g.dim(); ++i)
    for (std::size_t j = 0; j < in.g.dim(); ++j) abel = abel && in.g.bracket_terms(i, j).empty();
  if (!abel) theta = killing_form(in.g);
  r.params = {{"lie", c.lie}, {"sym_cutoff", std::to_string(cutoff)}};
  Stopwatch sw(r);
  auto h = hopf_small_model(in.g, cutoff, theta);
  sw.lap("homology");
  const auto h0 = h.degree_zero();
  for (int s = 0; s <= cutoff; ++s) {
    auto i = static_cast<std::size_t>(s);
    r.add({"H0[" + std::to_string(s) + "]", "degree zero equals Sym(g)_g", Provenance::oracle,
           "lie=" + c.lie + " s=" + std::to_string(s), std::to_string(h.coinvariants[i]), std::to_string(h0[i]),
           h.coinvariants[i] == h0[i]});
  }
  for (const auto& [k, v] : h.module_dims) {
    const std::string key = "[" + std::to_string(k.first) + "," + std::to_string(k.second) + "]";
    auto at = [&](const std::map<std::pair<int, int>, std::size_t>& m) {
      auto it = m.find(k);
      return it == m.end() ? std::size_t{0} : it->second;
    };
    r.add({"module" + key, "small model against CE(g, Sym g)", Provenance::oracle,
           "lie=" + c.lie + " e=" + std::to_string(k.first) + " s=" + std::to_string(k.second), std::to_string(v),
           std::to_string(at(h.dims)), at(h.dims) == v});
    r.add({"twisted" + key, "twist by K leaves the homology unchanged", Provenance::identity,
           "lie=" + c.lie + " e=" + std::to_string(k.first) + " s=" + std::to_string(k.second),
           std::to_string(at(h.dims)), std::to_string(at(h.twisted_dims)), at(h.twisted_dims) == at(h.dims)});
    if (abel) {
      // Lambda^e(g) (x) Sym^s(g) for abelian g
      const long n = static_cast<long>(in.g.dim());
      long ce = 1, cs = 1;
      for (long j = 0; j < k.first; ++j) ce = ce * (n - j) / (j + 1);
      for (long j = 0; j < k.second; ++j) cs = cs * (n + j) / (j + 1);
      const auto e = static_cast<std::size_t>(k.first <= n ? ce * cs : 0);
      r.add({"abelian" + key, "free graded-commutative count", Provenance::oracle,
             "n=" + std::to_string(n) + " e=" + std::to_string(k.first) + " s=" + std::to_string(k.second),
             std::to_string(e), std::to_string(at(h.dims)), e == at(h.dims)});
    }
  }
  return r;
}

inline Report suite_free_field(const SuiteConfig& c) {
  using namespace detail;
  Report r;
  r.suite = "free-field-d1";
  const int cutoff = positive(c.cutoff, 6, "--cutoff", 1);
  const int range = std::min(3, cutoff / 2);
  if (c.statistics != "bosonic" && c.statistics != "fermionic")
    throw config_error("--statistics must be bosonic or fermionic");
  const auto st = c.statistics == "bosonic" ? Statistics::bosonic : Statistics::fermionic;
  auto in = load_lie(c.lie, c.rep);
  const auto& rho = need_rep(in);
  r.params = {{"lie", c.lie},
              {"rep", c.rep},
              {"statistics", c.statistics},
              {"cutoff", std::to_string(cutoff)},
              {"modes", std::to_string(range)}};
  const std::size_t n = in.g.dim();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (int m = -range; m <= range; ++m)
        for (int k = -range; k <= range; ++k) {
          auto lv = free_field_commutator(rho, m, k, x, y, cutoff, st);
          const Scalar e = m + k == 0 ? Scalar(static_cast<long>(m)) * trace(mat_mul(rho.rho[x], rho.rho[y]))
                                      : Scalar();
          const std::string key = "[" + in.g.name(x) + "," + std::to_string(m) + ";" + in.g.name(y) + "," +
                                  std::to_string(k) + "]";
          r.add({"level" + key, "central term m delta_{m+n,0} Tr(rho(x) rho(y))", Provenance::definition,
                 "x=" + in.g.name(x) + " m=" + std::to_string(m) + " y=" + in.g.name(y) + " n=" + std::to_string(k),
                 e.str(), lv.central.str(), lv.central == e});
          r.add({"bracket" + key, "non-central part is the current of [x,y]", Provenance::identity,
                 "x=" + in.g.name(x) + " m=" + std::to_string(m) + " y=" + in.g.name(y) + " n=" + std::to_string(k),
                 "true", yes(lv.noncentral_matches), lv.noncentral_matches});
        }
  return r;
}

inline Report suite_anomaly(const SuiteConfig& c) {
  using namespace detail;
  Report r;
  r.suite = "anomaly-integral";
  const int d = positive(c.dim, 1, "--dim", 1);
  if (d > 4) throw config_error("anomaly-integral: --dim must be 1..4");
  QuadratureConfig q;
  q.d = d;
  q.eps = rational(1, 1000);
  q.tolerance = d == 1 ? 1e-12 : 1e-9;
  r.params = {{"dim", std::to_string(d)}, {"eps", q.eps.get_str()}, {"tolerance", fmt(q.tolerance)}};
  rational fact = 1;
  for (int j = 2; j <= d + 1; ++j) fact *= j;
  const double target = 1.0 / fact.get_d();
  Stopwatch sw(r);
  auto base = wheel_integral(q);
  const double exact = wheel_integral_exact(d, q.eps, q.L).get_d();
  r.add({"closed-form", "quadrature against the exact box integral", Provenance::oracle,
         "d=" + std::to_string(d) + " eps=" + q.eps.get_str() + " L=1", fmt(exact),
         fmt(base.value) + " +- " + fmt(base.error), std::abs(base.value - exact) <= 1e-6});
  auto ex = wheel_integral_extrapolated(q);
  r.add({"limit", "eps -> 0 limit of the wheel integral is 1/(d+1)!", Provenance::identity,
         "d=" + std::to_string(d) + " eps=" + q.eps.get_str() + ",eps/2", fmt(target),
         fmt(ex.value) + " +- " + fmt(ex.error), std::abs(ex.value - target) <= 1e-3});
  QuadratureConfig q2 = q;
  q2.L = 2;
  auto doubled = wheel_integral_extrapolated(q2);
  r.add({"outer-cutoff", "limit is insensitive to the outer cutoff L", Provenance::identity,
         "d=" + std::to_string(d) + " L=1,2", fmt(ex.value), fmt(doubled.value),
         std::abs(doubled.value - ex.value) <= 1e-3});
  sw.lap("quadrature");
  if (d == 1) {
    const Scalar e = Scalar(rational(1, 2) - q.eps / (q.eps + q.L));
    const Scalar v = wheel_integral_exact_d1(Scalar(q.eps), Scalar(q.L));
    r.add({"d1-exact", "d = 1 integral equals 1/2 - eps/(eps + L)", Provenance::definition, "eps=" + q.eps.get_str(),
           e.str(), v.str(), v == e});
  }
  return r;
}

inline Report suite_clifford(const SuiteConfig& c) {
  using namespace detail;
  Report r;
  r.suite = "clifford";
  const int n = positive(c.dim, 2, "--dim");
  if (n > 3) throw config_error("clifford: --dim must be 0..3");
  r.params = {{"dim", std::to_string(n)}};
  auto h = clifford_hh0(n);
  const std::string in = "n=" + std::to_string(n);
  r.add({"hh0-dim", "HH_0 of the Clifford algebra is one-dimensional", Provenance::oracle, in, "1",
         std::to_string(h.dim), h.dim == 1});
  const Scalar b = h.berezin_of_representatives.empty() ? Scalar() : h.berezin_of_representatives[0];
  if (n > 0)
    r.add({"berezin-value", "Berezin integral of the HH_0 generator", Provenance::definition, in, "1", b.str(),
           b == Scalar(1)});
  r.add({"berezin-trace", "Berezin integral vanishes on supercommutators", Provenance::identity, in, "true",
         yes(h.berezin_kills_commutators), h.berezin_kills_commutators});
  return r;
}

inline Report suite_hpl(const SuiteConfig& c) {
  using namespace detail;
  Report r;
  r.suite = "hpl";
  const int samples = positive(c.samples, 20, "--samples");
  r.params = {{"samples", std::to_string(samples)}, {"seed", std::to_string(c.seed)}};
  for (int t = 0; t < samples; ++t) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(t);
    auto rr = random_retraction(seed);
    auto p = perturb_retraction(rr.retraction, rr.delta);
    auto id = p.check();
    std::string act;
    auto flag = [&](const char* nm, bool ok) {
      if (!ok) act += std::string(act.empty() ? "" : ",") + nm;
    };
    flag("d^2", id.small_d_squared);
    flag("pi iota", id.pi_iota);
    flag("homotopy", id.homotopy);
    flag("iota chain", id.iota_chain);
    flag("pi chain", id.pi_chain);
    flag("eta iota", id.eta_iota);
    flag("pi eta", id.pi_eta);
    flag("eta eta", id.eta_eta);
    char name[32];
    std::snprintf(name, sizeof name, "retraction%03d", t);
    r.add({name, "perturbed data is again a retraction with side conditions", Provenance::identity,
           "seed=" + std::to_string(seed) + " kind=" + rr.kind + " terms=" + std::to_string(p.series_terms),
           "all identities", act.empty() ? "all identities" : "fails: " + act, id.all()});
  }
  return r;
}

inline Report suite_cyclic(const SuiteConfig& c) {
  using namespace detail;
  Report r;
  r.suite = "cyclic";
  const int d = positive(c.dim, 1, "--dim", 1);
  if (d > 2) throw config_error("cyclic: --dim must be 1 or 2");
  const int samples = positive(c.samples, 30, "--samples");
  r.params = {{"dim", std::to_string(d)}, {"samples", std::to_string(samples)}, {"seed", std::to_string(c.seed)}};
  auto rep = check_cyclic_cocycle(theta_infinity(d), static_cast<std::size_t>(samples), c.seed);
  r.add({"cocycle", "b-closed, dbar-compatible and cyclic", Provenance::identity,
         "d=" + std::to_string(d) + " samples=" + std::to_string(samples) + " seed=" + std::to_string(c.seed),
         "passed", rep.passed ? "passed" : "fails: " + rep.failure, rep.passed});
  r.add({"nontrivial", "some sampled value is nonzero", Provenance::identity, "d=" + std::to_string(d),
         "> 0 nonzero", std::to_string(rep.nonzero_values) + " nonzero", samples == 0 || rep.nonzero_values > 0});
  return r;
}

// ---------------------------------------------------------------------------

struct SuiteInfo {
  std::string name;
  std::function<Report(const SuiteConfig&)> run;
  std::string explain;
};

inline const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> all = {
      {"ad-cohomology", suite_ad_cohomology,
       "Dolbeault cohomology H^{0,q} of A_d weight by weight, p = 0.\n"
       "Expected: H^{0,0} is one-dimensional at weights with every entry >= 0, H^{0,d-1} at weights with\n"
       "every entry <= -1, all else zero (d = 1: H^{0,0} is one-dimensional everywhere).\n"
       "Window: --weight-box R (|w_i| <= R), --deg-max (polynomial degree in z, z*), --kmax (power of the\n"
       "Bochner-Martinelli denominator).  Each entry is recomputed on an enlarged window; a change marks it\n"
       "unstable and the run exits with code 2.\n"},
      {"residue", suite_residue,
       "Residue on A^{d,d-1}, normalized by Res(omega_BM dz) = 1.\n"
       "Checks Res(z^alpha omega_BM dz) = [alpha = 0] for |alpha| <= 3, and Res(dbar x) = 0 on --samples\n"
       "random x of type (d, d-2) drawn with --seed.  --kmax bounds the denominator power.\n"},
      {"extension-check", suite_extension,
       "Sampled L-infinity identities for the central extension of g (x) A_d by the cocycle of theta.\n"
       "--theta killing|trace|chern|power (power = tr X^{d+1} for glN), degree must be d + 1.\n"
       "Each identity is evaluated on random homogeneous tuples plus one dense tuple; --samples 0 gives an\n"
       "empty, vacuously passing report.\n"},
      {"lqt", suite_lqt,
       "Trace pullback of Theta_d^infty(a_0, .., a_d) = Res(a_0 del a_1 .. del a_d) to gl_N (x) A_d,\n"
       "  sum over sigma in S_d of eps(sigma) Theta(X_0 a_0, X_s(1) a_s(1), ..) / d!\n"
       "with matrices multiplied and traced, compared against the local cocycle of tr X^{d+1} on\n"
       "--samples random tuples.  --lie glN.\n"},
      {"hopf-homology", suite_hopf,
       "CE homology of the small model of g[alpha] (g in degree 0, g alpha in degree 1) with the K twist.\n"
       "Degree zero is compared with Sym(g)_g, every bidegree with CE(g, Sym g), and for abelian g with\n"
       "Lambda^e (x) Sym^s.  --sym-cutoff bounds the Sym degree.\n"},
      {"free-field-d1", suite_free_field,
       "Currents J_m(x) = sum_k :b_{m-k} rho(x) c_k: of a free field in the mode algebra truncated at\n"
       "--cutoff.  The central term of [J_m(x), J_n(y)] is compared with m delta_{m+n,0} Tr(rho(x) rho(y)).\n"
       "--statistics bosonic|fermionic.\n"},
      {"anomaly-integral", suite_anomaly,
       "Wheel integral int_{[eps,L]^d} eps / (eps + t_1 + .. + t_d)^{d+1} dt by adaptive quadrature\n"
       "(Gauss-Kronrod at d = 1, Genz-Malik cubature otherwise) after t = e^u.  Checked against the\n"
       "exact box integral, and one Richardson step in eps is checked against 1/(d+1)!.\n"},
      {"clifford", suite_clifford,
       "HH_0 of Cl(V + V*) with dim V = --dim, by exact linear algebra modulo supercommutators, and the\n"
       "Berezin integral on its generator.\n"},
      {"hpl", suite_hpl,
       "Homological perturbation on --samples random retractions with K-linear perturbations; checks\n"
       "the retraction identities and side conditions of the transferred data.\n"},
      {"cyclic", suite_cyclic,
       "Theta_d^infty on sampled forms: b-closed, compatible with dbar and invariant under signed\n"
       "rotation.\n"},
  };
  return all;
}

inline const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : suites())
    if (s.name == name) return &s;
  return nullptr;
}

/// Runs a suite and sorts its checks.
inline Report run_suite(const std::string& name, const SuiteConfig& c) {
  const SuiteInfo* s = find_suite(name);
  if (!s) throw config_error("unknown suite: " + name);
  Report r = s->run(c);
  r.with_timings = c.timings;
  r.sort();
  return r;
}

/// 0 all pass, 1 some check fails, 2 window instability.
inline int exit_code(const Report& r) {
  if (!r.stable()) return 2;
  return r.passed() ? 0 : 1;
}

}  // namespace hkm::cli
