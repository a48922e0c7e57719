// Command-line front end: build/export exact matrices, run verification
// suites, run continuous-time simulations.
//
// Exit codes: 0 all checks passed, 1 check failure / rate refusal,
// 2 invalid configuration.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qreflect/boundary.hpp"
#include "qreflect/chain.hpp"
#include "qreflect/identities.hpp"
#include "qreflect/rmat.hpp"

using namespace qreflect;
using boundary::KFamily;
using num::ExactScalar;
using report::CheckResult;
using report::CheckStatus;
using report::RunReport;
using rmat::Perturb;
using rmat::SamplePlan;

namespace {

struct VerifyOptions {
  std::string suite;
  int n = -1, I = -1, J = -1, K = -1, N = -1, cap = -1;
  std::uint64_t seed = 12345;
  int points = 3;
  long bound = 20;
  int jobs = 1;
  std::string out;
  bool negative_control = false;
};

SamplePlan plan_of(const VerifyOptions& o) {
  SamplePlan p;
  p.seed = o.seed;
  p.points = o.points;
  p.bound = o.bound;
  return p;
}

using CheckTask = std::function<CheckResult()>;

std::vector<CheckResult> run_tasks(std::vector<CheckTask> tasks, int jobs) {
  std::vector<CheckResult> out(tasks.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
    return out;
  }
  size_t next = 0;
  while (next < tasks.size()) {
    size_t batch = std::min<size_t>(jobs, tasks.size() - next);
    std::vector<std::future<CheckResult>> fut;
    for (size_t k = 0; k < batch; ++k)
      fut.push_back(std::async(std::launch::async, tasks[next + k]));
    for (size_t k = 0; k < batch; ++k) out[next + k] = fut[k].get();
    next += batch;
  }
  return out;
}

// Standard corruption for negative-control runs: +1/7 on the (0,0) entry of
// the first object each verifier builds.
const Perturb kControlPerturb{0, 0, num::rat(1, 7)};

void require(bool cond, const std::string& what) {
  if (!cond) throw ConfigError(what);
}

std::vector<CheckTask> suite_tasks(const std::string& suite, const VerifyOptions& o) {
  SamplePlan plan = plan_of(o);
  const Perturb* pb = o.negative_control ? &kControlPerturb : nullptr;
  std::vector<CheckTask> tasks;
  auto add = [&](CheckTask t) { tasks.push_back(std::move(t)); };

  bool has_nIJ = o.n > 0;
  int n = o.n, I = o.I > 0 ? o.I : 1, J = o.J > 0 ? o.J : 1, K = o.K > 0 ? o.K : 1;
  if (o.n != -1) require(o.n >= 2, "n must be >= 2");
  require(o.I == -1 || o.I >= 1, "I must be >= 1");
  require(o.J == -1 || o.J >= 1, "J must be >= 1");
  require(o.K == -1 || o.K >= 1, "K must be >= 1");
  require(o.N == -1 || o.N >= 1, "N must be >= 1");
  require(o.points >= 1, "points must be >= 1");
  require(o.bound >= 2, "bound must be >= 2");

  auto spin_pairs = [&]() -> std::vector<std::array<int, 3>> {
    if (has_nIJ) return {{n, I, J}};
    return {{2, 1, 1}, {2, 1, 2}, {2, 2, 2}, {3, 1, 1}, {3, 1, 2}, {3, 2, 2}};
  };

  if (suite == "ybe") {
    if (has_nIJ) {
      add([=] { return rmat::verify_ybe(n, I, J, K, plan, pb); });
    } else {
      for (int nn : {2, 3})
        for (int a : {1, 2})
          for (int b : {1, 2})
            for (int c : {1, 2}) {
              long dim = qkit::BasisSpace(nn, a).dim() * qkit::BasisSpace(nn, b).dim() *
                         qkit::BasisSpace(nn, c).dim();
              if (dim > 216) continue;
              add([=] { return rmat::verify_ybe(nn, a, b, c, plan, pb); });
            }
    }
  } else if (suite == "unitarity") {
    for (auto [nn, a, b] : spin_pairs())
      add([=] { return rmat::verify_unitarity(nn, a, b, plan, pb); });
  } else if (suite == "crossing") {
    for (auto [nn, a, b] : spin_pairs()) {
      add([=] { return rmat::verify_crossing(nn, a, b, plan, pb); });
      add([=] { return rmat::verify_m_commutation(nn, a, b, plan); });
      add([=] { return rmat::verify_rtilde_agreement(nn, a, b, plan); });
    }
    add([=] { return rmat::verify_almost_ybe(2, 1, plan); });
  } else if (suite == "symmetries") {
    for (auto [nn, a, b] : spin_pairs()) {
      for (const char* which : {"first", "second", "third", "tau-sigma"}) {
        std::string w = which;
        add([=] { return rmat::verify_symmetry(w, nn, a, b, plan, pb); });
      }
      if (a == b) {
        add([=] { return rmat::verify_symmetry("square", nn, a, b, plan, pb); });
        add([=] { return rmat::verify_regularity(nn, a, plan); });
      }
      add([=] { return rmat::verify_stochasticity(nn, a, b, plan); });
    }
  } else if (suite == "reflection") {
    std::vector<std::array<int, 3>> cfgs = has_nIJ
        ? std::vector<std::array<int, 3>>{{n, I, J}}
        : std::vector<std::array<int, 3>>{{5, 1, 1}, {3, 1, 1}, {3, 1, 2}, {3, 2, 2}};
    for (auto [nn, a, b] : cfgs)
      for (KFamily fam : {KFamily::RightUpper, KFamily::RightLower, KFamily::LeftUpper,
                          KFamily::LeftLower})
        add([=] { return boundary::verify_reflection(nn, a, b, fam, plan, pb); });
  } else if (suite == "dual") {
    std::vector<int> ns = has_nIJ ? std::vector<int>{n} : std::vector<int>{2, 3};
    for (int nn : ns) {
      int spin = o.J > 0 ? o.J : 1;
      add([=] { return boundary::verify_dual_reflection(nn, spin, spin, plan, pb); });
      add([=] { return boundary::verify_trace_roundtrip(nn, spin, plan); });
      add([=] { return boundary::verify_trace_lambda(nn, spin, plan); });
      add([=] { return boundary::verify_k_to_kbar(nn, spin, spin, KFamily::RightUpper, plan); });
      add([=] {
        return boundary::verify_twist_invariance(nn, spin, spin, KFamily::RightUpper, 1, plan);
      });
    }
  } else if (suite == "recurrences") {
    int nn = has_nIJ ? n : 3;
    int spin = o.J > 0 ? o.J : 3;
    add([=] { return boundary::verify_recurrences(nn, spin, KFamily::RightUpper, plan, pb); });
  } else if (suite == "starstar") {
    int cap = o.cap > 0 ? o.cap : 2;
    for (int m : {1, 2}) add([=] { return ident::verify_star_star(m, cap, plan, pb); });
  } else if (suite == "sums") {
    int cap = o.cap > 0 ? o.cap : 2;
    add([=] { return ident::verify_sum1(3, 3, 1, plan, pb); });
    add([=] { return ident::verify_sum1(2, 2, 1, plan); });
    for (int m : {1, 2}) {
      add([=] { return ident::verify_sum2(m, cap, plan, pb); });
      add([=] { return ident::verify_sum2_from_star_star(m, std::min(cap, 2), plan); });
      add([=] { return ident::verify_orthogonality(m, cap, plan, pb); });
    }
  } else if (suite == "appendixB") {
    int nmax = 4, mmax = 3, cap = o.cap > 0 ? o.cap : 3;
    add([=] { return ident::verify_qbinomial_theorem(nmax, plan); });
    add([=] { return ident::verify_qvandermonde(nmax, plan); });
    add([=] { return ident::verify_pfaff_saalschutz(nmax, plan); });
    for (int m = 1; m <= mmax; ++m) {
      add([=] { return ident::verify_pfaff_saalschutz_mdim2(m, 3, plan); });
      add([=] { return ident::verify_pfaff_saalschutz_mdim1(m, 2, plan); });
      add([=] { return ident::verify_composition_sum(m, cap, plan, pb); });
    }
  } else if (suite == "appendixD") {
    std::vector<std::array<int, 2>> cfgs = has_nIJ
        ? std::vector<std::array<int, 2>>{{n, o.J > 0 ? o.J : 1}}
        : std::vector<std::array<int, 2>>{{2, 1}, {3, 2}};
    for (auto [nn, spin] : cfgs) add([=] { return boundary::verify_golden(nn, spin, plan, pb); });
  } else if (suite == "transfer" || suite == "hamiltonian") {
    std::vector<std::array<int, 2>> cfgs;  // (n, N)
    if (has_nIJ)
      cfgs.push_back({n, o.N > 0 ? o.N : 2});
    else if (suite == "transfer")
      cfgs = {{2, 2}, {2, 3}};
    else
      cfgs = {{2, 2}, {2, 3}, {3, 2}};
    for (auto [nn, sites] : cfgs) {
      chain::ChainSpec spec;
      spec.n = nn;
      spec.J = o.J > 0 ? o.J : 1;
      spec.N = sites;
      // Pick a (q, nu) at which the chain objects evaluate; an unlucky draw
      // can sit on a pole of the boundary closed forms.
      for (int att = 0;; ++att) {
        if (att >= 40) throw ConfigError("no pole-free chain point found");
        auto pt = num::sample_point({"q", "nu"}, o.seed + 17 + att);
        spec.q = pt.get("q");
        spec.nu = pt.get("nu");
        try {
          chain::hamiltonian_from_transfer(spec);
          break;
        } catch (const PoleEncountered&) {
        }
      }
      auto diagnostics_at_good_u = [=]() {
        for (int att = 0;; ++att) {
          if (att >= 40) throw ConfigError("no pole-free spectral point found");
          auto u = num::sample_point({"u"}, o.seed + 31 + att).get("u");
          try {
            return chain::markov_diagnostics(spec, u);
          } catch (const PoleEncountered&) {
          }
        }
      };
      if (suite == "transfer") {
        add([=] { return chain::verify_transfer_commutes(spec, plan); });
        add([=] { return chain::verify_transfer_at_one(spec); });
        add([=] {
          auto d = diagnostics_at_good_u();
          CheckResult r;
          r.id = "transfer-stochastic-row n=" + std::to_string(spec.n) +
                 " N=" + std::to_string(spec.N);
          r.params["c(u)"] = d.transfer_scalar.fraction_string();
          r.params["rank"] = std::to_string(d.hamiltonian_rank);
          if (!d.transfer_row_proportional || d.transfer_scalar.is_zero())
            r.status = CheckStatus::Fail;
          return r;
        });
      } else {
        add([=] { return chain::verify_hamiltonian_methods(spec); });
        add([=] { return chain::verify_ones_annihilate(spec); });
        add([=] {
          auto d = diagnostics_at_good_u();
          CheckResult r;
          r.id = "hamiltonian-rank n=" + std::to_string(spec.n) + " N=" + std::to_string(spec.N);
          r.params["rank"] = std::to_string(d.hamiltonian_rank);
          r.params["dim"] = std::to_string(d.full_dim);
          r.params["periodic_rank"] = std::to_string(d.periodic_rank);
          r.params["negative_rates"] = std::to_string(d.negative_rates);
          if (!d.rank_is_dim_minus_one) r.status = CheckStatus::Fail;
          return r;
        });
      }
    }
  } else if (suite == "nondiff") {
    int cap = o.cap > 0 ? o.cap : 3;
    int nn = has_nIJ ? n : 3;
    add([=] { return rmat::verify_nondiff_inverse(nn, std::min(cap, 3), plan); });
    add([=] { return rmat::verify_nondiff_specialization(2, 1, 2, plan); });
    add([=] { return rmat::verify_nondiff_specialization(3, 1, 1, plan); });
    add([=] { return rmat::verify_nondiff_ybe(2, 2, plan); });
    add([=] { return boundary::verify_reflection_nondiff(nn, std::min(cap, 3), plan, pb); });
    add([=] { return boundary::verify_reflection2_nondiff(2, std::min(cap + 1, 4), plan); });
    add([=] { return boundary::verify_nondiff_k_stochastic(nn, cap, plan); });
  } else {
    throw ConfigError("unknown suite: " + suite);
  }
  return tasks;
}

int cmd_verify(const VerifyOptions& o) {
  std::vector<std::string> suites;
  if (o.suite == "all") {
    suites = {"ybe", "unitarity", "crossing", "symmetries", "reflection", "dual",
              "recurrences", "starstar", "sums", "appendixB", "appendixD", "transfer",
              "hamiltonian", "nondiff"};
  } else {
    suites = {o.suite};
  }
  auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.suite = o.suite;
  for (const auto& s : suites) {
    auto results = run_tasks(suite_tasks(s, o), o.jobs);
    for (auto& r : results) rep.add(std::move(r));
  }
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  // Reproducer data: every check record carries the sampling configuration.
  for (auto& c : rep.checks) {
    c.params["seed"] = std::to_string(o.seed);
    c.params["bound"] = std::to_string(o.bound);
  }

  for (const auto& c : rep.checks) {
    std::printf("[%s] %s (points=%d)\n", report::status_name(c.status), c.id.c_str(),
                c.points_tried);
    if (c.witness)
      std::printf("        witness: row=%ld col=%ld %s lhs=%s rhs=%s %s\n", c.witness->row,
                  c.witness->col,
                  (c.witness->row_label + "->" + c.witness->col_label).c_str(),
                  c.witness->lhs.c_str(), c.witness->rhs.c_str(), c.witness->detail.c_str());
  }
  std::printf("%zu checks, %.1f ms\n", rep.checks.size(), rep.elapsed_ms);
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    f << rep.to_json() << "\n";
  }
  return rep.all_passed() ? 0 : 1;
}

// --- build ------------------------------------------------------------------

struct BuildOptions {
  std::string object;
  int n = 2, I = 1, J = 1, N = 2, cap = 2;
  std::string q = "2", u, w, x, y, nu = "1/3", z2, xbar, family = "right-upper",
              side = "first", method = "transpose-inverse", right_family = "right-lower";
  std::string out, format = "json";
};

nlohmann::json entries_json(const linalg::DenseMatrix<ExactScalar>& m) {
  nlohmann::json es = nlohmann::json::array();
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) es.push_back({r, c, m(r, c).fraction_string()});
  return es;
}

int cmd_build(const BuildOptions& o) {
  require(o.n >= 2, "n must be >= 2");
  require(o.I >= 1 && o.J >= 1 && o.N >= 1, "spins and sites must be >= 1");
  auto q = ExactScalar::parse(o.q);
  nlohmann::json j;
  j["object"] = o.object;
  j["n"] = o.n;
  j["ordering"] = "lex";
  nlohmann::json params;
  params["q"] = q.fraction_string();
  linalg::DenseMatrix<ExactScalar> m;

  if (o.object == "S" || o.object == "Rbar" || o.object == "L") {
    j["I"] = o.object == "L" ? 1 : o.I;
    j["J"] = o.J;
    if (o.object == "Rbar") {
      require(!o.x.empty(), "Rbar needs --x (the unsquared spectral parameter)");
      auto x = ExactScalar::parse(o.x);
      params["x"] = x.fraction_string();
      m = rmat::build_Rbar<ExactScalar>({o.n, o.I, o.J}, x, q).to_dense();
    } else {
      require(!o.u.empty(), "S and L need --u");
      auto u = ExactScalar::parse(o.u);
      params["u"] = u.fraction_string();
      if (o.object == "S")
        m = rmat::build_S<ExactScalar>({o.n, o.I, o.J}, u, q).to_dense();
      else
        m = rmat::build_L(o.n, o.J,
                          o.side == "first" ? rmat::LSide::FirstSpaceFundamental
                                            : rmat::LSide::SecondSpaceFundamental,
                          u, q)
                .to_dense();
    }
  } else if (o.object == "M") {
    j["J"] = o.J;
    m = rmat::build_M(o.n, o.J, q);
  } else if (o.object == "K" || o.object == "Kbar") {
    j["J"] = o.J;
    require(!o.w.empty(), "K needs --w (squared boundary spectral parameter)");
    auto w = ExactScalar::parse(o.w);
    auto nu = ExactScalar::parse(o.nu);
    params["w"] = w.fraction_string();
    params["nu"] = nu.fraction_string();
    std::string fam = o.family;
    if (o.object == "Kbar" && fam.rfind("left", 0) != 0) fam = "left-upper";
    params["family"] = fam;
    m = boundary::k_matrix(boundary::family_from_name(fam), o.n, o.J, w, nu, q);
  } else if (o.object == "Ktilde") {
    j["J"] = o.J;
    require(!o.u.empty(), "Ktilde needs --u");
    auto u = ExactScalar::parse(o.u);
    auto nu = ExactScalar::parse(o.nu);
    params["u"] = u.fraction_string();
    params["nu"] = nu.fraction_string();
    m = boundary::ktilde_matrix(o.n, o.J, u, nu, q);
  } else if (o.object == "T" || o.object == "H" || o.object == "generator") {
    j["J"] = o.J;
    j["N"] = o.N;
    chain::ChainSpec spec;
    spec.n = o.n;
    spec.J = o.J;
    spec.N = o.N;
    spec.q = q;
    spec.nu = ExactScalar::parse(o.nu);
    spec.right_family = boundary::family_from_name(o.right_family);
    params["nu"] = spec.nu.fraction_string();
    params["right_family"] = o.right_family;
    if (o.object == "T") {
      require(!o.u.empty(), "T needs --u");
      auto u = ExactScalar::parse(o.u);
      params["u"] = u.fraction_string();
      m = chain::double_row_transfer(spec, u).m;
    } else {
      auto h = chain::hamiltonian_local(spec);
      m = o.object == "H" ? h.m : chain::markov_generator(h).m;
    }
  } else {
    throw ConfigError("unknown object: " + o.object);
  }

  j["params"] = params;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = entries_json(m);

  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!o.out.empty()) {
    f.open(o.out);
    os = &f;
  }
  if (o.format == "json") {
    *os << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    *os << "row,col,value\n";
    for (long r = 0; r < m.rows(); ++r)
      for (long c = 0; c < m.cols(); ++c)
        if (!m(r, c).is_zero()) *os << r << "," << c << "," << m(r, c).fraction_string() << "\n";
  } else {
    throw ConfigError("unknown format: " + o.format);
  }
  return 0;
}

// --- simulate ----------------------------------------------------------------

struct SimOptions {
  int n = 2, J = 1, N = 2;
  std::string q = "2", nu = "3", right_family = "right-lower";
  double tmax = 0.0;
  long events = 100000;
  std::uint64_t seed = 1;
  std::string out, hist;
};

int cmd_simulate(const SimOptions& o) {
  require(o.n >= 2 && o.J >= 1 && o.N >= 1, "invalid chain shape");
  require(o.events > 0 || o.tmax > 0, "need --events or --tmax");
  chain::ChainSpec spec;
  spec.n = o.n;
  spec.J = o.J;
  spec.N = o.N;
  spec.q = ExactScalar::parse(o.q);
  spec.nu = ExactScalar::parse(o.nu);
  spec.right_family = boundary::family_from_name(o.right_family);

  auto h = chain::hamiltonian_local(spec);
  auto m = chain::markov_generator(h);
  chain::Trajectory traj;
  try {
    traj = chain::gillespie_simulate(m.m, o.tmax, o.events, o.seed);
  } catch (const NegativeRate& e) {
    std::fprintf(stderr, "refusing to simulate: %s\n", e.what());
    return 1;
  }

  std::vector<ExactScalar> pi;
  bool have_pi = true;
  try {
    pi = chain::stationary_exact(m.m.transpose());
  } catch (const DegenerateKernel&) {
    have_pi = false;
  }

  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!o.out.empty()) {
    f.open(o.out);
    os = &f;
  }
  *os << "time,state\n";
  char buf[64];
  for (const auto& [t, s] : traj.jumps) {
    std::snprintf(buf, sizeof buf, "%.17g", t);
    *os << buf << "," << s << "\n";
  }

  std::string hist_path = o.hist;
  if (hist_path.empty() && !o.out.empty()) hist_path = o.out + ".hist.csv";
  std::ostream* hs = &std::cout;
  std::ofstream hf;
  if (!hist_path.empty()) {
    hf.open(hist_path);
    hs = &hf;
  }
  *hs << "state,occupancy" << (have_pi ? ",stationary_exact" : "") << "\n";
  for (size_t s = 0; s < traj.occupancy.size(); ++s) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.occupancy[s]);
    *hs << s << "," << buf;
    if (have_pi) *hs << "," << pi[s].fraction_string();
    *hs << "\n";
  }
  std::fprintf(stderr, "%ld events, total time %.6g\n", traj.events, traj.total_time);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact stochastic R/K-matrix builders, identity verifiers, and chain tools"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", vo.suite, "suite name")->required();
  verify->add_option("--n", vo.n, "rank parameter n of sl_n");
  verify->add_option("--I", vo.I, "first spin");
  verify->add_option("--J", vo.J, "second spin");
  verify->add_option("--K", vo.K, "third spin (ybe)");
  verify->add_option("--N", vo.N, "number of chain sites");
  verify->add_option("--cap", vo.cap, "component / sector cap");
  verify->add_option("--seed", vo.seed, "base sample seed");
  verify->add_option("--points", vo.points, "parameter points per identity");
  verify->add_option("--bound", vo.bound, "numerator/denominator bound for samples");
  verify->add_option("--jobs", vo.jobs, "concurrent checks");
  verify->add_option("--out", vo.out, "write JSON report here");
  verify->add_flag("--negative-control", vo.negative_control,
                   "corrupt one entry to prove the suite can fail");

  BuildOptions bo;
  auto* build = app.add_subcommand("build", "build and export an exact matrix");
  build->add_option("object", bo.object, "S|Rbar|L|M|K|Kbar|Ktilde|T|H|generator")->required();
  build->add_option("--n", bo.n);
  build->add_option("--I", bo.I);
  build->add_option("--J", bo.J);
  build->add_option("--N", bo.N);
  build->add_option("--q", bo.q, "quantum parameter (rational)");
  build->add_option("--u", bo.u, "squared spectral parameter");
  build->add_option("--w", bo.w, "squared boundary spectral parameter");
  build->add_option("--x", bo.x, "unsquared spectral parameter (Rbar)");
  build->add_option("--nu", bo.nu, "boundary parameter");
  build->add_option("--family", bo.family, "K family");
  build->add_option("--side", bo.side, "L placement: first|second");
  build->add_option("--right-family", bo.right_family, "chain right boundary family");
  build->add_option("--out", bo.out, "output file (default stdout)");
  build->add_option("--format", bo.format, "json|csv");

  SimOptions so;
  auto* sim = app.add_subcommand("simulate", "continuous-time simulation of the chain process");
  sim->add_option("--n", so.n);
  sim->add_option("--J", so.J);
  sim->add_option("--N", so.N);
  sim->add_option("--q", so.q);
  sim->add_option("--nu", so.nu);
  sim->add_option("--right-family", so.right_family);
  sim->add_option("--tmax", so.tmax, "stop after this much process time (0 = by events)");
  sim->add_option("--events", so.events, "stop after this many jumps");
  sim->add_option("--seed", so.seed);
  sim->add_option("--out", so.out, "trajectory CSV (default stdout)");
  sim->add_option("--hist", so.hist, "occupancy histogram CSV");

  try {
    app.parse(argc, argv);
    if (verify->parsed()) return cmd_verify(vo);
    if (build->parsed()) return cmd_build(bo);
    if (sim->parsed()) return cmd_simulate(so);
    return 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const NegativeRate& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
