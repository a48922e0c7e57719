// Acceptance suite: every criterion is exercised at its stated configuration
// and exactness level, with one pass/fail line per criterion and a wall-time
// budget.  Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qreflect/boundary.hpp"
#include "qreflect/chain.hpp"
#include "qreflect/identities.hpp"
#include "qreflect/rmat.hpp"

using namespace qreflect;
using boundary::KFamily;
using num::ExactScalar;
using num::rat;
using report::CheckResult;
using report::CheckStatus;
using rmat::Perturb;
using rmat::SamplePlan;

namespace {

SamplePlan plan(std::uint64_t seed, int points = 3) {
  SamplePlan p;
  p.seed = seed;
  p.points = points;
  return p;
}

bool expect_pass(const CheckResult& r, std::string& msg) {
  if (r.status == CheckStatus::Pass) return true;
  msg += " [" + r.id + ": " + report::status_name(r.status);
  if (r.witness)
    msg += " at row=" + std::to_string(r.witness->row) + " col=" +
           std::to_string(r.witness->col) + " lhs=" + r.witness->lhs + " rhs=" + r.witness->rhs;
  msg += "]";
  return false;
}

bool criterion_golden(std::string& msg) {
  bool ok = expect_pass(boundary::verify_golden(3, 2, plan(101)), msg);
  ok = expect_pass(boundary::verify_golden(2, 1, plan(102)), msg) && ok;
  return ok;
}

bool criterion_six_vertex(std::string& msg) {
  for (std::uint64_t seed = 201; seed < 206; ++seed) {
    auto pt = num::sample_point({"q", "u"}, seed);
    const auto &q = pt.get("q"), &u = pt.get("u");
    ExactScalar q2 = q * q;
    ExactScalar d = q2 * u - ExactScalar(1);
    if (d.is_zero()) continue;
    rmat::EOp s = rmat::build_S<ExactScalar>({2, 1, 1}, u, q);
    bool ok = s.at(0, 0).is_one() && s.at(3, 3).is_one() &&
              s.at(1, 1) == q2 * (u - ExactScalar(1)) / d &&
              s.at(1, 2) == (q2 - ExactScalar(1)) * u / d &&
              s.at(2, 1) == (q2 - ExactScalar(1)) / d &&
              s.at(2, 2) == (u - ExactScalar(1)) / d;
    long nnz = 0;
    for (const auto& [r, row] : s.rows()) nnz += static_cast<long>(row.size());
    ok = ok && nnz == 6;
    if (!ok) {
      msg += " [mismatch at seed " + std::to_string(seed) + "]";
      return false;
    }
  }
  return true;
}

bool criterion_ybe(std::string& msg) {
  bool ok = true;
  for (int n : {2, 3})
    for (int I : {1, 2})
      for (int J : {1, 2})
        for (int K : {1, 2}) {
          long dim = qkit::BasisSpace(n, I).dim() * qkit::BasisSpace(n, J).dim() *
                     qkit::BasisSpace(n, K).dim();
          if (dim > 216) continue;
          ok = expect_pass(rmat::verify_ybe(n, I, J, K, plan(300 + 8 * n + I + 2 * J + 4 * K)),
                           msg) && ok;
        }
  return ok;
}

bool criterion_unitarity_crossing(std::string& msg) {
  bool ok = true;
  for (int n : {2, 3})
    for (int I : {1, 2})
      for (int J : {1, 2}) {
        ok = expect_pass(rmat::verify_unitarity(n, I, J, plan(401)), msg) && ok;
        ok = expect_pass(rmat::verify_crossing(n, I, J, plan(402)), msg) && ok;
      }
  return ok;
}

bool criterion_symmetries(std::string& msg) {
  bool ok = true;
  for (int I : {1, 2}) {
    ok = expect_pass(rmat::verify_regularity(3, I, plan(501)), msg) && ok;
    for (const char* which : {"first", "second", "third", "tau-sigma", "square"})
      ok = expect_pass(rmat::verify_symmetry(which, 3, I, I, plan(502)), msg) && ok;
  }
  return ok;
}

bool criterion_reflection(std::string& msg) {
  bool ok = true;
  const std::vector<std::array<int, 3>> cfgs = {{5, 1, 1}, {3, 1, 1}, {3, 1, 2}, {3, 2, 2}};
  for (auto [n, I, J] : cfgs)
    for (KFamily fam : {KFamily::RightUpper, KFamily::RightLower, KFamily::LeftUpper,
                        KFamily::LeftLower})
      ok = expect_pass(boundary::verify_reflection(n, I, J, fam, plan(601, 3)), msg) && ok;
  for (int n : {2, 3})
    ok = expect_pass(boundary::verify_dual_reflection(n, 1, 1, plan(602)), msg) && ok;
  for (int n : {2, 3})
    for (KFamily fam : {KFamily::RightUpper, KFamily::RightLower})
      ok = expect_pass(boundary::verify_k_to_kbar(n, 1, 1, fam, plan(603)), msg) && ok;
  return ok;
}

bool criterion_recurrences(std::string& msg) {
  return expect_pass(boundary::verify_recurrences(3, 3, KFamily::RightUpper, plan(701)), msg);
}

bool criterion_identities(std::string& msg) {
  bool ok = true;
  ok = expect_pass(ident::verify_star_star(1, 2, plan(801)), msg) && ok;
  ok = expect_pass(ident::verify_star_star(2, 2, plan(802)), msg) && ok;
  ok = expect_pass(ident::verify_sum1(3, 3, 1, plan(803)), msg) && ok;
  for (int m : {1, 2}) {
    ok = expect_pass(ident::verify_sum2(m, 2, plan(804)), msg) && ok;
    ok = expect_pass(ident::verify_orthogonality(m, 2, plan(805)), msg) && ok;
  }
  ok = expect_pass(ident::verify_qbinomial_theorem(4, plan(806)), msg) && ok;
  ok = expect_pass(ident::verify_qvandermonde(4, plan(807)), msg) && ok;
  ok = expect_pass(ident::verify_pfaff_saalschutz(4, plan(808)), msg) && ok;
  for (int m = 1; m <= 3; ++m) {
    ok = expect_pass(ident::verify_pfaff_saalschutz_mdim2(m, 3, plan(809)), msg) && ok;
    ok = expect_pass(ident::verify_pfaff_saalschutz_mdim1(m, 2, plan(810)), msg) && ok;
    ok = expect_pass(ident::verify_composition_sum(m, 3, plan(811)), msg) && ok;
  }
  return ok;
}

bool criterion_trace_maps(std::string& msg) {
  bool ok = expect_pass(boundary::verify_trace_roundtrip(2, 1, plan(901)), msg);
  ok = expect_pass(boundary::verify_trace_lambda(2, 1, plan(902)), msg) && ok;
  ok = expect_pass(boundary::verify_trace_lambda(3, 1, plan(903)), msg) && ok;
  return ok;
}

bool criterion_chain(std::string& msg) {
  bool ok = true;
  for (int N : {2, 3}) {
    chain::ChainSpec spec;
    spec.n = 2;
    spec.J = 1;
    spec.N = N;
    auto pt = num::sample_point({"q", "nu"}, 1000 + N);
    spec.q = pt.get("q");
    spec.nu = pt.get("nu");
    ok = expect_pass(chain::verify_transfer_commutes(spec, plan(1001)), msg) && ok;
    ok = expect_pass(chain::verify_transfer_at_one(spec), msg) && ok;
    ok = expect_pass(chain::verify_hamiltonian_methods(spec), msg) && ok;
    ok = expect_pass(chain::verify_ones_annihilate(spec), msg) && ok;
    auto u = num::sample_point({"u"}, 1010 + N).get("u");
    auto d = chain::markov_diagnostics(spec, u);
    if (d.hamiltonian_rank != (1L << N) - 1) {
      msg += " [rank " + std::to_string(d.hamiltonian_rank) + " != 2^N-1]";
      ok = false;
    }
    if (!d.transfer_row_proportional || d.transfer_scalar.is_zero()) {
      msg += " [row of ones is not a left eigenvector of T]";
      ok = false;
    }
  }
  return ok;
}

bool criterion_nondiff(std::string& msg) {
  bool ok = expect_pass(boundary::verify_reflection_nondiff(3, 3, plan(1101)), msg);
  ok = expect_pass(boundary::verify_reflection2_nondiff(2, 4, plan(1102)), msg) && ok;
  ok = expect_pass(rmat::verify_nondiff_specialization(2, 1, 2, plan(1103)), msg) && ok;
  ok = expect_pass(rmat::verify_nondiff_specialization(3, 1, 1, plan(1104)), msg) && ok;
  ok = expect_pass(rmat::verify_nondiff_inverse(3, 2, plan(1105)), msg) && ok;
  return ok;
}

bool criterion_simulation(std::string& msg) {
  chain::ChainSpec spec;
  spec.n = 2;
  spec.J = 1;
  spec.N = 2;
  spec.q = ExactScalar(2);
  spec.nu = ExactScalar(3);
  spec.right_family = KFamily::RightLower;
  auto m = chain::markov_generator(chain::hamiltonian_local(spec));
  for (long r = 0; r < m.m.rows(); ++r)
    for (long c = 0; c < m.m.cols(); ++c)
      if (r != c && m.m(r, c).sign() < 0) {
        msg += " [negative rate at chosen point]";
        return false;
      }
  auto pi = chain::stationary_exact(m.m.transpose());
  auto traj = chain::gillespie_simulate(m.m, 0.0, 100000, 20240229);
  if (traj.events != 100000) {
    msg += " [only " + std::to_string(traj.events) + " events]";
    return false;
  }
  for (size_t s = 0; s < pi.size(); ++s) {
    double diff = std::abs(traj.occupancy[s] - pi[s].to_double());
    if (diff >= 0.02) {
      msg += " [state " + std::to_string(s) + " off by " + std::to_string(diff) + "]";
      return false;
    }
  }
  return true;
}

bool criterion_negative_controls(std::string& msg) {
  Perturb p{0, 0, rat(1, 7)};
  auto expect_fail = [&](const CheckResult& r) {
    if (r.status == CheckStatus::Fail && r.witness.has_value()) return true;
    msg += " [" + r.id + " did not fail with witness]";
    return false;
  };
  bool ok = true;
  ok = expect_fail(rmat::verify_ybe(2, 1, 1, 1, plan(1301, 1), &p)) && ok;
  ok = expect_fail(rmat::verify_unitarity(2, 1, 1, plan(1302, 1), &p)) && ok;
  ok = expect_fail(rmat::verify_crossing(2, 1, 1, plan(1303, 1), &p)) && ok;
  ok = expect_fail(rmat::verify_symmetry("first", 3, 1, 1, plan(1304, 1), &p)) && ok;
  ok = expect_fail(boundary::verify_reflection(2, 1, 1, KFamily::RightUpper, plan(1305, 1), &p)) &&
       ok;
  ok = expect_fail(boundary::verify_dual_reflection(2, 1, 1, plan(1306, 1), &p)) && ok;
  ok = expect_fail(boundary::verify_recurrences(3, 2, KFamily::RightUpper, plan(1307, 1), &p)) &&
       ok;
  ok = expect_fail(boundary::verify_golden(3, 2, plan(1308, 1), &p)) && ok;
  ok = expect_fail(ident::verify_star_star(1, 1, plan(1309, 1), &p)) && ok;
  ok = expect_fail(ident::verify_sum1(2, 1, 1, plan(1310, 1), &p)) && ok;
  ok = expect_fail(ident::verify_sum2(1, 1, plan(1311, 1), &p)) && ok;
  ok = expect_fail(ident::verify_orthogonality(1, 1, plan(1312, 1), &p)) && ok;
  ok = expect_fail(ident::verify_composition_sum(2, 2, plan(1313, 1), &p)) && ok;
  ok = expect_fail(boundary::verify_reflection_nondiff(2, 2, plan(1314, 1), &p)) && ok;
  return ok;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "explicit boundary matrices reproduced entrywise", 1.0, criterion_golden},
      {2, "six-vertex specialization of the R-matrix", 1.0, criterion_six_vertex},
      {3, "Yang-Baxter equation across spins", 120.0, criterion_ybe},
      {4, "unitarity scalar 1 and crossing unitarity scalar g", 60.0,
       criterion_unitarity_crossing},
      {5, "regularity and the five index symmetries", 60.0, criterion_symmetries},
      {6, "reflection equations for all four boundary families", 300.0, criterion_reflection},
      {7, "boundary recurrence relations", 30.0, criterion_recurrences},
      {8, "star-star, V-sums, orthogonality, q-series formulas", 300.0, criterion_identities},
      {9, "trace-map round trip and lambda comparison", 30.0, criterion_trace_maps},
      {10, "transfer commutativity and Hamiltonian cross-check", 180.0, criterion_chain},
      {11, "non-difference reflection equations and specialization", 120.0, criterion_nondiff},
      {12, "simulation occupancy matches the exact stationary state", 60.0,
       criterion_simulation},
      {13, "negative controls fail with witnesses", 60.0, criterion_negative_controls},
  };

  int failures = 0;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string msg;
    bool ok = false;
    try {
      ok = c.run(msg);
    } catch (const std::exception& e) {
      msg += std::string(" [exception: ") + e.what() + "]";
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      ok = false;
      msg += " [exceeded " + std::to_string(c.budget_s) + " s budget]";
    }
    std::printf("[%s] criterion %2d: %s (%.2f s / %.0f s)%s\n", ok ? "PASS" : "FAIL", c.id,
                c.title, secs, c.budget_s, msg.c_str());
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
