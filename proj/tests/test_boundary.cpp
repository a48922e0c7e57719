#include <doctest.h>

#include "qreflect/boundary.hpp"

using namespace qreflect;
using namespace qreflect::boundary;
using num::ExactScalar;
using num::rat;
using report::CheckStatus;
using rmat::Perturb;
using rmat::SamplePlan;

namespace {
SamplePlan quick(std::uint64_t seed = 12345, int points = 2) {
  SamplePlan p;
  p.seed = seed;
  p.points = points;
  return p;
}
}  // namespace

TEST_SUITE("boundary") {

TEST_CASE("golden matrices n=2 J=1 and n=3 J=2") {
  CHECK(verify_golden(2, 1, quick(1, 3)).status == CheckStatus::Pass);
  CHECK(verify_golden(3, 2, quick(2, 3)).status == CheckStatus::Pass);
  Perturb p{0, 1, rat(1, 9)};
  auto bad = verify_golden(3, 2, quick(3, 1), &p);
  CHECK(bad.status == CheckStatus::Fail);
  CHECK(bad.witness.has_value());
}

TEST_CASE("K invariants: normalization, stochasticity, triangularity") {
  for (int n : {2, 3})
    for (int J : {1, 2}) {
      auto rep = verify_k_invariants(n, J, quick(4, 2));
      for (const auto& c : rep.checks) {
        INFO(c.id);
        CHECK(c.status == CheckStatus::Pass);
      }
    }
}

TEST_CASE("reflection equation for right families") {
  CHECK(verify_reflection(3, 1, 1, KFamily::RightUpper, quick(5, 1)).status == CheckStatus::Pass);
  CHECK(verify_reflection(3, 1, 2, KFamily::RightUpper, quick(6, 1)).status == CheckStatus::Pass);
  CHECK(verify_reflection(3, 2, 2, KFamily::RightLower, quick(7, 1)).status == CheckStatus::Pass);
  CHECK(verify_reflection(2, 1, 1, KFamily::RightLower, quick(8, 1)).status == CheckStatus::Pass);
  Perturb p{0, 0, rat(2, 5)};
  CHECK(verify_reflection(2, 1, 1, KFamily::RightUpper, quick(9, 1), &p).status ==
        CheckStatus::Fail);
}

TEST_CASE("Kbar-form reflection for left families") {
  CHECK(verify_reflection(3, 1, 1, KFamily::LeftUpper, quick(10, 1)).status == CheckStatus::Pass);
  CHECK(verify_reflection(3, 1, 2, KFamily::LeftLower, quick(11, 1)).status == CheckStatus::Pass);
  CHECK(verify_reflection(2, 1, 1, KFamily::LeftLower, quick(12, 1)).status == CheckStatus::Pass);
}

TEST_CASE("dual reflection via the M-conjugated dual boundary") {
  CHECK(verify_dual_reflection(2, 1, 1, quick(13, 1)).status == CheckStatus::Pass);
  CHECK(verify_dual_reflection(3, 1, 1, quick(14, 1)).status == CheckStatus::Pass);
}

TEST_CASE("Ktilde at u=1 is not the identity") {
  auto pt = num::sample_point({"q", "nu"}, 15);
  auto kt = ktilde_matrix(2, 1, ExactScalar(1), pt.get("nu"), pt.get("q"));
  // equals M^{-1} K(w = q^{-2}) entrywise
  auto md = rmat::m_diagonal<ExactScalar>(2, 1, pt.get("q"));
  auto k = k_matrix(KFamily::RightUpper, 2, 1,
                    num::inverse(pt.get("q") * pt.get("q")), pt.get("nu"), pt.get("q"));
  bool is_identity = true;
  for (long r = 0; r < 2; ++r)
    for (long c = 0; c < 2; ++c) {
      CHECK(kt(r, c) == k(r, c) / md[r]);
      if ((r == c && !kt(r, c).is_one()) || (r != c && !kt(r, c).is_zero()))
        is_identity = false;
    }
  CHECK(!is_identity);
}

TEST_CASE("sigma twist maps solutions to solutions") {
  CHECK(verify_twist_invariance(3, 1, 1, KFamily::RightUpper, 1, quick(16, 1)).status ==
        CheckStatus::Pass);
  CHECK(verify_twist_invariance(3, 1, 1, KFamily::RightUpper, 2, quick(17, 1)).status ==
        CheckStatus::Pass);
}

TEST_CASE("twist of right-upper with mu=nu is right-lower") {
  auto pt = num::sample_point({"q", "nu", "w"}, 18);
  for (int n : {2, 3}) {
    int J = 1;
    auto k = build_K(n, J, pt.get("w"), pt.get("nu"), pt.get("q"), KFamily::RightUpper);
    auto twisted = sigma_twist(k, pt.get("nu"), TwistDirection::Right);
    auto lower = k_matrix(KFamily::RightLower, n, J, pt.get("w"), pt.get("nu"), pt.get("q"));
    for (long r = 0; r < k.space.dim(); ++r)
      for (long c = 0; c < k.space.dim(); ++c) CHECK(twisted.entries(r, c) == lower(r, c));
    // Column sums stay 1 under the mu=nu twist.
    for (long c = 0; c < k.space.dim(); ++c) {
      ExactScalar sum(0);
      for (long r = 0; r < k.space.dim(); ++r) sum += twisted.entries(r, c);
      CHECK(sum.is_one());
    }
  }
}

TEST_CASE("left-lower is the bar-twist of left-upper at mu=nu") {
  ExactScalar w(4), nu = rat(1, 3), q(2);
  for (int n : {2, 3})
    for (int J : {1, 2}) {
      auto upper = build_K(n, J, w, nu, q, KFamily::LeftUpper);
      auto twisted = sigma_twist(upper, nu, TwistDirection::Bar);
      auto lower = k_matrix(KFamily::LeftLower, n, J, w, nu, q);
      for (long r = 0; r < upper.space.dim(); ++r)
        for (long c = 0; c < upper.space.dim(); ++c)
          CHECK(twisted.entries(r, c) == lower(r, c));
    }
}

TEST_CASE("k_to_kbar images solve the Kbar equation") {
  CHECK(verify_k_to_kbar(3, 1, 1, KFamily::RightUpper, quick(19, 1)).status == CheckStatus::Pass);
  CHECK(verify_k_to_kbar(2, 1, 1, KFamily::RightLower, quick(20, 1)).status == CheckStatus::Pass);
  // w=1 input gives the identity, and the image of the identity is itself.
  auto pt = num::sample_point({"q", "nu"}, 21);
  auto k = build_K(3, 1, ExactScalar(1), pt.get("nu"), pt.get("q"), KFamily::RightUpper);
  auto img = k_to_kbar(k);
  // k(1/w) at w=1 is still at w=1, so the image is the permuted identity.
  for (long r = 0; r < k.space.dim(); ++r)
    for (long c = 0; c < k.space.dim(); ++c)
      CHECK(img.entries(r, c) == (r == c ? ExactScalar(1) : ExactScalar(0)));
}

TEST_CASE("recurrences hold for the right boundary") {
  CHECK(verify_recurrences(3, 3, KFamily::RightUpper, quick(22, 1)).status == CheckStatus::Pass);
  CHECK(verify_recurrences(2, 2, KFamily::RightUpper, quick(23, 1)).status == CheckStatus::Pass);
  Perturb p{1, 1, rat(1, 13)};
  auto bad = verify_recurrences(3, 2, KFamily::RightUpper, quick(24, 1), &p);
  CHECK(bad.status == CheckStatus::Fail);
  CHECK(bad.witness.has_value());
}

TEST_CASE("trace maps: round trip and lambda comparison") {
  CHECK(verify_trace_roundtrip(2, 1, quick(25, 1)).status == CheckStatus::Pass);
  CHECK(verify_trace_lambda(2, 1, quick(26, 1)).status == CheckStatus::Pass);
  CHECK(verify_trace_lambda(3, 1, quick(27, 1)).status == CheckStatus::Pass);
}

TEST_CASE("non-difference boundary equations") {
  CHECK(verify_reflection_nondiff(3, 3, quick(28, 1)).status == CheckStatus::Pass);
  CHECK(verify_reflection2_nondiff(2, 4, quick(29, 1)).status == CheckStatus::Pass);
  CHECK(verify_nondiff_k_stochastic(3, 3, quick(30, 1)).status == CheckStatus::Pass);
  Perturb p{0, 1, rat(3, 7)};
  CHECK(verify_reflection_nondiff(2, 2, quick(31, 1), &p).status == CheckStatus::Fail);

  auto pt = num::sample_point({"q", "x", "z2"}, 32);
  ExactScalar q2 = pt.get("q") * pt.get("q");
  auto k = build_K_nondiff(2, 3, pt.get("x"), pt.get("x"), pt.get("z2"), q2);
  CHECK(k.family == "nondiff-right");
  for (long c = 0; c < k.space.dim(); ++c) {
    ExactScalar sum(0);
    for (long r = 0; r < k.space.dim(); ++r) sum += k.entries(r, c);
    CHECK(sum.is_one());
  }
  auto kb = build_Kbar_nondiff(2, 2, pt.get("x"), pt.get("z2"), q2);
  CHECK(kb.entries(0, 0).is_one());
}

}  // TEST_SUITE
