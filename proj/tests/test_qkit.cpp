#include <doctest.h>

#include "qreflect/qkit.hpp"

using namespace qreflect;
using namespace qreflect::qkit;
using num::ExactScalar;
using num::rat;

TEST_SUITE("qkit") {

TEST_CASE("index operations") {
  CHECK(weight({1, 2}) == 3);
  CHECK(dot({1, 2}, {3, 4}) == 11);
  CHECK(qform_Q({1, 2}, {3, 4}) == 4);  // only a1*b2
  CHECK_THROWS_AS(dot({1}, {1, 2}), LengthMismatch);
  CHECK(bracket({0}, {0}, 1, 1) == -1);
  CHECK(bracket({1}, {1}, 1, 1) == 1);
  CHECK(bracket({1, 0}, {0, 1}, 2, 2) == -1);
}

TEST_CASE("tau and sigma") {
  CHECK(reverse_tau({1, 2, 3}) == MultiIndex{3, 2, 1});
  CHECK(reverse_tau({5}) == MultiIndex{5});
  CHECK(rotate_sigma({1, 2}, 5) == MultiIndex{2, 2});
  CHECK_THROWS_AS(rotate_sigma({3, 3}, 5), WeightExceedsJ);
  // tau is an involution; sigma^n = id; sigma_inverse undoes sigma.
  for (int n = 2; n <= 4; ++n)
    for (int J = 1; J <= 3; ++J) {
      BasisSpace b(n, J);
      for (const auto& a : b.states()) {
        CHECK(reverse_tau(reverse_tau(a)) == a);
        MultiIndex s = a;
        for (int k = 0; k < n; ++k) s = rotate_sigma(s, J);
        CHECK(s == a);
        CHECK(sigma_inverse(rotate_sigma(a, J), J) == a);
        CHECK(rotate_sigma(sigma_inverse(a, J), J) == a);
      }
    }
}

TEST_CASE("basis enumeration matches the explicit n=3 J=2 listing") {
  BasisSpace b(3, 2);
  std::vector<MultiIndex> expect = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
  CHECK(b.states() == expect);
  CHECK(b.dim() == 6);
  CHECK(BasisSpace(2, 1).states() == std::vector<MultiIndex>{{0}, {1}});
  CHECK(BasisSpace(2, 3).dim() == 4);  // binomial(4,1)
  CHECK(BasisSpace(4, 3).dim() == 20); // binomial(6,3)
  CHECK(b.ordinal({1, 1}) == 4);
}

TEST_CASE("q-Pochhammer three-case definition") {
  ExactScalar x = rat(1, 3), q = rat(2, 1);
  CHECK(qpochhammer(x, q, 0L) == ExactScalar(1));
  CHECK(qpochhammer(x, q, 2L) == (ExactScalar(1) - x) * (ExactScalar(1) - x * q));
  // (x;q)_{-1} = 1/(1 - x/q)
  CHECK(qpochhammer(x, q, -1L) == num::inverse(ExactScalar(1) - x / q));
  // (q^2;q^2)_{-1} has the vanishing factor 1 - q^2 q^{-2}.
  ExactScalar q2 = q * q;
  CHECK_THROWS_AS(qpochhammer(q2, q2, -1L), PoleEncountered);
}

TEST_CASE("q-binomial") {
  ExactScalar q = rat(3, 2);
  CHECK(qbinomial(2L, 1L, q) == ExactScalar(1) + q);
  CHECK(qbinomial(5L, 0L, q) == ExactScalar(1));
  CHECK(qbinomial(1L, 2L, q) == ExactScalar(0));
  CHECK(qbinomial(3L, -1L, q) == ExactScalar(0));
  // Pascal-type recurrence [m k] = q^k [m-1 k] + [m-1 k-1]
  for (long m = 1; m <= 6; ++m)
    for (long k = 0; k <= m; ++k)
      CHECK(qbinomial(m, k, q) ==
            num::ipow(q, k) * qbinomial(m - 1, k, q) + qbinomial(m - 1, k - 1, q));
}

TEST_CASE("phi closed-form values at m=1") {
  ExactScalar lam = rat(1, 2), mu = rat(1, 3), q = rat(5, 1);
  // Phi(0|0) = 1; Phi(1|1;l,m) = (m/l)(1-l)/(1-m); Phi(0|1) complements to 1.
  CHECK(phi<ExactScalar>({0}, {0}, lam, mu, q) == ExactScalar(1));
  CHECK(phi<ExactScalar>({1}, {1}, lam, mu, q) == rat(1, 2));
  CHECK(phi<ExactScalar>({0}, {1}, lam, mu, q) == rat(1, 2));
  CHECK(phi<ExactScalar>({2}, {1}, lam, mu, q) == ExactScalar(0));
}

TEST_CASE("phi summation rule") {
  for (std::uint64_t seed = 3; seed <= 5; ++seed) {
    auto pt = num::sample_point({"q", "l", "m"}, seed);
    for (int m = 1; m <= 3; ++m) {
      for (const auto& beta : component_box(m, 3)) {
        ExactScalar sum(0);
        for (const auto& gamma : box_between(MultiIndex(m, 0), beta))
          sum += phi(gamma, beta, pt.get("l"), pt.get("m"), pt.get("q"));
        CHECK(sum == ExactScalar(1));
      }
    }
  }
}

TEST_CASE("phi permuted-index relation") {
  auto pt = num::sample_point({"q", "l", "m"}, 11);
  for (const auto& beta : component_box(3, 2))
    for (const auto& gamma : box_between(MultiIndex(3, 0), beta)) {
      ExactScalar lhs = phi(reverse_tau(gamma), reverse_tau(beta), pt.get("l"), pt.get("m"),
                            pt.get("q"));
      ExactScalar rhs = num::ipow(pt.get("q"), qform_Q(gamma, beta) - qform_Q(beta, gamma)) *
                        phi(gamma, beta, pt.get("l"), pt.get("m"), pt.get("q"));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("phi shift relation") {
  // Phi(m-j|m; mu/lam, mu) = Phi(j|m; lam, mu) q^{Q(j,m)-Q(m,j)} mu^{-|j|} lam^{|m|}
  auto pt = num::sample_point({"q", "l", "m"}, 17);
  auto lam = pt.get("l"), mu = pt.get("m"), q = pt.get("q");
  for (const auto& mm : component_box(2, 2))
    for (const auto& j : box_between(MultiIndex(2, 0), mm)) {
      ExactScalar lhs = phi(sub(mm, j), mm, mu / lam, mu, q);
      ExactScalar rhs = phi(j, mm, lam, mu, q) *
                        num::ipow(q, qform_Q(j, mm) - qform_Q(mm, j)) *
                        num::ipow(mu, -weight(j)) * num::ipow(lam, weight(mm));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("phi_hat differs from phi by the Q twist") {
  auto pt = num::sample_point({"q", "l", "m"}, 23);
  for (const auto& beta : component_box(2, 2))
    for (const auto& gamma : box_between(MultiIndex(2, 0), beta)) {
      ExactScalar expect = num::ipow(pt.get("q"), qform_Q(gamma, beta) - qform_Q(beta, gamma)) *
                           phi(gamma, beta, pt.get("l"), pt.get("m"), pt.get("q"));
      CHECK(phi_hat(gamma, beta, pt.get("l"), pt.get("m"), pt.get("q")) == expect);
      if (weight(gamma) == 0)
        CHECK(phi_hat(gamma, beta, pt.get("l"), pt.get("m"), pt.get("q")) ==
              phi(gamma, beta, pt.get("l"), pt.get("m"), pt.get("q")));
    }
  // m=1 has no Q form at all.
  CHECK(phi_hat<ExactScalar>({1}, {2}, rat(1, 5), rat(2, 7), rat(3, 1)) ==
        phi<ExactScalar>({1}, {2}, rat(1, 5), rat(2, 7), rat(3, 1)));
}

TEST_CASE("v_func values and support") {
  ExactScalar q(2), x(3);
  CHECK(v_func(x, q, {1}, {0}) == rat(16, 9));
  CHECK(v_func(x, q, {0}, {1}) == ExactScalar(0));
  CHECK(v_func(x, q, {2, 1}, {2, 1}) == ExactScalar(1));
}

TEST_CASE("v_func translation property") {
  // V_x(a,b) = q^{Q(a,b)-Q(b,a)} V_x(a-b, 0)
  auto pt = num::sample_point({"q", "x"}, 29);
  MultiIndex zero(2, 0);
  for (const auto& b : component_box(2, 2))
    for (const auto& a : box_between(b, add(b, {2, 2}))) {
      ExactScalar lhs = v_func(pt.get("x"), pt.get("q"), a, b);
      ExactScalar rhs = num::ipow(pt.get("q"), qform_Q(a, b) - qform_Q(b, a)) *
                        v_func(pt.get("x"), pt.get("q"), sub(a, b), zero);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("phi factors through V at square arguments") {
  // Phi_{q^2}(g|b; l^2, m^2) = (m^{|g|}/l^{|b|}) V_l(g,0) V_{m/l}(b,g) / V_m(b,0)
  auto pt = num::sample_point({"q", "l", "m"}, 31);
  auto q = pt.get("q"), lam = pt.get("l"), mu = pt.get("m");
  MultiIndex zero(2, 0);
  for (const auto& beta : component_box(2, 2))
    for (const auto& gamma : box_between(zero, beta)) {
      ExactScalar lhs = phi(gamma, beta, lam * lam, mu * mu, q * q);
      ExactScalar rhs = num::ipow(mu, weight(gamma)) / num::ipow(lam, weight(beta)) *
                        v_func(lam, q, gamma, zero) * v_func(mu / lam, q, beta, gamma) /
                        v_func(mu, q, beta, zero);
      CHECK(lhs == rhs);
    }
}

}  // TEST_SUITE
