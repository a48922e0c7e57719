#include <doctest.h>

#include <set>

#include "qreflect/exactnum.hpp"

using namespace qreflect;
using num::DualScalar;
using num::ExactScalar;
using num::Jet;
using num::rat;

TEST_SUITE("exactnum") {

TEST_CASE("rat reduces to canonical form") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(-3, -6) == rat(1, 2));
  CHECK(rat(3, -6) == rat(-1, 2));
  CHECK(rat(-1, 2).fraction_string() == "-1/2");
  CHECK_THROWS_AS(rat(5, 0), ZeroDenominator);
}

TEST_CASE("parse accepts integers and fractions") {
  CHECK(ExactScalar::parse("7") == ExactScalar(7));
  CHECK(ExactScalar::parse("-4/8") == rat(-1, 2));
  CHECK(ExactScalar::parse(" 3 / 2 ") == rat(3, 2));
  CHECK_THROWS_AS(ExactScalar::parse("1/0"), ZeroDenominator);
  CHECK_THROWS_AS(ExactScalar::parse("abc"), ConfigError);
}

TEST_CASE("ipow") {
  CHECK(num::ipow(rat(2, 3), -2) == rat(9, 4));
  CHECK(num::ipow(ExactScalar(5), 0L) == ExactScalar(1));
  CHECK(num::ipow(ExactScalar(2), 10L) == ExactScalar(1024));
  CHECK_THROWS_AS(num::ipow(ExactScalar(0), -1), ZeroToNegativePower);
}

TEST_CASE("division by zero is a pole") {
  CHECK_THROWS_AS(ExactScalar(1) / ExactScalar(0), PoleEncountered);
  CHECK_THROWS_AS(num::inverse(ExactScalar(0)), PoleEncountered);
}

TEST_CASE("field axioms at random triples") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto pt = num::sample_point({"a", "b", "c"}, seed);
    auto a = pt.get("a"), b = pt.get("b"), c = pt.get("c");
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == ExactScalar(0));
    CHECK(a * num::inverse(a) == ExactScalar(1));
  }
}

TEST_CASE("dual numbers differentiate monomials") {
  // deriv of (a + eps)^k at a is k a^{k-1}
  for (long k = 0; k <= 6; ++k) {
    ExactScalar a = rat(3, 7);
    DualScalar x(a, ExactScalar(1));
    DualScalar p = num::ipow(x, k);
    CHECK(p.value() == num::ipow(a, k));
    CHECK(p.deriv() == ExactScalar(k) * num::ipow(a, k - 1));
  }
}

TEST_CASE("dual quotient rule") {
  ExactScalar a = rat(2, 5);
  DualScalar x(a, ExactScalar(1));
  // f = (1 + x^2) / (1 - x): f' = (2x(1-x) + (1+x^2)) / (1-x)^2
  DualScalar f = (DualScalar(1) + x * x) / (DualScalar(1) - x);
  ExactScalar expect =
      (ExactScalar(2) * a * (ExactScalar(1) - a) + ExactScalar(1) + a * a) /
      ((ExactScalar(1) - a) * (ExactScalar(1) - a));
  CHECK(f.deriv() == expect);
  CHECK_THROWS_AS(x / DualScalar(ExactScalar(0), ExactScalar(3)), PoleEncountered);
}

TEST_CASE("jets cancel simple zeros where duals cannot") {
  // u = 1 + 2 eps; f = (1 - 1/u) / (1 - 1/u) has a removable 0/0 at eps = 0.
  Jet u(ExactScalar(1), ExactScalar(2));
  Jet num = Jet(1) - num::inverse(u);
  Jet f = num / num;
  CHECK(f.value() == ExactScalar(1));
  CHECK(f.deriv() == ExactScalar(0));
  // g = (1 - 1/u) / (1 - u) -> -1/u: value -1, d/deps = 2 (via u' = 2).
  Jet g = num / (Jet(1) - u);
  CHECK(g.value() == ExactScalar(-1));
  CHECK(g.deriv() == ExactScalar(2));
  CHECK_THROWS_AS(num::inverse(Jet(0)), PoleEncountered);
  // A genuine pole cannot be extracted.
  Jet pole = Jet(1) / (u - Jet(1));
  CHECK_THROWS_AS(pole.value(), PoleEncountered);
}

TEST_CASE("jet matches dual on regular expressions") {
  ExactScalar a = rat(5, 3);
  Jet x(a, ExactScalar(1));
  DualScalar xd(a, ExactScalar(1));
  Jet f = (x * x + Jet(2)) / (x - Jet(7));
  DualScalar fd = (xd * xd + DualScalar(2)) / (xd - DualScalar(7));
  CHECK(f.value() == fd.value());
  CHECK(f.deriv() == fd.deriv());
}

TEST_CASE("sample_point determinism and q exclusion") {
  auto p1 = num::sample_point({"q", "u"}, 1);
  auto p2 = num::sample_point({"q", "u"}, 1);
  CHECK(p1 == p2);
  int repeats = 0;
  num::ParamPoint prev;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto pt = num::sample_point({"q"}, seed);
    CHECK(pt.get("q") != ExactScalar(1));
    if (seed > 1 && pt.get("q") == prev.get("q")) ++repeats;
    prev = pt;
  }
  CHECK(repeats <= 5);
  CHECK_THROWS_AS(num::sample_point({"q"}, 1, 1), ConfigError);
}

}  // TEST_SUITE
