#include "qreflect/exactnum.hpp"

#include <algorithm>
#include <cctype>

namespace qreflect {
namespace num {

ExactScalar ExactScalar::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ConfigError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpq_class v(s, 10);
      v.canonicalize();
      return ExactScalar(v);
    }
    mpz_class num(s.substr(0, slash), 10);
    mpz_class den(s.substr(slash + 1), 10);
    if (den == 0) throw ZeroDenominator();
    mpq_class v(num, den);
    v.canonicalize();
    return ExactScalar(v);
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad rational literal: " + text);
  }
}

ParamPoint sample_point(const std::vector<std::string>& symbols, std::uint64_t seed,
                        long bound) {
  if (bound < 2) throw ConfigError("sample bound must be >= 2");
  std::mt19937_64 rng(seed);
  auto draw = [&]() { return static_cast<long>(rng() % static_cast<std::uint64_t>(bound)) + 1; };
  ParamPoint pt;
  for (const auto& sym : symbols) {
    long a = draw(), b = draw();
    if (sym == "q") {
      while (a == b) {
        a = draw();
        b = draw();
      }
    }
    pt.bind(sym, rat(a, b));
  }
  return pt;
}

}  // namespace num
}  // namespace qreflect
