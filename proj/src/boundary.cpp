#include "qreflect/boundary.hpp"

#include <sstream>

namespace qreflect {
namespace boundary {

using num::ParamPoint;
using report::CheckResult;
using report::CheckStatus;
using report::RunReport;
using report::Witness;
using rmat::BlockOperator;
using rmat::EOp;
using rmat::ModelConfig;
using rmat::TensorBasis;

const char* family_name(KFamily f) {
  switch (f) {
    case KFamily::RightUpper: return "right-upper";
    case KFamily::RightLower: return "right-lower";
    case KFamily::LeftUpper: return "left-upper";
    case KFamily::LeftLower: return "left-lower";
  }
  return "?";
}

KFamily family_from_name(const std::string& name) {
  if (name == "right-upper") return KFamily::RightUpper;
  if (name == "right-lower") return KFamily::RightLower;
  if (name == "left-upper") return KFamily::LeftUpper;
  if (name == "left-lower") return KFamily::LeftLower;
  throw ConfigError("unknown K family: " + name);
}

namespace {

Witness dense_witness(const BasisSpace& b, long r, long c, const ExactScalar& lhs,
                      const ExactScalar& rhs, const std::string& detail = "") {
  Witness w;
  w.row = r;
  w.col = c;
  w.row_label = qkit::to_string(b.state(r));
  w.col_label = qkit::to_string(b.state(c));
  w.lhs = lhs.fraction_string();
  w.rhs = rhs.fraction_string();
  w.detail = detail;
  return w;
}

std::optional<Witness> op_difference(const EOp& a, const EOp& b) { return a.first_difference(b); }

}  // namespace

BoundaryMatrix build_K(int n, int J, const ExactScalar& w, const ExactScalar& nu,
                       const ExactScalar& q, KFamily fam) {
  BoundaryMatrix k;
  k.space = BasisSpace(n, J);
  k.entries = k_matrix(fam, n, J, w, nu, q);
  k.family = family_name(fam);
  k.params = {{"w", w}, {"nu", nu}, {"q", q}};
  return k;
}

BoundaryMatrix build_Ktilde(int n, int J, const ExactScalar& u, const ExactScalar& nu,
                            const ExactScalar& q, KFamily fam) {
  BoundaryMatrix k;
  k.space = BasisSpace(n, J);
  k.entries = ktilde_matrix(n, J, u, nu, q, fam);
  k.family = std::string("dual:") + family_name(fam);
  k.params = {{"u", u}, {"nu", nu}, {"q", q}};
  return k;
}

BoundaryMatrix sigma_twist(const BoundaryMatrix& k, const ExactScalar& mu, TwistDirection dir) {
  const BasisSpace& b = k.space;
  int J = b.J();
  const ExactScalar& w = k.params.at("w");
  const ExactScalar& q = k.params.at("q");
  ExactScalar muqJ = mu * num::ipow(q, static_cast<long>(J));
  ExactScalar f_down = num::inverse(w * muqJ);  // 1/(w mu q^J)
  ExactScalar f_up = w / muqJ;                  // w/(mu q^J)
  BoundaryMatrix out = k;
  out.family = k.family + (dir == TwistDirection::Right ? "+twist" : "+bar-twist");
  for (long r = 0; r < b.dim(); ++r) {
    MultiIndex sj = qkit::rotate_sigma(b.state(r), J);
    for (long c = 0; c < b.dim(); ++c) {
      MultiIndex sl = qkit::rotate_sigma(b.state(c), J);
      ExactScalar core = k.entries(b.ordinal(sj), b.ordinal(sl));
      ExactScalar pre =
          dir == TwistDirection::Right
              ? num::ipow(f_down, -qkit::weight(sj)) * num::ipow(f_up, qkit::weight(sl))
              : num::ipow(f_up, qkit::weight(sj)) * num::ipow(f_down, -qkit::weight(sl));
      out.entries(r, c) = pre * core;
    }
  }
  return out;
}

BoundaryMatrix k_to_kbar(const BoundaryMatrix& k) {
  KFamily fam = family_from_name(k.family);
  const BasisSpace& b = k.space;
  int n = b.n(), J = b.J();
  const ExactScalar& q = k.params.at("q");
  const ExactScalar& nu = k.params.at("nu");
  DenseMatrix<ExactScalar> inv = k_matrix(fam, n, J, num::inverse(k.params.at("w")), nu, q);
  BoundaryMatrix out = k;
  out.family = k.family + "->kbar";
  for (long r = 0; r < b.dim(); ++r) {
    MultiIndex tsj = qkit::reverse_tau(qkit::rotate_sigma(b.state(r), J));
    for (long c = 0; c < b.dim(); ++c) {
      MultiIndex tsl = qkit::reverse_tau(qkit::rotate_sigma(b.state(c), J));
      out.entries(r, c) = inv(b.ordinal(tsj), b.ordinal(tsl));
    }
  }
  return out;
}

DenseMatrix<ExactScalar> kbar_from_ktilde_trace(const MatrixFamily& ktilde, int n, int J,
                                                const ExactScalar& u, const ExactScalar& q) {
  BasisSpace b(n, J);
  DenseMatrix<ExactScalar> kt = ktilde(num::inverse(u));
  if (kt.rows() != b.dim()) throw DimensionMismatch("trace map needs I = J");
  EOp s = rmat::build_S<ExactScalar>({n, J, J}, num::inverse(u * u), q);
  const TensorBasis& sp = s.space();
  DenseMatrix<ExactScalar> out(b.dim(), b.dim());
  for (long row = 0; row < b.dim(); ++row)
    for (long col = 0; col < b.dim(); ++col) {
      ExactScalar sum(0);
      for (long a = 0; a < b.dim(); ++a)
        for (long ap = 0; ap < b.dim(); ++ap) {
          const ExactScalar& kv = kt(a, ap);
          if (kv.is_zero()) continue;
          sum += kv * s.at(sp.pack({ap, row}), sp.pack({col, a}));
        }
      out(row, col) = sum;
    }
  return out;
}

DenseMatrix<ExactScalar> ktilde_from_kbar_trace(const MatrixFamily& kbar, int n, int J,
                                                const ExactScalar& u, const ExactScalar& q) {
  BasisSpace b(n, J);
  DenseMatrix<ExactScalar> kb = kbar(num::inverse(u));
  if (kb.rows() != b.dim()) throw DimensionMismatch("trace map needs I = J");
  EOp st = rmat::build_Rtilde<ExactScalar>({n, J, J}, u * u, q);
  const TensorBasis& sp = st.space();
  DenseMatrix<ExactScalar> out(b.dim(), b.dim());
  for (long row = 0; row < b.dim(); ++row)
    for (long col = 0; col < b.dim(); ++col) {
      ExactScalar sum(0);
      for (long a = 0; a < b.dim(); ++a)
        for (long ap = 0; ap < b.dim(); ++ap) {
          const ExactScalar& kv = kb(a, ap);
          if (kv.is_zero()) continue;
          sum += kv * st.at(sp.pack({ap, row}), sp.pack({col, a}));
        }
      out(row, col) = sum;
    }
  return out;
}

CheckResult verify_reflection_families(const std::string& id, int n, int I, int J, bool bar,
                                       const std::function<MatrixFamily(const ParamPoint&, int)>&
                                           make,
                                       const SamplePlan& plan, const Perturb* perturb) {
  auto res = rmat::check_at_points(
      id, {"q", "nu", "u1", "u2"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &u1 = pt.get("u1"), &u2 = pt.get("u2");
        BasisSpace bi(n, I), bj(n, J);
        TensorBasis pair({bi, bj});
        DenseMatrix<ExactScalar> mi = make(pt, I)(u1);
        if (perturb) mi(perturb->row, perturb->col) += perturb->delta;
        DenseMatrix<ExactScalar> mj = make(pt, J)(u2);
        EOp k1 = embed_single(mi, pair, 0);
        EOp k2 = embed_single(mj, pair, 1);
        auto sij = [&](const ExactScalar& z) { return rmat::build_S<ExactScalar>({n, I, J}, z, q); };
        auto sji_swapped = [&](const ExactScalar& z) {
          return rmat::build_S<ExactScalar>({n, J, I}, z, q).swap_slots();
        };
        if (!bar) {
          EOp lhs = sij(u1 / u2) * (k1 * (sji_swapped(u1 * u2) * k2));
          EOp rhs = k2 * (sij(u1 * u2) * (k1 * sji_swapped(u1 / u2)));
          return op_difference(lhs, rhs);
        }
        ExactScalar inv12 = num::inverse(u1 * u2);
        EOp lhs = sji_swapped(u2 / u1) * (k1 * (sij(inv12) * k2));
        EOp rhs = k2 * (sji_swapped(inv12) * (k1 * sij(u2 / u1)));
        return op_difference(lhs, rhs);
      });
  res.params["n"] = std::to_string(n);
  res.params["I"] = std::to_string(I);
  res.params["J"] = std::to_string(J);
  return res;
}

CheckResult verify_reflection(int n, int I, int J, KFamily fam, const SamplePlan& plan,
                              const Perturb* perturb) {
  bool bar = fam == KFamily::LeftUpper || fam == KFamily::LeftLower;
  std::ostringstream id;
  id << "reflection-" << family_name(fam) << " n=" << n << " I=" << I << " J=" << J;
  auto make = [fam, n](const ParamPoint& pt, int spin) -> MatrixFamily {
    ExactScalar nu = pt.get("nu"), q = pt.get("q");
    return [fam, n, spin, nu, q](const ExactScalar& u) {
      return k_matrix(fam, n, spin, u, nu, q);
    };
  };
  return verify_reflection_families(id.str(), n, I, J, bar, make, plan, perturb);
}

CheckResult verify_dual_reflection(int n, int I, int J, const SamplePlan& plan,
                                   const Perturb* perturb) {
  std::ostringstream id;
  id << "dual-reflection n=" << n << " I=" << I << " J=" << J;
  auto res = rmat::check_at_points(
      id.str(), {"q", "nu", "u1", "u2"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &nu = pt.get("nu"), &u1 = pt.get("u1"), &u2 = pt.get("u2");
        BasisSpace bi(n, I), bj(n, J);
        TensorBasis pair({bi, bj});
        DenseMatrix<ExactScalar> mi = ktilde_matrix(n, I, u1, nu, q);
        if (perturb) mi(perturb->row, perturb->col) += perturb->delta;
        EOp k1 = embed_single(mi, pair, 0);
        EOp k2 = embed_single(ktilde_matrix(n, J, u2, nu, q), pair, 1);
        ExactScalar uprod = u1 * u2, uratio = u2 / u1;
        EOp stilde12 = rmat::build_Rtilde<ExactScalar>({n, I, J}, uprod, q);
        EOp stilde21 = rmat::build_Rtilde<ExactScalar>({n, J, I}, uprod, q).swap_slots();
        EOp s12 = rmat::build_S<ExactScalar>({n, I, J}, uratio, q);
        EOp s21 = rmat::build_S<ExactScalar>({n, J, I}, uratio, q).swap_slots();
        EOp lhs = k2 * (stilde21 * (k1 * s21));
        EOp rhs = s12 * (k1 * (stilde12 * k2));
        return op_difference(lhs, rhs);
      });
  res.params["n"] = std::to_string(n);
  res.params["I"] = std::to_string(I);
  res.params["J"] = std::to_string(J);
  return res;
}

CheckResult verify_k_to_kbar(int n, int I, int J, KFamily fam, const SamplePlan& plan) {
  std::ostringstream id;
  id << "k-to-kbar-" << family_name(fam) << " n=" << n << " I=" << I << " J=" << J;
  auto make = [fam, n](const ParamPoint& pt, int spin) -> MatrixFamily {
    ExactScalar nu = pt.get("nu"), q = pt.get("q");
    return [fam, n, spin, nu, q](const ExactScalar& u) {
      BoundaryMatrix k = build_K(n, spin, u, nu, q, fam);
      return k_to_kbar(k).entries;
    };
  };
  return verify_reflection_families(id.str(), n, I, J, /*bar=*/true, make, plan);
}

CheckResult verify_twist_invariance(int n, int I, int J, KFamily fam, int twists,
                                    const SamplePlan& plan) {
  std::ostringstream id;
  id << "twist-invariance-" << family_name(fam) << " n=" << n << " I=" << I << " J=" << J
     << " twists=" << twists;
  std::vector<std::string> symbols = {"q", "nu", "u1", "u2"};
  for (int t = 0; t < twists; ++t) symbols.push_back("mu" + std::to_string(t));
  auto res = rmat::check_at_points(
      id.str(), symbols, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        auto make = [&](int spin) -> MatrixFamily {
          ExactScalar nu = pt.get("nu"), q = pt.get("q");
          std::vector<ExactScalar> mus;
          for (int t = 0; t < twists; ++t) mus.push_back(pt.get("mu" + std::to_string(t)));
          return [fam, n, spin, nu, q, mus](const ExactScalar& u) {
            BoundaryMatrix k = build_K(n, spin, u, nu, q, fam);
            for (const auto& mu : mus) k = sigma_twist(k, mu, TwistDirection::Right);
            return k.entries;
          };
        };
        const auto &q = pt.get("q"), &u1 = pt.get("u1"), &u2 = pt.get("u2");
        BasisSpace bi(n, I), bj(n, J);
        TensorBasis pair({bi, bj});
        EOp k1 = embed_single(make(I)(u1), pair, 0);
        EOp k2 = embed_single(make(J)(u2), pair, 1);
        auto sij = [&](const ExactScalar& z) { return rmat::build_S<ExactScalar>({n, I, J}, z, q); };
        auto sji = [&](const ExactScalar& z) {
          return rmat::build_S<ExactScalar>({n, J, I}, z, q).swap_slots();
        };
        EOp lhs = sij(u1 / u2) * (k1 * (sji(u1 * u2) * k2));
        EOp rhs = k2 * (sij(u1 * u2) * (k1 * sji(u1 / u2)));
        return op_difference(lhs, rhs);
      });
  res.params["n"] = std::to_string(n);
  return res;
}

CheckResult verify_recurrences(int n, int J, KFamily fam, const SamplePlan& plan,
                               const Perturb* perturb) {
  std::ostringstream id;
  id << "recurrences-" << family_name(fam) << " n=" << n << " J=" << J;
  auto res = rmat::check_at_points(
      id.str(), {"q", "nu", "w"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &nu = pt.get("nu"), &w = pt.get("w");
        BasisSpace b(n, J);
        int m = n - 1;
        DenseMatrix<ExactScalar> k = k_matrix(fam, n, J, w, nu, q);
        if (perturb) k(perturb->row, perturb->col) += perturb->delta;
        auto kat = [&](const MultiIndex& j, const MultiIndex& l) -> ExactScalar {
          if (!qkit::all_nonneg(j) || !qkit::all_nonneg(l) || qkit::weight(j) > J ||
              qkit::weight(l) > J)
            return ExactScalar(0);
          return k(b.ordinal(j), b.ordinal(l));
        };
        auto prefix = [](const MultiIndex& v, int upto) {
          long s = 0;
          for (int t = 1; t <= upto; ++t) s += v[t - 1];
          return s;
        };
        for (long r = 0; r < b.dim(); ++r)
          for (long c = 0; c < b.dim(); ++c) {
            const MultiIndex &j = b.state(r), &l = b.state(c);
            MultiIndex e1 = qkit::unit_vector(m, 1);
            // nu(1-q^{2 l1}) K_j^{l-e1} - q^{-J} w (q^{2 j1}-q^{2 l1}) K_j^l
            //   - nu w^2 (1-q^{2 j1+2}) K_{j+e1}^l = 0
            ExactScalar eq1 =
                nu * (ExactScalar(1) - num::ipow(q, 2L * l[0])) * kat(j, qkit::sub(l, e1)) -
                num::ipow(q, -static_cast<long>(J)) * w *
                    (num::ipow(q, 2L * j[0]) - num::ipow(q, 2L * l[0])) * kat(j, l) -
                nu * w * w * (ExactScalar(1) - num::ipow(q, 2L * j[0] + 2)) *
                    kat(qkit::add(j, e1), l);
            if (!eq1.is_zero())
              return dense_witness(b, r, c, eq1, ExactScalar(0), "recurrence 1");
            for (int i = 1; i <= n - 2; ++i) {
              MultiIndex ei1 = qkit::unit_vector(m, i + 1);
              ExactScalar eq2 = (num::ipow(q, -2 * prefix(l, i)) - num::ipow(q, -2 * prefix(j, i))) *
                                kat(j, l);
              for (int mm = 1; mm <= i; ++mm) {
                MultiIndex em = qkit::unit_vector(m, mm);
                eq2 -= num::ipow(q, -2 * prefix(l, mm)) *
                       (ExactScalar(1) - num::ipow(q, 2L * l[mm - 1])) *
                       kat(j, qkit::add(qkit::sub(l, em), ei1));
                eq2 += num::ipow(q, -2L) * num::ipow(q, -2 * prefix(j, mm)) *
                       (ExactScalar(1) - num::ipow(q, 2L * j[mm - 1] + 2)) *
                       kat(qkit::sub(qkit::add(j, em), ei1), l);
              }
              if (!eq2.is_zero())
                return dense_witness(b, r, c, eq2, ExactScalar(0),
                                     "recurrence 2, i=" + std::to_string(i));
            }
            MultiIndex en = qkit::unit_vector(m, m);
            ExactScalar eq3 =
                (num::ipow(q, -2L * j[m - 1]) - num::ipow(q, -2L * l[m - 1])) * kat(j, l) -
                (ExactScalar(1) - num::ipow(q, -2L * l[m - 1])) * kat(j, qkit::sub(l, en)) +
                (ExactScalar(1) - num::ipow(q, -2L * j[m - 1] - 2)) * kat(qkit::add(j, en), l);
            if (!eq3.is_zero())
              return dense_witness(b, r, c, eq3, ExactScalar(0), "recurrence 3");
          }
        return std::nullopt;
      });
  res.params["n"] = std::to_string(n);
  res.params["J"] = std::to_string(J);
  return res;
}

RunReport verify_k_invariants(int n, int J, const SamplePlan& plan) {
  RunReport rep;
  rep.suite = "k-invariants";
  for (KFamily fam : {KFamily::RightUpper, KFamily::RightLower, KFamily::LeftUpper,
                      KFamily::LeftLower}) {
    std::ostringstream id;
    id << "k-invariants-" << family_name(fam) << " n=" << n << " J=" << J;
    auto res = rmat::check_at_points(
        id.str(), {"q", "nu", "w"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
          const auto &q = pt.get("q"), &nu = pt.get("nu"), &w = pt.get("w");
          BasisSpace b(n, J);
          DenseMatrix<ExactScalar> at1 = k_matrix(fam, n, J, ExactScalar(1), nu, q);
          for (long r = 0; r < b.dim(); ++r)
            for (long c = 0; c < b.dim(); ++c) {
              ExactScalar want(r == c ? 1 : 0);
              if (!(at1(r, c) == want))
                return dense_witness(b, r, c, at1(r, c), want, "K(1) != I");
            }
          DenseMatrix<ExactScalar> k = k_matrix(fam, n, J, w, nu, q);
          for (long c = 0; c < b.dim(); ++c) {
            ExactScalar sum(0);
            for (long r = 0; r < b.dim(); ++r) sum += k(r, c);
            if (!sum.is_one())
              return dense_witness(b, c, c, sum, ExactScalar(1), "column sum");
          }
          bool lower = fam == KFamily::RightLower || fam == KFamily::LeftLower;
          for (long r = 0; r < b.dim(); ++r)
            for (long c = 0; c < b.dim(); ++c) {
              const MultiIndex &j = b.state(r), &l = b.state(c);
              bool allowed = lower ? qkit::dominates(qkit::rotate_sigma(l, J),
                                                     qkit::rotate_sigma(j, J))
                                   : qkit::dominates(l, j);
              if (!allowed && !k(r, c).is_zero())
                return dense_witness(b, r, c, k(r, c), ExactScalar(0), "triangularity");
            }
          return std::nullopt;
        });
    res.params["family"] = family_name(fam);
    rep.add(res);
  }
  return rep;
}

CheckResult verify_trace_roundtrip(int n, int J, const SamplePlan& plan) {
  std::ostringstream id;
  id << "trace-roundtrip n=" << n << " J=" << J;
  auto res = rmat::check_at_points(
      id.str(), {"q", "nu", "u"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &nu = pt.get("nu"), &u = pt.get("u");
        MatrixFamily ktilde = [&](const ExactScalar& uu) {
          return ktilde_matrix(n, J, uu, nu, q);
        };
        MatrixFamily kbar = [&](const ExactScalar& uu) {
          return kbar_from_ktilde_trace(ktilde, n, J, uu, q);
        };
        DenseMatrix<ExactScalar> back = ktilde_from_kbar_trace(kbar, n, J, u, q);
        DenseMatrix<ExactScalar> direct = ktilde(u);
        BasisSpace b(n, J);
        for (long r = 0; r < b.dim(); ++r)
          for (long c = 0; c < b.dim(); ++c)
            if (!(back(r, c) == direct(r, c)))
              return dense_witness(b, r, c, back(r, c), direct(r, c));
        return std::nullopt;
      });
  res.params["n"] = std::to_string(n);
  res.params["J"] = std::to_string(J);
  return res;
}

CheckResult verify_trace_lambda(int n, int J, const SamplePlan& plan) {
  std::ostringstream id;
  id << "trace-lambda n=" << n << " J=" << J;
  auto res = rmat::check_at_points(
      id.str(), {"q", "nu", "u"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &nu = pt.get("nu"), &u = pt.get("u");
        // The dualized upper family carries nu -> 1/(nu q^n); the traced image
        // then reproduces lambda_J^(n) times the closed-form left-upper matrix
        // at parameter nu.
        ExactScalar nu_t = num::inverse(nu * num::ipow(q, static_cast<long>(n)));
        MatrixFamily ktilde = [&](const ExactScalar& uu) {
          return ktilde_matrix(n, J, uu, nu_t, q);
        };
        DenseMatrix<ExactScalar> traced = kbar_from_ktilde_trace(ktilde, n, J, u, q);
        ExactScalar lam = lambda_J(n, J, u, nu, q);
        DenseMatrix<ExactScalar> closed = k_matrix(KFamily::LeftUpper, n, J, u, nu, q);
        BasisSpace b(n, J);
        for (long r = 0; r < b.dim(); ++r)
          for (long c = 0; c < b.dim(); ++c)
            if (!(traced(r, c) == lam * closed(r, c)))
              return dense_witness(b, r, c, traced(r, c), lam * closed(r, c));
        return std::nullopt;
      });
  res.params["n"] = std::to_string(n);
  res.params["J"] = std::to_string(J);
  return res;
}

namespace {

DenseMatrix<ExactScalar> nondiff_k(int n, int cap, const ExactScalar& zx,
                                   const ExactScalar& zxbar, const ExactScalar& q2) {
  BasisSpace b(n, std::max(cap, 1));
  DenseMatrix<ExactScalar> m(b.dim(), b.dim());
  for (long r = 0; r < b.dim(); ++r)
    for (long c = 0; c < b.dim(); ++c)
      m(r, c) = qkit::phi(b.state(r), b.state(c), zx, zxbar, q2);
  return m;
}

DenseMatrix<ExactScalar> nondiff_kbar(int n, int cap, const ExactScalar& x,
                                      const ExactScalar& xbar, const ExactScalar& q2) {
  BasisSpace b(n, std::max(cap, 1));
  DenseMatrix<ExactScalar> m(b.dim(), b.dim());
  for (long r = 0; r < b.dim(); ++r)
    for (long c = 0; c < b.dim(); ++c)
      m(r, c) = qkit::phi(qkit::sub(b.state(c), b.state(r)), b.state(c), xbar / x, xbar, q2);
  return m;
}

}  // namespace

BoundaryMatrix build_K_nondiff(int n, int sector_cap, const ExactScalar& x,
                               const ExactScalar& xbar, const ExactScalar& z2,
                               const ExactScalar& q2) {
  BoundaryMatrix k;
  k.space = BasisSpace(n, std::max(sector_cap, 1));
  k.entries = nondiff_k(n, sector_cap, z2 * x, z2 * xbar, q2);
  k.family = "nondiff-right";
  k.params = {{"x", x}, {"xbar", xbar}, {"z2", z2}, {"q2", q2}};
  return k;
}

BoundaryMatrix build_Kbar_nondiff(int n, int sector_cap, const ExactScalar& x,
                                  const ExactScalar& xbar, const ExactScalar& q2) {
  BoundaryMatrix k;
  k.space = BasisSpace(n, std::max(sector_cap, 1));
  k.entries = nondiff_kbar(n, sector_cap, x, xbar, q2);
  k.family = "nondiff-bar";
  k.params = {{"x", x}, {"xbar", xbar}, {"q2", q2}};
  return k;
}

CheckResult verify_reflection_nondiff(int n, int sector_cap, const SamplePlan& plan,
                                      const Perturb* perturb) {
  std::ostringstream id;
  id << "nondiff-reflection n=" << n << " cap=" << sector_cap;
  auto res = rmat::check_at_points(
      id.str(), {"q", "x", "xb", "y", "yb", "z2"}, plan,
      [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &x = pt.get("x"), &xb = pt.get("xb"), &y = pt.get("y"),
                   &yb = pt.get("yb"), &z2 = pt.get("z2");
        ExactScalar q2 = q * q;
        auto s = [&](const ExactScalar& a, const ExactScalar& bb) {
          return rmat::build_S_nondiff(n, a, bb, q2, sector_cap);
        };
        auto s21 = [&](const ExactScalar& a, const ExactScalar& bb) {
          return s(a, bb).swap_slots();
        };
        DenseMatrix<ExactScalar> kxm = nondiff_k(n, sector_cap, z2 * x, z2 * xb, q2);
        if (perturb) kxm(perturb->row, perturb->col) += perturb->delta;
        DenseMatrix<ExactScalar> kym = nondiff_k(n, sector_cap, z2 * y, z2 * yb, q2);
        BasisSpace b(n, std::max(sector_cap, 1));
        TensorBasis pair({b, b});
        EOp k1 = embed_single(kxm, pair, 0);
        EOp k2 = embed_single(kym, pair, 1);
        EOp lhs = s(x, y) * (k1 * (s21(y, xb) * k2));
        EOp rhs = k2 * (s(x, yb) * (k1 * s21(yb, xb)));
        auto ok = [&](long c) { return qkit::weight(pair.sector_of(c)) <= sector_cap; };
        return lhs.first_difference(rhs, ok);
      });
  res.params["n"] = std::to_string(n);
  res.params["cap"] = std::to_string(sector_cap);
  return res;
}

CheckResult verify_reflection2_nondiff(int n, int sector_cap, const SamplePlan& plan) {
  std::ostringstream id;
  id << "nondiff-reflection-2 n=" << n << " cap=" << sector_cap;
  auto res = rmat::check_at_points(
      id.str(), {"q", "x", "xb", "y", "yb"}, plan,
      [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &x = pt.get("x"), &xb = pt.get("xb"), &y = pt.get("y"),
                   &yb = pt.get("yb");
        ExactScalar q2 = q * q;
        auto s = [&](const ExactScalar& a, const ExactScalar& bb) {
          return rmat::build_S_nondiff(n, a, bb, q2, sector_cap);
        };
        auto s21 = [&](const ExactScalar& a, const ExactScalar& bb) {
          return s(a, bb).swap_slots();
        };
        BasisSpace b(n, std::max(sector_cap, 1));
        TensorBasis pair({b, b});
        EOp k1 = embed_single(nondiff_kbar(n, sector_cap, x, xb, q2), pair, 0);
        EOp k2 = embed_single(nondiff_kbar(n, sector_cap, y, yb, q2), pair, 1);
        EOp lhs = s21(y, x) * (k1 * (s(xb, y) * k2));
        EOp rhs = k2 * (s21(yb, x) * (k1 * s(xb, yb)));
        auto ok = [&](long c) { return qkit::weight(pair.sector_of(c)) <= sector_cap; };
        return lhs.first_difference(rhs, ok);
      });
  res.params["n"] = std::to_string(n);
  res.params["cap"] = std::to_string(sector_cap);
  return res;
}

DenseMatrix<ExactScalar> golden_k(KFamily fam, int n, int J, const ExactScalar& w,
                                  const ExactScalar& nu, const ExactScalar& q) {
  const ExactScalar one(1);
  if (n == 2 && J == 1) {
    DenseMatrix<ExactScalar> m(2, 2);
    ExactScalar qnu = q * nu;
    switch (fam) {
      case KFamily::RightUpper:
        m(0, 0) = one;
        m(0, 1) = qnu * (one - w * w) / (w * (one - qnu * w));
        m(1, 1) = (w - qnu) / (w * (one - qnu * w));
        break;
      case KFamily::RightLower:
        m(0, 0) = w * (w - qnu) / (one - qnu * w);
        m(1, 0) = (one - w * w) / (one - qnu * w);
        m(1, 1) = one;
        break;
      case KFamily::LeftUpper:
        m(0, 0) = one;
        m(0, 1) = (w * w - one) / (w * (w - qnu));
        m(1, 1) = (one - qnu * w) / (w * (w - qnu));
        break;
      case KFamily::LeftLower:
        m(0, 0) = w * (one - qnu * w) / (w - qnu);
        m(1, 0) = qnu * (w * w - one) / (w - qnu);
        m(1, 1) = one;
        break;
    }
    return m;
  }
  if (n == 3 && J == 2) {
    // Parameters lam = w/(nu q^2), mu = 1/(w nu q^2), p = q^2; basis order
    // (0,0),(0,1),(0,2),(1,0),(1,1),(2,0).
    ExactScalar p = q * q;
    ExactScalar lam = w / (nu * p);
    ExactScalar mu = num::inverse(w * nu * p);
    auto poch = [&](const ExactScalar& a, long k) { return qkit::qpochhammer(a, p, k); };
    ExactScalar two_one = one + p;  // [2 over 1]_p
    DenseMatrix<ExactScalar> m(6, 6);
    ExactScalar r = mu / lam;
    switch (fam) {
      case KFamily::RightUpper: {
        ExactScalar a1 = poch(r, 1) / poch(mu, 1), a2 = poch(r, 2) / poch(mu, 2);
        ExactScalar b1 = r * poch(lam, 1) / poch(mu, 1);
        ExactScalar b2 = r * poch(lam, 1) * poch(r, 1) / poch(mu, 2);
        ExactScalar c2 = r * r * poch(lam, 2) / poch(mu, 2);
        m(0, 0) = one;  m(0, 1) = a1;  m(0, 2) = a2;  m(0, 3) = a1;  m(0, 4) = a2;  m(0, 5) = a2;
        m(1, 1) = b1;   m(1, 2) = b2 * two_one;       m(1, 4) = p * b2;
        m(2, 2) = c2;
        m(3, 3) = b1;   m(3, 4) = b2;                 m(3, 5) = b2 * two_one;
        m(4, 4) = c2;
        m(5, 5) = c2;
        break;
      }
      case KFamily::RightLower: {
        ExactScalar d2 = poch(lam, 2) / poch(mu, 2), d1 = poch(lam, 1) / poch(mu, 1);
        ExactScalar e2 = lam * poch(lam, 1) * poch(r, 1) / poch(mu, 2);
        ExactScalar f2 = lam * lam * poch(r, 2) / poch(mu, 2);
        ExactScalar f1 = lam * poch(r, 1) / poch(mu, 1);
        m(0, 0) = d2;  m(1, 1) = d2;  m(2, 2) = d2;
        m(3, 0) = e2 * two_one;  m(3, 1) = p * e2;  m(3, 3) = d1;
        m(4, 1) = e2;  m(4, 2) = e2 * two_one;  m(4, 4) = d1;
        m(5, 0) = f2;  m(5, 1) = f2;  m(5, 2) = f2;  m(5, 3) = f1;  m(5, 4) = f1;  m(5, 5) = one;
        break;
      }
      case KFamily::LeftUpper: {
        ExactScalar s = lam / mu;
        ExactScalar a1 = mu * poch(s, 1) / poch(lam, 1);
        ExactScalar a2 = mu * mu * poch(s, 2) / poch(lam, 2);
        ExactScalar b1 = poch(mu, 1) / poch(lam, 1), b2 = poch(mu, 2) / poch(lam, 2);
        ExactScalar c = mu * poch(mu, 1) * poch(s, 1) / poch(lam, 2);
        m(0, 0) = one;  m(0, 1) = a1;  m(0, 2) = a2;  m(0, 3) = a1;  m(0, 4) = a2;  m(0, 5) = a2;
        m(1, 1) = b1;   m(1, 2) = c * two_one;  m(1, 4) = c;
        m(2, 2) = b2;
        m(3, 3) = b1;   m(3, 4) = p * c;        m(3, 5) = c * two_one;
        m(4, 4) = b2;
        m(5, 5) = b2;
        break;
      }
      case KFamily::LeftLower: {
        ExactScalar s = lam / mu;
        ExactScalar d2 = s * s * poch(mu, 2) / poch(lam, 2);
        ExactScalar e = s * poch(mu, 1) * poch(s, 1) / poch(lam, 2);
        ExactScalar d1 = s * poch(mu, 1) / poch(lam, 1);
        ExactScalar g2 = poch(s, 2) / poch(lam, 2), g1 = poch(s, 1) / poch(lam, 1);
        m(0, 0) = d2;  m(1, 1) = d2;  m(2, 2) = d2;
        m(3, 0) = e * two_one;  m(3, 1) = e;  m(3, 3) = d1;
        m(4, 1) = p * e;  m(4, 2) = e * two_one;  m(4, 4) = d1;
        m(5, 0) = g2;  m(5, 1) = g2;  m(5, 2) = g2;  m(5, 3) = g1;  m(5, 4) = g1;  m(5, 5) = one;
        break;
      }
    }
    return m;
  }
  throw ConfigError("no explicit reference matrix for this (n, J)");
}

CheckResult verify_golden(int n, int J, const SamplePlan& plan, const Perturb* perturb) {
  std::ostringstream id;
  id << "golden n=" << n << " J=" << J;
  auto res = rmat::check_at_points(
      id.str(), {"q", "nu", "w"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &nu = pt.get("nu"), &w = pt.get("w");
        BasisSpace b(n, J);
        for (KFamily fam : {KFamily::RightUpper, KFamily::RightLower, KFamily::LeftUpper,
                            KFamily::LeftLower}) {
          DenseMatrix<ExactScalar> built = k_matrix(fam, n, J, w, nu, q);
          if (perturb && fam == KFamily::RightUpper)
            built(perturb->row, perturb->col) += perturb->delta;
          DenseMatrix<ExactScalar> ref = golden_k(fam, n, J, w, nu, q);
          for (long r = 0; r < b.dim(); ++r)
            for (long c = 0; c < b.dim(); ++c)
              if (!(built(r, c) == ref(r, c)))
                return dense_witness(b, r, c, built(r, c), ref(r, c), family_name(fam));
        }
        return std::nullopt;
      });
  res.params["n"] = std::to_string(n);
  res.params["J"] = std::to_string(J);
  return res;
}

CheckResult verify_nondiff_k_stochastic(int n, int sector_cap, const SamplePlan& plan) {
  std::ostringstream id;
  id << "nondiff-k-stochastic n=" << n << " cap=" << sector_cap;
  auto res = rmat::check_at_points(
      id.str(), {"q", "x", "z2"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &x = pt.get("x"), &z2 = pt.get("z2");
        ExactScalar q2 = q * q;
        DenseMatrix<ExactScalar> k = nondiff_k(n, sector_cap, z2 * x, z2 * x, q2);
        BasisSpace b(n, std::max(sector_cap, 1));
        for (long c = 0; c < b.dim(); ++c) {
          ExactScalar sum(0);
          for (long r = 0; r < b.dim(); ++r) sum += k(r, c);
          if (!sum.is_one()) return dense_witness(b, c, c, sum, ExactScalar(1), "column sum");
        }
        return std::nullopt;
      });
  res.params["n"] = std::to_string(n);
  return res;
}

}  // namespace boundary
}  // namespace qreflect
