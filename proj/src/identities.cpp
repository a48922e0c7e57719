#include "qreflect/identities.hpp"

#include <sstream>

namespace qreflect {
namespace ident {

using num::ParamPoint;
using report::CheckResult;
using report::Witness;

namespace {

Witness tuple_witness(long tuple_index, const std::string& labels, const ExactScalar& lhs,
                      const ExactScalar& rhs) {
  Witness w;
  w.row = tuple_index;
  w.col = 0;
  w.row_label = labels;
  w.lhs = lhs.fraction_string();
  w.rhs = rhs.fraction_string();
  return w;
}

using qkit::v_func;

}  // namespace

ExactScalar mu_J(int n, int J, const ExactScalar& y, const ExactScalar& z,
                 const ExactScalar& q) {
  ExactScalar q2 = q * q;
  ExactScalar z2 = z * z, y2 = y * y;
  long m = n - 1;
  return qkit::qpochhammer(num::ipow(q, 2 - 2 * n) * z2, q2, m) *
         qkit::qpochhammer(num::ipow(q, 2 * J - 2 * n + 2) * z2 / y2, q2, m) /
         (qkit::qpochhammer(num::ipow(q, 2 * J - 2 * n + 2) * z2, q2, m) *
          qkit::qpochhammer(num::ipow(q, 2 - 2 * n) * z2 / y2, q2, m));
}

CheckResult verify_star_star(int m, int cap, const SamplePlan& plan, const Perturb* perturb) {
  std::ostringstream id;
  id << "star-star m=" << m << " cap=" << cap;
  auto res = rmat::check_at_points(
      id.str(), {"q", "x", "xp", "y", "yp"}, plan,
      [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &x = pt.get("x"), &xp = pt.get("xp"), &y = pt.get("y"),
                   &yp = pt.get("yp");
        MultiIndex zero(m, 0);
        long tuple = 0;
        for (const auto& a : qkit::component_box(m, cap))
          for (const auto& b : qkit::box_between(zero, a))
            for (const auto& c : qkit::box_between(zero, a))
              for (const auto& d : qkit::box_between(zero, qkit::cwise_min(b, c))) {
                ExactScalar lhs_sum(0);
                for (const auto& mm : qkit::box_between(qkit::cwise_max(b, c), a))
                  lhs_sum += v_func(x / yp, q, a, mm) * v_func(yp / xp, q, mm, b) *
                             v_func(y / x, q, mm, c) / v_func(y / xp, q, mm, d);
                ExactScalar lhs = v_func(y / yp, q, b, d) / v_func(y / yp, q, a, c) * lhs_sum;
                ExactScalar rhs_sum(0);
                for (const auto& mm : qkit::box_between(d, qkit::cwise_min(b, c)))
                  rhs_sum += v_func(x / yp, q, mm, d) * v_func(yp / xp, q, c, mm) *
                             v_func(y / x, q, b, mm) / v_func(y / xp, q, a, mm);
                ExactScalar rhs = v_func(x / xp, q, a, b) / v_func(x / xp, q, c, d) * rhs_sum;
                if (perturb && tuple == perturb->row) lhs += perturb->delta;
                if (!(lhs == rhs))
                  return tuple_witness(tuple,
                                       qkit::to_string(a) + qkit::to_string(b) +
                                           qkit::to_string(c) + qkit::to_string(d),
                                       lhs, rhs);
                ++tuple;
              }
        return std::nullopt;
      });
  res.params["m"] = std::to_string(m);
  res.params["cap"] = std::to_string(cap);
  return res;
}

CheckResult verify_sum1(int n, int J, int cap, const SamplePlan& plan, const Perturb* perturb) {
  std::ostringstream id;
  id << "sum1 n=" << n << " J=" << J << " cap=" << cap;
  auto res = rmat::check_at_points(
      id.str(), {"q", "y", "z"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &y = pt.get("y"), &z = pt.get("z");
        int mcomp = n - 1;
        ExactScalar qn = num::ipow(q, static_cast<long>(n));
        ExactScalar qJ = num::ipow(q, -static_cast<long>(J));
        ExactScalar qnJ = num::ipow(q, static_cast<long>(n - J));
        ExactScalar mu = mu_J(n, J, y, z, q);
        long tuple = 0;
        for (const auto& mm : qkit::component_box(mcomp, cap))
          for (const auto& b : qkit::box_between(mm, qkit::add(mm, MultiIndex(mcomp, cap))))
            for (const auto& c : qkit::box_between(b, qkit::add(b, MultiIndex(mcomp, cap)))) {
              ExactScalar lhs(0);
              long dmax = qkit::weight(b) + J;
              MultiIndex top = c;
              for (auto& t : top) t += static_cast<int>(dmax - qkit::weight(c) > 0
                                                            ? dmax - qkit::weight(c)
                                                            : 0);
              for (const auto& d : qkit::box_between(c, top)) {
                if (qkit::weight(d) > dmax) continue;
                long e = 0;
                for (int k = 1; k <= mcomp; ++k) e += -2L * k * (d[k - 1] - c[k - 1]);
                e += static_cast<long>(n) * (qkit::weight(d) - qkit::weight(c));
                lhs += num::ipow(q, e) * v_func(qJ, q, d, b) * v_func(y, q, d, c) /
                       (v_func(z, q, d, b) * v_func(y / z * qnJ, q, d, mm));
              }
              ExactScalar rhs = mu * v_func(qJ, q, c, b) * v_func(qn / z, q, b, mm) /
                                (v_func(y * qn / z, q, b, mm) * v_func(z / y, q, c, b) *
                                 v_func(qnJ / z, q, c, mm));
              if (perturb && tuple == perturb->row) lhs += perturb->delta;
              if (!(lhs == rhs))
                return tuple_witness(tuple,
                                     qkit::to_string(mm) + qkit::to_string(b) + qkit::to_string(c),
                                     lhs, rhs);
              ++tuple;
            }
        return std::nullopt;
      });
  res.params["n"] = std::to_string(n);
  res.params["J"] = std::to_string(J);
  res.params["cap"] = std::to_string(cap);
  return res;
}

CheckResult verify_sum2(int m, int cap, const SamplePlan& plan, const Perturb* perturb) {
  std::ostringstream id;
  id << "sum2 m=" << m << " cap=" << cap;
  auto res = rmat::check_at_points(
      id.str(), {"q", "x", "xp", "y", "yp"}, plan,
      [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &x = pt.get("x"), &xp = pt.get("xp"), &y = pt.get("y"),
                   &yp = pt.get("yp");
        long tuple = 0;
        for (const auto& a : qkit::component_box(m, cap))
          for (const auto& b : qkit::box_between(a, qkit::add(a, MultiIndex(m, cap))))
            for (const auto& c : qkit::box_between(a, qkit::add(a, MultiIndex(m, cap)))) {
              ExactScalar sum(0);
              for (const auto& mm : qkit::box_between(a, qkit::cwise_min(b, c)))
                sum += v_func(x / yp, q, mm, a) * v_func(yp / xp, q, b, mm) *
                       v_func(y / x, q, c, mm) / v_func(y / xp, q, c, mm);
              ExactScalar lhs = v_func(y / yp, q, c, b) / v_func(y / yp, q, c, a) * sum;
              ExactScalar rhs = v_func(x / xp, q, b, a) * v_func(y / x, q, c, b) /
                                v_func(y / xp, q, c, a);
              if (perturb && tuple == perturb->row) lhs += perturb->delta;
              if (!(lhs == rhs))
                return tuple_witness(tuple,
                                     qkit::to_string(a) + qkit::to_string(b) + qkit::to_string(c),
                                     lhs, rhs);
              ++tuple;
            }
        return std::nullopt;
      });
  res.params["m"] = std::to_string(m);
  res.params["cap"] = std::to_string(cap);
  return res;
}

CheckResult verify_sum2_from_star_star(int m, int cap, const SamplePlan& plan) {
  std::ostringstream id;
  id << "sum2-from-star-star m=" << m << " cap=" << cap;
  auto res = rmat::check_at_points(
      id.str(), {"q", "x", "xp", "y", "yp"}, plan,
      [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &x = pt.get("x"), &xp = pt.get("xp"), &y = pt.get("y"),
                   &yp = pt.get("yp");
        // Map a sum2 tuple (a,b,c), a <= b <= c, onto the star-star tuple
        // (A,B,C,D) = (c, c, b, a); the LHS sum collapses to the single term
        // M = A and the remaining instance is exactly the sum2 relation.
        long tuple = 0;
        for (const auto& a : qkit::component_box(m, cap))
          for (const auto& b : qkit::box_between(a, qkit::add(a, MultiIndex(m, cap))))
            for (const auto& c : qkit::box_between(b, qkit::add(b, MultiIndex(m, cap)))) {
              const MultiIndex &A = c, &B = c, &C = b, &D = a;
              ExactScalar lhs = v_func(y / yp, q, B, D) / v_func(y / yp, q, A, C) *
                                (v_func(x / yp, q, A, A) * v_func(yp / xp, q, A, B) *
                                 v_func(y / x, q, A, C) / v_func(y / xp, q, A, D));
              ExactScalar rhs_sum(0);
              for (const auto& mm : qkit::box_between(D, qkit::cwise_min(B, C)))
                rhs_sum += v_func(x / yp, q, mm, D) * v_func(yp / xp, q, C, mm) *
                           v_func(y / x, q, B, mm) / v_func(y / xp, q, A, mm);
              ExactScalar rhs = v_func(x / xp, q, A, B) / v_func(x / xp, q, C, D) * rhs_sum;
              if (!(lhs == rhs))
                return tuple_witness(tuple,
                                     qkit::to_string(a) + qkit::to_string(b) + qkit::to_string(c),
                                     lhs, rhs);
              ++tuple;
            }
        return std::nullopt;
      });
  res.params["m"] = std::to_string(m);
  return res;
}

CheckResult verify_orthogonality(int m, int cap, const SamplePlan& plan, const Perturb* perturb) {
  std::ostringstream id;
  id << "orthogonality m=" << m << " cap=" << cap;
  auto res = rmat::check_at_points(
      id.str(), {"q", "x", "y"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &x = pt.get("x"), &y = pt.get("y");
        long tuple = 0;
        for (const auto& b : qkit::component_box(m, cap))
          for (const auto& a : qkit::box_between(b, qkit::add(b, MultiIndex(m, cap)))) {
            ExactScalar lhs(0);
            for (const auto& mm : qkit::box_between(b, a))
              lhs += num::ipow(x, qkit::weight(mm) - qkit::weight(b)) *
                     num::ipow(y, qkit::weight(mm) - qkit::weight(a)) * v_func(x, q, a, mm) *
                     v_func(y, q, mm, b);
            ExactScalar rhs = v_func(x * y, q, a, b);
            if (perturb && tuple == perturb->row) lhs += perturb->delta;
            if (!(lhs == rhs))
              return tuple_witness(tuple, qkit::to_string(a) + qkit::to_string(b), lhs, rhs);
            ++tuple;
          }
        return std::nullopt;
      });
  res.params["m"] = std::to_string(m);
  res.params["cap"] = std::to_string(cap);
  return res;
}

CheckResult verify_qbinomial_theorem(int nmax, const SamplePlan& plan) {
  auto res = rmat::check_at_points(
      "q-binomial-theorem", {"q", "z"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &z = pt.get("z");
        for (int n = 0; n <= nmax; ++n) {
          ExactScalar qmn = num::ipow(q, -static_cast<long>(n));
          ExactScalar lhs(0);
          for (int k = 0; k <= n; ++k)
            lhs += qkit::qpochhammer(qmn, q, static_cast<long>(k)) /
                   qkit::qpochhammer(q, q, static_cast<long>(k)) * num::ipow(z, k);
          ExactScalar rhs = qkit::qpochhammer(z * qmn, q, static_cast<long>(n));
          if (!(lhs == rhs))
            return tuple_witness(n, "n=" + std::to_string(n), lhs, rhs);
        }
        return std::nullopt;
      });
  res.params["nmax"] = std::to_string(nmax);
  return res;
}

CheckResult verify_qvandermonde(int nmax, const SamplePlan& plan) {
  auto res = rmat::check_at_points(
      "q-vandermonde", {"q", "a", "c"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &a = pt.get("a"), &c = pt.get("c");
        for (int n = 0; n <= nmax; ++n) {
          ExactScalar qmn = num::ipow(q, -static_cast<long>(n));
          ExactScalar lhs(0);
          for (int k = 0; k <= n; ++k)
            lhs += qkit::qpochhammer(a, q, k) * qkit::qpochhammer(qmn, q, k) /
                   (qkit::qpochhammer(c, q, k) * qkit::qpochhammer(q, q, k)) * num::ipow(q, k);
          ExactScalar rhs = qkit::qpochhammer(c / a, q, n) / qkit::qpochhammer(c, q, n) *
                            num::ipow(a, n);
          if (!(lhs == rhs)) return tuple_witness(n, "n=" + std::to_string(n), lhs, rhs);
        }
        return std::nullopt;
      });
  res.params["nmax"] = std::to_string(nmax);
  return res;
}

CheckResult verify_pfaff_saalschutz(int nmax, const SamplePlan& plan) {
  auto res = rmat::check_at_points(
      "pfaff-saalschutz", {"q", "a", "b", "c"}, plan,
      [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &a = pt.get("a"), &b = pt.get("b"), &c = pt.get("c");
        for (int n = 0; n <= nmax; ++n) {
          ExactScalar qmn = num::ipow(q, -static_cast<long>(n));
          ExactScalar d = a * b / c * num::ipow(q, 1 - static_cast<long>(n));
          ExactScalar lhs(0);
          for (int k = 0; k <= n; ++k)
            lhs += qkit::qpochhammer(a, q, k) * qkit::qpochhammer(b, q, k) *
                   qkit::qpochhammer(qmn, q, k) /
                   (qkit::qpochhammer(c, q, k) * qkit::qpochhammer(d, q, k) *
                    qkit::qpochhammer(q, q, k)) *
                   num::ipow(q, k);
          ExactScalar rhs = qkit::qpochhammer(c / a, q, n) * qkit::qpochhammer(c / b, q, n) /
                            (qkit::qpochhammer(c, q, n) * qkit::qpochhammer(c / (a * b), q, n));
          if (!(lhs == rhs)) return tuple_witness(n, "n=" + std::to_string(n), lhs, rhs);
        }
        return std::nullopt;
      });
  res.params["nmax"] = std::to_string(nmax);
  return res;
}

CheckResult verify_pfaff_saalschutz_mdim2(int m, int nmax, const SamplePlan& plan) {
  std::ostringstream id;
  id << "pfaff-saalschutz-mdim2 m=" << m;
  std::vector<std::string> symbols = {"q", "b", "c"};
  for (int i = 0; i < m; ++i) symbols.push_back("z" + std::to_string(i));
  auto res = rmat::check_at_points(
      id.str(), symbols, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &b = pt.get("b"), &c = pt.get("c");
        std::vector<ExactScalar> z;
        ExactScalar zprod(1);
        for (int i = 0; i < m; ++i) {
          z.push_back(pt.get("z" + std::to_string(i)));
          zprod *= z.back();
        }
        for (int n = 0; n <= nmax; ++n) {
          ExactScalar qmn = num::ipow(q, -static_cast<long>(n));
          ExactScalar dden = b / c * num::ipow(q, 1 - static_cast<long>(n)) * zprod;
          ExactScalar lhs(0);
          for (const auto& k : qkit::component_box(m, n)) {
            long kw = qkit::weight(k);
            if (kw > n) continue;
            ExactScalar term = num::ipow(q, kw) * qkit::qpochhammer(qmn, q, kw) *
                               qkit::qpochhammer(b, q, kw) /
                               (qkit::qpochhammer(c, q, kw) * qkit::qpochhammer(dden, q, kw));
            long prefix = 0;
            for (int j = 0; j < m; ++j) {
              term *= num::ipow(z[j], prefix) * qkit::qpochhammer(z[j], q, k[j]) /
                      qkit::qpochhammer(q, q, k[j]);
              prefix += k[j];
            }
            lhs += term;
          }
          ExactScalar rhs = qkit::qpochhammer(c / zprod, q, n) * qkit::qpochhammer(c / b, q, n) /
                            (qkit::qpochhammer(c, q, n) *
                             qkit::qpochhammer(c / b / zprod, q, n));
          if (!(lhs == rhs)) return tuple_witness(n, "n=" + std::to_string(n), lhs, rhs);
        }
        return std::nullopt;
      });
  res.params["m"] = std::to_string(m);
  res.params["nmax"] = std::to_string(nmax);
  return res;
}

CheckResult verify_pfaff_saalschutz_mdim1(int m, int cap, const SamplePlan& plan) {
  std::ostringstream id;
  id << "pfaff-saalschutz-mdim1 m=" << m;
  auto res = rmat::check_at_points(
      id.str(), {"q", "a", "b", "c"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &a = pt.get("a"), &b = pt.get("b"), &c = pt.get("c");
        long tuple = 0;
        for (const auto& nn : qkit::component_box(m, cap)) {
          long nw = qkit::weight(nn);
          ExactScalar dden = a * b / c * num::ipow(q, 1 - nw);
          ExactScalar lhs(0);
          MultiIndex zero(m, 0);
          for (const auto& k : qkit::box_between(zero, nn)) {
            long kw = qkit::weight(k);
            ExactScalar term = num::ipow(q, kw - qkit::qform_Q(k, nn)) *
                               qkit::qpochhammer(a, q, kw) * qkit::qpochhammer(b, q, kw) /
                               (qkit::qpochhammer(c, q, kw) * qkit::qpochhammer(dden, q, kw));
            for (int i = 0; i < m; ++i)
              term *= qkit::qpochhammer(num::ipow(q, -static_cast<long>(nn[i])), q, k[i]) /
                      qkit::qpochhammer(q, q, k[i]);
            lhs += term;
          }
          ExactScalar rhs = qkit::qpochhammer(c / a, q, nw) * qkit::qpochhammer(c / b, q, nw) /
                            (qkit::qpochhammer(c, q, nw) *
                             qkit::qpochhammer(c / (a * b), q, nw));
          if (!(lhs == rhs)) return tuple_witness(tuple, qkit::to_string(nn), lhs, rhs);
          ++tuple;
        }
        return std::nullopt;
      });
  res.params["m"] = std::to_string(m);
  res.params["cap"] = std::to_string(cap);
  return res;
}

CheckResult verify_composition_sum(int m, int lmax, const SamplePlan& plan,
                                   const Perturb* perturb) {
  std::ostringstream id;
  id << "composition-sum m=" << m;
  std::vector<std::string> symbols = {"q"};
  for (int i = 0; i < m; ++i) symbols.push_back("z" + std::to_string(i));
  auto res = rmat::check_at_points(
      id.str(), symbols, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto& q = pt.get("q");
        std::vector<ExactScalar> z;
        ExactScalar zprod(1);
        for (int i = 0; i < m; ++i) {
          z.push_back(pt.get("z" + std::to_string(i)));
          zprod *= z.back();
        }
        for (int l = 0; l <= lmax; ++l) {
          ExactScalar lhs(0);
          for (const auto& k : qkit::component_box(m, l)) {
            if (qkit::weight(k) != l) continue;
            ExactScalar term(1);
            long prefix = 0;
            for (int j = 0; j < m; ++j) {
              term *= num::ipow(z[j], prefix) * qkit::qpochhammer(z[j], q, k[j]) /
                      qkit::qpochhammer(q, q, k[j]);
              prefix += k[j];
            }
            lhs += term;
          }
          if (perturb && l == perturb->row) lhs += perturb->delta;
          ExactScalar rhs = qkit::qpochhammer(zprod, q, l) / qkit::qpochhammer(q, q, l);
          if (!(lhs == rhs)) return tuple_witness(l, "l=" + std::to_string(l), lhs, rhs);
        }
        return std::nullopt;
      });
  res.params["m"] = std::to_string(m);
  return res;
}

report::RunReport verify_qseries(int nmax, int mmax, int cap, const SamplePlan& plan) {
  report::RunReport rep;
  rep.suite = "qseries";
  rep.add(verify_qbinomial_theorem(nmax, plan));
  rep.add(verify_qvandermonde(nmax, plan));
  rep.add(verify_pfaff_saalschutz(nmax, plan));
  for (int m = 1; m <= mmax; ++m) {
    rep.add(verify_pfaff_saalschutz_mdim2(m, std::min(nmax, 3), plan));
    rep.add(verify_pfaff_saalschutz_mdim1(m, std::min(cap, 2), plan));
    rep.add(verify_composition_sum(m, std::min(cap, 3), plan));
  }
  return rep;
}

}  // namespace ident
}  // namespace qreflect
