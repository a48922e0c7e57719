#include "qreflect/rmat.hpp"

#include <sstream>

namespace qreflect {
namespace rmat {

using num::Jet;
using num::ParamPoint;
using report::CheckResult;
using report::CheckStatus;
using report::RunReport;
using report::Witness;

namespace {

std::string point_string(const ParamPoint& pt) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : pt.bindings()) {
    if (!first) os << ", ";
    os << k << "=" << v.str();
    first = false;
  }
  os << "}";
  return os.str();
}

std::map<MultiIndex, std::vector<long>> sector_groups(const TensorBasis& space) {
  std::map<MultiIndex, std::vector<long>> g;
  for (long o = 0; o < space.dim(); ++o) g[space.sector_of(o)].push_back(o);
  return g;
}

Witness entry_witness(const TensorBasis& space, long r, long c, const ExactScalar& lhs,
                      const ExactScalar& rhs) {
  Witness w;
  w.row = r;
  w.col = c;
  w.row_label = space.label(r);
  w.col_label = space.label(c);
  w.lhs = lhs.fraction_string();
  w.rhs = rhs.fraction_string();
  return w;
}

std::optional<Witness> expect_scalar_multiple_of_identity(const EOp& a, const ExactScalar& g) {
  const TensorBasis& space = a.space();
  for (long r = 0; r < space.dim(); ++r)
    for (long c = 0; c < space.dim(); ++c) {
      ExactScalar want = (r == c) ? g : ExactScalar(0);
      ExactScalar got = a.at(r, c);
      if (!(got == want)) return entry_witness(space, r, c, got, want);
    }
  return std::nullopt;
}

// Value part of a jet-built operator; used where the closed formula has a
// removable singularity at the evaluation point.
EOp value_part(const BlockOperator<Jet>& a) {
  EOp out(a.space());
  for (const auto& [r, row] : a.rows())
    for (const auto& [c, v] : row) out.set(r, c, v.value());
  return out;
}

}  // namespace

void apply_perturb(EOp& op, const Perturb* p) {
  if (!p) return;
  op.add_to(p->row, p->col, p->delta);
}

CheckResult check_at_points(
    const std::string& id, const std::vector<std::string>& symbols, const SamplePlan& plan,
    const std::function<std::optional<Witness>(const ParamPoint&)>& body) {
  CheckResult res;
  res.id = id;
  int tried = 0;
  for (int p = 0; p < plan.points; ++p) {
    bool evaluated = false;
    for (int att = 0; att < plan.max_attempts && !evaluated; ++att) {
      auto pt = num::sample_point(symbols, plan.seed + 1000003ULL * p + att, plan.bound);
      ++tried;
      try {
        auto w = body(pt);
        evaluated = true;
        if (w) {
          w->detail += (w->detail.empty() ? "" : "; ") + std::string("point ") + point_string(pt);
          res.status = CheckStatus::Fail;
          res.witness = std::move(w);
          res.points_tried = tried;
          return res;
        }
      } catch (const PoleEncountered&) {
      }
    }
    if (!evaluated) {
      res.status = CheckStatus::PoleResampled;
      res.points_tried = tried;
      return res;
    }
  }
  res.status = CheckStatus::Pass;
  res.points_tried = tried;
  return res;
}

CheckResult verify_ybe(int n, int I, int J, int K, const SamplePlan& plan,
                       const Perturb* perturb) {
  std::ostringstream id;
  id << "ybe n=" << n << " (I,J,K)=(" << I << "," << J << "," << K << ")";
  auto res = check_at_points(
      id.str(), {"q", "u", "v", "w"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &u = pt.get("u"), &v = pt.get("v"), &w = pt.get("w");
        EOp rij = build_S<ExactScalar>({n, I, J}, u / v, q);
        apply_perturb(rij, perturb);
        EOp rik = build_S<ExactScalar>({n, I, K}, u / w, q);
        EOp rjk = build_S<ExactScalar>({n, J, K}, v / w, q);
        TensorBasis full({BasisSpace(n, I), BasisSpace(n, J), BasisSpace(n, K)});
        EOp r12 = embed_pair(rij, full, 0, 1);
        EOp r13 = embed_pair(rik, full, 0, 2);
        EOp r23 = embed_pair(rjk, full, 1, 2);
        return (r12 * (r13 * r23)).first_difference(r23 * (r13 * r12));
      });
  res.params["n"] = std::to_string(n);
  res.params["I"] = std::to_string(I);
  res.params["J"] = std::to_string(J);
  res.params["K"] = std::to_string(K);
  return res;
}

CheckResult verify_unitarity(int n, int I, int J, const SamplePlan& plan, const Perturb* perturb) {
  std::ostringstream id;
  id << "unitarity n=" << n << " I=" << I << " J=" << J;
  auto res = check_at_points(
      id.str(), {"q", "u"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &u = pt.get("u");
        EOp a = build_S<ExactScalar>({n, I, J}, u, q);
        apply_perturb(a, perturb);
        EOp b = build_S<ExactScalar>({n, J, I}, num::inverse(u), q).swap_slots();
        return expect_scalar_multiple_of_identity(a * b, ExactScalar(1));
      });
  res.params["n"] = std::to_string(n);
  res.params["I"] = std::to_string(I);
  res.params["J"] = std::to_string(J);
  return res;
}

CheckResult verify_crossing(int n, int I, int J, const SamplePlan& plan, const Perturb* perturb) {
  std::ostringstream id;
  id << "crossing n=" << n << " I=" << I << " J=" << J;
  auto res = check_at_points(
      id.str(), {"q", "u"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &u = pt.get("u");
        ModelConfig cfg{n, I, J};
        EOp s = build_S<ExactScalar>(cfg, u, q);
        apply_perturb(s, perturb);
        ExactScalar varg = num::inverse(num::ipow(q, 2 * n) * u);
        EOp r21 = build_S<ExactScalar>({n, J, I}, varg, q).swap_slots();
        auto md = m_diagonal<ExactScalar>(n, I, q);
        EOp lhs = s.partial_transpose(0).conjugate_diag(md, 0) * r21.partial_transpose(0);
        return expect_scalar_multiple_of_identity(lhs, crossing_g(cfg, u, q));
      });
  res.params["n"] = std::to_string(n);
  res.params["I"] = std::to_string(I);
  res.params["J"] = std::to_string(J);
  return res;
}

CheckResult verify_m_commutation(int n, int I, int J, const SamplePlan& plan) {
  std::ostringstream id;
  id << "m-commutation n=" << n << " I=" << I << " J=" << J;
  auto res = check_at_points(
      id.str(), {"q", "u"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &u = pt.get("u");
        EOp s = build_S<ExactScalar>({n, I, J}, u, q);
        auto mi = m_diagonal<ExactScalar>(n, I, q);
        auto mj = m_diagonal<ExactScalar>(n, J, q);
        // [M (x) M, S] = 0  <=>  (M x M) S (M x M)^{-1} = S entrywise.
        EOp conj = s.conjugate_diag(mi, 0).conjugate_diag(mj, 1);
        return conj.first_difference(s);
      });
  res.params["n"] = std::to_string(n);
  return res;
}

CheckResult verify_regularity(int n, int I, const SamplePlan& plan) {
  std::ostringstream id;
  id << "regularity n=" << n << " I=" << I;
  auto res = check_at_points(
      id.str(), {"q"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        Jet u(ExactScalar(1), ExactScalar(1));  // u = 1 + eps: the formula has
                                                // removable 0/0 terms at u = 1
        Jet q(pt.get("q"));
        EOp s1 = value_part(build_S<Jet>({n, I, I}, u, q));
        return s1.first_difference(EOp::permutation(s1.space()));
      });
  res.params["n"] = std::to_string(n);
  res.params["I"] = std::to_string(I);
  return res;
}

CheckResult verify_stochasticity(int n, int I, int J, const SamplePlan& plan) {
  std::ostringstream id;
  id << "stochasticity n=" << n << " I=" << I << " J=" << J;
  auto res = check_at_points(
      id.str(), {"q", "u"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        EOp s = build_S<ExactScalar>({n, I, J}, pt.get("u"), pt.get("q"));
        auto sums = s.column_sums();
        for (long c = 0; c < s.dim(); ++c)
          if (!sums[c].is_one()) {
            Witness w = entry_witness(s.space(), -1, c, sums[c], ExactScalar(1));
            w.detail = "column sum";
            return w;
          }
        return std::nullopt;
      });
  res.params["n"] = std::to_string(n);
  return res;
}

CheckResult verify_rtilde_agreement(int n, int I, int J, const SamplePlan& plan) {
  std::ostringstream id;
  id << "rtilde-methods n=" << n << " I=" << I << " J=" << J;
  auto res = check_at_points(
      id.str(), {"q", "u"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        ModelConfig cfg{n, I, J};
        const auto &q = pt.get("q"), &u = pt.get("u");
        EOp a = build_Rtilde(cfg, u, q, RtildeMethod::TransposeInverse);
        EOp b = build_Rtilde(cfg, u, q, RtildeMethod::Crossing);
        return a.first_difference(b);
      });
  res.params["n"] = std::to_string(n);
  return res;
}

CheckResult verify_almost_ybe(int n, int I, const SamplePlan& plan) {
  std::ostringstream id;
  id << "modified-ybe n=" << n << " I=" << I;
  auto res = check_at_points(
      id.str(), {"q", "u", "v"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        ModelConfig cfg{n, I, I};
        const auto &q = pt.get("q"), &u = pt.get("u"), &v = pt.get("v");
        BasisSpace b(n, I);
        TensorBasis full({b, b, b});
        EOp r12 = embed_pair(build_S<ExactScalar>(cfg, u, q), full, 0, 1);
        EOp r23 = embed_pair(build_S<ExactScalar>(cfg, v, q), full, 1, 2);
        EOp t23 = embed_pair(build_Rtilde(cfg, v, q), full, 1, 2);
        EOp t13 = embed_pair(build_Rtilde(cfg, u * v, q), full, 0, 2);
        EOp t12 = embed_pair(build_Rtilde(cfg, u, q), full, 0, 1);
        if (auto w = (r12 * (t23 * t13)).first_difference(t13 * (t23 * r12))) {
          w->detail = "form R12 Rt23 Rt13";
          return w;
        }
        if (auto w = (t13 * (t12 * r23)).first_difference(r23 * (t12 * t13))) {
          w->detail = "form Rt13 Rt12 R23";
          return w;
        }
        return std::nullopt;
      });
  res.params["n"] = std::to_string(n);
  return res;
}

CheckResult verify_symmetry(const std::string& which, int n, int I, int J,
                            const SamplePlan& plan, const Perturb* perturb) {
  std::ostringstream id;
  id << "symmetry-" << which << " n=" << n << " I=" << I << " J=" << J;
  std::vector<std::string> symbols =
      (which == "first" || which == "second" || which == "third") ? std::vector<std::string>{"q", "x"}
                                                                  : std::vector<std::string>{"q", "u"};
  auto res = check_at_points(
      id.str(), symbols, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto& q = pt.get("q");
        BasisSpace bi(n, I), bj(n, J);
        TensorBasis sp = tensor2(bi, bj);
        auto groups = sector_groups(sp);

        auto for_all_pairs = [&](const std::function<std::optional<Witness>(
                                     const MultiIndex&, const MultiIndex&, const MultiIndex&,
                                     const MultiIndex&, long, long)>& f)
            -> std::optional<Witness> {
          for (const auto& [sec, ords] : groups)
            for (long r : ords)
              for (long c : ords) {
                auto rs = sp.states(r);
                auto cs = sp.states(c);
                if (auto w = f(rs[0], rs[1], cs[0], cs[1], r, c)) return w;
              }
          return std::nullopt;
        };

        if (which == "first" || which == "second" || which == "third") {
          const auto& x = pt.get("x");
          EOp a = build_Rbar<ExactScalar>({n, I, J}, x, q);
          apply_perturb(a, perturb);
          if (which == "first") {
            EOp b = build_Rbar<ExactScalar>({n, J, I}, x, q);
            const TensorBasis& spb = b.space();
            return for_all_pairs([&](const MultiIndex& i, const MultiIndex& j,
                                     const MultiIndex& ip, const MultiIndex& jp, long r,
                                     long c) -> std::optional<Witness> {
              long rb = spb.pack({bj.ordinal(qkit::reverse_tau(j)), bi.ordinal(qkit::reverse_tau(i))});
              long cb = spb.pack(
                  {bj.ordinal(qkit::reverse_tau(jp)), bi.ordinal(qkit::reverse_tau(ip))});
              ExactScalar lhs = a.at(r, c), rhs = b.at(rb, cb);
              if (lhs == rhs) return std::nullopt;
              return entry_witness(sp, r, c, lhs, rhs);
            });
          }
          if (which == "second") {
            // The exponent pairs (a,b) with +(I-|a|)(J-|b|); the standalone
            // bracket operation keeps the paper's minus convention.
            auto gplus = [&](const MultiIndex& av, const MultiIndex& bv) {
              return qkit::dot(av, bv) +
                     (I - qkit::weight(av)) * (J - qkit::weight(bv));
            };
            return for_all_pairs([&](const MultiIndex& i, const MultiIndex& j,
                                     const MultiIndex& ip, const MultiIndex& jp, long r,
                                     long c) -> std::optional<Witness> {
              MultiIndex zero(i.size(), 0);
              ExactScalar qi = num::ipow(q, -static_cast<long>(I));
              ExactScalar qj = num::ipow(q, -static_cast<long>(J));
              ExactScalar lhs = a.at(r, c);
              long rb = sp.pack({bi.ordinal(qkit::reverse_tau(ip)), bj.ordinal(qkit::reverse_tau(jp))});
              long cb = sp.pack({bi.ordinal(qkit::reverse_tau(i)), bj.ordinal(qkit::reverse_tau(j))});
              ExactScalar rhs = num::ipow(q, gplus(ip, jp) - gplus(i, j)) *
                                qkit::v_func(qi, q, i, zero) * qkit::v_func(qj, q, j, zero) /
                                (qkit::v_func(qi, q, ip, zero) * qkit::v_func(qj, q, jp, zero)) *
                                a.at(rb, cb);
              if (lhs == rhs) return std::nullopt;
              return entry_witness(sp, r, c, lhs, rhs);
            });
          }
          // third
          return for_all_pairs([&](const MultiIndex& i, const MultiIndex& j, const MultiIndex& ip,
                                   const MultiIndex& jp, long r, long c) -> std::optional<Witness> {
            MultiIndex si = qkit::rotate_sigma(i, I), sip = qkit::rotate_sigma(ip, I);
            MultiIndex sj = qkit::rotate_sigma(j, J), sjp = qkit::rotate_sigma(jp, J);
            long e = (qkit::weight(i) + qkit::weight(si)) - (qkit::weight(ip) + qkit::weight(sip));
            long rb = sp.pack({bi.ordinal(si), bj.ordinal(sj)});
            long cb = sp.pack({bi.ordinal(sip), bj.ordinal(sjp)});
            ExactScalar lhs = a.at(r, c);
            ExactScalar rhs = num::ipow(x, e) * a.at(rb, cb);
            if (lhs == rhs) return std::nullopt;
            return entry_witness(sp, r, c, lhs, rhs);
          });
        }

        const auto& u = pt.get("u");
        EOp a = build_S<ExactScalar>({n, I, J}, u, q);
        apply_perturb(a, perturb);
        if (which == "tau-sigma") {
          EOp b = build_S<ExactScalar>({n, J, I}, u, q);
          const TensorBasis& spb = b.space();
          return for_all_pairs([&](const MultiIndex& i, const MultiIndex& j, const MultiIndex& ip,
                                   const MultiIndex& jp, long r, long c) -> std::optional<Witness> {
            auto ts = [&](const MultiIndex& v, int bound) {
              return qkit::reverse_tau(qkit::rotate_sigma(v, bound));
            };
            long rb = spb.pack({bj.ordinal(ts(j, J)), bi.ordinal(ts(i, I))});
            long cb = spb.pack({bj.ordinal(ts(jp, J)), bi.ordinal(ts(ip, I))});
            ExactScalar lhs = a.at(r, c), rhs = b.at(rb, cb);
            if (lhs == rhs) return std::nullopt;
            return entry_witness(sp, r, c, lhs, rhs);
          });
        }
        if (which == "square") {
          if (I != J) throw ConfigError("square symmetry requires I == J");
          return for_all_pairs([&](const MultiIndex& i, const MultiIndex& j, const MultiIndex& ip,
                                   const MultiIndex& jp, long r, long c) -> std::optional<Witness> {
            long rb = sp.pack({bi.ordinal(qkit::reverse_tau(j)), bj.ordinal(qkit::reverse_tau(i))});
            long cb = sp.pack({bi.ordinal(qkit::reverse_tau(jp)), bj.ordinal(qkit::reverse_tau(ip))});
            ExactScalar lhs = a.at(r, c);
            ExactScalar rhs = num::ipow(u, qkit::weight(ip) - qkit::weight(i)) *
                              num::ipow(q, 2L * J * (qkit::weight(jp) - qkit::weight(i))) *
                              a.at(rb, cb);
            if (lhs == rhs) return std::nullopt;
            return entry_witness(sp, r, c, lhs, rhs);
          });
        }
        throw ConfigError("unknown symmetry: " + which);
      });
  res.params["n"] = std::to_string(n);
  res.params["I"] = std::to_string(I);
  res.params["J"] = std::to_string(J);
  return res;
}

RunReport verify_symmetries(int n, int I, int J, const SamplePlan& plan) {
  RunReport rep;
  rep.suite = "symmetries";
  rep.add(verify_symmetry("first", n, I, J, plan));
  rep.add(verify_symmetry("second", n, I, J, plan));
  rep.add(verify_symmetry("third", n, I, J, plan));
  rep.add(verify_symmetry("tau-sigma", n, I, J, plan));
  if (I == J) {
    rep.add(verify_symmetry("square", n, I, J, plan));
    rep.add(verify_regularity(n, I, plan));
  }
  return rep;
}

CheckResult verify_nondiff_inverse(int n, int sector_cap, const SamplePlan& plan) {
  std::ostringstream id;
  id << "nondiff-inverse n=" << n << " cap=" << sector_cap;
  auto res = check_at_points(
      id.str(), {"q", "x", "y"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &x = pt.get("x"), &y = pt.get("y");
        ExactScalar q2 = q * q;
        EOp a = build_S_nondiff(n, x, y, q2, sector_cap);
        EOp b = build_S_nondiff(n, y, x, q2, sector_cap).swap_slots();
        const TensorBasis sp = a.space();
        auto ok = [&](long c) { return qkit::weight(sp.sector_of(c)) <= sector_cap; };
        return (a * b).first_difference(EOp::identity(sp), ok);
      });
  res.params["n"] = std::to_string(n);
  res.params["cap"] = std::to_string(sector_cap);
  return res;
}

CheckResult verify_nondiff_specialization(int n, int I, int J, const SamplePlan& plan) {
  std::ostringstream id;
  id << "nondiff-specialization n=" << n << " I=" << I << " J=" << J;
  auto res = check_at_points(
      id.str(), {"q"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto& q = pt.get("q");
        // u = q^{J-I} is a removable singularity of the double-Phi form.  The
        // non-difference entries are evaluated per index pair: the degenerate
        // point only makes sense inside the finite module, and columns with
        // |j'| > J are singular for the truncated operator as a whole.
        Jet uj(num::ipow(q, J - I), ExactScalar(1));
        EOp s = value_part(build_S<Jet>({n, I, J}, uj, Jet(q)));
        ExactScalar q2 = q * q;
        ExactScalar xs = num::ipow(q, -2 * I), ys = num::ipow(q, -2 * J);
        const TensorBasis& sp = s.space();
        for (long r = 0; r < sp.dim(); ++r) {
          auto rs = sp.states(r);
          for (long c = 0; c < sp.dim(); ++c) {
            auto cs = sp.states(c);
            ExactScalar expect(0);
            if (qkit::add(rs[0], rs[1]) == qkit::add(cs[0], cs[1]))
              expect = qkit::phi(rs[0], cs[1], xs, ys, q2);
            if (!(s.at(r, c) == expect))
              return entry_witness(sp, r, c, s.at(r, c), expect);
          }
        }
        return std::nullopt;
      });
  res.params["n"] = std::to_string(n);
  return res;
}

CheckResult verify_nondiff_ybe(int n, int sector_cap, const SamplePlan& plan) {
  std::ostringstream id;
  id << "nondiff-ybe n=" << n << " cap=" << sector_cap;
  auto res = check_at_points(
      id.str(), {"q", "x", "y", "z"}, plan, [&](const ParamPoint& pt) -> std::optional<Witness> {
        const auto &q = pt.get("q"), &x = pt.get("x"), &y = pt.get("y"), &z = pt.get("z");
        ExactScalar q2 = q * q;
        EOp sxy = build_S_nondiff(n, x, y, q2, sector_cap);
        EOp sxz = build_S_nondiff(n, x, z, q2, sector_cap);
        EOp syz = build_S_nondiff(n, y, z, q2, sector_cap);
        const BasisSpace& b = sxy.space().factor(0);
        TensorBasis full({b, b, b});
        EOp r12 = embed_pair(sxy, full, 0, 1);
        EOp r13 = embed_pair(sxz, full, 0, 2);
        EOp r23 = embed_pair(syz, full, 1, 2);
        auto ok = [&](long c) { return qkit::weight(full.sector_of(c)) <= sector_cap; };
        return (r12 * (r13 * r23)).first_difference(r23 * (r13 * r12), ok);
      });
  res.params["n"] = std::to_string(n);
  res.params["cap"] = std::to_string(sector_cap);
  return res;
}

}  // namespace rmat
}  // namespace qreflect
