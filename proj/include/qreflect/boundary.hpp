#pragma once

#include <functional>
#include <string>

#include "qreflect/rmat.hpp"

namespace qreflect {
namespace boundary {

using linalg::DenseMatrix;
using num::ExactScalar;
using qkit::BasisSpace;
using qkit::MultiIndex;
using rmat::Perturb;
using rmat::SamplePlan;

enum class KFamily { RightUpper, RightLower, LeftUpper, LeftLower };

const char* family_name(KFamily f);
KFamily family_from_name(const std::string& name);

// Closed-form boundary matrices on V_J^(n); w = y^2 is the squared spectral
// parameter, nu the free boundary parameter.
//   right-upper:  K_j^l    = Phi_{q^2}(j | l; w/(nu q^J), 1/(w nu q^J))
//   right-lower:  K_j^l    = Phi^_{q^2}(sl-sj | sl; 1/w^2, 1/(w nu q^J))
//   left-upper:   Kbar_j^l = Phi_{q^2}(l-j | l; w^2, w/(nu q^J))
//   left-lower:   Kbar_j^l = Phi^_{q^2}(sj | sl; 1/(w nu q^J), w/(nu q^J))
template <class S>
DenseMatrix<S> k_matrix(KFamily fam, int n, int J, const S& w, const S& nu, const S& q) {
  BasisSpace b(n, J);
  DenseMatrix<S> m(b.dim(), b.dim());
  S q2 = q * q;
  S qJ = num::ipow(q, static_cast<long>(J));
  for (long r = 0; r < b.dim(); ++r) {
    const MultiIndex& j = b.state(r);
    for (long c = 0; c < b.dim(); ++c) {
      const MultiIndex& l = b.state(c);
      switch (fam) {
        case KFamily::RightUpper:
          m(r, c) = qkit::phi(j, l, w / (nu * qJ), num::inverse(w * nu * qJ), q2);
          break;
        case KFamily::RightLower: {
          MultiIndex sj = qkit::rotate_sigma(j, J), sl = qkit::rotate_sigma(l, J);
          m(r, c) = qkit::phi_hat(qkit::sub(sl, sj), sl, num::inverse(w * w),
                                  num::inverse(w * nu * qJ), q2);
          break;
        }
        case KFamily::LeftUpper:
          m(r, c) = qkit::phi(qkit::sub(l, j), l, w * w, w / (nu * qJ), q2);
          break;
        case KFamily::LeftLower: {
          MultiIndex sj = qkit::rotate_sigma(j, J), sl = qkit::rotate_sigma(l, J);
          m(r, c) = qkit::phi_hat(sj, sl, num::inverse(w * nu * qJ), w / (nu * qJ), q2);
          break;
        }
      }
    }
  }
  return m;
}

// Dual-boundary matrix K~_J(x) = M^{-1} K_J(1/(q^{n/2} x)); the squared
// argument 1/(q^n u) keeps entries rational in u.  `fam` selects the right
// K family being dualized.
template <class S>
DenseMatrix<S> ktilde_matrix(int n, int J, const S& u, const S& nu, const S& q,
                             KFamily fam = KFamily::RightUpper) {
  S warg = num::inverse(num::ipow(q, static_cast<long>(n)) * u);
  DenseMatrix<S> k = k_matrix(fam, n, J, warg, nu, q);
  auto md = rmat::m_diagonal<S>(n, J, q);
  for (long r = 0; r < k.rows(); ++r)
    for (long c = 0; c < k.cols(); ++c) k(r, c) = k(r, c) / md[r];
  return k;
}

// lambda_J^(n)(x) of the trace-map comparison; carried in u = x^2.
template <class S>
S lambda_J(int n, int J, const S& u, const S& nu, const S& q) {
  S q2 = q * q;
  S x2inv = num::inverse(u);
  S x4inv = x2inv * x2inv;
  long m = n - 1;
  return qkit::qpochhammer(x4inv * num::ipow(q, 2 * J + 2), q2, m) *
         qkit::qpochhammer(nu * x2inv * num::ipow(q, 2 - J), q2, m) /
         (qkit::qpochhammer(x4inv * q2, q2, m) *
          qkit::qpochhammer(nu * x2inv * num::ipow(q, J + 2), q2, m));
}

// Spec domain type: a boundary matrix with its provenance.
struct BoundaryMatrix {
  BasisSpace space;
  DenseMatrix<ExactScalar> entries;
  std::string family;
  std::map<std::string, ExactScalar> params;
};

BoundaryMatrix build_K(int n, int J, const ExactScalar& w, const ExactScalar& nu,
                       const ExactScalar& q, KFamily fam);
BoundaryMatrix build_Ktilde(int n, int J, const ExactScalar& u, const ExactScalar& nu,
                            const ExactScalar& q, KFamily fam = KFamily::RightUpper);

enum class TwistDirection { Right, Bar };

// sigma-shift symmetry of the reflection equations: maps solutions to
// solutions with one free parameter mu.
BoundaryMatrix sigma_twist(const BoundaryMatrix& k, const ExactScalar& mu, TwistDirection dir);

// Kbar_J(y) = K_J(1/y) with tau-sigma-permuted indices: maps solutions of the
// right reflection equation to solutions of the Kbar equation.
BoundaryMatrix k_to_kbar(const BoundaryMatrix& k);

// Evaluation of a one-parameter boundary family at arbitrary squared spectral
// parameter; the trace maps need their input at 1/x.
using MatrixFamily = std::function<DenseMatrix<ExactScalar>(const ExactScalar& u)>;

// Kbar_1(x) = tr_0 [ K~_0(1/x) S_{J,J}(1/x^2) P_01 ]  (needs I = J).
DenseMatrix<ExactScalar> kbar_from_ktilde_trace(const MatrixFamily& ktilde, int n, int J,
                                                const ExactScalar& u, const ExactScalar& q);
// K~_1(x) = tr_0 [ Kbar_0(1/x) S~_{J,J}(x^2) P_01 ].
DenseMatrix<ExactScalar> ktilde_from_kbar_trace(const MatrixFamily& kbar, int n, int J,
                                                const ExactScalar& u, const ExactScalar& q);

// --- Verifiers --------------------------------------------------------------

// Reflection equation for two right-family matrices of spins I and J
// (shared nu), or the Kbar variant for left families.
report::CheckResult verify_reflection(int n, int I, int J, KFamily fam, const SamplePlan& plan,
                                      const Perturb* perturb = nullptr);
// Same equations for caller-supplied families (used for twist images and
// k_to_kbar images).  `bar` selects the Kbar-form equation.
report::CheckResult verify_reflection_families(const std::string& id, int n, int I, int J,
                                               bool bar,
                                               const std::function<MatrixFamily(
                                                   const num::ParamPoint&, int spin)>& make,
                                               const SamplePlan& plan,
                                               const Perturb* perturb = nullptr);
report::CheckResult verify_dual_reflection(int n, int I, int J, const SamplePlan& plan,
                                           const Perturb* perturb = nullptr);
// k_to_kbar image of a right family solves the Kbar equation.
report::CheckResult verify_k_to_kbar(int n, int I, int J, KFamily fam, const SamplePlan& plan);
// sigma_twist image of a right family still solves the reflection equation.
report::CheckResult verify_twist_invariance(int n, int I, int J, KFamily fam, int twists,
                                            const SamplePlan& plan);

// Linear recurrences pinning the right boundary (out-of-range entries are 0).
report::CheckResult verify_recurrences(int n, int J, KFamily fam, const SamplePlan& plan,
                                       const Perturb* perturb = nullptr);

// K(1) = I, stochastic columns, triangular support for all four families.
report::RunReport verify_k_invariants(int n, int J, const SamplePlan& plan);

// Trace-map checks: K~ -> Kbar -> K~ round trip, and trace-built Kbar equals
// lambda_J^(n) times the closed-form left-upper matrix.
report::CheckResult verify_trace_roundtrip(int n, int J, const SamplePlan& plan);
report::CheckResult verify_trace_lambda(int n, int J, const SamplePlan& plan);

// Non-difference boundary matrices on the sector-truncated module:
//   K(x,xbar)_j^l    = Phi_{q^2}(j | l; z2*x, z2*xbar)
//   Kbar(x,xbar)_j^l = Phi_{q^2}(l-j | l; xbar/x, xbar)
BoundaryMatrix build_K_nondiff(int n, int sector_cap, const ExactScalar& x,
                               const ExactScalar& xbar, const ExactScalar& z2,
                               const ExactScalar& q2);
BoundaryMatrix build_Kbar_nondiff(int n, int sector_cap, const ExactScalar& x,
                                  const ExactScalar& xbar, const ExactScalar& q2);
report::CheckResult verify_reflection_nondiff(int n, int sector_cap, const SamplePlan& plan,
                                              const Perturb* perturb = nullptr);
report::CheckResult verify_reflection2_nondiff(int n, int sector_cap, const SamplePlan& plan);
report::CheckResult verify_nondiff_k_stochastic(int n, int sector_cap, const SamplePlan& plan);

// Explicit reference matrices (n=2,J=1 and n=3,J=2) written out entry by
// entry, compared against the closed-form builders.
DenseMatrix<ExactScalar> golden_k(KFamily fam, int n, int J, const ExactScalar& w,
                                  const ExactScalar& nu, const ExactScalar& q);
report::CheckResult verify_golden(int n, int J, const SamplePlan& plan,
                                  const Perturb* perturb = nullptr);

}  // namespace boundary
}  // namespace qreflect
