#pragma once

#include "qreflect/rmat.hpp"

namespace qreflect {
namespace ident {

using num::ExactScalar;
using qkit::MultiIndex;
using rmat::Perturb;
using rmat::SamplePlan;

// Star-star relation between products and sums of the Ising-type weights V,
// checked over the full lattice d <= b <= a, d <= c <= a with component cap.
report::CheckResult verify_star_star(int m, int cap, const SamplePlan& plan,
                                     const Perturb* perturb = nullptr);

// First summation formula of V with the scalar mu_J^(n)(y,z); lattice
// m <= b <= c with component cap, summation over d truncated by support.
report::CheckResult verify_sum1(int n, int J, int cap, const SamplePlan& plan,
                                const Perturb* perturb = nullptr);

// Second summation formula of V (the b := a specialization of star-star).
report::CheckResult verify_sum2(int m, int cap, const SamplePlan& plan,
                                const Perturb* perturb = nullptr);

// sum2 instances are literally star-star instances with the collapsed sum.
report::CheckResult verify_sum2_from_star_star(int m, int cap, const SamplePlan& plan);

// Orthogonality: sum_m x^{|m|-|b|} y^{|m|-|a|} V_x(a,m) V_y(m,b) = V_{xy}(a,b).
report::CheckResult verify_orthogonality(int m, int cap, const SamplePlan& plan,
                                         const Perturb* perturb = nullptr);

// Terminating q-series summation formulas (binomial theorem, Vandermonde,
// Pfaff-Saalschutz and its two m-dimensional extensions, and the
// composition-sum lemma).
report::CheckResult verify_qbinomial_theorem(int nmax, const SamplePlan& plan);
report::CheckResult verify_qvandermonde(int nmax, const SamplePlan& plan);
report::CheckResult verify_pfaff_saalschutz(int nmax, const SamplePlan& plan);
report::CheckResult verify_pfaff_saalschutz_mdim2(int m, int nmax, const SamplePlan& plan);
report::CheckResult verify_pfaff_saalschutz_mdim1(int m, int cap, const SamplePlan& plan);
report::CheckResult verify_composition_sum(int m, int lmax, const SamplePlan& plan,
                                           const Perturb* perturb = nullptr);
report::RunReport verify_qseries(int nmax, int mmax, int cap, const SamplePlan& plan);

// mu_J^(n)(y,z) scalar of the first summation formula.
ExactScalar mu_J(int n, int J, const ExactScalar& y, const ExactScalar& z,
                 const ExactScalar& q);

}  // namespace ident
}  // namespace qreflect
