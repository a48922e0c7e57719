#pragma once

#include "qreflect/boundary.hpp"
#include "qreflect/rmat.hpp"

namespace qreflect {
namespace chain {

using linalg::DenseMatrix;
using num::ExactScalar;
using num::Jet;

struct ChainSpec {
  int n = 2;
  int J = 1;
  int N = 2;
  ExactScalar q;
  ExactScalar nu;
  boundary::KFamily right_family = boundary::KFamily::RightUpper;
  // The left boundary is the closed-form stochastic left-upper matrix; the
  // transfer matrix uses the dual boundary scaled so that its trace image is
  // exactly that matrix.

  long site_dim() const { return qkit::BasisSpace(n, J).dim(); }
  long space_dim() const {
    long d = 1;
    for (int k = 0; k < N; ++k) d *= site_dim();
    return d;
  }
};

struct GeneratorMatrix {
  DenseMatrix<ExactScalar> m;
  std::string role;  // transfer | hamiltonian | generator
};

// Dual boundary paired with the closed-form left-upper matrix:
//   K~(u) = (1/lambda_J^(n)(1/x)) M^{-1} K^{(u)}_{nu -> 1/(nu q^n)}(1/(q^{n/2} x)),
// all rational in u = x^2 and regular at u = 1.
template <class S>
DenseMatrix<S> ktilde_paired(int n, int J, const S& u, const S& nu, const S& q) {
  S nu_t = num::inverse(nu * num::ipow(q, static_cast<long>(n)));
  DenseMatrix<S> kt = boundary::ktilde_matrix(n, J, u, nu_t, q);
  S lam = boundary::lambda_J(n, J, num::inverse(u), nu, q);
  for (long r = 0; r < kt.rows(); ++r)
    for (long c = 0; c < kt.cols(); ++c) kt(r, c) = kt(r, c) / lam;
  return kt;
}

// Double-row transfer matrix on V^{(x) N} at squared spectral parameter u.
template <class S>
DenseMatrix<S> transfer_dense(const ChainSpec& spec, const S& u);

GeneratorMatrix double_row_transfer(const ChainSpec& spec, const ExactScalar& u);

// Trace of the paired dual boundary at u = 1 (the scalar T(1) is a multiple
// of the identity by this value).
ExactScalar ktilde_trace_at_one(const ChainSpec& spec);

// H = B_L + sum_k H_{k,k+1} + B_R from the local derivative formulas.
GeneratorMatrix hamiltonian_local(const ChainSpec& spec);
// H = -(1/4) T'(1) / tr K~(1); must equal hamiltonian_local exactly.
GeneratorMatrix hamiltonian_from_transfer(const ChainSpec& spec);
// Periodic control without boundary terms (rank-deficit comparison).
GeneratorMatrix hamiltonian_periodic(const ChainSpec& spec);

// Markov generator M = -H^t: off-diagonal M[s][s'] is the rate s -> s',
// rows sum to zero.
GeneratorMatrix markov_generator(const GeneratorMatrix& hamiltonian);

// Unique probability vector in the kernel of a column-convention generator
// (zero column sums, off-diagonal rates >= 0 not required here).
std::vector<ExactScalar> stationary_exact(const DenseMatrix<ExactScalar>& generator);
// Stationary state of the chain: right kernel of H, normalized to sum 1.
std::vector<ExactScalar> stationary_of_chain(const ChainSpec& spec);

struct MarkovDiagnostics {
  ExactScalar transfer_scalar;       // c(u) with <1|T(u) = c(u) <1|
  bool transfer_row_proportional;    // every column sum of T(u) equals c(u)
  long hamiltonian_rank;
  long full_dim;
  bool rank_is_dim_minus_one;
  long negative_rates;               // off-diagonal entries of -H^t below zero
  long positive_rates;
  long periodic_rank;                // control without boundaries
};

MarkovDiagnostics markov_diagnostics(const ChainSpec& spec, const ExactScalar& u);

report::CheckResult verify_transfer_commutes(const ChainSpec& spec, const rmat::SamplePlan& plan);
report::CheckResult verify_transfer_at_one(const ChainSpec& spec);
report::CheckResult verify_hamiltonian_methods(const ChainSpec& spec);
report::CheckResult verify_ones_annihilate(const ChainSpec& spec);

struct Trajectory {
  std::vector<std::pair<double, long>> jumps;  // (time of jump, new state)
  std::vector<double> occupancy;               // time fraction per state
  double total_time = 0.0;
  long events = 0;
  long start_state = 0;
};

// Continuous-time jump-chain sampling of the row-convention generator;
// deterministic in seed.  Throws NegativeRate if any off-diagonal rate is
// negative.
Trajectory gillespie_simulate(const DenseMatrix<ExactScalar>& generator, double t_max,
                              long max_events, std::uint64_t seed, long start_state = 0);

}  // namespace chain
}  // namespace qreflect
