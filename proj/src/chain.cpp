#include "qreflect/chain.hpp"

#include <cmath>
#include <sstream>

namespace qreflect {
namespace chain {

using boundary::KFamily;
using qkit::BasisSpace;
using report::CheckResult;
using report::CheckStatus;
using report::Witness;
using rmat::BlockOperator;
using rmat::TensorBasis;

namespace {

// Tensor basis [aux, site1..siteN].
TensorBasis chain_basis(const ChainSpec& spec) {
  std::vector<BasisSpace> f(spec.N + 1, BasisSpace(spec.n, spec.J));
  return TensorBasis(std::move(f));
}

template <class S>
DenseMatrix<S> partial_trace_aux(const DenseMatrix<S>& full, long aux_dim, long rest_dim) {
  DenseMatrix<S> out(rest_dim, rest_dim);
  for (long a = 0; a < aux_dim; ++a)
    for (long r = 0; r < rest_dim; ++r)
      for (long c = 0; c < rest_dim; ++c) out(r, c) += full(a * rest_dim + r, a * rest_dim + c);
  return out;
}

DenseMatrix<ExactScalar> value_part(const DenseMatrix<Jet>& m) {
  DenseMatrix<ExactScalar> out(m.rows(), m.cols());
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).value();
  return out;
}

DenseMatrix<ExactScalar> deriv_part(const DenseMatrix<Jet>& m) {
  DenseMatrix<ExactScalar> out(m.rows(), m.cols());
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).deriv();
  return out;
}

// H_{k,k+1} embedded on sites (a, b) of the N-site space (0-based sites).
DenseMatrix<ExactScalar> embed_two_sites(const DenseMatrix<ExactScalar>& op2,
                                         const ChainSpec& spec, int a, int b) {
  std::vector<BasisSpace> f(spec.N, BasisSpace(spec.n, spec.J));
  TensorBasis sites(std::move(f));
  BasisSpace site(spec.n, spec.J);
  auto block = rmat::BlockOperator<ExactScalar>::from_dense(rmat::tensor2(site, site), op2);
  return rmat::embed_pair(block, sites, a, b).to_dense();
}

DenseMatrix<ExactScalar> embed_one_site(const DenseMatrix<ExactScalar>& op1,
                                        const ChainSpec& spec, int a) {
  std::vector<BasisSpace> f(spec.N, BasisSpace(spec.n, spec.J));
  TensorBasis sites(std::move(f));
  return rmat::embed_single(op1, sites, a).to_dense();
}

}  // namespace

template <class S>
DenseMatrix<S> transfer_dense(const ChainSpec& spec, const S& u) {
  S q = S(spec.q);
  S nu = S(spec.nu);
  TensorBasis full = chain_basis(spec);
  rmat::ModelConfig cfg{spec.n, spec.J, spec.J};
  BlockOperator<S> r_pair = rmat::build_S<S>(cfg, u, q);

  DenseMatrix<S> acc =
      rmat::embed_single(ktilde_paired(spec.n, spec.J, u, nu, q), full, 0).to_dense();
  for (int k = 1; k <= spec.N; ++k)
    acc = acc * rmat::embed_pair(r_pair, full, 0, k).to_dense();
  DenseMatrix<S> k_right =
      boundary::k_matrix(spec.right_family, spec.n, spec.J, u, nu, q);
  acc = acc * rmat::embed_single(k_right, full, 0).to_dense();
  for (int k = spec.N; k >= 1; --k)
    acc = acc * rmat::embed_pair(r_pair, full, k, 0).to_dense();

  return partial_trace_aux(acc, spec.site_dim(), spec.space_dim());
}

template DenseMatrix<ExactScalar> transfer_dense(const ChainSpec&, const ExactScalar&);
template DenseMatrix<Jet> transfer_dense(const ChainSpec&, const Jet&);

GeneratorMatrix double_row_transfer(const ChainSpec& spec, const ExactScalar& u) {
  return GeneratorMatrix{transfer_dense(spec, u), "transfer"};
}

ExactScalar ktilde_trace_at_one(const ChainSpec& spec) {
  auto kt = ktilde_paired(spec.n, spec.J, ExactScalar(1), spec.nu, spec.q);
  ExactScalar tr(0);
  for (long i = 0; i < kt.rows(); ++i) tr += kt(i, i);
  return tr;
}

GeneratorMatrix hamiltonian_local(const ChainSpec& spec) {
  ExactScalar c = ktilde_trace_at_one(spec);
  Jet u(ExactScalar(1), ExactScalar(2));  // d/dx with u = x^2 at x = 1
  Jet q(spec.q), nu(spec.nu);

  // B_L = (1/4) Kbar'(1) / tr K~(1) on site 1.
  DenseMatrix<Jet> kbar =
      boundary::k_matrix(KFamily::LeftUpper, spec.n, spec.J, u, nu, q);
  DenseMatrix<ExactScalar> bl = deriv_part(kbar).scaled(num::inverse(ExactScalar(4) * c));

  // B_R = -(1/4) K'(1) on site N.
  DenseMatrix<Jet> kr = boundary::k_matrix(spec.right_family, spec.n, spec.J, u, nu, q);
  DenseMatrix<ExactScalar> br = deriv_part(kr).scaled(num::rat(-1, 4));

  // H_{k,k+1} = -(1/2) R'(1) P.
  rmat::ModelConfig cfg{spec.n, spec.J, spec.J};
  DenseMatrix<ExactScalar> rp = deriv_part(rmat::build_S<Jet>(cfg, u, q).to_dense());
  BasisSpace site(spec.n, spec.J);
  DenseMatrix<ExactScalar> perm =
      rmat::BlockOperator<ExactScalar>::permutation(rmat::tensor2(site, site)).to_dense();
  DenseMatrix<ExactScalar> bulk = (rp * perm).scaled(num::rat(-1, 2));

  DenseMatrix<ExactScalar> h(spec.space_dim(), spec.space_dim());
  h = h + embed_one_site(bl, spec, 0);
  h = h + embed_one_site(br, spec, spec.N - 1);
  for (int k = 0; k + 1 < spec.N; ++k) h = h + embed_two_sites(bulk, spec, k, k + 1);
  return GeneratorMatrix{h, "hamiltonian"};
}

GeneratorMatrix hamiltonian_from_transfer(const ChainSpec& spec) {
  ExactScalar c = ktilde_trace_at_one(spec);
  Jet u(ExactScalar(1), ExactScalar(2));
  DenseMatrix<Jet> t = transfer_dense(spec, u);
  DenseMatrix<ExactScalar> t1 = value_part(t);
  for (long r = 0; r < t1.rows(); ++r)
    for (long col = 0; col < t1.cols(); ++col) {
      ExactScalar want = (r == col) ? c : ExactScalar(0);
      if (!(t1(r, col) == want))
        throw DegenerateKernel("T(1) is not tr K~(1) times the identity");
    }
  DenseMatrix<ExactScalar> h =
      deriv_part(t).scaled(-num::inverse(ExactScalar(4) * c));
  return GeneratorMatrix{h, "hamiltonian"};
}

GeneratorMatrix hamiltonian_periodic(const ChainSpec& spec) {
  Jet u(ExactScalar(1), ExactScalar(2));
  Jet q(spec.q);
  rmat::ModelConfig cfg{spec.n, spec.J, spec.J};
  DenseMatrix<ExactScalar> rp = deriv_part(rmat::build_S<Jet>(cfg, u, q).to_dense());
  BasisSpace site(spec.n, spec.J);
  DenseMatrix<ExactScalar> perm =
      rmat::BlockOperator<ExactScalar>::permutation(rmat::tensor2(site, site)).to_dense();
  DenseMatrix<ExactScalar> bulk = (rp * perm).scaled(num::rat(-1, 2));
  DenseMatrix<ExactScalar> h(spec.space_dim(), spec.space_dim());
  for (int k = 0; k < spec.N; ++k) h = h + embed_two_sites(bulk, spec, k, (k + 1) % spec.N);
  return GeneratorMatrix{h, "hamiltonian"};
}

GeneratorMatrix markov_generator(const GeneratorMatrix& hamiltonian) {
  DenseMatrix<ExactScalar> m = hamiltonian.m.transpose().scaled(ExactScalar(-1));
  return GeneratorMatrix{m, "generator"};
}

std::vector<ExactScalar> stationary_exact(const DenseMatrix<ExactScalar>& generator) {
  auto basis = linalg::nullspace(generator);
  if (basis.size() != 1)
    throw DegenerateKernel("generator kernel has dimension " + std::to_string(basis.size()));
  ExactScalar sum(0);
  for (const auto& v : basis[0]) sum += v;
  if (sum.is_zero()) throw DegenerateKernel("kernel vector sums to zero");
  std::vector<ExactScalar> pi = basis[0];
  for (auto& v : pi) v /= sum;
  return pi;
}

std::vector<ExactScalar> stationary_of_chain(const ChainSpec& spec) {
  // H has zero column sums, so -H is the column-convention generator.
  return stationary_exact(hamiltonian_local(spec).m.scaled(ExactScalar(-1)));
}

MarkovDiagnostics markov_diagnostics(const ChainSpec& spec, const ExactScalar& u) {
  MarkovDiagnostics d{};
  d.full_dim = spec.space_dim();

  DenseMatrix<ExactScalar> t = transfer_dense(spec, u);
  d.transfer_row_proportional = true;
  for (long col = 0; col < t.cols(); ++col) {
    ExactScalar s(0);
    for (long r = 0; r < t.rows(); ++r) s += t(r, col);
    if (col == 0)
      d.transfer_scalar = s;
    else if (!(s == d.transfer_scalar))
      d.transfer_row_proportional = false;
  }

  GeneratorMatrix h = hamiltonian_local(spec);
  d.hamiltonian_rank = linalg::bareiss_rank(h.m);
  d.rank_is_dim_minus_one = d.hamiltonian_rank == d.full_dim - 1;

  GeneratorMatrix m = markov_generator(h);
  d.negative_rates = 0;
  d.positive_rates = 0;
  for (long r = 0; r < m.m.rows(); ++r)
    for (long c = 0; c < m.m.cols(); ++c) {
      if (r == c) continue;
      int s = m.m(r, c).sign();
      if (s < 0) ++d.negative_rates;
      if (s > 0) ++d.positive_rates;
    }

  d.periodic_rank = linalg::bareiss_rank(hamiltonian_periodic(spec).m);
  return d;
}

CheckResult verify_transfer_commutes(const ChainSpec& spec, const rmat::SamplePlan& plan) {
  std::ostringstream id;
  id << "transfer-commutes n=" << spec.n << " J=" << spec.J << " N=" << spec.N;
  auto res = rmat::check_at_points(
      id.str(), {"u", "v"}, plan, [&](const num::ParamPoint& pt) -> std::optional<Witness> {
        DenseMatrix<ExactScalar> tu = transfer_dense(spec, pt.get("u"));
        DenseMatrix<ExactScalar> tv = transfer_dense(spec, pt.get("v"));
        DenseMatrix<ExactScalar> lhs = tu * tv, rhs = tv * tu;
        for (long r = 0; r < lhs.rows(); ++r)
          for (long c = 0; c < lhs.cols(); ++c)
            if (!(lhs(r, c) == rhs(r, c))) {
              Witness w;
              w.row = r;
              w.col = c;
              w.lhs = lhs(r, c).fraction_string();
              w.rhs = rhs(r, c).fraction_string();
              return w;
            }
        return std::nullopt;
      });
  res.params["N"] = std::to_string(spec.N);
  return res;
}

CheckResult verify_transfer_at_one(const ChainSpec& spec) {
  std::ostringstream id;
  id << "transfer-at-one n=" << spec.n << " J=" << spec.J << " N=" << spec.N;
  try {
    Jet u(ExactScalar(1), ExactScalar(2));
    DenseMatrix<ExactScalar> t1 = value_part(transfer_dense(spec, u));
    ExactScalar c = ktilde_trace_at_one(spec);
    for (long r = 0; r < t1.rows(); ++r)
      for (long col = 0; col < t1.cols(); ++col) {
        ExactScalar want = (r == col) ? c : ExactScalar(0);
        if (!(t1(r, col) == want)) {
          Witness w;
          w.row = r;
          w.col = col;
          w.lhs = t1(r, col).fraction_string();
          w.rhs = want.fraction_string();
          return CheckResult::fail(id.str(), w);
        }
      }
    return CheckResult::pass(id.str());
  } catch (const PoleEncountered& e) {
    Witness w;
    w.detail = e.what();
    return CheckResult::fail(id.str(), w);
  }
}

CheckResult verify_hamiltonian_methods(const ChainSpec& spec) {
  std::ostringstream id;
  id << "hamiltonian-methods n=" << spec.n << " J=" << spec.J << " N=" << spec.N;
  DenseMatrix<ExactScalar> a = hamiltonian_local(spec).m;
  DenseMatrix<ExactScalar> b = hamiltonian_from_transfer(spec).m;
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c)
      if (!(a(r, c) == b(r, c))) {
        Witness w;
        w.row = r;
        w.col = c;
        w.lhs = a(r, c).fraction_string();
        w.rhs = b(r, c).fraction_string();
        return CheckResult::fail(id.str(), w);
      }
  return CheckResult::pass(id.str());
}

CheckResult verify_ones_annihilate(const ChainSpec& spec) {
  std::ostringstream id;
  id << "ones-annihilate n=" << spec.n << " J=" << spec.J << " N=" << spec.N;
  DenseMatrix<ExactScalar> h = hamiltonian_local(spec).m;
  for (long c = 0; c < h.cols(); ++c) {
    ExactScalar s(0);
    for (long r = 0; r < h.rows(); ++r) s += h(r, c);
    if (!s.is_zero()) {
      Witness w;
      w.col = c;
      w.lhs = s.fraction_string();
      w.rhs = "0/1";
      w.detail = "column sum of H";
      return CheckResult::fail(id.str(), w);
    }
  }
  return CheckResult::pass(id.str());
}

Trajectory gillespie_simulate(const DenseMatrix<ExactScalar>& generator, double t_max,
                              long max_events, std::uint64_t seed, long start_state) {
  long dim = generator.rows();
  // Exact sign validation before any floating-point conversion.
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c)
      if (r != c && generator(r, c).sign() < 0)
        throw NegativeRate("negative rate " + generator(r, c).fraction_string() + " at " +
                           std::to_string(r) + " -> " + std::to_string(c));

  std::vector<std::vector<double>> rate(dim, std::vector<double>(dim, 0.0));
  std::vector<double> exit_rate(dim, 0.0);
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c) {
      if (r == c) continue;
      rate[r][c] = generator(r, c).to_double();
      exit_rate[r] += rate[r][c];
    }

  std::mt19937_64 rng(seed);
  auto uniform = [&]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  };

  Trajectory traj;
  traj.start_state = start_state;
  traj.occupancy.assign(dim, 0.0);
  long state = start_state;
  double t = 0.0;
  while (traj.events < max_events && (t_max <= 0.0 || t < t_max)) {
    if (exit_rate[state] <= 0.0) break;  // absorbing
    double dt = -std::log(uniform()) / exit_rate[state];
    if (t_max > 0.0 && t + dt > t_max) {
      traj.occupancy[state] += t_max - t;
      t = t_max;
      break;
    }
    traj.occupancy[state] += dt;
    t += dt;
    double pick = uniform() * exit_rate[state];
    long next = state;
    double acc = 0.0;
    for (long c = 0; c < dim; ++c) {
      if (c == state) continue;
      acc += rate[state][c];
      if (pick <= acc) {
        next = c;
        break;
      }
    }
    state = next;
    traj.jumps.emplace_back(t, state);
    ++traj.events;
  }
  traj.total_time = t;
  if (t > 0.0)
    for (auto& o : traj.occupancy) o /= t;
  return traj;
}

}  // namespace chain
}  // namespace qreflect
