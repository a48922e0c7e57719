#pragma once

#include <map>
#include <string>
#include <vector>

#include "qreflect/exactnum.hpp"

namespace qreflect {
namespace qkit {

using num::ExactScalar;

// Ordered tuple of n-1 non-negative integers labeling a basis vector of the
// symmetric tensor space V_J^(n).
using MultiIndex = std::vector<int>;

long weight(const MultiIndex& a);
long dot(const MultiIndex& a, const MultiIndex& b);
// Q(a,b) = sum_{l<k} a_l b_k
long qform_Q(const MultiIndex& a, const MultiIndex& b);
// [i,j] = (i,j) - (I-|i|)(J-|j|)
long bracket(const MultiIndex& i, const MultiIndex& j, long I, long J);

MultiIndex reverse_tau(const MultiIndex& a);
// sigma{i1..im} = {i2,...,im, J-|i|}; requires |i| <= J
MultiIndex rotate_sigma(const MultiIndex& a, long J);
MultiIndex sigma_inverse(const MultiIndex& a, long J);

MultiIndex add(const MultiIndex& a, const MultiIndex& b);
MultiIndex sub(const MultiIndex& a, const MultiIndex& b);
bool all_nonneg(const MultiIndex& a);
// a_i >= b_i for all i
bool dominates(const MultiIndex& a, const MultiIndex& b);
MultiIndex cwise_min(const MultiIndex& a, const MultiIndex& b);
MultiIndex cwise_max(const MultiIndex& a, const MultiIndex& b);
std::string to_string(const MultiIndex& a);

// Unit vector e_alpha of length m; alpha = 0 gives the zero vector, matching
// the L-operator index convention where the 0-th species is implicit.
MultiIndex unit_vector(int m, int alpha);

// Basis of V_J^(n): all multi-indices of length n-1 with |i| <= J, in
// ascending lexicographic order.  dim = binomial(J+n-1, n-1).
class BasisSpace {
 public:
  BasisSpace() = default;
  BasisSpace(int n, int J);

  int n() const { return n_; }
  int J() const { return J_; }
  long dim() const { return static_cast<long>(states_.size()); }
  const MultiIndex& state(long ordinal) const { return states_[ordinal]; }
  const std::vector<MultiIndex>& states() const { return states_; }
  long ordinal(const MultiIndex& idx) const;
  bool contains(const MultiIndex& idx) const;
  friend bool operator==(const BasisSpace& a, const BasisSpace& b) {
    return a.n_ == b.n_ && a.J_ == b.J_;
  }

 private:
  int n_ = 0, J_ = 0;
  std::vector<MultiIndex> states_;
  std::map<MultiIndex, long> ordinals_;
};

inline BasisSpace enumerate_basis(int n, int J) { return BasisSpace(n, J); }

// All multi-indices of length m with every component <= cap.
std::vector<MultiIndex> component_box(int m, int cap);
// All multi-indices b <= a <= t componentwise.
std::vector<MultiIndex> box_between(const MultiIndex& b, const MultiIndex& t);

// q-Pochhammer (x;q)_k with the three-case definition; negative k inverts the
// shifted product and throws PoleEncountered when a factor vanishes.
template <class S>
S qpochhammer(const S& x, const S& q, long k) {
  if (k >= 0) {
    S r(1);
    S qp(1);
    for (long i = 0; i < k; ++i) {
      r = r * (S(1) - x * qp);
      qp = qp * q;
    }
    return r;
  }
  S r(1);
  S qp = num::ipow(q, k);
  for (long i = 0; i < -k; ++i) {
    r = r * (S(1) - x * qp);
    qp = qp * q;
  }
  return num::inverse(r);
}

// [m over k]_q = (q;q)_m / ((q;q)_k (q;q)_{m-k}); zero outside 0 <= k <= m.
template <class S>
S qbinomial(long m, long k, const S& q) {
  if (k < 0 || k > m) return S(0);
  return qpochhammer(q, q, m) / (qpochhammer(q, q, k) * qpochhammer(q, q, m - k));
}

// Phi_q(gamma | beta; lambda, mu) =
//   q^{Q(beta-gamma,gamma)} (mu/lambda)^{|gamma|}
//   (lambda;q)_{|gamma|} (mu/lambda;q)_{|beta|-|gamma|} / (mu;q)_{|beta|}
//   * prod_s [beta_s over gamma_s]_q.
// Vanishes unless 0 <= gamma_s <= beta_s for all s.
template <class S>
S phi(const MultiIndex& gamma, const MultiIndex& beta, const S& lambda, const S& mu,
      const S& q) {
  if (gamma.size() != beta.size()) throw LengthMismatch();
  for (size_t s = 0; s < gamma.size(); ++s)
    if (gamma[s] < 0 || gamma[s] > beta[s]) return S(0);
  long wg = weight(gamma), wb = weight(beta);
  S r = num::ipow(q, qform_Q(sub(beta, gamma), gamma));
  r = r * num::ipow(mu / lambda, wg);
  r = r * qpochhammer(lambda, q, wg) * qpochhammer(mu / lambda, q, wb - wg);
  S den = qpochhammer(mu, q, wb);
  r = r / den;
  for (size_t s = 0; s < gamma.size(); ++s) r = r * qbinomial<S>(beta[s], gamma[s], q);
  return r;
}

// Phi-hat: q^{Q(gamma,beta)-Q(beta,gamma)} Phi.
template <class S>
S phi_hat(const MultiIndex& gamma, const MultiIndex& beta, const S& lambda, const S& mu,
          const S& q) {
  if (gamma.size() != beta.size()) throw LengthMismatch();
  bool support = true;
  for (size_t s = 0; s < gamma.size(); ++s)
    if (gamma[s] < 0 || gamma[s] > beta[s]) support = false;
  if (!support) return S(0);
  return num::ipow(q, qform_Q(gamma, beta) - qform_Q(beta, gamma)) *
         phi(gamma, beta, lambda, mu, q);
}

// V_x(a,b) = q^{2Q(a,b)-Q(a,a)-Q(b,b)} (q/x)^{|a|-|b|}
//            (x^2;q^2)_{|a|-|b|} / prod_i (q^2;q^2)_{a_i-b_i}.
// Vanishes unless a >= b componentwise (the reciprocal Pochhammer of a
// negative index carries a vanishing factor).
template <class S>
S v_func(const S& x, const S& q, const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw LengthMismatch();
  if (!dominates(a, b)) return S(0);
  long wa = weight(a), wb = weight(b);
  S q2 = q * q;
  S r = num::ipow(q, 2 * qform_Q(a, b) - qform_Q(a, a) - qform_Q(b, b));
  r = r * num::ipow(q / x, wa - wb);
  r = r * qpochhammer(x * x, q2, wa - wb);
  for (size_t i = 0; i < a.size(); ++i) r = r / qpochhammer(q2, q2, a[i] - b[i]);
  return r;
}

}  // namespace qkit
}  // namespace qreflect
