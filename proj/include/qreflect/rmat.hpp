#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qreflect/linalg.hpp"
#include "qreflect/qkit.hpp"
#include "qreflect/report.hpp"

namespace qreflect {
namespace rmat {

using linalg::DenseMatrix;
using num::ExactScalar;
using qkit::BasisSpace;
using qkit::MultiIndex;

// Spins of the two (or three) symmetric tensor factors; the crossing
// parameter is r = q^n throughout.
struct ModelConfig {
  int n = 2;
  int I = 1;
  int J = 1;
};

// Ordered tensor product of basis spaces with row-major packing (first factor
// most significant), matching the explicit matrices in the source model.
class TensorBasis {
 public:
  TensorBasis() = default;
  explicit TensorBasis(std::vector<BasisSpace> factors) : factors_(std::move(factors)) {
    dim_ = 1;
    for (const auto& f : factors_) dim_ *= f.dim();
  }

  const std::vector<BasisSpace>& factors() const { return factors_; }
  const BasisSpace& factor(int k) const { return factors_[k]; }
  int arity() const { return static_cast<int>(factors_.size()); }
  long dim() const { return dim_; }

  long pack(const std::vector<long>& ords) const {
    long r = 0;
    for (size_t k = 0; k < factors_.size(); ++k) r = r * factors_[k].dim() + ords[k];
    return r;
  }
  std::vector<long> unpack(long ordinal) const {
    std::vector<long> ords(factors_.size());
    for (int k = arity() - 1; k >= 0; --k) {
      ords[k] = ordinal % factors_[k].dim();
      ordinal /= factors_[k].dim();
    }
    return ords;
  }
  std::vector<MultiIndex> states(long ordinal) const {
    auto ords = unpack(ordinal);
    std::vector<MultiIndex> s(factors_.size());
    for (size_t k = 0; k < factors_.size(); ++k) s[k] = factors_[k].state(ords[k]);
    return s;
  }
  // Componentwise sum of all factor labels: the conservation sector.
  MultiIndex sector_of(long ordinal) const {
    auto st = states(ordinal);
    MultiIndex t = st[0];
    for (size_t k = 1; k < st.size(); ++k) t = qkit::add(t, st[k]);
    return t;
  }
  std::string label(long ordinal) const {
    auto st = states(ordinal);
    std::string s;
    for (size_t k = 0; k < st.size(); ++k) {
      if (k) s += "x";
      s += qkit::to_string(st[k]);
    }
    return s;
  }
  friend bool operator==(const TensorBasis& a, const TensorBasis& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<BasisSpace> factors_;
  long dim_ = 0;
};

inline TensorBasis tensor2(const BasisSpace& a, const BasisSpace& b) {
  return TensorBasis({a, b});
}

// Sparse linear operator on a tensor product, stored row-major.  Operators of
// R type are block-diagonal across conservation sectors; boundary matrices
// are not, so no sector structure is imposed on the storage itself.
template <class S>
class BlockOperator {
 public:
  BlockOperator() = default;
  explicit BlockOperator(TensorBasis space) : space_(std::move(space)) {}

  static BlockOperator identity(const TensorBasis& space) {
    BlockOperator op(space);
    for (long i = 0; i < space.dim(); ++i) op.set(i, i, S(1));
    return op;
  }

  // Permutation operator on V (x) V; both factors must coincide.
  static BlockOperator permutation(const TensorBasis& space) {
    if (space.arity() != 2 || !(space.factor(0) == space.factor(1)))
      throw DimensionMismatch("permutation operator needs two isomorphic factors");
    BlockOperator op(space);
    long d = space.factor(0).dim();
    for (long a = 0; a < d; ++a)
      for (long b = 0; b < d; ++b) op.set(space.pack({a, b}), space.pack({b, a}), S(1));
    return op;
  }

  const TensorBasis& space() const { return space_; }
  long dim() const { return space_.dim(); }
  const std::map<long, std::map<long, S>>& rows() const { return rows_; }

  void set(long r, long c, S v) {
    if (is_zero(v))
      rows_[r].erase(c);
    else
      rows_[r][c] = std::move(v);
  }
  void add_to(long r, long c, const S& v) { rows_[r][c] = rows_[r][c] + v; }
  S at(long r, long c) const {
    auto it = rows_.find(r);
    if (it == rows_.end()) return S(0);
    auto jt = it->second.find(c);
    return jt == it->second.end() ? S(0) : jt->second;
  }

  friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
    if (a.space_.dim() != b.space_.dim()) throw DimensionMismatch("operator product shape");
    BlockOperator c(a.space_);
    for (const auto& [r, arow] : a.rows_) {
      auto& crow = c.rows_[r];
      for (const auto& [k, av] : arow) {
        auto it = b.rows_.find(k);
        if (it == b.rows_.end()) continue;
        for (const auto& [col, bv] : it->second) crow[col] = crow[col] + av * bv;
      }
      if (crow.empty()) c.rows_.erase(r);
    }
    return c;
  }
  friend BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
    BlockOperator c = a;
    for (const auto& [r, brow] : b.rows_)
      for (const auto& [col, v] : brow) c.add_to(r, col, v);
    return c;
  }
  friend BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
    BlockOperator c = a;
    for (const auto& [r, brow] : b.rows_)
      for (const auto& [col, v] : brow) c.add_to(r, col, -v);
    return c;
  }

  BlockOperator scaled(const S& f) const {
    BlockOperator c(space_);
    for (const auto& [r, row] : rows_)
      for (const auto& [col, v] : row) c.set(r, col, v * f);
    return c;
  }

  BlockOperator swap_slots() const {
    if (space_.arity() != 2) throw DimensionMismatch("swap_slots needs two factors");
    TensorBasis swapped({space_.factor(1), space_.factor(0)});
    BlockOperator c(swapped);
    for (const auto& [r, row] : rows_) {
      auto ro = space_.unpack(r);
      for (const auto& [col, v] : row) {
        auto co = space_.unpack(col);
        c.set(swapped.pack({ro[1], ro[0]}), swapped.pack({co[1], co[0]}), v);
      }
    }
    return c;
  }

  // Transposition with respect to one tensor slot (two-factor operators).
  BlockOperator partial_transpose(int slot) const {
    if (space_.arity() != 2) throw DimensionMismatch("partial transpose needs two factors");
    BlockOperator c(space_);
    for (const auto& [r, row] : rows_) {
      auto ro = space_.unpack(r);
      for (const auto& [col, v] : row) {
        auto co = space_.unpack(col);
        if (slot == 0)
          c.set(space_.pack({co[0], ro[1]}), space_.pack({ro[0], co[1]}), v);
        else
          c.set(space_.pack({ro[0], co[1]}), space_.pack({co[0], ro[1]}), v);
      }
    }
    return c;
  }

  BlockOperator transpose() const {
    BlockOperator c(space_);
    for (const auto& [r, row] : rows_)
      for (const auto& [col, v] : row) c.set(col, r, v);
    return c;
  }

  // Conjugation by a diagonal matrix acting on one slot: D_slot * A * D_slot^{-1}.
  BlockOperator conjugate_diag(const std::vector<S>& diag, int slot) const {
    BlockOperator c(space_);
    for (const auto& [r, row] : rows_) {
      auto ro = space_.unpack(r);
      for (const auto& [col, v] : row) {
        auto co = space_.unpack(col);
        c.set(r, col, diag[ro[slot]] * v / diag[co[slot]]);
      }
    }
    return c;
  }

  DenseMatrix<S> to_dense() const {
    DenseMatrix<S> m(dim(), dim());
    for (const auto& [r, row] : rows_)
      for (const auto& [col, v] : row) m(r, col) = v;
    return m;
  }
  static BlockOperator from_dense(const TensorBasis& space, const DenseMatrix<S>& m) {
    BlockOperator op(space);
    for (long r = 0; r < m.rows(); ++r)
      for (long c = 0; c < m.cols(); ++c)
        if (!is_zero(m(r, c))) op.set(r, c, m(r, c));
    return op;
  }

  std::vector<S> column_sums() const {
    std::vector<S> sums(dim(), S(0));
    for (const auto& [r, row] : rows_)
      for (const auto& [col, v] : row) sums[col] = sums[col] + v;
    return sums;
  }

  // First exact mismatch against `other`, honoring absent entries as zeros.
  // `col_ok` restricts the comparison (sector-truncated operators compare only
  // the columns whose sector is exactly represented).
  std::optional<report::Witness> first_difference(
      const BlockOperator& other,
      const std::function<bool(long)>& col_ok = nullptr) const {
    auto scan = [&](const BlockOperator& a, const BlockOperator& b)
        -> std::optional<report::Witness> {
      for (const auto& [r, row] : a.rows_)
        for (const auto& [col, v] : row) {
          if (col_ok && !col_ok(col)) continue;
          S w = b.at(r, col);
          if (!(v == w)) {
            report::Witness wit;
            wit.row = r;
            wit.col = col;
            wit.row_label = space_.label(r);
            wit.col_label = space_.label(col);
            wit.lhs = entry_str(at(r, col));
            wit.rhs = entry_str(other.at(r, col));
            return wit;
          }
        }
      return std::nullopt;
    };
    if (auto w = scan(*this, other)) return w;
    // Entries present only in `other`.
    if (auto w = scan(other, *this)) return w;
    return std::nullopt;
  }

 private:
  static bool is_zero(const S& v) {
    if constexpr (requires { v.is_zero(); })
      return v.is_zero();
    else
      return false;
  }
  static std::string entry_str(const S& v) {
    if constexpr (requires { v.fraction_string(); })
      return v.fraction_string();
    else
      return "<non-rational scalar>";
  }

  TensorBasis space_;
  std::map<long, std::map<long, S>> rows_;
};

// Places a two-factor operator on slots (a,b) of a larger product, identity
// elsewhere.  Slots may come in either order; op's first factor goes to `a`.
template <class S>
BlockOperator<S> embed_pair(const BlockOperator<S>& op, const TensorBasis& full, int a, int b) {
  const TensorBasis& ps = op.space();
  if (!(full.factor(a) == ps.factor(0)) || !(full.factor(b) == ps.factor(1)))
    throw DimensionMismatch("embed_pair factor mismatch");
  BlockOperator<S> out(full);
  long rest = full.dim() / (ps.factor(0).dim() * ps.factor(1).dim());
  std::vector<long> shape(full.arity());
  for (int k = 0; k < full.arity(); ++k) shape[k] = full.factor(k).dim();
  // Enumerate the spectator configuration by counting in mixed radix over the
  // remaining slots.
  std::vector<int> others;
  for (int k = 0; k < full.arity(); ++k)
    if (k != a && k != b) others.push_back(k);
  for (long spec = 0; spec < rest; ++spec) {
    std::vector<long> base(full.arity(), 0);
    long t = spec;
    for (int k = static_cast<int>(others.size()) - 1; k >= 0; --k) {
      base[others[k]] = t % shape[others[k]];
      t /= shape[others[k]];
    }
    for (const auto& [r, row] : op.rows()) {
      auto ro = ps.unpack(r);
      for (const auto& [col, v] : row) {
        auto co = ps.unpack(col);
        auto rfull = base;
        rfull[a] = ro[0];
        rfull[b] = ro[1];
        auto cfull = base;
        cfull[a] = co[0];
        cfull[b] = co[1];
        out.set(full.pack(rfull), full.pack(cfull), v);
      }
    }
  }
  return out;
}

// K (x) Id or Id (x) K style embedding of a one-space matrix.
template <class S>
BlockOperator<S> embed_single(const DenseMatrix<S>& k, const TensorBasis& full, int slot) {
  if (k.rows() != full.factor(slot).dim()) throw DimensionMismatch("embed_single shape");
  BlockOperator<S> out(full);
  long rest = full.dim() / full.factor(slot).dim();
  std::vector<long> shape(full.arity());
  for (int s = 0; s < full.arity(); ++s) shape[s] = full.factor(s).dim();
  std::vector<int> others;
  for (int s = 0; s < full.arity(); ++s)
    if (s != slot) others.push_back(s);
  for (long spec = 0; spec < rest; ++spec) {
    std::vector<long> base(full.arity(), 0);
    long t = spec;
    for (int s = static_cast<int>(others.size()) - 1; s >= 0; --s) {
      base[others[s]] = t % shape[others[s]];
      t /= shape[others[s]];
    }
    for (long r = 0; r < k.rows(); ++r)
      for (long c = 0; c < k.cols(); ++c) {
        const S& v = k(r, c);
        if constexpr (requires { v.is_zero(); }) {
          if (v.is_zero()) continue;
        }
        auto rfull = base;
        rfull[slot] = r;
        auto cfull = base;
        cfull[slot] = c;
        out.set(full.pack(rfull), full.pack(cfull), v);
      }
  }
  return out;
}

// --- Builders -------------------------------------------------------------

// Stochastic R-matrix S_{I,J} on V_I (x) V_J.  The carried spectral parameter
// is u = x^2; every entry is rational in (q, u):
//   [S]_{i,j}^{i',j'} = delta_{i+j,i'+j'} *
//     sum_{m+n=i+j} Phi_{q^2}(m-j | m; q^{J-I}/u, q^{-I-J}/u)
//                   Phi_{q^2}(n | j'; u/q^{I+J}, q^{-2J}).
template <class S>
BlockOperator<S> build_S(const ModelConfig& cfg, const S& u, const S& q) {
  BasisSpace bi(cfg.n, cfg.I), bj(cfg.n, cfg.J);
  TensorBasis space = tensor2(bi, bj);
  BlockOperator<S> op(space);
  S q2 = q * q;
  S lam1 = num::ipow(q, cfg.J - cfg.I) / u;
  S mu1 = num::ipow(q, -cfg.I - cfg.J) / u;
  S lam2 = u / num::ipow(q, cfg.I + cfg.J);
  S mu2 = num::ipow(q, -2 * cfg.J);
  for (long ci = 0; ci < bi.dim(); ++ci) {
    for (long cj = 0; cj < bj.dim(); ++cj) {
      const MultiIndex& ip = bi.state(ci);
      const MultiIndex& jp = bj.state(cj);
      long col = space.pack({ci, cj});
      for (long ri = 0; ri < bi.dim(); ++ri) {
        const MultiIndex& i = bi.state(ri);
        MultiIndex t = qkit::add(ip, jp);
        MultiIndex j = qkit::sub(t, i);
        if (!qkit::all_nonneg(j) || !bj.contains(j)) continue;
        // Support: m >= j (first Phi) and i+j-m <= j' (second Phi).
        MultiIndex lo = qkit::cwise_max(j, qkit::sub(t, jp));
        S entry(0);
        bool nonzero = false;
        for (const auto& m : qkit::box_between(lo, t)) {
          S term = qkit::phi(qkit::sub(m, j), m, lam1, mu1, q2) *
                   qkit::phi(qkit::sub(t, m), jp, lam2, mu2, q2);
          entry = entry + term;
          nonzero = true;
        }
        if (nonzero) op.set(space.pack({ri, bj.ordinal(j)}), col, entry);
      }
    }
  }
  return op;
}

// Symmetric version R-bar.  The prefactor x^{|i|-|i'|} has odd parity, so this
// builder takes x itself and squares it internally.
template <class S>
BlockOperator<S> build_Rbar(const ModelConfig& cfg, const S& x, const S& q) {
  BlockOperator<S> s = build_S(cfg, x * x, q);
  BlockOperator<S> op(s.space());
  const TensorBasis& space = s.space();
  for (const auto& [r, row] : s.rows()) {
    auto rs = space.states(r);
    const MultiIndex &i = rs[0], &j = rs[1];
    for (const auto& [col, v] : row) {
      auto cs = space.states(col);
      const MultiIndex &ip = cs[0], &jp = cs[1];
      long qexp = qkit::dot(ip, jp) - qkit::dot(i, j) + cfg.J * qkit::weight(i) -
                  cfg.I * qkit::weight(jp) - qkit::qform_Q(j, i) + qkit::qform_Q(ip, jp);
      S f = num::ipow(x, qkit::weight(i) - qkit::weight(ip)) * num::ipow(q, qexp);
      op.set(r, col, f * v);
    }
  }
  return op;
}

enum class LSide { FirstSpaceFundamental, SecondSpaceFundamental };

// Closed-form L-operators on V_1 (x) V_J and V_J (x) V_1.  Species alpha = 0
// denotes the implicit n-th component (e_0 is the zero multi-index), and
// j_0 := 0 in the exponents.
template <class S>
BlockOperator<S> build_L(int n, int J, LSide side, const S& u, const S& q) {
  BasisSpace b1(n, 1), bJ(n, J);
  int m = n - 1;
  S den = S(1) - num::ipow(q, -1 - J) / u;
  auto jcomp = [](const MultiIndex& j, int alpha) { return alpha >= 1 ? j[alpha - 1] : 0; };
  auto prefix = [](const MultiIndex& j, int upto) {  // sum_{s=1}^{upto} j_s
    long s = 0;
    for (int k = 1; k <= upto; ++k) s += j[k - 1];
    return s;
  };

  TensorBasis space = side == LSide::FirstSpaceFundamental ? tensor2(b1, bJ) : tensor2(bJ, b1);
  BlockOperator<S> op(space);
  for (int alpha = 0; alpha < n; ++alpha) {
    MultiIndex ea = qkit::unit_vector(m, alpha);
    for (int beta = 0; beta < n; ++beta) {
      MultiIndex eb = qkit::unit_vector(m, beta);
      for (const auto& j : bJ.states()) {
        MultiIndex l;
        if (alpha == beta) {
          l = j;
        } else {
          l = qkit::sub(qkit::add(j, ea), eb);
          if (!qkit::all_nonneg(l) || !bJ.contains(l)) continue;
        }
        long wj = qkit::weight(j);
        int ja = jcomp(j, alpha);
        S entry(0);
        if (side == LSide::FirstSpaceFundamental) {
          if (alpha == beta) {
            long pexp = 2 * (alpha >= 1 ? 1 : 0) * (prefix(j, alpha) - J);
            S numr = S(1) - num::ipow(q, J - 1 - 2 * ja - 2 * (alpha == 0 ? (J - wj) : 0)) / u;
            entry = num::ipow(q, pexp) * numr / den;
          } else if (alpha > beta) {
            long pexp = 2 * (prefix(j, alpha - 1) - J - 1) + (beta == 0 ? (J + 1) : 0);
            S numr = S(1) - num::ipow(q, 2 + 2 * ja);
            entry = -num::ipow(q, pexp) * num::ipow(u, -(beta == 0 ? 1 : 0)) * numr / den;
          } else {
            long pexp = 2 * prefix(j, alpha - 1) - 1 - J - (alpha == 0 ? (J + 1 - 2 * wj) : 0);
            S numr = S(1) - num::ipow(q, 2 * (1 + ja + (alpha == 0 ? (J - wj) : 0)));
            entry = -num::ipow(q, pexp) * num::ipow(u, -(alpha >= 1 ? 1 : 0)) * numr / den;
          }
        } else {
          long suffix = 0;  // sum_{s=alpha}^{n-1} j_s
          for (int k = std::max(alpha, 1); k <= m; ++k) suffix += j[k - 1];
          if (alpha == beta) {
            long pexp = -2 * wj + 2 * (alpha >= 1 ? 1 : 0) * suffix;
            S numr = S(1) - num::ipow(q, J - 1 - 2 * ja - 2 * (alpha == 0 ? (J - wj) : 0)) / u;
            entry = num::ipow(q, pexp) * numr / den;
          } else if (alpha > beta) {
            long pexp = -1 + J - (beta == 0 ? (1 + J) : 0) - 2 * prefix(j, alpha);
            S numr = S(1) - num::ipow(q, 2 + 2 * ja);
            entry = -num::ipow(q, pexp) * num::ipow(u, -(beta >= 1 ? 1 : 0)) * numr / den;
          } else {
            long pexp = -2 + (alpha == 0 ? (1 - J) : 0) -
                        2 * (alpha >= 1 ? 1 : 0) * prefix(j, alpha);
            S numr = S(1) - num::ipow(q, 2 * (1 + ja + (alpha == 0 ? (J - wj) : 0)));
            entry = -num::ipow(q, pexp) * num::ipow(u, -(alpha == 0 ? 1 : 0)) * numr / den;
          }
        }
        long r, c;
        if (side == LSide::FirstSpaceFundamental) {
          r = space.pack({b1.ordinal(ea), bJ.ordinal(j)});
          c = space.pack({b1.ordinal(eb), bJ.ordinal(l)});
        } else {
          r = space.pack({bJ.ordinal(j), b1.ordinal(ea)});
          c = space.pack({bJ.ordinal(l), b1.ordinal(eb)});
        }
        op.set(r, c, entry);
      }
    }
  }
  return op;
}

// Diagonal of the crossing matrix M on V_J: q^{2 sum (n-k) i_k}.
template <class S>
std::vector<S> m_diagonal(int n, int J, const S& q) {
  BasisSpace b(n, J);
  std::vector<S> d;
  d.reserve(b.dim());
  for (const auto& i : b.states()) {
    long e = 0;
    for (int k = 1; k <= n - 1; ++k) e += 2L * (n - k) * i[k - 1];
    d.push_back(num::ipow(q, e));
  }
  return d;
}

template <class S>
DenseMatrix<S> build_M(int n, int J, const S& q) {
  auto d = m_diagonal(n, J, q);
  DenseMatrix<S> m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// Scalar of the crossing unitarity relation.
template <class S>
S crossing_g(const ModelConfig& cfg, const S& u, const S& q) {
  S q2 = q * q;
  auto poch = [&](long e) {
    return qkit::qpochhammer(u * num::ipow(q, e), q2, static_cast<long>(cfg.I));
  };
  return poch(2 - cfg.I - cfg.J) * poch(2 * cfg.n - cfg.I + cfg.J) /
         (poch(2 - cfg.I + cfg.J) * poch(2 * cfg.n - cfg.I - cfg.J));
}

enum class RtildeMethod { TransposeInverse, Crossing };

// S-tilde = ((S^{t2})^{-1})^{t2}, either literally (exact dense inversion) or
// through crossing unitarity:
//   S~_{I,J}(x) = g_{IJ}(x)^{-1} M_1 R_21((q^n x)^{-1}) M_1^{-1},
// whose spectral square 1/(q^{2n} u) keeps everything rational.
template <class S>
BlockOperator<S> build_Rtilde(const ModelConfig& cfg, const S& u, const S& q,
                              RtildeMethod method = RtildeMethod::TransposeInverse) {
  if (method == RtildeMethod::TransposeInverse) {
    BlockOperator<S> s = build_S(cfg, u, q);
    auto t2 = s.partial_transpose(1);
    auto inv = DenseMatrix<S>(t2.to_dense()).inverse();
    return BlockOperator<S>::from_dense(s.space(), inv).partial_transpose(1);
  }
  S v = num::inverse(num::ipow(q, 2 * cfg.n) * u);
  ModelConfig swapped{cfg.n, cfg.J, cfg.I};
  BlockOperator<S> r21 = build_S(swapped, v, q).swap_slots();
  auto md = m_diagonal(cfg.n, cfg.I, q);
  S g = crossing_g(cfg, u, q);
  return r21.conjugate_diag(md, 0).scaled(num::inverse(g));
}

// Non-difference stochastic R-matrix on the sector truncation of the
// infinite-dimensional module: entries delta_{i+j,i'+j'} Phi_{q^2}(i|j';x,y),
// restricted to conservation sectors with |i+j| <= sector_cap.
template <class S>
BlockOperator<S> build_S_nondiff(int n, const S& x, const S& y, const S& q2, int sector_cap) {
  if (sector_cap < 0) throw ConfigError("sector_cap must be >= 0");
  BasisSpace b(n, std::max(sector_cap, 1));
  TensorBasis space = tensor2(b, b);
  BlockOperator<S> op(space);
  for (long ci = 0; ci < b.dim(); ++ci)
    for (long cj = 0; cj < b.dim(); ++cj) {
      const MultiIndex& ip = b.state(ci);
      const MultiIndex& jp = b.state(cj);
      MultiIndex t = qkit::add(ip, jp);
      if (qkit::weight(t) > sector_cap) continue;
      long col = space.pack({ci, cj});
      for (const auto& i : qkit::box_between(MultiIndex(t.size(), 0), t)) {
        MultiIndex j = qkit::sub(t, i);
        S entry = qkit::phi(i, jp, x, y, q2);
        if constexpr (requires { entry.is_zero(); }) {
          if (entry.is_zero()) continue;
        }
        op.set(space.pack({b.ordinal(i), b.ordinal(j)}), col, entry);
      }
    }
  return op;
}

// --- Verification ----------------------------------------------------------

// Optional single-entry corruption used by the negative-control machinery:
// added to the first internally built operator of a verifier.
struct Perturb {
  long row = 0;
  long col = 0;
  ExactScalar delta;
};

using EOp = BlockOperator<ExactScalar>;

void apply_perturb(EOp& op, const Perturb* p);

struct SamplePlan {
  std::uint64_t seed = 12345;
  int points = 3;
  long bound = 20;
  int max_attempts = 60;
};

// Runs `body` at `plan.points` independent parameter points, resampling on
// PoleEncountered.  `body` returns the first witness, or nullopt on success.
report::CheckResult check_at_points(
    const std::string& id, const std::vector<std::string>& symbols, const SamplePlan& plan,
    const std::function<std::optional<report::Witness>(const num::ParamPoint&)>& body);

report::CheckResult verify_ybe(int n, int I, int J, int K, const SamplePlan& plan,
                               const Perturb* perturb = nullptr);
report::CheckResult verify_unitarity(int n, int I, int J, const SamplePlan& plan,
                                     const Perturb* perturb = nullptr);
report::CheckResult verify_crossing(int n, int I, int J, const SamplePlan& plan,
                                    const Perturb* perturb = nullptr);
report::CheckResult verify_m_commutation(int n, int I, int J, const SamplePlan& plan);
report::CheckResult verify_regularity(int n, int I, const SamplePlan& plan);
report::CheckResult verify_stochasticity(int n, int I, int J, const SamplePlan& plan);
report::CheckResult verify_rtilde_agreement(int n, int I, int J, const SamplePlan& plan);
report::CheckResult verify_almost_ybe(int n, int I, const SamplePlan& plan);
// Individual symmetry relations; `which` from {first, second, third,
// tau-sigma, square}.
report::CheckResult verify_symmetry(const std::string& which, int n, int I, int J,
                                    const SamplePlan& plan, const Perturb* perturb = nullptr);
report::RunReport verify_symmetries(int n, int I, int J, const SamplePlan& plan);

// Non-difference model checks.
report::CheckResult verify_nondiff_inverse(int n, int sector_cap, const SamplePlan& plan);
report::CheckResult verify_nondiff_specialization(int n, int I, int J, const SamplePlan& plan);
report::CheckResult verify_nondiff_ybe(int n, int sector_cap, const SamplePlan& plan);

}  // namespace rmat
}  // namespace qreflect
