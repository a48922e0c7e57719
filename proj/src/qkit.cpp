#include "qreflect/qkit.hpp"

#include <algorithm>
#include <functional>

namespace qreflect {
namespace qkit {

long weight(const MultiIndex& a) {
  long s = 0;
  for (int x : a) s += x;
  return s;
}

long dot(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw LengthMismatch();
  long s = 0;
  for (size_t k = 0; k < a.size(); ++k) s += static_cast<long>(a[k]) * b[k];
  return s;
}

long qform_Q(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw LengthMismatch();
  long s = 0;
  for (size_t l = 0; l < a.size(); ++l)
    for (size_t k = l + 1; k < b.size(); ++k) s += static_cast<long>(a[l]) * b[k];
  return s;
}

long bracket(const MultiIndex& i, const MultiIndex& j, long I, long J) {
  if (weight(i) > I || weight(j) > J) throw WeightExceedsJ();
  return dot(i, j) - (I - weight(i)) * (J - weight(j));
}

MultiIndex reverse_tau(const MultiIndex& a) {
  MultiIndex r(a.rbegin(), a.rend());
  return r;
}

MultiIndex rotate_sigma(const MultiIndex& a, long J) {
  long w = weight(a);
  if (w > J) throw WeightExceedsJ();
  MultiIndex r(a.begin() + 1, a.end());
  r.push_back(static_cast<int>(J - w));
  return r;
}

MultiIndex sigma_inverse(const MultiIndex& a, long J) {
  long w = weight(a);
  if (w > J) throw WeightExceedsJ();
  MultiIndex r;
  r.reserve(a.size());
  r.push_back(static_cast<int>(J - w));
  r.insert(r.end(), a.begin(), a.end() - 1);
  return r;
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw LengthMismatch();
  MultiIndex r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
  return r;
}

MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw LengthMismatch();
  MultiIndex r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

bool all_nonneg(const MultiIndex& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; });
}

bool dominates(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw LengthMismatch();
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] < b[k]) return false;
  return true;
}

MultiIndex cwise_min(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw LengthMismatch();
  MultiIndex r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = std::min(a[k], b[k]);
  return r;
}

MultiIndex cwise_max(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw LengthMismatch();
  MultiIndex r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = std::max(a[k], b[k]);
  return r;
}

std::string to_string(const MultiIndex& a) {
  std::string s = "(";
  for (size_t k = 0; k < a.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(a[k]);
  }
  return s + ")";
}

MultiIndex unit_vector(int m, int alpha) {
  MultiIndex r(m, 0);
  if (alpha > 0) r[alpha - 1] = 1;
  return r;
}

BasisSpace::BasisSpace(int n, int J) : n_(n), J_(J) {
  if (n < 2 || J < 1) throw ConfigError("basis requires n >= 2 and J >= 1");
  int m = n - 1;
  MultiIndex cur(m, 0);
  std::function<void(int, int)> rec = [&](int pos, int budget) {
    if (pos == m) {
      states_.push_back(cur);
      return;
    }
    for (int v = 0; v <= budget; ++v) {
      cur[pos] = v;
      rec(pos + 1, budget - v);
    }
    cur[pos] = 0;
  };
  rec(0, J);
  std::sort(states_.begin(), states_.end());
  for (long i = 0; i < static_cast<long>(states_.size()); ++i) ordinals_[states_[i]] = i;
}

long BasisSpace::ordinal(const MultiIndex& idx) const {
  auto it = ordinals_.find(idx);
  if (it == ordinals_.end()) throw ConfigError("multi-index not in basis: " + to_string(idx));
  return it->second;
}

bool BasisSpace::contains(const MultiIndex& idx) const { return ordinals_.count(idx) > 0; }

std::vector<MultiIndex> component_box(int m, int cap) {
  std::vector<MultiIndex> out;
  MultiIndex cur(m, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == m) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      cur[pos] = v;
      rec(pos + 1);
    }
    cur[pos] = 0;
  };
  rec(0);
  return out;
}

std::vector<MultiIndex> box_between(const MultiIndex& b, const MultiIndex& t) {
  if (b.size() != t.size()) throw LengthMismatch();
  std::vector<MultiIndex> out;
  if (!dominates(t, b)) return out;
  MultiIndex cur = b;
  int m = static_cast<int>(b.size());
  std::function<void(int)> rec = [&](int pos) {
    if (pos == m) {
      out.push_back(cur);
      return;
    }
    for (int v = b[pos]; v <= t[pos]; ++v) {
      cur[pos] = v;
      rec(pos + 1);
    }
    cur[pos] = b[pos];
  };
  rec(0);
  return out;
}

}  // namespace qkit
}  // namespace qreflect
