#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace opal {

// Permutations are stored one-line, 0-based: p[i] is the image of i.
using Perm = std::vector<int>;

inline Perm perm_id(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool perm_valid(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= int(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// (a*b)(i) = a(b(i))
inline Perm perm_compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("perm_compose: size mismatch");
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[p[i]] = int(i);
  return r;
}

inline bool perm_is_id(const Perm& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != int(i)) return false;
  return true;
}

// Block permutation sigma<k_1,...,k_n>: block j (of length k_j) moves as a
// whole to the block slot sigma(j).
inline Perm block_perm(const Perm& sigma, const std::vector<int>& ks) {
  if (sigma.size() != ks.size()) throw std::invalid_argument("block_perm: size mismatch");
  int n = int(ks.size());
  std::vector<int> startIn(n, 0), startOut(n, 0);
  for (int j = 1; j < n; ++j) startIn[j] = startIn[j - 1] + ks[j - 1];
  for (int j = 0; j < n; ++j) {
    int s = 0;
    for (int j2 = 0; j2 < n; ++j2)
      if (sigma[j2] < sigma[j]) s += ks[j2];
    startOut[j] = s;
  }
  int total = startIn.empty() ? 0 : startIn[n - 1] + ks[n - 1];
  Perm r(total);
  for (int j = 0; j < n; ++j)
    for (int t = 0; t < ks[j]; ++t) r[startIn[j] + t] = startOut[j] + t;
  return r;
}

// Block sum tau_1 + ... + tau_n.
inline Perm block_sum(const std::vector<Perm>& taus) {
  int total = 0;
  for (const auto& t : taus) total += int(t.size());
  Perm r(total);
  int off = 0;
  for (const auto& t : taus) {
    for (size_t i = 0; i < t.size(); ++i) r[off + i] = off + t[i];
    off += int(t.size());
  }
  return r;
}

inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = perm_id(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::string perm_str(const Perm& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) s += std::to_string(p[i]) + (i + 1 < p.size() ? " " : "");
  return s + ")";
}

// Right action of sigma on a sequence: (v sigma)[i] = v[sigma(i)].
template <typename T>
std::vector<T> act_right(const std::vector<T>& v, const Perm& sigma) {
  if (v.size() != sigma.size()) throw std::invalid_argument("act_right: size mismatch");
  std::vector<T> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[sigma[i]];
  return r;
}

}  // namespace opal
