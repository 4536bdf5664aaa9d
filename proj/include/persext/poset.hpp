#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "persext/matrix.hpp"

// Finite posets presented by covering relations.  Construction validates the
// input (unique ids, acyclic, transitively reduced) and precomputes the order
// relation, a topological order, and the Mobius function.  Instances are
// immutable afterwards and safe to share across threads.

namespace persext {

struct PosetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Chains of the order relation, bucketed by dimension: simplices[d] holds the
// strictly increasing (d+1)-chains of vertex indices, lexicographically sorted.
struct OrderComplex {
  std::vector<std::vector<std::vector<int>>> simplices;

  int dim() const { return static_cast<int>(simplices.size()) - 1; }

  std::vector<int> f_vector() const {
    std::vector<int> f;
    f.reserve(simplices.size());
    for (const auto& s : simplices) f.push_back(static_cast<int>(s.size()));
    return f;
  }
};

class Poset {
 public:
  // Elements are sorted lexicographically; that order fixes every downstream
  // basis, matrix, and report.  Covers must be exactly the covering relation:
  // anything implied by transitivity is rejected, not silently dropped.
  static Poset from_covers(std::vector<std::string> elements,
                           const std::vector<std::pair<std::string, std::string>>& covers) {
    Poset p;
    std::sort(elements.begin(), elements.end());
    for (std::size_t i = 1; i < elements.size(); ++i)
      if (elements[i] == elements[i - 1])
        throw PosetError("duplicate element id: " + elements[i]);
    p.elements_ = std::move(elements);
    for (const auto& [a, b] : covers) {
      int ia = p.index(a), ib = p.index(b);
      if (ia == ib) throw PosetError("cycle detected at (" + a + ", " + b + ")");
      p.covers_.emplace_back(ia, ib);
    }
    std::sort(p.covers_.begin(), p.covers_.end());
    for (std::size_t i = 1; i < p.covers_.size(); ++i)
      if (p.covers_[i] == p.covers_[i - 1])
        throw PosetError("duplicate cover: (" + p.element(p.covers_[i].first) + ", " +
                         p.element(p.covers_[i].second) + ")");
    p.finish_construction();
    return p;
  }

  // Product grid {0..n} x {0..n} with componentwise order.  Ids are "(i,j)".
  static Poset grid(int n) {
    if (n < 0) throw PosetError("grid size must be nonnegative");
    std::vector<std::string> elems;
    std::vector<std::pair<std::string, std::string>> covers;
    auto id = [](int i, int j) {
      return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    };
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        elems.push_back(id(i, j));
        if (i < n) covers.emplace_back(id(i, j), id(i + 1, j));
        if (j < n) covers.emplace_back(id(i, j), id(i, j + 1));
      }
    Poset p = from_covers(std::move(elems), covers);
    p.grid_n_ = n;
    return p;
  }

  int size() const { return static_cast<int>(elements_.size()); }
  const std::string& element(int i) const { return elements_[i]; }
  const std::vector<std::string>& elements() const { return elements_; }

  int index(const std::string& id) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), id);
    if (it == elements_.end() || *it != id) throw PosetError("unknown element id: " + id);
    return static_cast<int>(it - elements_.begin());
  }

  bool leq(int p, int q) const { return leq_[p][q] != 0; }
  bool less(int p, int q) const { return p != q && leq(p, q); }

  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  int cover_index(int p, int q) const {
    auto it = std::lower_bound(covers_.begin(), covers_.end(), std::make_pair(p, q));
    if (it == covers_.end() || *it != std::make_pair(p, q)) return -1;
    return static_cast<int>(it - covers_.begin());
  }
  const std::vector<int>& covers_out(int p) const { return covers_out_[p]; }
  const std::vector<int>& covers_in(int q) const { return covers_in_[q]; }

  // Indices in a topological order (sources first), ties broken by index.
  const std::vector<int>& topo_order() const { return topo_; }

  // All saturated paths p = v0 < v1 < ... < vk = q through covers, each a
  // vertex sequence, in lexicographic order.  Throws once cap is exceeded.
  std::vector<std::vector<int>> hasse_paths(int p, int q, std::size_t cap = 10000) const {
    if (!leq(p, q))
      throw PosetError("no paths: " + element(p) + " is not below " + element(q));
    std::vector<std::vector<int>> paths;
    std::vector<int> cur{p};
    hasse_dfs(p, q, cap, cur, paths);
    return paths;
  }

  long long mobius(int p, int q) const { return leq(p, q) ? mobius_[p][q] : 0; }

  // Number of covers in a longest chain.
  int longest_chain() const { return longest_chain_; }

  // Nerve of the poset: every strictly increasing chain is a simplex.
  OrderComplex order_complex() const {
    OrderComplex c;
    std::vector<int> chain;
    for (int v = 0; v < size(); ++v) {
      chain.push_back(v);
      chain_dfs(chain, c);
      chain.pop_back();
    }
    return c;
  }

  bool is_grid() const { return grid_n_ >= 0; }
  int grid_n() const { return grid_n_; }

  bool operator==(const Poset& o) const {
    return elements_ == o.elements_ && covers_ == o.covers_;
  }

 private:
  Poset() = default;

  void finish_construction() {
    int n = size();
    covers_out_.assign(n, {});
    covers_in_.assign(n, {});
    for (int c = 0; c < static_cast<int>(covers_.size()); ++c) {
      covers_out_[covers_[c].first].push_back(c);
      covers_in_[covers_[c].second].push_back(c);
    }
    // covers_ is sorted, so covers_out_ lists are already ordered by target.

    topo_sort_or_throw();
    close_order();
    check_reduced();
    compute_mobius();
    compute_longest_chain();
  }

  void topo_sort_or_throw() {
    int n = size();
    std::vector<int> indeg(n, 0);
    for (const auto& [p, q] : covers_) ++indeg[q];
    std::vector<int> ready;
    for (int v = n - 1; v >= 0; --v)
      if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
      // smallest index first for determinism
      std::sort(ready.rbegin(), ready.rend());
      int v = ready.back();
      ready.pop_back();
      topo_.push_back(v);
      for (int c : covers_out_[v])
        if (--indeg[covers_[c].second] == 0) ready.push_back(covers_[c].second);
    }
    if (static_cast<int>(topo_.size()) == n) return;
    // Some cycle remains.  Every unprocessed vertex keeps an unprocessed
    // predecessor, so walking predecessors must revisit a vertex on a cycle.
    std::vector<char> stuck(n, 1);
    for (int v : topo_) stuck[v] = 0;
    int v = 0;
    while (!stuck[v]) ++v;
    std::vector<int> seen(n, 0);
    int prev = v;
    while (!seen[v]) {
      seen[v] = 1;
      for (int c : covers_in_[v])
        if (stuck[covers_[c].first]) {
          prev = covers_[c].first;
          break;
        }
      std::swap(v, prev);
    }
    throw PosetError("cycle detected at (" + element(v) + ", " + element(prev) + ")");
  }

  void close_order() {
    int n = size();
    leq_.assign(n, std::vector<char>(n, 0));
    for (int i = n - 1; i >= 0; --i) {
      int v = topo_[static_cast<std::size_t>(i)];
      leq_[v][v] = 1;
      for (int c : covers_out_[v]) {
        int w = covers_[c].second;
        for (int u = 0; u < n; ++u)
          if (leq_[w][u]) leq_[v][u] = 1;
      }
    }
  }

  void check_reduced() {
    for (const auto& [p, q] : covers_)
      for (int r = 0; r < size(); ++r)
        if (r != p && r != q && leq(p, r) && leq(r, q))
          throw PosetError("cover implied by transitivity: (" + element(p) + ", " +
                           element(q) + ") via " + element(r));
  }

  void compute_mobius() {
    int n = size();
    mobius_.assign(n, std::vector<long long>(n, 0));
    // mu(p,p) = 1; mu(p,q) = -sum_{p <= r < q} mu(p,r), filled along topo order.
    for (int p = 0; p < n; ++p) {
      mobius_[p][p] = 1;
      for (int qi : topo_) {
        if (qi == p || !leq(p, qi)) continue;
        long long s = 0;
        for (int r = 0; r < n; ++r)
          if (leq(p, r) && less(r, qi)) s += mobius_[p][r];
        mobius_[p][qi] = -s;
      }
    }
  }

  void compute_longest_chain() {
    std::vector<int> best(size(), 0);
    longest_chain_ = 0;
    for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
      int v = *it;
      for (int c : covers_out_[v])
        best[v] = std::max(best[v], best[covers_[c].second] + 1);
      longest_chain_ = std::max(longest_chain_, best[v]);
    }
  }

  void hasse_dfs(int v, int q, std::size_t cap, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) const {
    if (v == q) {
      if (out.size() >= cap)
        throw PosetError("path cap exceeded between " + element(cur.front()) + " and " +
                         element(q) + " (cap " + std::to_string(cap) + ")");
      out.push_back(cur);
      return;
    }
    for (int c : covers_out_[v]) {
      int w = covers_[c].second;
      if (!leq(w, q)) continue;
      cur.push_back(w);
      hasse_dfs(w, q, cap, cur, out);
      cur.pop_back();
    }
  }

  void chain_dfs(std::vector<int>& chain, OrderComplex& c) const {
    int d = static_cast<int>(chain.size()) - 1;
    if (d >= static_cast<int>(c.simplices.size())) c.simplices.resize(d + 1);
    c.simplices[d].push_back(chain);
    int last = chain.back();
    for (int w = 0; w < size(); ++w) {
      if (!less(last, w)) continue;
      chain.push_back(w);
      chain_dfs(chain, c);
      chain.pop_back();
    }
  }

  std::vector<std::string> elements_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> covers_out_, covers_in_;
  std::vector<std::vector<char>> leq_;
  std::vector<std::vector<long long>> mobius_;
  std::vector<int> topo_;
  int longest_chain_ = 0;
  int grid_n_ = -1;
};

// Unreduced simplicial cohomology of the nerve with field coefficients;
// H^0 counts connected components.  Returns dims for degrees 0..max_degree.
template <class F>
std::vector<int> nerve_cohomology_dims(const OrderComplex& cx, F field, int max_degree) {
  std::vector<int> h(max_degree + 1, 0);
  int top = cx.dim();
  if (top < 0) return h;  // empty complex

  auto count = [&](int d) {
    return (d >= 0 && d <= top) ? static_cast<int>(cx.simplices[d].size()) : 0;
  };

  // coboundary[d]: C^d -> C^{d+1}, entry (sigma, tau) = (-1)^i for tau = d_i sigma.
  auto coboundary = [&](int d) {
    Matrix<F> m(field, count(d + 1), count(d));
    if (m.rows == 0 || m.cols == 0) return m;
    std::map<std::vector<int>, int> index;
    for (int t = 0; t < count(d); ++t) index[cx.simplices[d][t]] = t;
    for (int s = 0; s < count(d + 1); ++s) {
      const auto& simplex = cx.simplices[d + 1][s];
      std::vector<int> face;
      for (int i = 0; i <= d + 1; ++i) {
        face = simplex;
        face.erase(face.begin() + i);
        typename F::Elem sign = (i % 2 == 0) ? field.one() : field.neg(field.one());
        m.at(s, index.at(face)) = sign;
      }
    }
    return m;
  };

  std::vector<int> rk(max_degree + 2, 0);  // rk[d] = rank of C^{d-1} -> C^d
  for (int d = 0; d <= max_degree; ++d)
    if (count(d + 1) > 0 && count(d) > 0) rk[d + 1] = rank(coboundary(d));
  for (int d = 0; d <= max_degree; ++d) h[d] = count(d) - rk[d + 1] - rk[d];
  return h;
}

}  // namespace persext
