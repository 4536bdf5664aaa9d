#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "persext/pmodule.hpp"

// Seeded generation of valid random modules for property tests and oracle
// corpora.  The PRNG is self-contained so the same seed yields the same
// corpus on every platform and standard library.

namespace persext {

// SplitMix64; passes through the full 64-bit state space, fine for tests.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d4a28885a308d3ull;
    return z ^ (z >> 31);
  }

  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

inline GF::Elem random_elem(const GF& field, SplitMix64& rng) {
  return static_cast<GF::Elem>(rng.below(static_cast<std::uint64_t>(field.p)));
}

inline Rationals::Elem random_elem(const Rationals& field, SplitMix64& rng) {
  return field.from_int(static_cast<std::int64_t>(rng.below(7)) - 3);
}

// Random valid module with dims <= max_dim per vertex.  Vertices are filled
// in topological order; the maps into each vertex are sampled inside the
// solution space of the commutativity constraints, which are linear in those
// maps once everything below is fixed.  It suffices to force agreement over
// the maximal common lower bounds of each pair of incoming covers.
template <class F>
PModule<F> random_module(std::shared_ptr<const Poset> poset, F field, SplitMix64& rng,
                         int max_dim = 3) {
  PModule<F> m(poset, field);
  const Poset& ps = *m.poset;
  for (int v = 0; v < ps.size(); ++v)
    m.dims[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_dim) + 1));
  reshape_zero_maps(m);

  for (int q : ps.topo_order()) {
    const std::vector<int>& in = ps.covers_in(q);
    if (in.empty() || m.dims[q] == 0) continue;

    // unknowns: entries of every incoming map, in cover order
    std::vector<int> off(in.size() + 1, 0);
    for (std::size_t i = 0; i < in.size(); ++i)
      off[i + 1] = off[i] + m.dims[q] * m.dims[ps.covers()[in[i]].first];
    int unknowns = off[in.size()];
    if (unknowns == 0) continue;

    std::vector<std::vector<typename F::Elem>> eqs;
    for (std::size_t i = 0; i < in.size(); ++i)
      for (std::size_t j = i + 1; j < in.size(); ++j) {
        int pi = ps.covers()[in[i]].first, pj = ps.covers()[in[j]].first;
        for (int w = 0; w < ps.size(); ++w) {
          if (!ps.leq(w, pi) || !ps.leq(w, pj)) continue;
          bool maximal = true;
          for (int w2 = 0; w2 < ps.size() && maximal; ++w2)
            if (w2 != w && ps.less(w, w2) && ps.leq(w2, pi) && ps.leq(w2, pj))
              maximal = false;
          if (!maximal) continue;
          // X_i M(w<=pi) - X_j M(w<=pj) = 0
          Matrix<F> a = m.structure_map(w, pi);
          Matrix<F> b = m.structure_map(w, pj);
          for (int r = 0; r < m.dims[q]; ++r)
            for (int s = 0; s < m.dims[w]; ++s) {
              std::vector<typename F::Elem> row(unknowns, field.zero());
              for (int k = 0; k < m.dims[pi]; ++k)
                row[off[i] + r * m.dims[pi] + k] =
                    field.add(row[off[i] + r * m.dims[pi] + k], a.at(k, s));
              for (int k = 0; k < m.dims[pj]; ++k)
                row[off[j] + r * m.dims[pj] + k] =
                    field.sub(row[off[j] + r * m.dims[pj] + k], b.at(k, s));
              eqs.push_back(std::move(row));
            }
        }
      }

    Matrix<F> sys(field, static_cast<int>(eqs.size()), unknowns);
    for (std::size_t r = 0; r < eqs.size(); ++r)
      for (int c = 0; c < unknowns; ++c) sys.at(static_cast<int>(r), c) = eqs[r][c];
    Matrix<F> basis = kernel_basis(sys);

    std::vector<typename F::Elem> x(unknowns, field.zero());
    for (int attempt = 0; attempt < 5; ++attempt) {
      for (auto& v : x) v = field.zero();
      bool nonzero = false;
      for (int bcol = 0; bcol < basis.cols; ++bcol) {
        typename F::Elem c = random_elem(field, rng);
        if (field.is_zero(c)) continue;
        nonzero = true;
        for (int r = 0; r < unknowns; ++r)
          x[r] = field.add(x[r], field.mul(c, basis.at(r, bcol)));
      }
      if (nonzero || basis.cols == 0) break;  // degenerate draw: resample
    }

    for (std::size_t i = 0; i < in.size(); ++i) {
      int p = ps.covers()[in[i]].first;
      Matrix<F>& map = m.maps[in[i]];
      for (int r = 0; r < m.dims[q]; ++r)
        for (int k = 0; k < m.dims[p]; ++k) map.at(r, k) = x[off[i] + r * m.dims[p] + k];
    }
  }
  return m;
}

}  // namespace persext
