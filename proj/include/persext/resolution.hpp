#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "persext/pmodule.hpp"

// Minimal projective resolutions over the poset algebra, built by iterating
// projective covers.  A step is an ordered multiset of vertices (generators of
// a sum of indecomposable projectives); a differential is a scalar matrix
// whose (l,k) entry multiplies the incidence element e_{v_l, v_k}.

namespace persext {

// ⊕_k P_{v_k} for an ordered vertex multiset.  At a vertex w the local
// coordinates are the generators k with v_k <= w, in multiset order.
template <class F>
PModule<F> projective_sum(std::shared_ptr<const Poset> poset, F field,
                          const std::vector<int>& verts) {
  PModule<F> m(poset, field);
  const Poset& ps = *m.poset;
  for (int w = 0; w < ps.size(); ++w) {
    int d = 0;
    for (int v : verts)
      if (ps.leq(v, w)) ++d;
    m.dims[w] = d;
  }
  reshape_zero_maps(m);
  for (std::size_t c = 0; c < ps.covers().size(); ++c) {
    auto [p, q] = ps.covers()[c];
    int col = 0, row = 0;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      bool in_p = ps.leq(verts[k], p);
      bool in_q = ps.leq(verts[k], q);
      if (in_p) m.maps[c].at(row, col) = field.one();
      col += in_p ? 1 : 0;
      row += in_q ? 1 : 0;
    }
  }
  return m;
}

// Generators of `verts` supported at w, in multiset order.
inline std::vector<int> generators_at(const Poset& ps, const std::vector<int>& verts, int w) {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(verts.size()); ++k)
    if (ps.leq(verts[k], w)) out.push_back(k);
  return out;
}

// Projective cover P -> M.  Generator multiplicities are the top dims; lifts
// are the unit vectors at non-pivot coordinates of the canonical incoming
// image basis, so the construction is deterministic.
template <class F>
std::pair<std::vector<int>, ModuleMorphism<F>> projective_cover(const PModule<F>& m) {
  const Poset& ps = *m.poset;
  std::vector<int> verts;
  std::vector<std::vector<int>> lift_coords(ps.size());
  for (int v = 0; v < ps.size(); ++v) {
    Matrix<F> stacked(m.field, m.dims[v], 0);
    for (int c : ps.covers_in(v)) stacked = hstack(stacked, m.maps[c]);
    Echelon<F> e = rref(stacked.transpose());
    std::vector<char> is_pivot(m.dims[v], 0);
    for (int p : e.pivots) is_pivot[p] = 1;
    for (int j = 0; j < m.dims[v]; ++j)
      if (!is_pivot[j]) {
        verts.push_back(v);
        lift_coords[v].push_back(j);
      }
  }
  PModule<F> cover = projective_sum(m.poset, m.field, verts);
  ModuleMorphism<F> epi = zero_morphism(cover, m);
  for (int w = 0; w < ps.size(); ++w) {
    std::vector<int> gens = generators_at(ps, verts, w);
    for (int pos = 0; pos < static_cast<int>(gens.size()); ++pos) {
      int k = gens[pos];
      int v = verts[k];
      // which lift of v this generator carries
      int copy = 0;
      for (int k2 = 0; k2 < k; ++k2)
        if (verts[k2] == v) ++copy;
      Matrix<F> unit(m.field, m.dims[v], 1);
      unit.at(lift_coords[v][copy], 0) = m.field.one();
      Matrix<F> col = m.structure_map(v, w) * unit;
      set_block(epi.components[w], 0, pos, col);
    }
  }
  return {std::move(verts), std::move(epi)};
}

template <class F>
struct ProjectiveResolution {
  std::vector<std::vector<int>> steps;      // steps[i]: generators of P^i
  std::vector<Matrix<F>> differentials;     // differentials[i]: P^{i+1} -> P^i
  ModuleMorphism<F> augmentation;           // P^0 -> M (zero morphism for M = 0)
  bool complete = false;                    // kernel reached zero within the bound

  int length() const { return steps.empty() ? 0 : static_cast<int>(steps.size()) - 1; }
};

// Minimal resolution, at most max_len differentials; the default bound is
// longest chain + 1, which is always enough for a poset algebra.
template <class F>
ProjectiveResolution<F> minimal_resolution(const PModule<F>& m, int max_len = -1) {
  const Poset& ps = *m.poset;
  if (max_len < 0) max_len = ps.longest_chain() + 1;
  ProjectiveResolution<F> res{{}, {}, zero_morphism(zero_module(m.poset, m.field), m), false};
  if (m.is_zero()) {
    res.complete = true;
    return res;
  }
  auto [s0, epi0] = projective_cover(m);
  res.steps.push_back(std::move(s0));
  res.augmentation = epi0;
  ModuleMorphism<F> epi = std::move(epi0);
  for (int i = 1; i <= max_len; ++i) {
    auto [ker, incl] = kernel(epi);
    if (ker.is_zero()) {
      res.complete = true;
      break;
    }
    auto [si, epi_i] = projective_cover(ker);
    const std::vector<int>& prev = res.steps.back();
    Matrix<F> d(m.field, static_cast<int>(prev.size()), static_cast<int>(si.size()));
    for (int k = 0; k < static_cast<int>(si.size()); ++k) {
      int vk = si[k];
      std::vector<int> gens_k = generators_at(ps, si, vk);
      int pos_k = -1;
      for (int pos = 0; pos < static_cast<int>(gens_k.size()); ++pos)
        if (gens_k[pos] == k) pos_k = pos;
      // lift of generator k in kernel coordinates, pushed into P^{i-1}
      Matrix<F> lift(m.field, ker.dims[vk], 1);
      for (int r = 0; r < ker.dims[vk]; ++r) lift.at(r, 0) = epi_i.components[vk].at(r, pos_k);
      Matrix<F> in_prev = incl.components[vk] * lift;
      std::vector<int> rows = generators_at(ps, prev, vk);
      for (int idx = 0; idx < static_cast<int>(rows.size()); ++idx)
        d.at(rows[idx], k) = in_prev.at(idx, 0);
    }
    res.steps.push_back(std::move(si));
    res.differentials.push_back(std::move(d));
    epi = std::move(epi_i);
  }
  return res;
}

// Realizes a scalar differential as a module morphism between projective sums.
template <class F>
ModuleMorphism<F> differential_morphism(std::shared_ptr<const Poset> poset, F field,
                                        const std::vector<int>& lo,
                                        const std::vector<int>& hi, const Matrix<F>& d) {
  const Poset& ps = *poset;
  PModule<F> src = projective_sum(poset, field, hi);
  PModule<F> dst = projective_sum(poset, field, lo);
  ModuleMorphism<F> f = zero_morphism(src, dst);
  for (int w = 0; w < ps.size(); ++w) {
    std::vector<int> rows = generators_at(ps, lo, w);
    std::vector<int> cols = generators_at(ps, hi, w);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        f.components[w].at(i, j) = d.at(rows[i], cols[j]);
  }
  return f;
}

template <class F>
int projective_dimension(const PModule<F>& m) {
  if (m.is_zero())
    throw std::invalid_argument("projective dimension of the zero module is undefined");
  ProjectiveResolution<F> res = minimal_resolution(m);
  if (!res.complete)
    throw std::logic_error("resolution did not terminate within the chain bound");
  return res.length();
}

template <class F>
int global_dimension(std::shared_ptr<const Poset> poset, F field) {
  if (poset->size() == 0)
    throw std::invalid_argument("global dimension of the empty poset is undefined");
  int g = 0;
  for (int v = 0; v < poset->size(); ++v)
    g = std::max(g, projective_dimension(simple(poset, field, v)));
  return g;
}

}  // namespace persext
