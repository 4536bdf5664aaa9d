#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "persext/resolution.hpp"

// Ext groups between persistence modules, two independent ways: applying
// Hom(-, N) to a minimal projective resolution (all degrees), and the
// deformation-theoretic three-term complex (degree 1 only).  Plus the
// classical consistency checks that tie Ext to the topology (nerve
// cohomology) and combinatorics (Mobius function) of the poset.

namespace persext {

// Hom(P_v, N) = N(v), so the Hom complex of a resolution has one block of
// size dims_N(v_k) per generator, and the induced differential multiplies the
// scalar entry c_{lk} by N's structure map along v_l <= v_k.
template <class F>
std::vector<int> ext_dims_from_resolution(const ProjectiveResolution<F>& res,
                                          const PModule<F>& n, int max_degree) {
  if (max_degree < 0) return {};
  std::vector<int> h(max_degree + 1, 0);
  int len = res.steps.empty() ? -1 : static_cast<int>(res.steps.size()) - 1;

  auto hom_dim_at = [&](int i) {
    int d = 0;
    if (i >= 0 && i <= len)
      for (int v : res.steps[i]) d += n.dims[v];
    return d;
  };

  // rank of Hom(P^{i-1}, N) -> Hom(P^i, N)
  auto rank_at = [&](int i) {
    if (i < 1 || i > len) return 0;
    const auto& lo = res.steps[i - 1];
    const auto& hi = res.steps[i];
    const Matrix<F>& d = res.differentials[i - 1];
    std::vector<int> roff(hi.size() + 1, 0), coff(lo.size() + 1, 0);
    for (std::size_t k = 0; k < hi.size(); ++k) roff[k + 1] = roff[k] + n.dims[hi[k]];
    for (std::size_t l = 0; l < lo.size(); ++l) coff[l + 1] = coff[l] + n.dims[lo[l]];
    Matrix<F> t(n.field, roff[hi.size()], coff[lo.size()]);
    for (std::size_t k = 0; k < hi.size(); ++k)
      for (std::size_t l = 0; l < lo.size(); ++l) {
        if (n.field.is_zero(d.at(static_cast<int>(l), static_cast<int>(k)))) continue;
        if (!n.poset->leq(lo[l], hi[k])) continue;
        Matrix<F> block =
            scalar_mul(d.at(static_cast<int>(l), static_cast<int>(k)),
                       n.structure_map(lo[l], hi[k]));
        set_block(t, roff[k], coff[l], block);
      }
    return rank(t);
  };

  std::vector<int> rk(max_degree + 2, 0);
  for (int i = 0; i <= max_degree + 1; ++i) rk[i] = rank_at(i);
  for (int i = 0; i <= max_degree; ++i) h[i] = hom_dim_at(i) - rk[i + 1] - rk[i];
  return h;
}

// dim Ext^i(M, N) for i = 0..max_degree via a minimal resolution of M.
template <class F>
std::vector<int> ext_dims(const PModule<F>& m, const PModule<F>& n, int max_degree) {
  if (max_degree < 0)
    throw std::invalid_argument("ext needs a nonnegative degree bound");
  if (!(*m.poset == *n.poset))
    throw std::invalid_argument("ext needs modules over the same poset");
  if (!same_field(m.field, n.field))
    throw std::invalid_argument("ext needs modules over the same field");
  ProjectiveResolution<F> res = minimal_resolution(m);
  if (!res.complete)
    throw std::logic_error("resolution did not terminate within the chain bound");
  return ext_dims_from_resolution(res, n, max_degree);
}

// ---- degree-1 oracle: the deformation complex ----

// A commutativity relation: two parallel Hasse paths p -> q whose composites
// must agree; `ref` is the lexicographic reference path.
struct PathRelation {
  int p, q;
  std::vector<int> path, ref;
};

// Unit squares on grids (the minimal relations); otherwise every parallel
// path paired with its reference.
inline std::vector<PathRelation> commutativity_relations(const Poset& ps) {
  std::vector<PathRelation> rels;
  if (ps.is_grid()) {
    int n = ps.grid_n();
    for (int v = 0; v < ps.size(); ++v) {
      const std::string& id = ps.element(v);
      std::size_t comma = id.find(',');
      int i = std::stoi(id.substr(1, comma - 1));
      int j = std::stoi(id.substr(comma + 1, id.size() - comma - 2));
      if (i >= n || j >= n) continue;
      int q = ps.index("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      auto paths = ps.hasse_paths(v, q);
      rels.push_back({v, q, paths[1], paths[0]});
    }
    return rels;
  }
  for (int p = 0; p < ps.size(); ++p)
    for (int q = 0; q < ps.size(); ++q) {
      if (!ps.less(p, q)) continue;
      auto paths = ps.hasse_paths(p, q);
      for (std::size_t j = 1; j < paths.size(); ++j) rels.push_back({p, q, paths[j], paths[0]});
    }
  return rels;
}

template <class F>
struct DeformationComplex {
  int c0, c1, c2;       // dims of the three terms
  Matrix<F> d0, d1;     // d0: C0 -> C1, d1: C1 -> C2
  std::vector<PathRelation> relations;

  int ext1_dim() const { return (c1 - rank(d1)) - rank(d0); }
};

// C0 = sum_v Hom(M_v, N_v), C1 = sum_{covers (p,q)} Hom(M_p, N_q),
// C2 = sum_{relations (p,q)} Hom(M_p, N_q).
// d0(delta)_c = delta_q M_c - N_c delta_p;
// d1 linearizes each relation by the Leibniz rule.
template <class F>
DeformationComplex<F> build_deformation_complex(const PModule<F>& m, const PModule<F>& n) {
  if (!(*m.poset == *n.poset))
    throw std::invalid_argument("deformation complex needs modules over the same poset");
  if (!same_field(m.field, n.field))
    throw std::invalid_argument("deformation complex needs modules over the same field");
  const Poset& ps = *m.poset;
  const F& f = m.field;

  std::vector<int> voff(ps.size() + 1, 0);
  for (int v = 0; v < ps.size(); ++v) voff[v + 1] = voff[v] + n.dims[v] * m.dims[v];
  std::vector<int> coff(ps.covers().size() + 1, 0);
  for (std::size_t c = 0; c < ps.covers().size(); ++c) {
    auto [p, q] = ps.covers()[c];
    coff[c + 1] = coff[c] + n.dims[q] * m.dims[p];
  }
  std::vector<PathRelation> rels = commutativity_relations(ps);
  std::vector<int> roff(rels.size() + 1, 0);
  for (std::size_t r = 0; r < rels.size(); ++r)
    roff[r + 1] = roff[r] + n.dims[rels[r].q] * m.dims[rels[r].p];

  int c0 = voff[ps.size()], c1 = coff[ps.covers().size()],
      c2 = roff[rels.size()];

  Matrix<F> d0(f, c1, c0);
  for (std::size_t c = 0; c < ps.covers().size(); ++c) {
    auto [p, q] = ps.covers()[c];
    const Matrix<F>& mc = m.maps[c];
    const Matrix<F>& nc = n.maps[c];
    for (int r = 0; r < n.dims[q]; ++r)
      for (int s = 0; s < m.dims[p]; ++s) {
        int row = coff[c] + r * m.dims[p] + s;
        // (delta_q M_c)[r,s]
        for (int k = 0; k < m.dims[q]; ++k)
          d0.at(row, voff[q] + r * m.dims[q] + k) =
              f.add(d0.at(row, voff[q] + r * m.dims[q] + k), mc.at(k, s));
        // -(N_c delta_p)[r,s]
        for (int k = 0; k < n.dims[p]; ++k)
          d0.at(row, voff[p] + k * m.dims[p] + s) =
              f.sub(d0.at(row, voff[p] + k * m.dims[p] + s), nc.at(r, k));
      }
  }

  Matrix<F> d1(f, c2, c1);
  for (std::size_t ri = 0; ri < rels.size(); ++ri) {
    const PathRelation& rel = rels[ri];
    for (int which = 0; which < 2; ++which) {
      const std::vector<int>& path = which == 0 ? rel.path : rel.ref;
      bool negate = which == 1;
      for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        int a = path[s], b = path[s + 1];
        int c = ps.cover_index(a, b);
        // N-composite after the arrow and M-composite before it
        std::vector<int> suffix(path.begin() + s + 1, path.end());
        std::vector<int> prefix(path.begin(), path.begin() + s + 1);
        Matrix<F> after = n.path_composite(suffix);
        Matrix<F> before = m.path_composite(prefix);
        for (int r = 0; r < n.dims[rel.q]; ++r)
          for (int t = 0; t < m.dims[rel.p]; ++t) {
            int row = roff[ri] + r * m.dims[rel.p] + t;
            for (int u = 0; u < n.dims[b]; ++u) {
              if (f.is_zero(after.at(r, u))) continue;
              for (int w = 0; w < m.dims[a]; ++w) {
                typename F::Elem term = f.mul(after.at(r, u), before.at(w, t));
                if (negate) term = f.neg(term);
                int col = coff[c] + u * m.dims[a] + w;
                d1.at(row, col) = f.add(d1.at(row, col), term);
              }
            }
          }
      }
    }
  }

  return {c0, c1, c2, std::move(d0), std::move(d1), std::move(rels)};
}

// dim Ext^1(M, N) as ker(d1)/im(d0) of the deformation complex.
template <class F>
int ext1_deformation_complex(const PModule<F>& m, const PModule<F>& n) {
  return build_deformation_complex(m, n).ext1_dim();
}

// ---- consistency checks ----

// Ext^*(k, k) over the poset algebra must equal the cohomology of the nerve.
struct MitchellCheck {
  std::vector<int> ext, nerve;  // degrees 0..max_degree
  bool agree = false;
};

template <class F>
MitchellCheck mitchell_check(std::shared_ptr<const Poset> poset, F field,
                             int max_degree = -1) {
  if (max_degree < 0) max_degree = poset->longest_chain() + 1;
  MitchellCheck out;
  PModule<F> k = interval_full(poset, field);
  out.ext = ext_dims(k, k, max_degree);
  out.nerve = nerve_cohomology_dims(poset->order_complex(), field, max_degree);
  out.agree = out.ext == out.nerve;
  return out;
}

// Alternating Ext sums between simples recover the Mobius function.
struct EulerMobiusRow {
  int p, q;
  long long euler, mobius;
  bool agree;
};

struct EulerMobiusCheck {
  std::vector<EulerMobiusRow> rows;  // all pairs p <= q, index order
  bool all_agree = true;
};

template <class F>
EulerMobiusCheck euler_mobius_check(std::shared_ptr<const Poset> poset, F field) {
  EulerMobiusCheck out;
  int deg = poset->longest_chain();
  for (int p = 0; p < poset->size(); ++p) {
    ProjectiveResolution<F> res = minimal_resolution(simple(poset, field, p));
    for (int q = 0; q < poset->size(); ++q) {
      if (!poset->leq(p, q)) continue;
      std::vector<int> dims =
          ext_dims_from_resolution(res, simple(poset, field, q), deg);
      long long euler = 0;
      for (int i = 0; i <= deg; ++i) euler += (i % 2 == 0 ? 1 : -1) * dims[i];
      long long mob = poset->mobius(p, q);
      bool agree = euler == mob;
      out.rows.push_back({p, q, euler, mob, agree});
      out.all_agree = out.all_agree && agree;
    }
  }
  return out;
}

// ---- self-extension report ----

enum class Classification { rigid, smooth_unobstructed, potentially_obstructed };

inline std::string to_string(Classification c) {
  switch (c) {
    case Classification::rigid: return "rigid";
    case Classification::smooth_unobstructed: return "smooth_unobstructed";
    default: return "potentially_obstructed";
  }
}

struct ExtReport {
  std::vector<int> self_ext;  // degrees 0..max shown
  int tangent_dim = 0;        // dim Ext^1
  int obstruction_dim = 0;    // dim Ext^2
  Classification classification = Classification::rigid;
};

// Self-Ext of M up to the global dimension of the poset algebra (or to
// max_degree if given), with the tangent/obstruction classification.
template <class F>
ExtReport rigidity_report(const PModule<F>& m, int max_degree = -1) {
  if (m.is_zero())
    throw std::invalid_argument("rigidity report of the zero module is undefined");
  if (max_degree < 0) max_degree = global_dimension(m.poset, m.field);
  ExtReport rep;
  rep.self_ext = ext_dims(m, m, max_degree);
  rep.tangent_dim = max_degree >= 1 ? rep.self_ext[1] : 0;
  rep.obstruction_dim = max_degree >= 2 ? rep.self_ext[2] : 0;
  // A nonzero obstruction space wins even when the tangent space vanishes
  // (direct sums of simples on a grid can have Ext^1 = 0 with Ext^2 != 0).
  if (rep.obstruction_dim > 0)
    rep.classification = Classification::potentially_obstructed;
  else if (rep.tangent_dim == 0)
    rep.classification = Classification::rigid;
  else
    rep.classification = Classification::smooth_unobstructed;
  return rep;
}

}  // namespace persext
