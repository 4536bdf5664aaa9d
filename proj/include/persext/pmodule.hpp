#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "persext/matrix.hpp"
#include "persext/poset.hpp"

// Persistence modules over a finite poset: one vector space per element, one
// matrix per covering relation, composites along parallel paths required to
// agree.  Equivalently, representations of the Hasse quiver bound by all
// commutativity relations.

namespace persext {

template <class Fa, class Fb>
bool same_field(const Fa& a, const Fb& b) {
  return a.spec_string() == b.spec_string();
}

template <class F>
struct PModule {
  std::shared_ptr<const Poset> poset;
  F field;
  std::vector<int> dims;             // per vertex index
  std::vector<Matrix<F>> maps;       // per cover index c=(p,q): dims[q] x dims[p]

  PModule(std::shared_ptr<const Poset> ps, F f)
      : poset(std::move(ps)), field(f) {
    dims.assign(poset->size(), 0);
    for (const auto& [p, q] : poset->covers()) {
      (void)p;
      (void)q;
      maps.push_back(Matrix<F>(field, 0, 0));
    }
  }

  int total_dim() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
  }

  bool is_zero() const { return total_dim() == 0; }

  // Composite of cover maps along an explicit vertex path.
  Matrix<F> path_composite(const std::vector<int>& path) const {
    Matrix<F> m = Matrix<F>::identity(field, dims[path.front()]);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      int c = poset->cover_index(path[i], path[i + 1]);
      if (c < 0) throw std::invalid_argument("path step is not a cover");
      m = maps[c] * m;
    }
    return m;
  }

  // M(p <= q) along the lexicographically first Hasse path.  For valid
  // modules every path gives the same matrix.
  Matrix<F> structure_map(int p, int q) const {
    if (!poset->leq(p, q)) throw std::invalid_argument("structure_map needs p <= q");
    Matrix<F> m = Matrix<F>::identity(field, dims[p]);
    int v = p;
    while (v != q) {
      for (int c : poset->covers_out(v)) {
        int w = poset->covers()[c].second;
        if (!poset->leq(w, q)) continue;
        m = maps[c] * m;
        v = w;
        break;
      }
    }
    return m;
  }
};

template <class F>
bool operator==(const PModule<F>& x, const PModule<F>& y) {
  return *x.poset == *y.poset && same_field(x.field, y.field) && x.dims == y.dims &&
         x.maps == y.maps;
}

struct CommutativityViolation {
  int p, q;
  std::vector<int> path, ref;  // differing path and its lexicographic reference;
                               // ref empty means a naturality failure on cover (p,q)

  std::string describe(const Poset& poset) const {
    auto fmt = [&](const std::vector<int>& pth) {
      std::string s;
      for (std::size_t i = 0; i < pth.size(); ++i)
        s += (i ? " -> " : "") + poset.element(pth[i]);
      return s;
    };
    if (ref.empty())
      return "naturality fails on cover " + poset.element(p) + " -> " + poset.element(q);
    return "parallel paths " + poset.element(p) + " -> " + poset.element(q) +
           " disagree: [" + fmt(path) + "] vs [" + fmt(ref) + "]";
  }
};

struct ValidationReport {
  std::vector<std::string> shape_errors;
  std::vector<CommutativityViolation> violations;

  bool ok() const { return shape_errors.empty() && violations.empty(); }
};

template <class F>
ValidationReport validate(const PModule<F>& m) {
  ValidationReport rep;
  const Poset& ps = *m.poset;
  if (static_cast<int>(m.dims.size()) != ps.size())
    rep.shape_errors.push_back("dims has " + std::to_string(m.dims.size()) +
                               " entries, poset has " + std::to_string(ps.size()));
  for (int d : m.dims)
    if (d < 0) rep.shape_errors.push_back("negative dimension");
  if (m.maps.size() != ps.covers().size())
    rep.shape_errors.push_back("maps has " + std::to_string(m.maps.size()) +
                               " entries, poset has " + std::to_string(ps.covers().size()) +
                               " covers");
  if (!rep.shape_errors.empty()) return rep;
  for (std::size_t c = 0; c < ps.covers().size(); ++c) {
    auto [p, q] = ps.covers()[c];
    if (m.maps[c].rows != m.dims[q] || m.maps[c].cols != m.dims[p])
      rep.shape_errors.push_back("map " + ps.element(p) + " -> " + ps.element(q) +
                                 " has shape " + std::to_string(m.maps[c].rows) + "x" +
                                 std::to_string(m.maps[c].cols) + ", expected " +
                                 std::to_string(m.dims[q]) + "x" + std::to_string(m.dims[p]));
  }
  if (!rep.shape_errors.empty()) return rep;

  for (int p = 0; p < ps.size(); ++p)
    for (int q = 0; q < ps.size(); ++q) {
      if (!ps.less(p, q)) continue;
      auto paths = ps.hasse_paths(p, q);
      if (paths.size() < 2) continue;
      Matrix<F> ref = m.path_composite(paths[0]);
      for (std::size_t j = 1; j < paths.size(); ++j)
        if (!(m.path_composite(paths[j]) == ref))
          rep.violations.push_back({p, q, paths[j], paths[0]});
    }
  return rep;
}

// ---- named module constructors ----

template <class F>
PModule<F> zero_module(std::shared_ptr<const Poset> poset, F field) {
  return PModule<F>(std::move(poset), field);
}

// Fills map shapes to match dims, all zero.
template <class F>
void reshape_zero_maps(PModule<F>& m) {
  const auto& covers = m.poset->covers();
  for (std::size_t c = 0; c < covers.size(); ++c)
    m.maps[c] = Matrix<F>(m.field, m.dims[covers[c].second], m.dims[covers[c].first]);
}

// Simple module S_v: k at v, zero elsewhere.
template <class F>
PModule<F> simple(std::shared_ptr<const Poset> poset, F field, int v) {
  PModule<F> m(std::move(poset), field);
  m.dims[v] = 1;
  reshape_zero_maps(m);
  return m;
}

// Indecomposable projective P_v: k on the up-set of v, identities inside it.
template <class F>
PModule<F> projective(std::shared_ptr<const Poset> poset, F field, int v) {
  PModule<F> m(poset, field);
  for (int w = 0; w < m.poset->size(); ++w) m.dims[w] = m.poset->leq(v, w) ? 1 : 0;
  reshape_zero_maps(m);
  const auto& covers = m.poset->covers();
  for (std::size_t c = 0; c < covers.size(); ++c)
    if (m.poset->leq(v, covers[c].first)) m.maps[c].at(0, 0) = field.one();
  return m;
}

// Constant module: k everywhere, identity on every cover.
template <class F>
PModule<F> interval_full(std::shared_ptr<const Poset> poset, F field) {
  PModule<F> m(std::move(poset), field);
  for (int& d : m.dims) d = 1;
  reshape_zero_maps(m);
  for (auto& mp : m.maps) mp.at(0, 0) = field.one();
  return m;
}

// k everywhere, every map zero; decomposes as the sum of all simples.
template <class F>
PModule<F> trivial_ones(std::shared_ptr<const Poset> poset, F field) {
  PModule<F> m(std::move(poset), field);
  for (int& d : m.dims) d = 1;
  reshape_zero_maps(m);
  return m;
}

// Hook on the 2x2 grid: k at (0,0) and (1,0) joined by the identity.
template <class F>
PModule<F> hook_module(std::shared_ptr<const Poset> poset, F field) {
  if (!poset->is_grid() || poset->grid_n() != 1)
    throw std::invalid_argument("hook module needs the 2x2 grid poset");
  PModule<F> m(poset, field);
  int v00 = m.poset->index("(0,0)"), v10 = m.poset->index("(1,0)");
  m.dims[v00] = 1;
  m.dims[v10] = 1;
  reshape_zero_maps(m);
  m.maps[m.poset->cover_index(v00, v10)].at(0, 0) = field.one();
  return m;
}

// Direct sum of the diagonal simples S_(j,j) on a grid.
template <class F>
PModule<F> diagonal_module(std::shared_ptr<const Poset> poset, F field) {
  if (!poset->is_grid())
    throw std::invalid_argument("diagonal module needs a grid poset");
  PModule<F> m(poset, field);
  for (int j = 0; j <= m.poset->grid_n(); ++j) {
    std::string id = "(" + std::to_string(j) + "," + std::to_string(j) + ")";
    m.dims[m.poset->index(id)] = 1;
  }
  reshape_zero_maps(m);
  return m;
}

template <class F>
PModule<F> direct_sum(const PModule<F>& x, const PModule<F>& y) {
  if (!(*x.poset == *y.poset))
    throw std::invalid_argument("direct sum needs modules over the same poset");
  if (!same_field(x.field, y.field))
    throw std::invalid_argument("direct sum needs modules over the same field");
  PModule<F> m(x.poset, x.field);
  for (int v = 0; v < m.poset->size(); ++v) m.dims[v] = x.dims[v] + y.dims[v];
  reshape_zero_maps(m);
  const auto& covers = m.poset->covers();
  for (std::size_t c = 0; c < covers.size(); ++c) {
    set_block(m.maps[c], 0, 0, x.maps[c]);
    set_block(m.maps[c], x.dims[covers[c].second], x.dims[covers[c].first], y.maps[c]);
  }
  return m;
}

// ---- morphisms ----

template <class F>
struct ModuleMorphism {
  PModule<F> source, target;
  std::vector<Matrix<F>> components;  // per vertex: target.dims[v] x source.dims[v]
};

template <class F>
ModuleMorphism<F> zero_morphism(const PModule<F>& src, const PModule<F>& dst) {
  ModuleMorphism<F> f{src, dst, {}};
  for (int v = 0; v < src.poset->size(); ++v)
    f.components.push_back(Matrix<F>(src.field, dst.dims[v], src.dims[v]));
  return f;
}

template <class F>
ModuleMorphism<F> identity_morphism(const PModule<F>& m) {
  ModuleMorphism<F> f{m, m, {}};
  for (int v = 0; v < m.poset->size(); ++v)
    f.components.push_back(Matrix<F>::identity(m.field, m.dims[v]));
  return f;
}

// Naturality: f_q M(p<=q) = N(p<=q) f_p on every cover.
template <class F>
ValidationReport validate_morphism(const ModuleMorphism<F>& f) {
  ValidationReport rep;
  const Poset& ps = *f.source.poset;
  if (!(*f.source.poset == *f.target.poset)) {
    rep.shape_errors.push_back("source and target live over different posets");
    return rep;
  }
  if (static_cast<int>(f.components.size()) != ps.size()) {
    rep.shape_errors.push_back("component count mismatch");
    return rep;
  }
  for (int v = 0; v < ps.size(); ++v)
    if (f.components[v].rows != f.target.dims[v] || f.components[v].cols != f.source.dims[v])
      rep.shape_errors.push_back("component at " + ps.element(v) + " has wrong shape");
  if (!rep.shape_errors.empty()) return rep;
  for (std::size_t c = 0; c < ps.covers().size(); ++c) {
    auto [p, q] = ps.covers()[c];
    if (!(f.components[q] * f.source.maps[c] == f.target.maps[c] * f.components[p]))
      rep.violations.push_back({p, q, {}, {}});
  }
  return rep;
}

template <class F>
ModuleMorphism<F> compose(const ModuleMorphism<F>& g, const ModuleMorphism<F>& f) {
  if (g.source.dims != f.target.dims)
    throw std::invalid_argument("composition with mismatched middle module");
  ModuleMorphism<F> h{f.source, g.target, {}};
  for (std::size_t v = 0; v < f.components.size(); ++v)
    h.components.push_back(g.components[v] * f.components[v]);
  return h;
}

template <class F>
bool is_zero_morphism(const ModuleMorphism<F>& f) {
  for (const auto& c : f.components)
    if (!c.is_zero()) return false;
  return true;
}

// ---- Hom, kernels, tops ----

// Basis of the space of module morphisms M -> N, canonical and deterministic:
// naturality is one homogeneous linear system in all vertex components.
template <class F>
std::vector<ModuleMorphism<F>> hom_basis(const PModule<F>& m, const PModule<F>& n) {
  if (!(*m.poset == *n.poset))
    throw std::invalid_argument("hom needs modules over the same poset");
  if (!same_field(m.field, n.field))
    throw std::invalid_argument("hom needs modules over the same field");
  const Poset& ps = *m.poset;
  const F& f = m.field;

  std::vector<int> off(ps.size() + 1, 0);
  for (int v = 0; v < ps.size(); ++v) off[v + 1] = off[v] + n.dims[v] * m.dims[v];
  int unknowns = off[ps.size()];

  int eq_rows = 0;
  for (const auto& [p, q] : ps.covers()) eq_rows += n.dims[q] * m.dims[p];

  Matrix<F> sys(f, eq_rows, unknowns);
  int row0 = 0;
  for (std::size_t c = 0; c < ps.covers().size(); ++c) {
    auto [p, q] = ps.covers()[c];
    const Matrix<F>& mc = m.maps[c];
    const Matrix<F>& nc = n.maps[c];
    // (N_c f_p - f_q M_c)[r][s] = 0
    for (int r = 0; r < n.dims[q]; ++r)
      for (int s = 0; s < m.dims[p]; ++s) {
        int row = row0 + r * m.dims[p] + s;
        for (int k = 0; k < n.dims[p]; ++k)
          sys.at(row, off[p] + k * m.dims[p] + s) =
              f.add(sys.at(row, off[p] + k * m.dims[p] + s), nc.at(r, k));
        for (int k = 0; k < m.dims[q]; ++k)
          sys.at(row, off[q] + r * m.dims[q] + k) =
              f.sub(sys.at(row, off[q] + r * m.dims[q] + k), mc.at(k, s));
      }
    row0 += n.dims[q] * m.dims[p];
  }

  Matrix<F> basis = kernel_basis(sys);
  std::vector<ModuleMorphism<F>> out;
  for (int j = 0; j < basis.cols; ++j) {
    ModuleMorphism<F> mor = zero_morphism(m, n);
    for (int v = 0; v < ps.size(); ++v)
      for (int r = 0; r < n.dims[v]; ++r)
        for (int s = 0; s < m.dims[v]; ++s)
          mor.components[v].at(r, s) = basis.at(off[v] + r * m.dims[v] + s, j);
    out.push_back(std::move(mor));
  }
  return out;
}

template <class F>
int hom_dim(const PModule<F>& m, const PModule<F>& n) {
  return static_cast<int>(hom_basis(m, n).size());
}

// Vertexwise kernel with induced maps, plus the inclusion into the source.
// Basis at each vertex is the canonical kernel basis of the component.
template <class F>
std::pair<PModule<F>, ModuleMorphism<F>> kernel(const ModuleMorphism<F>& f) {
  const PModule<F>& m = f.source;
  const Poset& ps = *m.poset;
  PModule<F> ker(m.poset, m.field);
  std::vector<Matrix<F>> bases;
  for (int v = 0; v < ps.size(); ++v) {
    bases.push_back(kernel_basis(f.components[v]));
    ker.dims[v] = bases.back().cols;
  }
  reshape_zero_maps(ker);
  for (std::size_t c = 0; c < ps.covers().size(); ++c) {
    auto [p, q] = ps.covers()[c];
    auto y = solve_matrix(bases[q], m.maps[c] * bases[p]);
    if (!y) throw std::logic_error("kernel is not closed under structure maps");
    ker.maps[c] = *y;
  }
  ModuleMorphism<F> incl{ker, m, std::move(bases)};
  return {std::move(ker), std::move(incl)};
}

// dim of the radical quotient at each vertex: dims[v] minus the span of all
// incoming cover images.
template <class F>
std::vector<int> top_dims(const PModule<F>& m) {
  const Poset& ps = *m.poset;
  std::vector<int> t(ps.size(), 0);
  for (int v = 0; v < ps.size(); ++v) {
    Matrix<F> stacked(m.field, m.dims[v], 0);
    for (int c : ps.covers_in(v)) stacked = hstack(stacked, m.maps[c]);
    t[v] = m.dims[v] - rank(stacked);
  }
  return t;
}

}  // namespace persext
