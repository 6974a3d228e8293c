#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lawkit/annihil.hpp"
#include "lawkit/gen.hpp"
#include "lawkit/limits.hpp"

namespace lawkit {

/// A *-subalgebra of one coordinate algebra, presented by an orthonormal
/// (Hilbert-Schmidt) basis. minimal_projections is filled when the subalgebra
/// is commutative and spanned by orthogonal projections.
struct Subalgebra {
  std::vector<AlgebraElement> basis;
  std::vector<AlgebraElement> minimal_projections;
  std::vector<std::string> violations;

  int dim() const { return static_cast<int>(basis.size()); }
  bool ok() const { return violations.empty(); }

  bool contains(const AlgebraElement& x, double tol = 1e-8) const {
    return span_residual(basis, x) <= tol * std::max(1.0, frobenius(x));
  }
};

/// A per-node subalgebra family inside a projective system, with the
/// restricted connecting maps certified to stay inside the family.
struct Subsystem {
  SystemPtr parent;
  std::vector<Subalgebra> per_node;
  std::vector<std::string> violations;

  bool ok() const {
    if (!violations.empty()) return false;
    for (const Subalgebra& b : per_node)
      if (!b.ok()) return false;
    return true;
  }
};

/// Commutant of a self-adjoint set inside its algebra, as the nullspace of
/// the stacked commutation operators (one linear solve per block).
inline Subalgebra commutant(const std::vector<AlgebraElement>& set,
                            int baer_samples = 5, std::uint64_t seed = 1) {
  if (set.empty()) throw precondition_error("commutant: empty set");
  const FinStarAlgebra& alg = set.front().algebra();
  for (const AlgebraElement& s : set) {
    bool has_adjoint = false;
    for (const AlgebraElement& t : set)
      if (frobenius(s.adjoint() - t) <= 1e-8 * std::max(1.0, frobenius(s)))
        has_adjoint = true;
    if (!has_adjoint)
      throw precondition_error("commutant requires a self-adjoint set");
  }
  Subalgebra out;
  std::vector<AlgebraElement> raw;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    const int n = alg.block_sizes[b];
    Mat stacked(static_cast<int>(set.size()) * n * n, n * n);
    for (std::size_t s = 0; s < set.size(); ++s) {
      const Mat& blk = set[s].block(b);
      stacked.middleRows(static_cast<int>(s) * n * n, n * n) =
          detail::left_mult_operator(blk) - detail::right_mult_operator(blk);
    }
    Mat null = nullspace_via_elimination(stacked, 1e-10);
    for (int c = 0; c < null.cols(); ++c) {
      Vec full = Vec::Zero(alg.dim());
      int at = 0;
      for (int j = 0; j < b; ++j) at += alg.block_sizes[j] * alg.block_sizes[j];
      full.segment(at, n * n) = null.col(c);
      raw.push_back(from_vector(alg, full));
    }
  }
  out.basis = orthonormal_span(raw);
  // Baer *-subalgebra certificate: annihilator projections of sampled
  // subsets stay inside the span.
  Rng rng(seed);
  for (int i = 0; i < baer_samples && !out.basis.empty(); ++i) {
    std::vector<AlgebraElement> subset;
    for (int k = rng.uniform_int(1, 2); k > 0; --k) {
      AlgebraElement combo = AlgebraElement::zero(alg);
      for (const AlgebraElement& bvec : out.basis)
        combo = combo + Complex(rng.normal(), rng.normal()) * bvec;
      subset.push_back(combo);
    }
    Projection g = right_annihilator(subset).generator;
    if (!out.contains(g.element()))
      out.violations.push_back("annihilator projection escapes the commutant");
  }
  return out;
}

namespace detail {

/// Minimal projections from rank-1 eigenvector columns of a self-adjoint
/// element; degenerate eigenspaces are refined in the order the eigensolver
/// returns, which is deterministic.
inline std::vector<AlgebraElement> eigenline_projections(const AlgebraElement& x) {
  EigenDecomposition eig = hermitian_eigen(x);
  std::vector<AlgebraElement> projections;
  const FinStarAlgebra& alg = x.algebra();
  for (int b = 0; b < alg.num_blocks(); ++b) {
    const int n = alg.block_sizes[b];
    for (int i = 0; i < n; ++i) {
      std::vector<Mat> blocks;
      for (int j = 0; j < alg.num_blocks(); ++j) {
        const int m = alg.block_sizes[j];
        blocks.push_back(Mat::Zero(m, m));
      }
      const Vec col = eig.unitary.block(b).col(i);
      blocks[static_cast<std::size_t>(b)] = col * col.adjoint();
      projections.emplace_back(alg, std::move(blocks));
    }
  }
  return projections;
}

inline void certify_masa(Subalgebra& masa, const AlgebraElement& x) {
  const FinStarAlgebra& alg = x.algebra();
  int expected = 0;
  for (int n : alg.block_sizes) expected += n;
  if (masa.dim() != expected)
    masa.violations.push_back("masa dimension differs from the block-size sum");
  AlgebraElement sum = AlgebraElement::zero(alg);
  for (const AlgebraElement& p : masa.minimal_projections) {
    if (!is_projection(p, 1e-8))
      masa.violations.push_back("minimal projection fails the projection test");
    sum = sum + p;
  }
  if (op_norm(sum - AlgebraElement::identity(alg)) > 1e-8)
    masa.violations.push_back("minimal projections do not sum to the unit");
  for (std::size_t i = 0; i < masa.basis.size(); ++i)
    for (std::size_t j = i + 1; j < masa.basis.size(); ++j)
      if (op_norm(masa.basis[i] * masa.basis[j] - masa.basis[j] * masa.basis[i]) > 1e-8)
        masa.violations.push_back("masa is not commutative");
  if (!masa.contains(x))
    masa.violations.push_back("masa does not contain the generating element");
  // maximality: the commutant of the masa is the masa itself
  std::vector<AlgebraElement> gens = masa.minimal_projections;
  Subalgebra comm = commutant(gens, 0);
  if (comm.dim() != masa.dim())
    masa.violations.push_back("masa commutant has dimension " +
                              std::to_string(comm.dim()) + ", expected " +
                              std::to_string(masa.dim()));
}

}  // namespace detail

/// Maximal commutative *-subalgebra containing a self-adjoint element: the
/// diagonal algebra in its eigenbasis, spanned by its minimal projections.
inline Subalgebra masa_containing(const AlgebraElement& x,
                                  double tol = kDefaultTol) {
  if (!is_hermitian(x, tol))
    throw precondition_error("masa_containing: element is not self-adjoint");
  Subalgebra masa;
  masa.minimal_projections = detail::eigenline_projections(x);
  masa.basis = masa.minimal_projections;  // rank-1 orthogonal: already orthonormal
  detail::certify_masa(masa, x);
  return masa;
}

/// Thread version: the masa is built once at the top node and pushed down, so
/// the family is coherent by construction even for degenerate spectra.
inline Subsystem masa_containing(const Thread& x, double tol = kDefaultTol) {
  const SystemPtr& sys = x.system();
  const int top = sys->top_node();
  if (!is_hermitian(x.coordinate(top), tol))
    throw precondition_error("masa_containing: thread is not self-adjoint");
  std::vector<AlgebraElement> top_projs =
      detail::eigenline_projections(x.coordinate(top));
  Subsystem out;
  out.parent = sys;
  for (int a = 0; a < sys->node_count(); ++a) {
    Subalgebra node;
    for (const AlgebraElement& p : top_projs) {
      AlgebraElement q = sys->push(p, top, a);
      if (frobenius(q) > 1e-8) node.minimal_projections.push_back(q);
    }
    // pushed projections of one block collapse together; re-orthonormalize
    node.basis = orthonormal_span(node.minimal_projections);
    detail::certify_masa(node, x.coordinate(a));
    out.per_node.push_back(std::move(node));
  }
  // restricted maps stay inside the family
  for (int a = 0; a < sys->node_count(); ++a)
    for (int b = 0; b < sys->node_count(); ++b) {
      if (a == b || !sys->poset().leq(a, b)) continue;
      for (const AlgebraElement& v : out.per_node[b].basis)
        if (!out.per_node[a].contains(sys->push(v, b, a)))
          out.violations.push_back("restricted map leaves the masa on (" +
                                   sys->node_label(a) + ", " + sys->node_label(b) +
                                   ")");
    }
  return out;
}

namespace detail {

/// Distinct pushed minimal projections can coincide; a masa node basis from a
/// push needs merging. Done inside masa_containing via orthonormal_span.
inline Subalgebra center_of(const FinStarAlgebra& alg) {
  Subalgebra out;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    std::vector<Mat> blocks;
    for (int j = 0; j < alg.num_blocks(); ++j) {
      const int m = alg.block_sizes[j];
      blocks.push_back(j == b ? Mat(Mat::Identity(m, m)) : Mat(Mat::Zero(m, m)));
    }
    out.minimal_projections.emplace_back(alg, std::move(blocks));
  }
  out.basis = orthonormal_span(out.minimal_projections);
  return out;
}

}  // namespace detail

/// The center of every coordinate algebra (block scalars), certified against
/// the commutant of a full generating set and for restricted-map coherence.
inline Subsystem center(const SystemPtr& sys) {
  Subsystem out;
  out.parent = sys;
  for (int a = 0; a < sys->node_count(); ++a) {
    const FinStarAlgebra& alg = sys->algebra(a);
    Subalgebra node = detail::center_of(alg);
    if (node.dim() != alg.num_blocks())
      node.violations.push_back("center dimension differs from the block count");
    // oracle: commutant of the matrix units
    std::vector<AlgebraElement> gens = matrix_units(alg);
    std::vector<AlgebraElement> sa_gens;  // self-adjoint closure
    for (const AlgebraElement& g : gens) {
      sa_gens.push_back(g + g.adjoint());
      sa_gens.push_back(Complex(0, 1) * g + (Complex(0, 1) * g).adjoint());
    }
    Subalgebra comm = commutant(sa_gens, 0);
    if (comm.dim() != node.dim())
      node.violations.push_back("center disagrees with the commutant oracle");
    for (const AlgebraElement& v : comm.basis)
      if (!node.contains(v))
        node.violations.push_back("commutant oracle vector escapes the center");
    out.per_node.push_back(std::move(node));
  }
  for (int a = 0; a < sys->node_count(); ++a)
    for (int b = 0; b < sys->node_count(); ++b) {
      if (a == b || !sys->poset().leq(a, b)) continue;
      for (const AlgebraElement& v : out.per_node[b].basis)
        if (!out.per_node[a].contains(sys->push(v, b, a)))
          out.violations.push_back("restricted map leaves the center on (" +
                                   sys->node_label(a) + ", " + sys->node_label(b) +
                                   ")");
    }
  return out;
}

/// The corner eAe as a compressed projective system with block sizes equal to
/// the per-block ranks of e; compression isometries are recorded per node.
struct Corner {
  bool degenerate = false;
  SystemPtr compressed;
  /// per node: one (parent block index, isometry columns) per compressed block
  std::vector<std::vector<std::pair<int, Mat>>> isometries;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }

  /// Compress a parent-node element into the corner algebra.
  AlgebraElement compress(const AlgebraElement& x, int node) const {
    std::vector<Mat> blocks;
    for (const auto& [parent_block, v] : isometries[static_cast<std::size_t>(node)])
      blocks.push_back(v.adjoint() * x.block(parent_block) * v);
    return AlgebraElement(compressed->algebra(node), std::move(blocks));
  }
};

inline Corner corner(const SystemPtr& sys, const Thread& e, double tol = 1e-8) {
  Corner out;
  for (int a = 0; a < sys->node_count(); ++a)
    if (!is_projection(e.coordinate(a), tol))
      throw precondition_error("corner: thread coordinate at " +
                               sys->node_label(a) + " is not a projection");
  std::vector<std::vector<int>> block_map(static_cast<std::size_t>(sys->node_count()));
  std::vector<FinStarAlgebra> algebras;
  out.isometries.resize(static_cast<std::size_t>(sys->node_count()));
  bool any_empty = false;
  for (int a = 0; a < sys->node_count(); ++a) {
    const FinStarAlgebra& alg = sys->algebra(a);
    EigenDecomposition eig = hermitian_eigen(e.coordinate(a));
    std::vector<int> sizes;
    block_map[a].assign(static_cast<std::size_t>(alg.num_blocks()), -1);
    for (int b = 0; b < alg.num_blocks(); ++b) {
      const Eigen::VectorXd& vals = eig.eigenvalues[static_cast<std::size_t>(b)];
      std::vector<int> ones;
      for (int i = 0; i < vals.size(); ++i)
        if (vals(i) > 0.5) ones.push_back(i);
      if (ones.empty()) continue;
      Mat v(alg.block_sizes[b], static_cast<int>(ones.size()));
      for (std::size_t k = 0; k < ones.size(); ++k)
        v.col(static_cast<int>(k)) = eig.unitary.block(b).col(ones[k]);
      block_map[a][static_cast<std::size_t>(b)] = static_cast<int>(sizes.size());
      sizes.push_back(static_cast<int>(ones.size()));
      out.isometries[a].emplace_back(b, std::move(v));
    }
    if (sizes.empty()) {
      any_empty = true;
      break;
    }
    algebras.push_back(FinStarAlgebra(sizes, sys->node_label(a) + "#corner"));
  }
  if (any_empty) {
    out.degenerate = true;
    return out;
  }
  std::vector<ConnectingMap> maps;
  for (int t = 0; t < sys->node_count(); ++t)
    for (int s = 0; s < sys->node_count(); ++s) {
      if (t == s || !sys->poset().leq(t, s)) continue;
      const ConnectingMap& parent = sys->map(t, s);
      ConnectingMap m;
      m.target = t;
      m.source = s;
      for (const auto& [tb, vt] : out.isometries[static_cast<std::size_t>(t)]) {
        const int sb = parent.kept_blocks[static_cast<std::size_t>(tb)];
        const int compressed_sb = block_map[s][static_cast<std::size_t>(sb)];
        if (compressed_sb < 0) {
          out.violations.push_back("rank mismatch under the map " +
                                   sys->node_label(s) + " -> " + sys->node_label(t));
          continue;
        }
        const Mat& vs =
            out.isometries[static_cast<std::size_t>(s)][static_cast<std::size_t>(
                               compressed_sb)]
                .second;
        const Mat& u = parent.unitaries[static_cast<std::size_t>(tb)];
        m.kept_blocks.push_back(compressed_sb);
        m.unitaries.push_back(u.size() == 0 ? Mat(vt.adjoint() * vs)
                                            : Mat(vt.adjoint() * u * vs));
      }
      maps.push_back(std::move(m));
    }
  if (!out.violations.empty()) return out;
  IndexPoset poset = sys->poset();
  out.compressed = std::make_shared<ProjectiveSystem>(
      std::move(poset), std::move(algebras), maps, sys->is_chain(), sys->chain_kind());
  SystemReport validation = out.compressed->validate();
  for (const std::string& v : validation.violations)
    out.violations.push_back("compressed system: " + v);
  // V V* reproduces e blockwise
  for (int a = 0; a < sys->node_count(); ++a) {
    AlgebraElement rebuilt = AlgebraElement::zero(sys->algebra(a));
    std::vector<Mat> blocks;
    for (int b = 0; b < sys->algebra(a).num_blocks(); ++b)
      blocks.push_back(rebuilt.block(b));
    for (const auto& [b, v] : out.isometries[static_cast<std::size_t>(a)])
      blocks[static_cast<std::size_t>(b)] = v * v.adjoint();
    if (op_norm(AlgebraElement(sys->algebra(a), blocks) - e.coordinate(a)) > tol)
      out.violations.push_back("isometries do not reproduce the corner projection at " +
                               sys->node_label(a));
  }
  return out;
}

/// Projection multiple of x in a commutative subalgebra with residual
/// strictly below eps: spectral indicator of |t| > eps/2, with the explicit
/// multiple witness y (spectral pseudo-inverse on the kept part).
struct ProjectionMultiple {
  Projection projection;
  AlgebraElement witness;  // y with e = x y
  double residual;         // ||x - e x||
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline ProjectionMultiple kaplansky_approx(const Subalgebra& commutative,
                                           const AlgebraElement& x, double eps) {
  if (eps <= 0.0) throw precondition_error("kaplansky_approx: eps must be positive");
  if (!commutative.contains(x))
    throw precondition_error("kaplansky_approx: x is outside the subalgebra");
  EigenDecomposition eig = hermitian_eigen(x);
  const double cut = eps / 2.0;
  AlgebraElement e = eig.apply([cut](double t) { return std::abs(t) > cut ? 1.0 : 0.0; });
  AlgebraElement y =
      eig.apply([cut](double t) { return std::abs(t) > cut ? 1.0 / t : 0.0; });
  ProjectionMultiple out{Projection(e), y, op_norm(x - e * x), {}};
  if (out.residual >= eps)
    out.violations.push_back("residual is not strictly below eps");
  if (op_norm(e - x * y) > 1e-8)
    out.violations.push_back("multiple certificate e = x y fails");
  if (!commutative.contains(e))
    out.violations.push_back("projection escapes the subalgebra");
  if (!commutative.contains(y))
    out.violations.push_back("witness escapes the subalgebra");
  return out;
}

/// Annihilation and commutation pass from an orthogonal family to its sup.
struct SupInteractionReport {
  bool family_orthogonal = true;
  bool sup_is_plain_sum = true;
  bool annihilation_premise = false;
  bool annihilation_conclusion = true;
  bool commutation_premise = false;
  bool commutation_conclusion = true;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline SupInteractionReport lemma2_check(const std::vector<Thread>& family,
                                         const Thread& sup, const Thread& x,
                                         double tol = 1e-8) {
  SupInteractionReport report;
  const SystemPtr& sys = sup.system();
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      for (int a = 0; a < sys->node_count(); ++a)
        if (op_norm(family[i].coordinate(a) * family[j].coordinate(a)) > tol) {
          report.family_orthogonal = false;
          report.violations.push_back("family is not pairwise orthogonal");
        }
  for (int a = 0; a < sys->node_count(); ++a) {
    AlgebraElement sum = AlgebraElement::zero(sys->algebra(a));
    for (const Thread& e : family) sum = sum + e.coordinate(a);
    if (op_norm(sum - sup.coordinate(a)) > tol) {
      report.sup_is_plain_sum = false;
      report.violations.push_back("sup differs from the orthogonal sum at " +
                                  sys->node_label(a));
    }
  }
  double scale = 1.0;
  for (int a = 0; a < sys->node_count(); ++a)
    scale = std::max(scale, seminorm(x, a));
  bool annihilates = true;
  bool commutes = true;
  for (const Thread& e : family)
    for (int a = 0; a < sys->node_count(); ++a) {
      if (op_norm(x.coordinate(a) * e.coordinate(a)) > tol * scale) annihilates = false;
      AlgebraElement comm =
          x.coordinate(a) * e.coordinate(a) - e.coordinate(a) * x.coordinate(a);
      if (op_norm(comm) > tol * scale) commutes = false;
    }
  report.annihilation_premise = annihilates;
  report.commutation_premise = commutes;
  for (int a = 0; a < sys->node_count(); ++a) {
    if (annihilates && op_norm(x.coordinate(a) * sup.coordinate(a)) > 10 * tol * scale) {
      report.annihilation_conclusion = false;
      report.violations.push_back("x e != 0 at " + sys->node_label(a));
    }
    AlgebraElement comm =
        x.coordinate(a) * sup.coordinate(a) - sup.coordinate(a) * x.coordinate(a);
    if (commutes && op_norm(comm) > 10 * tol * scale) {
      report.commutation_conclusion = false;
      report.violations.push_back("x and e do not commute at " + sys->node_label(a));
    }
  }
  return report;
}

/// Right annihilator of the two-sided hull of T, certified central at every
/// node and coherent across the maps.
struct CentralAnnihilator {
  std::optional<Thread> generator;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline CentralAnnihilator ideal_annihilator_central(const SystemPtr& sys,
                                                    const std::vector<Thread>& gens,
                                                    double tol = 1e-8) {
  CentralAnnihilator out;
  std::vector<AlgebraElement> coords;
  for (int a = 0; a < sys->node_count(); ++a) {
    const FinStarAlgebra& alg = sys->algebra(a);
    std::vector<AlgebraElement> ideal;
    for (const Thread& t : gens)
      for (const AlgebraElement& u : matrix_units(alg))
        ideal.push_back(t.coordinate(a) * u);
    Projection g = right_annihilator(ideal).generator;
    for (const AlgebraElement& u : matrix_units(alg))
      if (op_norm(g.element() * u - u * g.element()) > tol)
        out.violations.push_back("annihilator is not central at " + sys->node_label(a));
    coords.push_back(g.element());
  }
  for (int a = 0; a < sys->node_count(); ++a)
    for (int b = 0; b < sys->node_count(); ++b) {
      if (a == b || !sys->poset().leq(a, b)) continue;
      if (op_norm(coords[a] - sys->push(coords[b], b, a)) > tol)
        out.violations.push_back("annihilator projections are incoherent on (" +
                                 sys->node_label(a) + ", " + sys->node_label(b) + ")");
    }
  if (out.violations.empty()) out.generator = lift(sys, coords, 10 * tol);
  return out;
}

/// Bounded part certificate: sampled projection threads have sup-norm at most
/// 1, and annihilator generators of sampled bounded subsets are bounded and
/// generate the annihilator inside the bounded part, cross-checked against
/// the nullspace oracle at every node. Chain verdicts are horizon-qualified.
struct BoundedPartReport {
  bool horizon_qualified = false;
  int horizon = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline BoundedPartReport bounded_part(const SystemPtr& sys, int horizon,
                                      int samples, std::uint64_t seed,
                                      double tol = 1e-8) {
  Rng rng(seed);
  BoundedPartReport report;
  report.horizon_qualified = sys->is_chain();
  report.horizon = std::min(horizon, sys->node_count());
  for (int i = 0; i < samples; ++i) {
    Thread e = random_projection_thread(sys, rng);
    BoundednessVerdict v = sup_norm(e, horizon);
    if (v.sup > 1.0 + 1e-9)
      report.violations.push_back("projection thread with sup-norm above 1");

    std::vector<Thread> subset;
    for (int k = rng.uniform_int(1, 2); k > 0; --k)
      subset.push_back(random_thread(sys, rng));
    std::vector<AlgebraElement> gcoords;
    bool fine = true;
    for (int a = 0; a < sys->node_count(); ++a) {
      std::vector<AlgebraElement> at_node;
      for (const Thread& t : subset) at_node.push_back(t.coordinate(a));
      AnnihilatorResult r = right_annihilator(at_node);
      if (!r.dims_agree()) {
        report.violations.push_back("oracle dimension mismatch at " +
                                    sys->node_label(a));
        fine = false;
      }
      for (const AlgebraElement& x : detail::stacked_nullspace_basis(at_node, true))
        if (frobenius(r.generator.element() * x - x) >
            tol * std::max(1.0, frobenius(x))) {
          report.violations.push_back("annihilator membership fails at " +
                                      sys->node_label(a));
          fine = false;
        }
      gcoords.push_back(r.generator.element());
    }
    if (!fine) continue;
    for (int a = 0; a < sys->node_count(); ++a)
      for (int b = 0; b < sys->node_count(); ++b) {
        if (a == b || !sys->poset().leq(a, b)) continue;
        if (op_norm(gcoords[a] - sys->push(gcoords[b], b, a)) > tol)
          report.violations.push_back("annihilator generator incoherent on (" +
                                      sys->node_label(a) + ", " +
                                      sys->node_label(b) + ")");
      }
    if (!report.violations.empty()) continue;
    Thread g = lift(sys, gcoords, 10 * tol);
    if (sup_norm(g, horizon).sup > 1.0 + 1e-9)
      report.violations.push_back("annihilator generator is unbounded");
    for (const Thread& s : subset)
      for (int a = 0; a < sys->node_count(); ++a)
        if (op_norm(s.coordinate(a) * g.coordinate(a)) > tol)
          report.violations.push_back("s g != 0 at " + sys->node_label(a));
  }
  return report;
}

/// Verdicts of the four equivalent characterizations, which must agree on
/// every valid system: Baer on the limit by coordinatewise lifting,
/// coordinatewise Baer, sups of orthogonal families by coordinatewise sup and
/// lift, and the masa-generated-by-projections condition.
struct EquivalenceReport {
  bool baer_limit = true;
  bool coordinatewise_baer = true;
  bool orthogonal_sups = true;
  bool masa_projections = true;
  std::vector<std::string> witnesses;

  bool agreement() const {
    return baer_limit == coordinatewise_baer &&
           coordinatewise_baer == orthogonal_sups &&
           orthogonal_sups == masa_projections;
  }
  bool all_pass() const {
    return baer_limit && coordinatewise_baer && orthogonal_sups &&
           masa_projections && agreement();
  }
};

struct SamplingPlan {
  int samples = 5;
  std::uint64_t seed = 1;
};

inline EquivalenceReport verify_theorem1(const SystemPtr& sys,
                                         const SamplingPlan& plan,
                                         double tol = 1e-8) {
  Rng rng(plan.seed);
  EquivalenceReport report;

  // (1) Baer on the limit: annihilators of thread sets lift coherently
  for (int i = 0; i < plan.samples; ++i) {
    std::vector<Thread> set;
    for (int k = rng.uniform_int(1, 2); k > 0; --k)
      set.push_back(random_thread(sys, rng));
    std::vector<AlgebraElement> gcoords;
    for (int a = 0; a < sys->node_count(); ++a) {
      std::vector<AlgebraElement> at_node;
      for (const Thread& t : set) at_node.push_back(t.coordinate(a));
      AnnihilatorResult r = right_annihilator(at_node);
      if (!r.dims_agree()) {
        report.baer_limit = false;
        report.witnesses.push_back("annihilator oracle mismatch at " +
                                   sys->node_label(a));
      }
      gcoords.push_back(r.generator.element());
    }
    for (int a = 0; a < sys->node_count() && report.baer_limit; ++a)
      for (int b = 0; b < sys->node_count(); ++b) {
        if (a == b || !sys->poset().leq(a, b)) continue;
        if (op_norm(gcoords[a] - sys->push(gcoords[b], b, a)) > tol) {
          report.baer_limit = false;
          report.witnesses.push_back("annihilator projections incoherent on (" +
                                     sys->node_label(a) + ", " +
                                     sys->node_label(b) + ")");
        }
      }
    if (report.baer_limit) {
      Thread g = lift(sys, gcoords, 10 * tol);
      double scale = 1.0;
      for (const Thread& s : set)
        for (int a = 0; a < sys->node_count(); ++a)
          scale = std::max(scale, seminorm(s, a));
      for (const Thread& s : set)
        for (int a = 0; a < sys->node_count(); ++a)
          if (op_norm(s.coordinate(a) * g.coordinate(a)) > tol * scale) {
            report.baer_limit = false;
            report.witnesses.push_back("lifted generator does not annihilate");
          }
    }
  }

  // (2) every coordinate algebra is Baer
  for (int a = 0; a < sys->node_count(); ++a) {
    BaerReport baer = certify_baer(sys->algebra(a), plan.samples, rng.next_seed());
    if (!baer.ok()) {
      report.coordinatewise_baer = false;
      report.witnesses.push_back("coordinate " + sys->node_label(a) + ": " +
                                 baer.counterexamples.front());
    }
  }

  // (3) sups of orthogonal projection families exist coordinatewise and lift
  for (int i = 0; i < plan.samples; ++i) {
    std::vector<Thread> family =
        random_orthogonal_thread_family(sys, rng.uniform_int(1, 3), rng);
    std::vector<AlgebraElement> pcoords;
    for (int a = 0; a < sys->node_count(); ++a) {
      std::vector<Projection> at_node;
      for (const Thread& e : family) at_node.emplace_back(e.coordinate(a));
      pcoords.push_back(sup_family(at_node).element());
    }
    bool coherent = true;
    for (int a = 0; a < sys->node_count(); ++a)
      for (int b = 0; b < sys->node_count(); ++b) {
        if (a == b || !sys->poset().leq(a, b)) continue;
        if (op_norm(pcoords[a] - sys->push(pcoords[b], b, a)) > tol) coherent = false;
      }
    if (!coherent) {
      report.orthogonal_sups = false;
      report.witnesses.push_back("coordinatewise sup is incoherent");
      continue;
    }
    Thread p = lift(sys, pcoords, 10 * tol);
    for (const Thread& e : family)
      for (int a = 0; a < sys->node_count(); ++a)
        if (op_norm(e.coordinate(a) - e.coordinate(a) * p.coordinate(a)) > tol) {
          report.orthogonal_sups = false;
          report.witnesses.push_back("sup is not an upper bound at " +
                                     sys->node_label(a));
        }
    // orthogonal family: the sup is the plain sum
    for (int a = 0; a < sys->node_count(); ++a) {
      AlgebraElement sum = AlgebraElement::zero(sys->algebra(a));
      for (const Thread& e : family) sum = sum + e.coordinate(a);
      if (op_norm(sum - p.coordinate(a)) > tol) {
        report.orthogonal_sups = false;
        report.witnesses.push_back("sup differs from the orthogonal sum");
      }
    }
  }

  // (4) masas are spanned by their projections (and are maximal)
  for (int i = 0; i < plan.samples; ++i) {
    Thread x = random_hermitian_thread(sys, rng);
    Subsystem masa = masa_containing(x);
    if (!masa.ok()) {
      report.masa_projections = false;
      for (const Subalgebra& node : masa.per_node)
        for (const std::string& v : node.violations) report.witnesses.push_back(v);
      for (const std::string& v : masa.violations) report.witnesses.push_back(v);
    }
  }

  return report;
}

/// AW* certificate for a commutative subalgebra presented by orthogonal
/// minimal projections: annihilators of sampled subsets are generated by a
/// projection inside the subalgebra, and the generator matches the annihilator
/// computed in the ambient algebra.
inline std::vector<std::string> certify_commutative_aw(
    const Subalgebra& commutative, int samples, std::uint64_t seed,
    double tol = 1e-8) {
  std::vector<std::string> violations;
  const std::vector<AlgebraElement>& q = commutative.minimal_projections;
  if (q.empty()) return {"no minimal projections recorded"};
  const FinStarAlgebra& alg = q.front().algebra();
  AlgebraElement sum = AlgebraElement::zero(alg);
  for (const AlgebraElement& p : q) sum = sum + p;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    std::vector<std::vector<Complex>> coeffs;
    std::vector<AlgebraElement> subset;
    for (int k = rng.uniform_int(1, 2); k > 0; --k) {
      std::vector<Complex> c;
      AlgebraElement s = AlgebraElement::zero(alg);
      for (const AlgebraElement& p : q) {
        const Complex v = rng.coin(0.35) ? Complex(0, 0)
                                         : Complex(rng.normal(), rng.normal());
        c.push_back(v);
        s = s + v * p;
      }
      coeffs.push_back(std::move(c));
      subset.push_back(std::move(s));
    }
    // closed form within the span: keep the projections every coefficient kills
    AlgebraElement expected = AlgebraElement::zero(alg);
    for (std::size_t j = 0; j < q.size(); ++j) {
      bool killed_by_all = true;
      for (const auto& c : coeffs)
        if (std::abs(c[j]) > 1e-12) killed_by_all = false;
      if (killed_by_all) expected = expected + q[j];
    }
    Projection g = right_annihilator(subset).generator;
    AlgebraElement inside = expected * g.element();  // part of g under the unit of B
    for (const AlgebraElement& s : subset)
      if (op_norm(s * expected) > tol)
        violations.push_back("closed-form generator fails to annihilate");
    // the ambient generator compressed to B is exactly the closed form
    if (op_norm(inside - expected) > tol)
      violations.push_back("ambient annihilator disagrees inside the subalgebra");
    if (!commutative.contains(expected))
      violations.push_back("generator escapes the subalgebra");
  }
  return violations;
}

}  // namespace lawkit
