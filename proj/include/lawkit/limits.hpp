#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lawkit/matstar.hpp"

namespace lawkit {

/// Finite directed index poset. The order is stored as its
/// reflexive-transitive closure; validation reports antisymmetry or
/// directedness defects instead of throwing.
struct IndexPoset {
  std::vector<std::string> nodes;
  std::vector<std::vector<bool>> closure;  // closure[a][b] <=> a <= b

  IndexPoset(std::vector<std::string> labels,
             const std::vector<std::pair<int, int>>& order_pairs)
      : nodes(std::move(labels)) {
    const int n = static_cast<int>(nodes.size());
    closure.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) closure[i][i] = true;
    for (const auto& [a, b] : order_pairs) {
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw structural_error("order pair references a missing node");
      closure[a][b] = true;
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (closure[i][k])
          for (int j = 0; j < n; ++j)
            if (closure[k][j]) closure[i][j] = true;
  }

  int size() const { return static_cast<int>(nodes.size()); }
  bool leq(int a, int b) const { return closure[a][b]; }

  int index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
      if (nodes[i] == label) return i;
    throw structural_error("unknown node '" + label + "'");
  }

  std::vector<std::string> axiom_violations() const {
    std::vector<std::string> out;
    for (int a = 0; a < size(); ++a)
      for (int b = a + 1; b < size(); ++b) {
        if (closure[a][b] && closure[b][a])
          out.push_back("antisymmetry fails on (" + nodes[a] + ", " + nodes[b] + ")");
        bool has_upper = false;
        for (int c = 0; c < size() && !has_upper; ++c)
          if (closure[a][c] && closure[b][c]) has_upper = true;
        if (!has_upper)
          out.push_back("no upper bound for (" + nodes[a] + ", " + nodes[b] + ")");
      }
    return out;
  }
};

/// Surjective *-homomorphism between coordinate algebras: block deletion
/// composed with a per-block unitary conjugation. kept_blocks maps each
/// target block to its source block; a 0x0 unitary stands for the identity.
struct ConnectingMap {
  int target = -1;  // alpha (lower)
  int source = -1;  // beta (higher)
  std::vector<int> kept_blocks;
  std::vector<Mat> unitaries;

  Mat apply_block(const Mat& src, int target_block) const {
    const Mat& u = unitaries[static_cast<std::size_t>(target_block)];
    if (u.size() == 0) return src;
    return u * src * u.adjoint();
  }

  AlgebraElement apply(const AlgebraElement& x,
                       const FinStarAlgebra& target_alg) const {
    std::vector<Mat> blocks;
    for (std::size_t i = 0; i < kept_blocks.size(); ++i)
      blocks.push_back(apply_block(x.block(kept_blocks[i]), static_cast<int>(i)));
    return AlgebraElement(target_alg, std::move(blocks));
  }

  /// this o higher: higher maps gamma -> beta, this maps beta -> alpha.
  ConnectingMap compose_with(const ConnectingMap& higher) const {
    ConnectingMap out;
    out.target = target;
    out.source = higher.source;
    for (std::size_t i = 0; i < kept_blocks.size(); ++i) {
      const int mid = kept_blocks[i];
      out.kept_blocks.push_back(higher.kept_blocks[static_cast<std::size_t>(mid)]);
      const Mat& u1 = unitaries[i];
      const Mat& u2 = higher.unitaries[static_cast<std::size_t>(mid)];
      if (u1.size() == 0 && u2.size() == 0)
        out.unitaries.emplace_back();
      else if (u1.size() == 0)
        out.unitaries.push_back(u2);
      else if (u2.size() == 0)
        out.unitaries.push_back(u1);
      else
        out.unitaries.push_back(u1 * u2);
    }
    return out;
  }
};

struct SystemReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// A projective system of finite-dimensional C*-algebras over a finite
/// directed poset. Lazy chains are materialized up to their horizon and keep
/// a flag so boundedness verdicts stay horizon-qualified.
class ProjectiveSystem {
public:
  ProjectiveSystem(IndexPoset poset, std::vector<FinStarAlgebra> algebras,
                   const std::vector<ConnectingMap>& given_maps,
                   bool is_chain = false, std::string chain_kind = "")
      : poset_(std::move(poset)),
        algebras_(std::move(algebras)),
        is_chain_(is_chain),
        chain_kind_(std::move(chain_kind)) {
    if (static_cast<int>(algebras_.size()) != poset_.size())
      throw structural_error("one algebra per node required");
    for (const ConnectingMap& m : given_maps) {
      check_conformance(m);
      maps_[{m.target, m.source}] = m;
    }
    derive_missing_maps();
  }

  const IndexPoset& poset() const { return poset_; }
  int node_count() const { return poset_.size(); }
  const std::string& node_label(int i) const { return poset_.nodes[i]; }
  const FinStarAlgebra& algebra(int i) const { return algebras_[i]; }
  bool is_chain() const { return is_chain_; }
  const std::string& chain_kind() const { return chain_kind_; }

  bool has_map(int target, int source) const {
    return target == source || maps_.count({target, source}) > 0;
  }

  const ConnectingMap& map(int target, int source) const {
    auto it = maps_.find({target, source});
    if (it == maps_.end())
      throw structural_error("no connecting map " + node_label(source) + " -> " +
                             node_label(target));
    return it->second;
  }

  /// Apply g_target^source (identity when target == source).
  AlgebraElement push(const AlgebraElement& x, int source, int target) const {
    if (source == target) return x;
    return map(target, source).apply(x, algebras_[target]);
  }

  /// The maximum node of the directed poset (exists for a valid finite
  /// directed order).
  int top_node() const {
    for (int t = 0; t < node_count(); ++t) {
      bool top = true;
      for (int a = 0; a < node_count() && top; ++a)
        if (!poset_.leq(a, t)) top = false;
      if (top) return t;
    }
    throw structural_error("poset has no maximum node");
  }

  /// Certifies poset axioms, unitarity of declared conjugations, the
  /// *-homomorphism property on matrix units, and the composition law on all
  /// comparable triples. Failures carry node labels.
  SystemReport validate(double tol = 1e-8) const {
    SystemReport report;
    for (const std::string& v : poset_.axiom_violations()) report.violations.push_back(v);
    for (const auto& [key, m] : maps_) {
      const std::string edge =
          node_label(m.source) + " -> " + node_label(m.target);
      for (std::size_t i = 0; i < m.unitaries.size(); ++i) {
        const Mat& u = m.unitaries[i];
        if (u.size() == 0) continue;
        if ((u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm() > tol)
          report.violations.push_back("non-unitary conjugation on " + edge +
                                      " block " + std::to_string(i));
      }
      // *-homomorphism and unit preservation; every matrix-unit pair for
      // small algebras, deterministic generic probes for big chains
      const FinStarAlgebra& src = algebras_[m.source];
      const FinStarAlgebra& dst = algebras_[m.target];
      std::vector<AlgebraElement> gens =
          src.dim() <= 32 ? matrix_units(src) : generic_probes(src);
      const bool exhaustive = src.dim() <= 32;
      for (std::size_t a = 0; a < gens.size(); ++a) {
        AlgebraElement ga = m.apply(gens[a], dst);
        if (frobenius(m.apply(gens[a].adjoint(), dst) - ga.adjoint()) > tol)
          report.violations.push_back("adjoint not preserved on " + edge);
        for (std::size_t b = 0; b < gens.size(); ++b) {
          if (exhaustive && !could_interact(src, a, b)) continue;
          AlgebraElement gb = m.apply(gens[b], dst);
          if (frobenius(m.apply(gens[a] * gens[b], dst) - ga * gb) > tol) {
            report.violations.push_back("multiplicativity fails on " + edge);
            b = gens.size();
            a = gens.size() - 1;
          }
        }
      }
      if (frobenius(m.apply(AlgebraElement::identity(src), dst) -
                    AlgebraElement::identity(dst)) > tol)
        report.violations.push_back("unit not preserved on " + edge);
    }
    for (int a = 0; a < node_count(); ++a)
      for (int b = 0; b < node_count(); ++b)
        for (int c = 0; c < node_count(); ++c) {
          if (a == b || b == c) continue;
          if (!(poset_.leq(a, b) && poset_.leq(b, c))) continue;
          const FinStarAlgebra& top = algebras_[c];
          std::vector<AlgebraElement> probes =
              top.dim() <= 32 ? matrix_units(top) : generic_probes(top);
          for (const AlgebraElement& e : probes) {
            AlgebraElement direct = push(e, c, a);
            AlgebraElement stepped = push(push(e, c, b), b, a);
            if (frobenius(direct - stepped) > 1e-8) {
              report.violations.push_back("composition law fails on triple (" +
                                          node_label(a) + ", " + node_label(b) +
                                          ", " + node_label(c) + ")");
              break;
            }
          }
        }
    return report;
  }

private:
  /// Two fixed dense elements with generic entries; enough to expose unitary
  /// or bookkeeping mismatches on large chains without the full unit scan.
  static std::vector<AlgebraElement> generic_probes(const FinStarAlgebra& alg) {
    std::vector<AlgebraElement> out;
    for (int which = 0; which < 2; ++which) {
      Vec v(alg.dim());
      for (int j = 0; j < alg.dim(); ++j)
        v(j) = Complex(0.3 + 0.11 * j + 0.7 * which, 0.5 - 0.07 * j + 0.2 * which);
      out.push_back(from_vector(alg, v));
    }
    return out;
  }

  /// Matrix units from different blocks multiply to zero on both sides; skip
  /// those pairs in the exhaustive scan.
  static bool could_interact(const FinStarAlgebra& alg, std::size_t a, std::size_t b) {
    std::size_t at = 0;
    int block_a = -1, block_b = -1;
    for (int i = 0; i < alg.num_blocks(); ++i) {
      const std::size_t sq =
          static_cast<std::size_t>(alg.block_sizes[i] * alg.block_sizes[i]);
      if (a >= at && a < at + sq) block_a = i;
      if (b >= at && b < at + sq) block_b = i;
      at += sq;
    }
    return block_a == block_b;
  }

  void check_conformance(const ConnectingMap& m) const {
    const FinStarAlgebra& dst = algebras_[m.target];
    const FinStarAlgebra& src = algebras_[m.source];
    if (static_cast<int>(m.kept_blocks.size()) != dst.num_blocks())
      throw structural_error("map " + node_label(m.source) + " -> " +
                             node_label(m.target) + " must cover every target block");
    if (m.unitaries.size() != m.kept_blocks.size())
      throw structural_error("one conjugation slot per kept block required");
    std::vector<bool> used(static_cast<std::size_t>(src.num_blocks()), false);
    for (std::size_t i = 0; i < m.kept_blocks.size(); ++i) {
      const int j = m.kept_blocks[i];
      if (j < 0 || j >= src.num_blocks())
        throw structural_error("kept block out of range at block " + std::to_string(i));
      if (used[static_cast<std::size_t>(j)])
        throw structural_error("kept blocks must be injective (block " +
                               std::to_string(i) + ")");
      used[static_cast<std::size_t>(j)] = true;
      if (src.block_sizes[j] != dst.block_sizes[static_cast<int>(i)])
        throw structural_error("block size mismatch at block " + std::to_string(i));
      const Mat& u = m.unitaries[i];
      if (u.size() != 0 &&
          (u.rows() != dst.block_sizes[static_cast<int>(i)] || u.cols() != u.rows()))
        throw structural_error("conjugation shape mismatch at block " +
                               std::to_string(i));
    }
  }

  void derive_missing_maps() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int t = 0; t < node_count(); ++t)
        for (int s = 0; s < node_count(); ++s) {
          if (t == s || !poset_.leq(t, s) || maps_.count({t, s})) continue;
          for (int m = 0; m < node_count(); ++m) {
            if (m == t || m == s) continue;
            if (poset_.leq(t, m) && poset_.leq(m, s) && maps_.count({t, m}) &&
                maps_.count({m, s})) {
              maps_[{t, s}] = maps_[{t, m}].compose_with(maps_[{m, s}]);
              progress = true;
              break;
            }
          }
        }
    }
    for (int t = 0; t < node_count(); ++t)
      for (int s = 0; s < node_count(); ++s)
        if (t != s && poset_.leq(t, s) && !maps_.count({t, s}))
          throw structural_error("no map derivable for " + node_label(s) + " -> " +
                                 node_label(t));
  }

  IndexPoset poset_;
  std::vector<FinStarAlgebra> algebras_;
  std::map<std::pair<int, int>, ConnectingMap> maps_;
  bool is_chain_;
  std::string chain_kind_;
};

using SystemPtr = std::shared_ptr<const ProjectiveSystem>;

/// Chain of diagonal algebras: level k holds k blocks of M_1; the map to the
/// level below drops the last block.
inline SystemPtr diag_chain(int horizon) {
  if (horizon < 1) throw precondition_error("horizon must be >= 1");
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> order;
  std::vector<FinStarAlgebra> algebras;
  std::vector<ConnectingMap> maps;
  for (int k = 1; k <= horizon; ++k) {
    labels.push_back(std::to_string(k));
    algebras.push_back(FinStarAlgebra(std::vector<int>(static_cast<std::size_t>(k), 1),
                                      std::to_string(k)));
    if (k > 1) {
      order.emplace_back(k - 2, k - 1);
      ConnectingMap m;
      m.target = k - 2;
      m.source = k - 1;
      for (int b = 0; b < k - 1; ++b) {
        m.kept_blocks.push_back(b);
        m.unitaries.emplace_back();
      }
      maps.push_back(std::move(m));
    }
  }
  return std::make_shared<ProjectiveSystem>(IndexPoset(labels, order),
                                            std::move(algebras), maps, true, "diag");
}

/// Chain with one fixed algebra and identity maps at every level.
inline SystemPtr const_chain(const FinStarAlgebra& alg, int horizon) {
  if (horizon < 1) throw precondition_error("horizon must be >= 1");
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> order;
  std::vector<FinStarAlgebra> algebras;
  std::vector<ConnectingMap> maps;
  for (int k = 1; k <= horizon; ++k) {
    labels.push_back(std::to_string(k));
    algebras.push_back(alg);
    if (k > 1) {
      order.emplace_back(k - 2, k - 1);
      ConnectingMap m;
      m.target = k - 2;
      m.source = k - 1;
      for (int b = 0; b < alg.num_blocks(); ++b) {
        m.kept_blocks.push_back(b);
        m.unitaries.emplace_back();
      }
      maps.push_back(std::move(m));
    }
  }
  return std::make_shared<ProjectiveSystem>(IndexPoset(labels, order),
                                            std::move(algebras), maps, true, "const");
}

/// Built-in element generators for chains; boundedness beyond the horizon is
/// only trusted when the rule is flagged monotone nonincreasing.
struct ChainGenerator {
  std::string name;                      // diag_harmonic | diag_linear | const_block
  double param = 1.0;                    // scalar for const_block
  std::optional<double> declared_bound;
  bool monotone_nonincreasing = false;
};

/// A coherent family {x_alpha}; construct through lift() so coherence is
/// verified, or carry a generator rule for chains.
class Thread {
public:
  Thread(SystemPtr sys, std::vector<AlgebraElement> coords,
         std::optional<ChainGenerator> gen = std::nullopt)
      : sys_(std::move(sys)), coords_(std::move(coords)), gen_(std::move(gen)) {
    if (static_cast<int>(coords_.size()) != sys_->node_count())
      throw structural_error("one coordinate per node required");
  }

  const SystemPtr& system() const { return sys_; }
  const std::optional<ChainGenerator>& generator() const { return gen_; }
  int node_count() const { return sys_->node_count(); }
  const AlgebraElement& coordinate(int node) const { return coords_[node]; }

private:
  SystemPtr sys_;
  std::vector<AlgebraElement> coords_;
  std::optional<ChainGenerator> gen_;
};

/// Max coherence residual over all comparable pairs.
inline double coherence_residual(const Thread& x) {
  double worst = 0.0;
  const ProjectiveSystem& sys = *x.system();
  for (int a = 0; a < sys.node_count(); ++a)
    for (int b = 0; b < sys.node_count(); ++b) {
      if (a == b || !sys.poset().leq(a, b)) continue;
      worst = std::max(worst, op_norm(x.coordinate(a) -
                                      sys.push(x.coordinate(b), b, a)));
    }
  return worst;
}

/// Builds the unique thread with the given coordinates after verifying the
/// coherence law on every comparable pair.
inline Thread lift(SystemPtr sys, std::vector<AlgebraElement> coords,
                   double tol = 1e-8) {
  Thread candidate(sys, std::move(coords));
  const ProjectiveSystem& s = *sys;
  for (int a = 0; a < s.node_count(); ++a)
    for (int b = 0; b < s.node_count(); ++b) {
      if (a == b || !s.poset().leq(a, b)) continue;
      const double r =
          op_norm(candidate.coordinate(a) - s.push(candidate.coordinate(b), b, a));
      if (r > tol)
        throw structural_error("incoherent pair (" + s.node_label(a) + ", " +
                               s.node_label(b) + "): residual " + std::to_string(r));
    }
  return candidate;
}

/// Coherent thread obtained by pushing one coordinate at the top node down to
/// every node.
inline Thread thread_from_top(SystemPtr sys, const AlgebraElement& top_value) {
  const int top = sys->top_node();
  std::vector<AlgebraElement> coords;
  for (int a = 0; a < sys->node_count(); ++a)
    coords.push_back(sys->push(top_value, top, a));
  return Thread(std::move(sys), std::move(coords));
}

inline Thread unit_thread(SystemPtr sys) {
  std::vector<AlgebraElement> coords;
  for (int a = 0; a < sys->node_count(); ++a)
    coords.push_back(AlgebraElement::identity(sys->algebra(a)));
  return Thread(std::move(sys), std::move(coords));
}

inline Thread zero_thread(SystemPtr sys) {
  std::vector<AlgebraElement> coords;
  for (int a = 0; a < sys->node_count(); ++a)
    coords.push_back(AlgebraElement::zero(sys->algebra(a)));
  return Thread(std::move(sys), std::move(coords));
}

/// Materializes a built-in generator rule on a chain system.
inline Thread generator_thread(SystemPtr sys, ChainGenerator gen) {
  if (!sys->is_chain())
    throw precondition_error("generator threads require a chain system");
  std::vector<AlgebraElement> coords;
  for (int node = 0; node < sys->node_count(); ++node) {
    const FinStarAlgebra& alg = sys->algebra(node);
    if (gen.name == "diag_harmonic" || gen.name == "diag_linear") {
      if (sys->chain_kind() != "diag")
        throw precondition_error(gen.name + " requires a diag chain");
      std::vector<Mat> blocks;
      for (int b = 0; b < alg.num_blocks(); ++b) {
        Mat m(1, 1);
        m(0, 0) = gen.name == "diag_harmonic" ? Complex(1.0 / (b + 1), 0.0)
                                              : Complex(double(b + 1), 0.0);
        blocks.push_back(m);
      }
      coords.emplace_back(alg, std::move(blocks));
    } else if (gen.name == "const_block") {
      coords.push_back(gen.param * AlgebraElement::identity(alg));
    } else {
      throw precondition_error("unknown generator '" + gen.name + "'");
    }
  }
  if (!gen.declared_bound) {
    if (gen.name == "diag_harmonic") gen.declared_bound = 1.0;
    if (gen.name == "const_block") gen.declared_bound = std::abs(gen.param);
  }
  if (gen.name == "diag_harmonic" || gen.name == "const_block")
    gen.monotone_nonincreasing = true;
  return Thread(std::move(sys), std::move(coords), std::move(gen));
}

inline AlgebraElement project(const Thread& x, int node) {
  if (node < 0 || node >= x.node_count()) {
    if (x.system()->is_chain())
      throw horizon_error("node " + std::to_string(node + 1) +
                          " is beyond the materialized horizon " +
                          std::to_string(x.node_count()));
    throw structural_error("node index out of range");
  }
  return x.coordinate(node);
}

/// ||x||_alpha = op_norm(pi_alpha(x)).
inline double seminorm(const Thread& x, int node) { return op_norm(project(x, node)); }

struct BoundednessVerdict {
  enum class Kind { Bounded, ExceedsBound, Inconclusive };
  Kind kind;
  double sup;        // sup over the probed prefix (exact for finite systems)
  int horizon;       // number of nodes examined
  int witness_node = -1;

  bool bounded() const { return kind == Kind::Bounded; }
};

/// Exact sup for finite explicit systems. For chains the verdict follows the
/// declared-bound rule: ExceedsBound on a witness, Bounded only when the rule
/// is flagged monotone nonincreasing beyond the horizon, else Inconclusive.
inline BoundednessVerdict sup_norm(const Thread& x, int horizon) {
  if (horizon < 1) throw precondition_error("horizon must be >= 1");
  const int probes = std::min(horizon, x.node_count());
  double sup = 0.0;
  if (!x.system()->is_chain()) {
    for (int a = 0; a < x.node_count(); ++a) sup = std::max(sup, seminorm(x, a));
    return BoundednessVerdict{BoundednessVerdict::Kind::Bounded, sup,
                              x.node_count()};
  }
  const std::optional<ChainGenerator>& gen = x.generator();
  const double bound = gen && gen->declared_bound
                           ? *gen->declared_bound
                           : std::numeric_limits<double>::infinity();
  for (int a = 0; a < probes; ++a) {
    const double s = seminorm(x, a);
    sup = std::max(sup, s);
    if (s > bound + kDefaultTol)
      return BoundednessVerdict{BoundednessVerdict::Kind::ExceedsBound, sup,
                                probes, a};
  }
  if (gen && gen->monotone_nonincreasing && gen->declared_bound)
    return BoundednessVerdict{BoundednessVerdict::Kind::Bounded, sup, probes};
  return BoundednessVerdict{BoundednessVerdict::Kind::Inconclusive, sup, probes};
}

namespace detail {
template <typename F>
Thread coordinatewise(const Thread& x, F&& f) {
  std::vector<AlgebraElement> coords;
  for (int a = 0; a < x.node_count(); ++a) coords.push_back(f(a));
  Thread out(x.system(), std::move(coords));
#ifndef NDEBUG
  if (coherence_residual(out) > 1e-6)
    throw structural_error("thread arithmetic broke coherence");
#endif
  return out;
}

inline void require_same_system(const Thread& x, const Thread& y) {
  if (x.system() != y.system())
    throw structural_error("threads belong to different systems");
}
}  // namespace detail

inline Thread operator+(const Thread& x, const Thread& y) {
  detail::require_same_system(x, y);
  return detail::coordinatewise(x, [&](int a) { return x.coordinate(a) + y.coordinate(a); });
}

inline Thread operator-(const Thread& x, const Thread& y) {
  detail::require_same_system(x, y);
  return detail::coordinatewise(x, [&](int a) { return x.coordinate(a) - y.coordinate(a); });
}

inline Thread operator*(const Thread& x, const Thread& y) {
  detail::require_same_system(x, y);
  return detail::coordinatewise(x, [&](int a) { return x.coordinate(a) * y.coordinate(a); });
}

inline Thread operator*(Complex c, const Thread& x) {
  return detail::coordinatewise(x, [&](int a) { return c * x.coordinate(a); });
}

inline Thread operator*(double c, const Thread& x) { return Complex(c, 0.0) * x; }

inline Thread adjoint(const Thread& x) {
  return detail::coordinatewise(x, [&](int a) { return x.coordinate(a).adjoint(); });
}

}  // namespace lawkit
