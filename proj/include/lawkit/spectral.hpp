#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "lawkit/annihil.hpp"
#include "lawkit/lawstruct.hpp"
#include "lawkit/limits.hpp"

namespace lawkit {

/// Where inside each partition interval the integrand value is taken.
enum class MuRule { midpoint, left, right };

inline std::string to_string(MuRule r) {
  switch (r) {
    case MuRule::midpoint: return "midpoint";
    case MuRule::left: return "left";
    default: return "right";
  }
}

/// Finite partition lambda_0 < ... < lambda_m of a real interval.
struct PartitionSpec {
  std::vector<double> nodes;
  MuRule rule = MuRule::midpoint;

  int intervals() const { return static_cast<int>(nodes.size()) - 1; }

  /// Largest gap; the integral-sum error is bounded by it.
  double mesh() const {
    double d = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i)
      d = std::max(d, nodes[i] - nodes[i - 1]);
    return d;
  }

  double mu(int n) const {
    const double lo = nodes[static_cast<std::size_t>(n - 1)];
    const double hi = nodes[static_cast<std::size_t>(n)];
    switch (rule) {
      case MuRule::left: return lo;
      case MuRule::right: return hi;
      default: return 0.5 * (lo + hi);
    }
  }

  static PartitionSpec uniform(double lo, double hi, int intervals,
                               MuRule rule = MuRule::midpoint) {
    if (intervals < 1) throw precondition_error("partition needs an interval");
    if (!(hi > lo)) throw precondition_error("degenerate partition interval");
    PartitionSpec p;
    p.rule = rule;
    for (int i = 0; i <= intervals; ++i)
      p.nodes.push_back(lo + (hi - lo) * i / intervals);
    p.nodes.back() = hi;
    return p;
  }

  /// Uniform partition with 2^k intervals, the smallest power of two whose
  /// gap is at most mesh_target. Halving the target refines in place, so the
  /// partitions for a decreasing target sequence are nested.
  static PartitionSpec dyadic(double lo, double hi, double mesh_target,
                              MuRule rule = MuRule::midpoint) {
    if (mesh_target <= 0.0) throw precondition_error("mesh target must be positive");
    if (!(hi > lo)) throw precondition_error("degenerate partition interval");
    int intervals = 1;
    while ((hi - lo) / intervals > mesh_target && intervals < (1 << 24))
      intervals *= 2;
    return uniform(lo, hi, intervals, rule);
  }
};

/// e_lambda(x): support projection of the positive part of (lambda 1 - x),
/// the indicator of the spectrum strictly below lambda. Eigenvalues within
/// the clustering tolerance of lambda count as lambda and stay outside.
inline Projection spectral_projection(const AlgebraElement& x, double lambda) {
  AlgebraElement shifted =
      lambda * AlgebraElement::identity(x.algebra()) - x;
  AlgebraElement pos = decompose_selfadjoint(shifted).positive;
  return range_projection(pos);
}

/// Thread overload: one global cut level, coordinatewise, with the coherence
/// law re-verified by lift.
inline Thread spectral_projection(const Thread& x, double lambda,
                                  double tol = 1e-8) {
  std::vector<AlgebraElement> coords;
  for (int a = 0; a < x.node_count(); ++a)
    coords.push_back(spectral_projection(x.coordinate(a), lambda).element());
  return lift(x.system(), std::move(coords), tol);
}

/// Spectral family of one element over a partition, with the defining axioms
/// checked: all members are projections, the family is monotone, it is 0 at
/// the left end and 1 at the right end, and it is left continuous (probed a
/// small step below each node and cross-checked against the eigenvalues).
struct SpectralFamily {
  std::vector<double> nodes;
  std::vector<Projection> projections;
  bool projections_valid = true;
  bool monotone = true;
  bool boundary = true;
  bool left_continuous = true;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline SpectralFamily build_family(const AlgebraElement& x,
                                   const PartitionSpec& part,
                                   double tol = 1e-8) {
  SpectralFamily fam;
  fam.nodes = part.nodes;
  for (double lambda : part.nodes)
    fam.projections.push_back(spectral_projection(x, lambda));
  for (std::size_t i = 0; i < fam.projections.size(); ++i)
    if (!is_projection(fam.projections[i].element(), tol)) {
      fam.projections_valid = false;
      fam.violations.push_back("member " + std::to_string(i) +
                               " is not a projection");
    }
  for (std::size_t i = 1; i < fam.projections.size(); ++i)
    if (!leq(fam.projections[i - 1], fam.projections[i], tol)) {
      fam.monotone = false;
      fam.violations.push_back("family not monotone at node " + std::to_string(i));
    }
  if (op_norm(fam.projections.front().element()) > tol) {
    fam.boundary = false;
    fam.violations.push_back("family is nonzero at the left end");
  }
  if (op_norm(fam.projections.back().element() -
              AlgebraElement::identity(x.algebra())) > tol) {
    fam.boundary = false;
    fam.violations.push_back("family is not the unit at the right end");
  }
  // left continuity: a probe just below each interior node must agree with
  // the node exactly when no eigenvalue sits in the probe window
  EigenDecomposition eig = hermitian_eigen(x);
  const double h = 1e-7 * std::max(1.0, op_norm(x));
  for (std::size_t i = 1; i + 1 < part.nodes.size(); ++i) {
    const double lambda = part.nodes[i];
    Projection below = spectral_projection(x, lambda - h);
    bool window_empty = true;
    for (const Eigen::VectorXd& vals : eig.eigenvalues)
      for (int j = 0; j < vals.size(); ++j)
        if (vals(j) >= lambda - h && vals(j) < lambda) window_empty = false;
    const bool equal =
        op_norm(below.element() - fam.projections[i].element()) <= tol;
    if (equal != window_empty) {
      fam.left_continuous = false;
      fam.violations.push_back("left-continuity probe disagrees at node " +
                               std::to_string(i));
    }
  }
  return fam;
}

/// Affine rescaling of a global partition onto the spectral interval
/// [-||x||, ||x|| + eps] of one coordinate. Relative node positions (and so
/// the mu rule) are preserved.
inline PartitionSpec rescale_partition(const PartitionSpec& global,
                                       const AlgebraElement& x, double eps) {
  if (eps <= 0.0) throw precondition_error("rescale_partition: eps must be positive");
  const double from_lo = global.nodes.front();
  const double from_hi = global.nodes.back();
  if (!(from_hi > from_lo))
    throw precondition_error("rescale_partition: degenerate source interval");
  const double norm = op_norm(x);
  const double to_lo = -norm;
  const double to_hi = norm + eps;
  const double c = (to_hi - to_lo) / (from_hi - from_lo);
  PartitionSpec out;
  out.rule = global.rule;
  for (double t : global.nodes) out.nodes.push_back(to_lo + c * (t - from_lo));
  out.nodes.front() = to_lo;
  out.nodes.back() = to_hi;
  return out;
}

/// sigma = sum_n mu_n (e_{lambda_n} - e_{lambda_{n-1}}) and the error bound
/// ||x - sigma|| <= mesh of the partition.
struct IntegralResult {
  AlgebraElement sigma;
  double error;
  double delta;  // partition mesh
  bool within_bound;
};

inline IntegralResult integral_sum(const AlgebraElement& x,
                                   const PartitionSpec& part,
                                   double tol = 1e-8) {
  if (part.intervals() < 1) throw precondition_error("partition needs an interval");
  std::vector<Projection> family;
  for (double lambda : part.nodes)
    family.push_back(spectral_projection(x, lambda));
  AlgebraElement sigma = AlgebraElement::zero(x.algebra());
  for (int n = 1; n <= part.intervals(); ++n)
    sigma = sigma + part.mu(n) * (family[static_cast<std::size_t>(n)].element() -
                                  family[static_cast<std::size_t>(n - 1)].element());
  const double error = op_norm(x - sigma);
  const double delta = part.mesh();
  return IntegralResult{std::move(sigma), error, delta, error <= delta + tol};
}

/// Thread-level spectral reconstruction: one global dyadic partition on the
/// sup-norm interval, rescaled per coordinate, with every per-coordinate
/// integral sum certified against its own mesh bound. Cut projections at each
/// global level are certified coherent, commuting with x, and inside a masa
/// containing x.
struct SpectralReconstruction {
  PartitionSpec global;
  std::vector<IntegralResult> per_node;
  double worst_error = 0.0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline SpectralReconstruction reconstruct(const Thread& x, double eps,
                                          double mesh_target,
                                          MuRule rule = MuRule::midpoint,
                                          int horizon = 64,
                                          bool per_node_fallback = false,
                                          double tol = 1e-8) {
  if (eps <= 0.0) throw precondition_error("reconstruct: eps must be positive");
  const SystemPtr& sys = x.system();
  for (int a = 0; a < sys->node_count(); ++a)
    if (!is_hermitian(x.coordinate(a)))
      throw precondition_error("reconstruct: thread is not self-adjoint");
  BoundednessVerdict verdict = sup_norm(x, horizon);
  if (!verdict.bounded() && !per_node_fallback)
    throw precondition_error("reconstruct requires a bounded thread");
  SpectralReconstruction out;
  out.global = PartitionSpec::dyadic(-verdict.sup, verdict.sup + eps,
                                     mesh_target, rule);
  for (int a = 0; a < sys->node_count(); ++a) {
    PartitionSpec local = rescale_partition(out.global, x.coordinate(a), eps);
    IntegralResult r = integral_sum(x.coordinate(a), local, tol);
    if (!r.within_bound)
      out.violations.push_back("mesh bound fails at " + sys->node_label(a) +
                               ": error " + std::to_string(r.error) +
                               " vs delta " + std::to_string(r.delta));
    out.worst_error = std::max(out.worst_error, r.error);
    out.per_node.push_back(std::move(r));
  }
  // cut projections at shared global levels form coherent threads
  for (double lambda : {out.global.nodes.front(),
                        out.global.nodes[out.global.nodes.size() / 2],
                        out.global.nodes.back()}) {
    try {
      Thread cut = spectral_projection(x, lambda, 10 * tol);
      for (int a = 0; a < sys->node_count(); ++a) {
        const AlgebraElement& e = cut.coordinate(a);
        const AlgebraElement& xa = x.coordinate(a);
        if (op_norm(e * xa - xa * e) > tol * std::max(1.0, op_norm(xa)))
          out.violations.push_back("cut projection does not commute at " +
                                   sys->node_label(a));
      }
    } catch (const structural_error& err) {
      out.violations.push_back(std::string("incoherent cut projections: ") +
                               err.what());
    }
  }
  // every cut projection of a coordinate lies in a masa containing it
  for (int a = 0; a < sys->node_count(); ++a) {
    Subalgebra masa = masa_containing(x.coordinate(a));
    PartitionSpec local = rescale_partition(out.global, x.coordinate(a), eps);
    AlgebraElement e =
        spectral_projection(x.coordinate(a), local.nodes[local.nodes.size() / 2])
            .element();
    if (!masa.contains(e))
      out.violations.push_back("cut projection escapes the masa at " +
                               sys->node_label(a));
  }
  return out;
}

}  // namespace lawkit
