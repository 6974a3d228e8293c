#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lawkit/matstar.hpp"
#include "lawkit/random.hpp"

namespace lawkit {

/// A projection in a finite-dimensional C*-algebra, with cached per-block
/// ranks (number of eigenvalues clustered at 1).
class Projection {
public:
  explicit Projection(AlgebraElement element, double tol = kDefaultTol)
      : element_(std::move(element)) {
    if (!is_projection(element_, tol))
      throw precondition_error("element is not a projection");
    for (int i = 0; i < element_.num_blocks(); ++i) {
      // trace of an idempotent Hermitian equals its rank
      const double tr = element_.block(i).trace().real();
      rank_per_block_.push_back(static_cast<int>(std::lround(tr)));
    }
  }

  static Projection zero(const FinStarAlgebra& alg) {
    return Projection(AlgebraElement::zero(alg));
  }
  static Projection identity(const FinStarAlgebra& alg) {
    return Projection(AlgebraElement::identity(alg));
  }

  const AlgebraElement& element() const { return element_; }
  const std::vector<int>& rank_per_block() const { return rank_per_block_; }

  int total_rank() const {
    int r = 0;
    for (int v : rank_per_block_) r += v;
    return r;
  }

  Projection complement() const {
    return Projection(AlgebraElement::identity(element_.algebra()) - element_);
  }

private:
  AlgebraElement element_;
  std::vector<int> rank_per_block_;
};

/// e <= f iff e = ef.
inline bool leq(const Projection& e, const Projection& f, double tol = kDefaultTol) {
  return op_norm(e.element() - e.element() * f.element()) <= tol;
}

/// e and f are orthogonal iff ef = 0.
inline bool orthogonal(const Projection& e, const Projection& f,
                       double tol = kDefaultTol) {
  return op_norm(e.element() * f.element()) <= tol;
}

/// Projection onto the range of a positive semidefinite self-adjoint element,
/// with eigenvalues clustered at the 1e-10 scale.
inline Projection range_projection(const AlgebraElement& psd) {
  EigenDecomposition eig = hermitian_eigen(psd);
  double scale = 0.0;
  for (const auto& vals : eig.eigenvalues)
    if (vals.size() > 0) scale = std::max(scale, std::abs(vals(vals.size() - 1)));
  const double s = scale;
  return Projection(
      eig.apply([s](double t) { return eigenvalue_is_zero(t, s) ? 0.0 : 1.0; }));
}

/// Supremum of a nonempty family: the range projection of the sum. Equals the
/// plain sum for pairwise orthogonal families.
inline Projection sup_family(const std::vector<Projection>& family) {
  if (family.empty())
    throw precondition_error("sup_family: empty family (use the zero projection)");
  AlgebraElement sum = family.front().element();
  for (std::size_t i = 1; i < family.size(); ++i)
    sum = sum + family[i].element();
  return range_projection(sum);
}

/// Infimum as the complement of the sup of complements.
inline Projection inf_family(const std::vector<Projection>& family) {
  if (family.empty())
    throw precondition_error("inf_family: empty family (use the identity)");
  std::vector<Projection> complements;
  complements.reserve(family.size());
  for (const Projection& e : family) complements.push_back(e.complement());
  return sup_family(complements).complement();
}

struct LatticeReport {
  int samples = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Sample random projection families and check the partial-order axioms, that
/// sup/inf really bound, absorption, and the complement laws.
inline LatticeReport verify_lattice(const FinStarAlgebra& alg, int samples,
                                    std::uint64_t seed, double tol = 1e-8) {
  if (samples < 1) throw precondition_error("verify_lattice: samples must be >= 1");
  Rng rng(seed);
  LatticeReport report;
  report.samples = samples;
  auto note = [&](int sample, const std::string& what) {
    report.violations.push_back("sample " + std::to_string(sample) + ": " + what);
  };
  for (int s = 0; s < samples; ++s) {
    Projection e(random_projection_element(alg, rng));
    Projection f(random_projection_element(alg, rng));
    Projection g(random_projection_element(alg, rng));

    if (!leq(e, e, tol)) note(s, "reflexivity failed");
    if (leq(e, f, tol) && leq(f, e, tol) &&
        op_norm(e.element() - f.element()) > tol)
      note(s, "antisymmetry failed");
    if (leq(e, f, tol) && leq(f, g, tol) && !leq(e, g, tol))
      note(s, "transitivity failed");

    Projection join = sup_family({e, f});
    Projection meet = inf_family({e, f});
    if (!leq(e, join, tol) || !leq(f, join, tol)) note(s, "sup is not an upper bound");
    if (!leq(meet, e, tol) || !leq(meet, f, tol)) note(s, "inf is not a lower bound");

    // absorption: e ^ (e v f) = e
    Projection absorbed = inf_family({e, join});
    if (op_norm(absorbed.element() - e.element()) > tol) note(s, "absorption failed");

    // complement laws
    Projection ec = e.complement();
    if (op_norm(sup_family({e, ec}).element() -
                AlgebraElement::identity(alg)) > tol)
      note(s, "e v e' != 1");
    if (op_norm(inf_family({e, ec}).element()) > tol) note(s, "e ^ e' != 0");

    // orthogonal families: sup equals the plain sum
    std::vector<AlgebraElement> fam =
        random_orthogonal_family(alg, rng.uniform_int(1, 3), rng);
    std::vector<Projection> projs;
    AlgebraElement plain_sum = AlgebraElement::zero(alg);
    for (const AlgebraElement& p : fam) {
      projs.emplace_back(p);
      plain_sum = plain_sum + p;
    }
    if (op_norm(sup_family(projs).element() - plain_sum) > tol)
      note(s, "orthogonal sup differs from the sum");
  }
  return report;
}

}  // namespace lawkit
