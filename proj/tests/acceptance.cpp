// Acceptance gate: ten end-to-end criteria, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "lawkit/config.hpp"
#include "lawkit/gen.hpp"
#include "lawkit/lawstruct.hpp"
#include "lawkit/projlat.hpp"
#include "lawkit/report.hpp"
#include "lawkit/spectral.hpp"

using namespace lawkit;

namespace {

int failures = 0;

void line(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

FinStarAlgebra random_algebra(Rng& rng, int max_block = 4, int max_blocks = 3) {
  std::vector<int> sizes;
  const int k = rng.uniform_int(1, max_blocks);
  for (int i = 0; i < k; ++i) sizes.push_back(rng.uniform_int(1, max_block));
  return FinStarAlgebra(sizes, "r");
}

// 1. all four structure verdicts pass and agree on 100 random systems, < 60 s
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  std::string witness;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SystemPtr sys = random_system(seed);
    EquivalenceReport rep = verify_theorem1(sys, {2, seed * 101 + 3});
    if (!rep.all_pass()) {
      ++bad;
      if (witness.empty())
        witness = "seed " + std::to_string(seed) +
                  (rep.witnesses.empty() ? "" : ": " + rep.witnesses.front());
    }
  }
  const double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "theorem-1 equivalence on 100 systems, %d disagreements (%.1f s) %s",
                bad, dt, witness.c_str());
  line(1, bad == 0 && dt < 60.0, buf);
}

// 2. projection-route annihilators match the stacked-nullspace oracle on 200
//    random subsets, dimensions <= 64, residuals <= 1e-8
void criterion2() {
  Rng rng(4242);
  int mismatches = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    FinStarAlgebra alg = random_algebra(rng, 5, 3);
    if (alg.dim() > 64) {
      --i;
      continue;
    }
    std::vector<AlgebraElement> set;
    for (int k = rng.uniform_int(1, 3); k > 0; --k)
      set.push_back(rng.coin(0.2) ? AlgebraElement::zero(alg)
                                  : random_element(alg, rng));
    AnnihilatorResult r = right_annihilator(set);
    if (!r.dims_agree()) ++mismatches;
    for (const AlgebraElement& x : detail::stacked_nullspace_basis(set, true))
      worst = std::max(worst, frobenius(r.generator.element() * x - x) /
                                  std::max(1.0, frobenius(x)));
    for (const AlgebraElement& s : set)
      worst = std::max(worst, op_norm(s * r.generator.element()));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "annihilator oracle on 200 subsets, %d mismatches, worst "
                "residual %.2e",
                mismatches, worst);
  line(2, mismatches == 0 && worst <= 1e-8, buf);
}

// 3 + 4. spectral reconstruction bound with nonincreasing errors on nested
//        meshes, and the family axioms on every built family
void criteria3and4() {
  const std::vector<double> meshes = {0.5, 0.25, 0.125, 0.0625};
  RandomSystemSpec spec;
  spec.max_nodes = 5;
  spec.max_block_size = 6;
  int bound_failures = 0, monotone_failures = 0, family_failures = 0;
  double worst_instance = 0.0;
  Rng rng(909);
  for (int i = 0; i < 50; ++i) {
    SystemPtr sys = random_system(1000 + static_cast<std::uint64_t>(i), spec);
    Thread x = random_hermitian_thread(sys, rng);
    const auto t0 = std::chrono::steady_clock::now();
    double previous = std::numeric_limits<double>::infinity();
    for (double mesh : meshes) {
      SpectralReconstruction rec = reconstruct(x, 0.05, mesh, MuRule::left);
      for (const IntegralResult& r : rec.per_node)
        if (r.error > r.delta + 1e-8) ++bound_failures;
      if (!rec.violations.empty()) ++bound_failures;
      if (rec.worst_error > previous + 1e-12) ++monotone_failures;
      previous = rec.worst_error;
      for (int a = 0; a < sys->node_count(); ++a) {
        SpectralFamily fam = build_family(
            x.coordinate(a),
            rescale_partition(rec.global, x.coordinate(a), 0.05));
        if (!(fam.projections_valid && fam.monotone && fam.boundary &&
              fam.left_continuous))
          ++family_failures;
      }
    }
    worst_instance = std::max(worst_instance, seconds_since(t0) / meshes.size());
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "reconstruction bound on 50 threads x 4 meshes: %d bound / %d "
                "monotonicity failures, worst instance %.2f s",
                bound_failures, monotone_failures, worst_instance);
  line(3, bound_failures == 0 && monotone_failures == 0 && worst_instance < 1.0,
       buf);
  std::snprintf(buf, sizeof buf,
                "family axioms on every built family: %d failures",
                family_failures);
  line(4, family_failures == 0, buf);
}

// 5. projection-multiple approximation: residual strictly < eps on 100
//    commutative instances, certificates within 1e-8
void criterion5() {
  Rng rng(5150);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    FinStarAlgebra alg = random_algebra(rng);
    AlgebraElement x = random_hermitian(alg, rng);
    const double eps = rng.uniform(0.01, 1.0);
    Subalgebra masa = masa_containing(x);
    ProjectionMultiple pm = kaplansky_approx(masa, x, eps);
    if (!(pm.residual < eps) || !pm.ok()) ++bad;
  }
  line(5, bad == 0,
       "projection-multiple approximation on 100 instances, " +
           std::to_string(bad) + " failures");
}

// 6. projection threads are contractive; annihilators of 50 sampled bounded
//    subsets are generated inside the bounded part (oracle-checked)
void criterion6() {
  int contraction_failures = 0;
  Rng rng(660);
  for (int i = 0; i < 100; ++i) {
    SystemPtr sys = random_system(2000 + static_cast<std::uint64_t>(i));
    Thread e = random_projection_thread(sys, rng);
    if (sup_norm(e, 16).sup > 1.0 + 1e-9) ++contraction_failures;
  }
  int subset_failures = 0;
  for (int i = 0; i < 25; ++i) {
    SystemPtr sys = random_system(3000 + static_cast<std::uint64_t>(i));
    BoundedPartReport rep =
        bounded_part(sys, 16, 2, 7000 + static_cast<std::uint64_t>(i));
    if (!rep.ok()) ++subset_failures;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "bounded part: %d contraction / %d annihilator failures",
                contraction_failures, subset_failures);
  line(6, contraction_failures == 0 && subset_failures == 0, buf);
}

// 7. center, a random masa, and a random corner certify on 25 systems,
//    including the per-node commutative annihilator-closure checks
void criterion7() {
  int bad = 0;
  std::string witness;
  Rng rng(770);
  for (int i = 0; i < 25; ++i) {
    const std::uint64_t seed = 4000 + static_cast<std::uint64_t>(i);
    SystemPtr sys = random_system(seed);
    bool ok = true;

    Subsystem z = center(sys);
    ok = ok && z.ok();
    for (int a = 0; a < sys->node_count() && ok; ++a)
      ok = certify_commutative_aw(z.per_node[a], 4, seed * 3 + a).empty();

    Thread x = random_hermitian_thread(sys, rng);
    Subsystem masa = masa_containing(x);
    ok = ok && masa.ok();
    for (int a = 0; a < sys->node_count() && ok; ++a)
      ok = certify_commutative_aw(masa.per_node[a], 4, seed * 5 + a).empty();

    Corner c = corner(sys, random_projection_thread(sys, rng));
    if (!c.degenerate) ok = ok && c.ok() && c.compressed->validate().ok();

    if (!ok) {
      ++bad;
      if (witness.empty()) witness = "seed " + std::to_string(seed);
    }
  }
  line(7, bad == 0,
       "center/masa/corner certification on 25 systems, " +
           std::to_string(bad) + " failures " + witness);
}

// 8. the ideal-annihilator projection is central at every node on 50 sets
void criterion8() {
  Rng rng(880);
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    SystemPtr sys = random_system(5000 + static_cast<std::uint64_t>(i));
    std::vector<Thread> gens;
    for (int k = rng.uniform_int(1, 2); k > 0; --k)
      gens.push_back(random_thread(sys, rng));
    if (!ideal_annihilator_central(sys, gens).ok()) ++bad;
  }
  line(8, bad == 0,
       "central ideal annihilators on 50 generating sets, " +
           std::to_string(bad) + " failures");
}

// 9. the projection lattice axioms hold on 100 families per algebra over 20
//    random algebras; sups of orthogonal families equal the plain sum
void criterion9() {
  Rng rng(990);
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    FinStarAlgebra alg = random_algebra(rng);
    LatticeReport rep =
        verify_lattice(alg, 100, 6000 + static_cast<std::uint64_t>(i));
    violations += static_cast<int>(rep.violations.size());
    for (int j = 0; j < 5; ++j) {
      std::vector<AlgebraElement> family =
          random_orthogonal_family(alg, rng.uniform_int(2, 3), rng);
      std::vector<Projection> projs;
      AlgebraElement sum = AlgebraElement::zero(alg);
      for (const AlgebraElement& p : family) {
        projs.emplace_back(p);
        sum = sum + p;
      }
      worst = std::max(worst, op_norm(sup_family(projs).element() - sum));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "lattice suite on 20 algebras: %d violations, orthogonal "
                "sup-vs-sum residual %.2e",
                violations, worst);
  line(9, violations == 0 && worst <= 1e-8, buf);
}

// 10. byte-identical reports on repeated runs; verdicts invariant under a
//     unitary re-presentation of every coordinate algebra
void criterion10() {
  bool pass = true;
  std::string detail = "determinism and re-presentation invariance";

  auto render = [](const SystemPtr& sys, std::uint64_t seed) {
    Report report;
    report.command = "acceptance probe";
    report.config_digest = config_digest(nlohmann::json::parse(dump_config(sys)));
    EquivalenceReport eq = verify_theorem1(sys, {2, seed});
    report.add({"theorem1", "all four characterizations pass and agree",
                eq.all_pass(), "", {}});
    Rng rng(seed);
    Thread x = random_hermitian_thread(sys, rng);
    SpectralReconstruction rec = reconstruct(x, 0.05, 0.25);
    report.add({"spectral", "mesh bound", rec.ok(), "",
                {{"worst_error", rec.worst_error}}});
    return report.to_json();
  };

  for (std::uint64_t seed : {3u, 27u, 64u}) {
    SystemPtr sys = random_system(seed);
    if (render(sys, seed) != render(sys, seed)) {
      pass = false;
      detail += "; nondeterministic report at seed " + std::to_string(seed);
    }
  }

  for (std::uint64_t seed : {5u, 21u, 42u, 77u}) {
    SystemPtr sys = random_system(seed);
    Representation rep = conjugated_copy(sys, seed * 11 + 1);
    EquivalenceReport before = verify_theorem1(sys, {2, seed});
    EquivalenceReport after = verify_theorem1(rep.system, {2, seed});
    if (before.all_pass() != after.all_pass()) pass = false;
    Rng rng(seed);
    Thread x = random_hermitian_thread(sys, rng);
    Thread tx = rep.transport(x);
    for (int a = 0; a < sys->node_count(); ++a)
      if (std::abs(seminorm(x, a) - seminorm(tx, a)) > 1e-9) pass = false;
    SpectralReconstruction rx = reconstruct(x, 0.05, 0.25);
    SpectralReconstruction rtx = reconstruct(tx, 0.05, 0.25);
    if (rx.ok() != rtx.ok() ||
        std::abs(rx.worst_error - rtx.worst_error) > 1e-8)
      pass = false;
    std::vector<AlgebraElement> set = {x.coordinate(sys->top_node())};
    std::vector<AlgebraElement> tset = {tx.coordinate(sys->top_node())};
    if (right_annihilator(set).subspace_dim !=
        right_annihilator(tset).subspace_dim)
      pass = false;
  }
  line(10, pass, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criteria3and4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures == 0) {
    std::printf("acceptance: all criteria pass\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", failures);
  return 1;
}
