#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "lawkit/limits.hpp"
#include "lawkit/random.hpp"

namespace lawkit {

/// Random valid projective systems: every node keeps a nested subset of the
/// top node's blocks with a per-block change of basis, so all connecting maps
/// are consistent by construction. Block sizes are uniform in [1,4], at most
/// 4 nodes and 3 blocks.
struct RandomSystemSpec {
  int max_nodes = 4;
  int max_blocks = 3;
  int max_block_size = 4;
};

namespace detail {

struct NodePlan {
  std::vector<int> kept;          // ascending indices into the top blocks
  std::vector<Mat> basis;         // per kept block, unitary relative to the top
};

inline ConnectingMap plan_map(const NodePlan& lower, const NodePlan& higher,
                              int target, int source) {
  ConnectingMap m;
  m.target = target;
  m.source = source;
  for (std::size_t i = 0; i < lower.kept.size(); ++i) {
    const int top_block = lower.kept[i];
    const auto pos = std::find(higher.kept.begin(), higher.kept.end(), top_block);
    m.kept_blocks.push_back(static_cast<int>(pos - higher.kept.begin()));
    m.unitaries.push_back(lower.basis[i] *
                          higher.basis[static_cast<std::size_t>(pos - higher.kept.begin())]
                              .adjoint());
  }
  return m;
}

}  // namespace detail

inline SystemPtr random_system(std::uint64_t seed,
                               const RandomSystemSpec& spec = {}) {
  Rng rng(seed);
  const int num_blocks = rng.uniform_int(1, spec.max_blocks);
  std::vector<int> top_sizes;
  for (int i = 0; i < num_blocks; ++i)
    top_sizes.push_back(rng.uniform_int(1, spec.max_block_size));

  const int num_nodes = rng.uniform_int(1, spec.max_nodes);
  const bool diamond = num_nodes == 4 && rng.coin();

  // node index 0 is the bottom; the last index is the top
  std::vector<std::pair<int, int>> order;
  if (diamond) {
    order = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  } else {
    for (int i = 0; i + 1 < num_nodes; ++i) order.emplace_back(i, i + 1);
  }

  auto subset_between = [&](const std::vector<int>& lo, const std::vector<int>& hi) {
    // random set with lo subseteq result subseteq hi
    std::vector<int> out = lo;
    for (int b : hi)
      if (std::find(out.begin(), out.end(), b) == out.end() && rng.coin())
        out.push_back(b);
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<int> all_blocks;
  for (int i = 0; i < num_blocks; ++i) all_blocks.push_back(i);

  std::vector<detail::NodePlan> plans(static_cast<std::size_t>(num_nodes));
  const int top = num_nodes - 1;
  plans[top].kept = all_blocks;
  if (diamond) {
    std::vector<int> bottom = {rng.uniform_int(0, num_blocks - 1)};
    plans[0].kept = bottom;
    plans[1].kept = subset_between(bottom, all_blocks);
    plans[2].kept = subset_between(bottom, all_blocks);
  } else {
    for (int i = num_nodes - 2; i >= 0; --i) {
      std::vector<int> seedset = {plans[i + 1].kept[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(plans[i + 1].kept.size()) - 1))]};
      plans[i].kept = subset_between(seedset, plans[i + 1].kept);
    }
  }
  for (int v = 0; v < num_nodes; ++v)
    for (int b : plans[v].kept)
      plans[v].basis.push_back(v == top ? Mat::Identity(top_sizes[b], top_sizes[b])
                                        : random_unitary(top_sizes[b], rng));

  std::vector<std::string> labels;
  std::vector<FinStarAlgebra> algebras;
  for (int v = 0; v < num_nodes; ++v) {
    labels.push_back("n" + std::to_string(v));
    std::vector<int> sizes;
    for (int b : plans[v].kept) sizes.push_back(top_sizes[b]);
    algebras.push_back(FinStarAlgebra(sizes, labels.back()));
  }
  std::vector<ConnectingMap> maps;
  for (const auto& [lo, hi] : order)
    maps.push_back(detail::plan_map(plans[lo], plans[hi], lo, hi));
  return std::make_shared<ProjectiveSystem>(IndexPoset(labels, order),
                                            std::move(algebras), maps);
}

inline Thread random_thread(const SystemPtr& sys, Rng& rng) {
  return thread_from_top(sys, random_element(sys->algebra(sys->top_node()), rng));
}

inline Thread random_hermitian_thread(const SystemPtr& sys, Rng& rng) {
  return thread_from_top(sys, random_hermitian(sys->algebra(sys->top_node()), rng));
}

inline Thread random_projection_thread(const SystemPtr& sys, Rng& rng) {
  return thread_from_top(sys,
                         random_projection_element(sys->algebra(sys->top_node()), rng));
}

/// Pairwise orthogonal projection threads sharing one eigenbasis at the top.
inline std::vector<Thread> random_orthogonal_thread_family(const SystemPtr& sys,
                                                           int count, Rng& rng) {
  std::vector<Thread> out;
  for (const AlgebraElement& p :
       random_orthogonal_family(sys->algebra(sys->top_node()), count, rng))
    out.push_back(thread_from_top(sys, p));
  return out;
}

/// A unitary re-presentation of a system: every coordinate algebra is
/// conjugated blockwise and the connecting maps are transported, so all
/// verdicts must be unchanged.
struct Representation {
  SystemPtr system;
  std::vector<std::vector<Mat>> basis_change;  // per node, per block

  AlgebraElement transport(const AlgebraElement& x, int node) const {
    std::vector<Mat> blocks;
    for (int b = 0; b < x.num_blocks(); ++b) {
      const Mat& q = basis_change[node][static_cast<std::size_t>(b)];
      blocks.push_back(q * x.block(b) * q.adjoint());
    }
    return AlgebraElement(system->algebra(node), std::move(blocks));
  }

  Thread transport(const Thread& x) const {
    std::vector<AlgebraElement> coords;
    for (int a = 0; a < x.node_count(); ++a)
      coords.push_back(transport(x.coordinate(a), a));
    return Thread(system, std::move(coords));
  }
};

inline Representation conjugated_copy(const SystemPtr& sys, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<Mat>> q(static_cast<std::size_t>(sys->node_count()));
  std::vector<FinStarAlgebra> algebras;
  for (int v = 0; v < sys->node_count(); ++v) {
    algebras.push_back(sys->algebra(v));
    for (int n : sys->algebra(v).block_sizes)
      q[static_cast<std::size_t>(v)].push_back(random_unitary(n, rng));
  }
  std::vector<ConnectingMap> maps;
  for (int t = 0; t < sys->node_count(); ++t)
    for (int s = 0; s < sys->node_count(); ++s) {
      if (t == s || !sys->poset().leq(t, s)) continue;
      const ConnectingMap& m = sys->map(t, s);
      ConnectingMap out;
      out.target = t;
      out.source = s;
      out.kept_blocks = m.kept_blocks;
      for (std::size_t i = 0; i < m.kept_blocks.size(); ++i) {
        const Mat& u = m.unitaries[i];
        const Mat& qt = q[static_cast<std::size_t>(t)][i];
        const Mat& qs =
            q[static_cast<std::size_t>(s)][static_cast<std::size_t>(m.kept_blocks[i])];
        out.unitaries.push_back(u.size() == 0 ? Mat(qt * qs.adjoint())
                                              : Mat(qt * u * qs.adjoint()));
      }
      maps.push_back(std::move(out));
    }
  IndexPoset poset = sys->poset();
  Representation rep;
  rep.system = std::make_shared<ProjectiveSystem>(std::move(poset), std::move(algebras),
                                                  maps, sys->is_chain(),
                                                  sys->chain_kind());
  rep.basis_change = std::move(q);
  return rep;
}

}  // namespace lawkit
