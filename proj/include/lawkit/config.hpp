#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lawkit/gen.hpp"
#include "lawkit/limits.hpp"

namespace lawkit {

/// Parsed run configuration: the system, named threads, seed and tolerance.
/// The canonical JSON form is kept for digests and round trips.
struct SystemConfig {
  SystemPtr system;
  std::map<std::string, Thread> elements;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  nlohmann::json canonical;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void located(const std::string& where, const std::string& what) {
  throw config_error("at " + where + ": " + what);
}

inline void reject_unknown(const json& obj, const std::string& where,
                           std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known) located(where, "unknown field '" + key + "'");
  }
}

inline const json& require(const json& obj, const std::string& where,
                           const char* field) {
  if (!obj.contains(field)) located(where, std::string("missing field '") + field + "'");
  return obj.at(field);
}

inline Complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    located(where, "complex numbers are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

/// Row-major flat list of [re, im] pairs of length n*n.
inline Mat parse_matrix(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n * n)
    located(where, "expected " + std::to_string(n * n) + " row-major entries");
  Mat m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m(r, c) = parse_complex(j[static_cast<std::size_t>(r * n + c)],
                              where + "[" + std::to_string(r * n + c) + "]");
  return m;
}

inline json dump_complex(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline json dump_matrix(const Mat& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.push_back(dump_complex(m(r, c)));
  return out;
}

inline AlgebraElement parse_element(const json& j, const FinStarAlgebra& alg,
                                    const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != alg.num_blocks())
    located(where, "expected one matrix per block (" +
                       std::to_string(alg.num_blocks()) + ")");
  std::vector<Mat> blocks;
  for (int b = 0; b < alg.num_blocks(); ++b)
    blocks.push_back(parse_matrix(j[static_cast<std::size_t>(b)], alg.block_sizes[b],
                                  where + "[" + std::to_string(b) + "]"));
  return AlgebraElement(alg, std::move(blocks));
}

inline ChainGenerator parse_generator(const json& j, const std::string& where) {
  if (!j.is_object()) located(where, "generator must be an object");
  reject_unknown(j, where, {"name", "param", "declared_bound", "monotone_nonincreasing"});
  ChainGenerator gen;
  gen.name = require(j, where, "name").get<std::string>();
  if (j.contains("param")) gen.param = j.at("param").get<double>();
  if (j.contains("declared_bound"))
    gen.declared_bound = j.at("declared_bound").get<double>();
  if (j.contains("monotone_nonincreasing"))
    gen.monotone_nonincreasing = j.at("monotone_nonincreasing").get<bool>();
  return gen;
}

}  // namespace detail

inline SystemConfig parse_config(const std::string& text) {
  using detail::json;
  using detail::located;
  using detail::require;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("malformed config: ") + e.what());
  }
  if (!root.is_object()) throw config_error("config root must be an object");
  detail::reject_unknown(root, "config",
                         {"nodes", "order", "maps", "chain", "elements", "seed",
                          "tolerances"});

  SystemConfig cfg;
  if (root.contains("seed")) cfg.seed = root.at("seed").get<std::uint64_t>();
  if (root.contains("tolerances")) {
    const json& tols = root.at("tolerances");
    detail::reject_unknown(tols, "tolerances", {"tol"});
    if (tols.contains("tol")) cfg.tol = tols.at("tol").get<double>();
    if (cfg.tol <= 0.0) located("tolerances.tol", "must be positive");
  }

  if (root.contains("chain")) {
    if (root.contains("nodes") || root.contains("maps") || root.contains("order"))
      throw config_error("give either a chain descriptor or explicit nodes, not both");
    const json& chain = root.at("chain");
    detail::reject_unknown(chain, "chain", {"kind", "horizon", "blocks"});
    const std::string kind = require(chain, "chain", "kind").get<std::string>();
    const int horizon = require(chain, "chain", "horizon").get<int>();
    if (horizon < 1) located("chain.horizon", "must be >= 1");
    if (kind == "diag") {
      cfg.system = diag_chain(horizon);
    } else if (kind == "const") {
      std::vector<int> sizes =
          require(chain, "chain", "blocks").get<std::vector<int>>();
      try {
        cfg.system = const_chain(FinStarAlgebra(sizes, "block"), horizon);
      } catch (const structural_error& e) {
        located("chain.blocks", e.what());
      }
    } else {
      located("chain.kind", "unknown kind '" + kind + "'");
    }
  } else {
    const json& nodes = require(root, "config", "nodes");
    if (!nodes.is_array() || nodes.empty())
      located("nodes", "expected a nonempty array");
    std::vector<std::string> labels;
    std::vector<FinStarAlgebra> algebras;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::string where = "nodes[" + std::to_string(i) + "]";
      detail::reject_unknown(nodes[i], where, {"label", "blocks"});
      labels.push_back(require(nodes[i], where, "label").get<std::string>());
      std::vector<int> sizes =
          require(nodes[i], where, "blocks").get<std::vector<int>>();
      try {
        algebras.push_back(FinStarAlgebra(sizes, labels.back()));
      } catch (const structural_error& e) {
        located(where + ".blocks", e.what());
      }
    }
    auto node_index = [&](const std::string& label,
                          const std::string& where) -> int {
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
      located(where, "unknown node '" + label + "'");
    };

    std::vector<std::pair<int, int>> order;
    if (root.contains("order")) {
      const json& pairs = root.at("order");
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string where = "order[" + std::to_string(i) + "]";
        if (!pairs[i].is_array() || pairs[i].size() != 2)
          located(where, "expected a [lower, higher] pair");
        order.emplace_back(node_index(pairs[i][0].get<std::string>(), where),
                           node_index(pairs[i][1].get<std::string>(), where));
      }
    }

    std::vector<ConnectingMap> maps;
    if (root.contains("maps")) {
      const json& jmaps = root.at("maps");
      for (std::size_t i = 0; i < jmaps.size(); ++i) {
        const std::string where = "maps[" + std::to_string(i) + "]";
        detail::reject_unknown(jmaps[i], where,
                               {"target", "source", "kept_blocks", "unitaries"});
        ConnectingMap m;
        m.target = node_index(require(jmaps[i], where, "target").get<std::string>(),
                              where + ".target");
        m.source = node_index(require(jmaps[i], where, "source").get<std::string>(),
                              where + ".source");
        m.kept_blocks =
            require(jmaps[i], where, "kept_blocks").get<std::vector<int>>();
        const FinStarAlgebra& dst = algebras[static_cast<std::size_t>(m.target)];
        if (jmaps[i].contains("unitaries")) {
          const json& us = jmaps[i].at("unitaries");
          if (static_cast<int>(us.size()) != dst.num_blocks())
            located(where + ".unitaries", "one entry per target block required");
          for (int b = 0; b < dst.num_blocks(); ++b) {
            const json& ju = us[static_cast<std::size_t>(b)];
            const std::string uw =
                where + ".unitaries[" + std::to_string(b) + "]";
            if (ju.is_null()) {
              m.unitaries.emplace_back();
              continue;
            }
            Mat u = detail::parse_matrix(ju, dst.block_sizes[b], uw);
            if ((u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm() > 1e-8)
              located(uw, "declared matrix is not unitary");
            m.unitaries.push_back(std::move(u));
          }
        } else {
          m.unitaries.assign(m.kept_blocks.size(), Mat());
        }
        maps.push_back(std::move(m));
      }
    }
    try {
      cfg.system = std::make_shared<ProjectiveSystem>(IndexPoset(labels, order),
                                                      std::move(algebras), maps);
    } catch (const structural_error& e) {
      throw config_error(std::string("at maps: ") + e.what());
    }
  }

  if (root.contains("elements")) {
    const json& elts = root.at("elements");
    if (!elts.is_object()) located("elements", "expected an object of named threads");
    for (const auto& [name, spec] : elts.items()) {
      const std::string where = "elements." + name;
      detail::reject_unknown(spec, where, {"coordinates", "generator"});
      if (spec.contains("generator") == spec.contains("coordinates"))
        located(where, "give exactly one of 'coordinates' or 'generator'");
      if (spec.contains("generator")) {
        try {
          cfg.elements.emplace(
              name, generator_thread(cfg.system, detail::parse_generator(
                                                     spec.at("generator"),
                                                     where + ".generator")));
        } catch (const precondition_error& e) {
          located(where + ".generator", e.what());
        }
      } else {
        const json& coords = spec.at("coordinates");
        if (!coords.is_array() ||
            static_cast<int>(coords.size()) != cfg.system->node_count())
          located(where + ".coordinates", "one coordinate per node required");
        std::vector<AlgebraElement> parsed;
        for (int a = 0; a < cfg.system->node_count(); ++a)
          parsed.push_back(detail::parse_element(
              coords[static_cast<std::size_t>(a)], cfg.system->algebra(a),
              where + ".coordinates[" + std::to_string(a) + "]"));
        try {
          cfg.elements.emplace(name, lift(cfg.system, std::move(parsed), cfg.tol));
        } catch (const structural_error& e) {
          located(where + ".coordinates", e.what());
        }
      }
    }
  }
  cfg.canonical = root;
  return cfg;
}

/// Canonical config text of a system plus named explicit threads. Reparsing
/// the output yields a semantically equal configuration.
inline std::string dump_config(const SystemPtr& sys,
                               const std::map<std::string, Thread>& elements = {},
                               std::uint64_t seed = 1) {
  using detail::json;
  json root;
  if (sys->is_chain()) {
    root["chain"] = {{"kind", sys->chain_kind() == "diag" ? "diag" : "const"},
                     {"horizon", sys->node_count()}};
    if (sys->chain_kind() != "diag")
      root["chain"]["blocks"] = sys->algebra(0).block_sizes;
  } else {
    json nodes = json::array();
    for (int a = 0; a < sys->node_count(); ++a)
      nodes.push_back({{"label", sys->node_label(a)},
                       {"blocks", sys->algebra(a).block_sizes}});
    root["nodes"] = std::move(nodes);
    json order = json::array();
    json maps = json::array();
    for (int t = 0; t < sys->node_count(); ++t)
      for (int s = 0; s < sys->node_count(); ++s) {
        if (t == s || !sys->poset().leq(t, s)) continue;
        order.push_back(json::array({sys->node_label(t), sys->node_label(s)}));
        const ConnectingMap& m = sys->map(t, s);
        json jm = {{"target", sys->node_label(t)},
                   {"source", sys->node_label(s)},
                   {"kept_blocks", m.kept_blocks}};
        json us = json::array();
        for (const Mat& u : m.unitaries)
          us.push_back(u.size() == 0 ? json(nullptr) : detail::dump_matrix(u));
        jm["unitaries"] = std::move(us);
        maps.push_back(std::move(jm));
      }
    root["order"] = std::move(order);
    root["maps"] = std::move(maps);
  }
  if (!elements.empty()) {
    json elts = json::object();
    for (const auto& [name, thread] : elements) {
      json coords = json::array();
      for (int a = 0; a < sys->node_count(); ++a) {
        json blocks = json::array();
        for (int b = 0; b < sys->algebra(a).num_blocks(); ++b)
          blocks.push_back(detail::dump_matrix(thread.coordinate(a).block(b)));
        coords.push_back(std::move(blocks));
      }
      elts[name] = {{"coordinates", std::move(coords)}};
    }
    root["elements"] = std::move(elts);
  }
  root["seed"] = seed;
  return root.dump(2) + "\n";
}

/// FNV-1a 64 over the canonical dump; identifies the config in reports.
inline std::string config_digest(const nlohmann::json& canonical) {
  const std::string text = canonical.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace lawkit
