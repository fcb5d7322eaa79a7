#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qbaf/errors.hpp"

namespace qbaf {

/// Arguments are identified by short string tokens, unique per framework.
using ArgumentId = std::string;
using EdgePair = std::pair<ArgumentId, ArgumentId>;

enum class EdgeKind { attack, support };

inline const char* to_string(EdgeKind k) {
  return k == EdgeKind::attack ? "attack" : "support";
}

/// Input record for one argument. An empty content string means "no text".
struct ArgumentSpec {
  ArgumentId id;
  double base_score = 0.5;
  std::string content;
};

/// Immutable, validated framework: arguments with base scores in [0,1] plus
/// disjoint attack/support relations whose union is acyclic. Construction
/// goes through build_qbaf(); a constructed Qbaf always satisfies all
/// invariants and is safe to share read-only across threads.
///
/// Arguments are stored sorted by id, so argument index order coincides with
/// lexicographic id order. All tie-breaking in the library relies on this.
class Qbaf {
 public:
  std::size_t size() const { return ids_.size(); }

  /// All argument ids, lexicographically sorted.
  const std::vector<ArgumentId>& arguments() const { return ids_; }

  bool contains(const ArgumentId& id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  std::size_t index_of(const ArgumentId& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) {
      throw error(errc::unknown_argument, "no argument '" + id + "'");
    }
    return static_cast<std::size_t>(it - ids_.begin());
  }

  const ArgumentId& id_of(std::size_t index) const { return ids_[index]; }

  double base_score(const ArgumentId& id) const { return base_[index_of(id)]; }
  double base_score_at(std::size_t index) const { return base_[index]; }

  /// Display text attached to an argument; empty if none was given.
  const std::string& content(const ArgumentId& id) const {
    return content_[index_of(id)];
  }
  const std::string& content_at(std::size_t index) const {
    return content_[index];
  }

  /// Parents attacking / supporting the given argument, sorted by index.
  std::span<const std::uint32_t> attackers_of(std::size_t index) const {
    return attackers_[index];
  }
  std::span<const std::uint32_t> supporters_of(std::size_t index) const {
    return supporters_[index];
  }

  /// Outgoing edges, sorted by (child index, kind).
  std::span<const std::pair<std::uint32_t, EdgeKind>> children_of(
      std::size_t index) const {
    return children_[index];
  }

  std::optional<EdgeKind> edge_between(std::size_t parent,
                                       std::size_t child) const {
    if (std::binary_search(attackers_[child].begin(), attackers_[child].end(),
                           static_cast<std::uint32_t>(parent))) {
      return EdgeKind::attack;
    }
    if (std::binary_search(supporters_[child].begin(), supporters_[child].end(),
                           static_cast<std::uint32_t>(parent))) {
      return EdgeKind::support;
    }
    return std::nullopt;
  }

  std::size_t attack_count() const { return attack_count_; }
  std::size_t support_count() const { return support_count_; }

  /// Attack / support relations as sorted id pairs (materialized on demand).
  std::vector<EdgePair> attack_pairs() const {
    return collect_pairs(EdgeKind::attack);
  }
  std::vector<EdgePair> support_pairs() const {
    return collect_pairs(EdgeKind::support);
  }

  /// A topological order of the argument indices, computed at build time.
  /// Every edge (X, Y) has X before Y; ties broken by id order.
  const std::vector<std::uint32_t>& topological_indices() const {
    return topo_;
  }

  /// Copy of this framework with one base score replaced.
  Qbaf with_base_score(const ArgumentId& id, double value) const {
    std::size_t index = index_of(id);
    if (!(value >= 0.0 && value <= 1.0)) {
      throw error(errc::base_score_out_of_range,
                  "argument '" + id + "': base score " + std::to_string(value));
    }
    Qbaf copy(*this);
    copy.base_[index] = value;
    return copy;
  }

  friend Qbaf build_qbaf(std::vector<ArgumentSpec> arguments,
                         std::vector<EdgePair> attacks,
                         std::vector<EdgePair> supports);

 private:
  Qbaf() = default;

  std::vector<EdgePair> collect_pairs(EdgeKind kind) const {
    std::vector<EdgePair> out;
    for (std::size_t parent = 0; parent < size(); ++parent) {
      for (const auto& [child, k] : children_[parent]) {
        if (k == kind) out.emplace_back(ids_[parent], ids_[child]);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<ArgumentId> ids_;
  std::vector<double> base_;
  std::vector<std::string> content_;
  std::vector<std::vector<std::uint32_t>> attackers_;
  std::vector<std::vector<std::uint32_t>> supporters_;
  std::vector<std::vector<std::pair<std::uint32_t, EdgeKind>>> children_;
  std::vector<std::uint32_t> topo_;
  std::size_t attack_count_ = 0;
  std::size_t support_count_ = 0;
};

namespace detail {

/// Kahn's algorithm with a min-heap so equal-depth nodes come out in id
/// order. Returns indices; leftover nodes mean a cycle.
inline std::vector<std::uint32_t> kahn_order(
    std::size_t n, const std::vector<std::vector<std::uint32_t>>& attackers,
    const std::vector<std::vector<std::uint32_t>>& supporters,
    const std::vector<std::vector<std::pair<std::uint32_t, EdgeKind>>>&
        children) {
  std::vector<std::uint32_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    indegree[i] = static_cast<std::uint32_t>(attackers[i].size() +
                                             supporters[i].size());
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>,
                      std::greater<>> ready;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::uint32_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::uint32_t node = ready.top();
    ready.pop();
    order.push_back(node);
    for (const auto& [child, kind] : children[node]) {
      (void)kind;
      if (--indegree[child] == 0) ready.push(child);
    }
  }
  return order;
}

/// One directed cycle among the given nodes, as an id sequence starting and
/// ending at the same argument. Used only for error reporting.
inline std::vector<std::uint32_t> find_cycle(
    const std::vector<std::uint32_t>& nodes,
    const std::vector<std::vector<std::pair<std::uint32_t, EdgeKind>>>&
        children) {
  enum : char { unseen, active, done };
  std::size_t n = children.size();
  std::vector<char> state(n, unseen);
  std::vector<std::uint32_t> parent(n, 0);
  for (std::uint32_t start : nodes) {
    if (state[start] != unseen) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{start, 0}};
    state[start] = active;
    while (!stack.empty()) {
      auto& [node, pos] = stack.back();
      if (pos < children[node].size()) {
        std::uint32_t next = children[node][pos++].first;
        if (state[next] == active) {
          // unwind the stack into an explicit cycle
          std::vector<std::uint32_t> cycle{next};
          for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            cycle.push_back(it->first);
            if (it->first == next) break;
          }
          std::reverse(cycle.begin(), cycle.end());
          return cycle;
        }
        if (state[next] == unseen) {
          state[next] = active;
          stack.emplace_back(next, 0);
        }
      } else {
        state[node] = done;
        stack.pop_back();
      }
    }
  }
  return {};
}

}  // namespace detail

/// Validates and builds a framework. Throws exactly one categorized error on
/// the first violated invariant: DuplicateArgument, BaseScoreOutOfRange,
/// UnknownEndpoint, OverlappingRelations, or CycleDetected (naming one cycle).
inline Qbaf build_qbaf(std::vector<ArgumentSpec> arguments,
                       std::vector<EdgePair> attacks,
                       std::vector<EdgePair> supports) {
  std::sort(arguments.begin(), arguments.end(),
            [](const ArgumentSpec& a, const ArgumentSpec& b) {
              return a.id < b.id;
            });
  for (std::size_t i = 0; i + 1 < arguments.size(); ++i) {
    if (arguments[i].id == arguments[i + 1].id) {
      throw error(errc::duplicate_argument,
                  "argument '" + arguments[i].id + "' declared twice");
    }
  }
  for (const ArgumentSpec& spec : arguments) {
    if (spec.id.empty()) {
      throw error(errc::duplicate_argument, "empty argument id");
    }
    if (!(spec.base_score >= 0.0 && spec.base_score <= 1.0)) {
      throw error(errc::base_score_out_of_range,
                  "argument '" + spec.id + "': base score " +
                      std::to_string(spec.base_score));
    }
  }

  Qbaf q;
  std::size_t n = arguments.size();
  q.ids_.reserve(n);
  q.base_.reserve(n);
  q.content_.reserve(n);
  for (ArgumentSpec& spec : arguments) {
    q.ids_.push_back(std::move(spec.id));
    q.base_.push_back(spec.base_score);
    q.content_.push_back(std::move(spec.content));
  }

  auto resolve = [&](const EdgePair& edge) {
    auto lookup = [&](const ArgumentId& id) -> std::uint32_t {
      auto it = std::lower_bound(q.ids_.begin(), q.ids_.end(), id);
      if (it == q.ids_.end() || *it != id) {
        throw error(errc::unknown_endpoint,
                    "edge endpoint '" + id + "' is not a declared argument");
      }
      return static_cast<std::uint32_t>(it - q.ids_.begin());
    };
    return std::pair<std::uint32_t, std::uint32_t>{lookup(edge.first),
                                                   lookup(edge.second)};
  };

  using IndexPair = std::pair<std::uint32_t, std::uint32_t>;
  auto normalize = [&](const std::vector<EdgePair>& in) {
    std::vector<IndexPair> out;
    out.reserve(in.size());
    for (const EdgePair& e : in) out.push_back(resolve(e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::vector<IndexPair> att = normalize(attacks);
  std::vector<IndexPair> sup = normalize(supports);

  std::vector<IndexPair> overlap;
  std::set_intersection(att.begin(), att.end(), sup.begin(), sup.end(),
                        std::back_inserter(overlap));
  if (!overlap.empty()) {
    throw error(errc::overlapping_relations,
                "edge (" + q.ids_[overlap[0].first] + ", " +
                    q.ids_[overlap[0].second] +
                    ") is both an attack and a support");
  }

  q.attackers_.resize(n);
  q.supporters_.resize(n);
  q.children_.resize(n);
  for (const auto& [parent, child] : att) {
    q.attackers_[child].push_back(parent);
    q.children_[parent].emplace_back(child, EdgeKind::attack);
  }
  for (const auto& [parent, child] : sup) {
    q.supporters_[child].push_back(parent);
    q.children_[parent].emplace_back(child, EdgeKind::support);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(q.attackers_[i].begin(), q.attackers_[i].end());
    std::sort(q.supporters_[i].begin(), q.supporters_[i].end());
    std::sort(q.children_[i].begin(), q.children_[i].end());
  }
  q.attack_count_ = att.size();
  q.support_count_ = sup.size();

  q.topo_ = detail::kahn_order(n, q.attackers_, q.supporters_, q.children_);
  if (q.topo_.size() != n) {
    std::vector<char> placed(n, 0);
    for (std::uint32_t i : q.topo_) placed[i] = 1;
    std::vector<std::uint32_t> leftover;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!placed[i]) leftover.push_back(i);
    }
    std::vector<std::uint32_t> cycle = detail::find_cycle(leftover, q.children_);
    std::string msg = "cycle:";
    for (std::uint32_t i : cycle) msg += " " + q.ids_[i];
    throw error(errc::cycle_detected, msg);
  }
  return q;
}

/// Topological order as argument ids. Deterministic: ties broken
/// lexicographically.
inline std::vector<ArgumentId> topological_order(const Qbaf& q) {
  std::vector<ArgumentId> out;
  out.reserve(q.size());
  for (std::uint32_t i : q.topological_indices()) out.push_back(q.id_of(i));
  return out;
}

/// A directed path of length >= 2 nodes through attack/support edges.
struct Path {
  std::vector<ArgumentId> nodes;
  int middle_count = 0;  // nodes.size() - 2
  int attack_count = 0;  // attack edges along the path
};

struct PathSet {
  ArgumentId source;
  ArgumentId target;
  std::vector<Path> paths;
};

/// Exhaustive DFS enumeration of all source -> target paths, in lexicographic
/// order of their node sequences. Worst case is exponential in the number of
/// arguments; intended for case-study-sized frameworks and test oracles.
inline PathSet enumerate_paths(const Qbaf& q, const ArgumentId& from,
                               const ArgumentId& to) {
  std::uint32_t src = static_cast<std::uint32_t>(q.index_of(from));
  std::uint32_t dst = static_cast<std::uint32_t>(q.index_of(to));
  PathSet result{from, to, {}};
  if (src == dst) return result;  // acyclic: no path returns to its start

  struct Frame {
    std::uint32_t node;
    std::size_t next_child;
  };
  std::vector<Frame> stack{{src, 0}};
  std::vector<std::uint32_t> trail{src};
  int attacks_on_trail = 0;

  while (!stack.empty()) {
    Frame& top = stack.back();
    auto children = q.children_of(top.node);
    if (top.next_child >= children.size()) {
      stack.pop_back();
      trail.pop_back();
      if (!stack.empty()) {
        auto prev = q.children_of(stack.back().node)[stack.back().next_child - 1];
        if (prev.second == EdgeKind::attack) --attacks_on_trail;
      }
      continue;
    }
    auto [child, kind] = children[top.next_child++];
    if (child == dst) {
      Path p;
      p.nodes.reserve(trail.size() + 1);
      for (std::uint32_t i : trail) p.nodes.push_back(q.id_of(i));
      p.nodes.push_back(q.id_of(dst));
      p.middle_count = static_cast<int>(p.nodes.size()) - 2;
      p.attack_count =
          attacks_on_trail + (kind == EdgeKind::attack ? 1 : 0);
      result.paths.push_back(std::move(p));
      continue;
    }
    if (kind == EdgeKind::attack) ++attacks_on_trail;
    stack.push_back({child, 0});
    trail.push_back(child);
  }
  return result;
}

/// Connectivity of an ordered argument pair, by path count and length:
/// no path, a single edge, a single longer path, or several paths.
enum class ConnectivityClass { disconnected, direct, indirect, multifold };

inline const char* to_string(ConnectivityClass c) {
  switch (c) {
    case ConnectivityClass::disconnected: return "disconnected";
    case ConnectivityClass::direct: return "direct";
    case ConnectivityClass::indirect: return "indirect";
    case ConnectivityClass::multifold: return "multifold";
  }
  return "?";
}

namespace detail {

struct ConnectivityInfo {
  ConnectivityClass cls = ConnectivityClass::disconnected;
  std::vector<std::uint32_t> unique_path;  // filled for direct/indirect
  int theta = 0;                           // attack edges on the unique path
};

/// Saturating path-count sweep (0, 1, many) plus a walk of the unique path
/// when there is exactly one. Linear in |A| + |R|.
inline ConnectivityInfo connectivity_info(const Qbaf& q, std::size_t from,
                                          std::size_t to) {
  ConnectivityInfo info;
  if (from == to) return info;  // self pairs: no path of length >= 2 exists
  std::vector<std::uint8_t> count(q.size(), 0);
  count[to] = 1;
  const auto& topo = q.topological_indices();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    std::uint32_t node = *it;
    if (node == to) continue;
    unsigned total = 0;
    for (const auto& [child, kind] : q.children_of(node)) {
      (void)kind;
      total += count[child];
      if (total >= 2) break;
    }
    count[node] = static_cast<std::uint8_t>(total >= 2 ? 2 : total);
  }
  if (count[from] == 0) return info;
  if (count[from] >= 2) {
    info.cls = ConnectivityClass::multifold;
    return info;
  }
  std::uint32_t cur = static_cast<std::uint32_t>(from);
  info.unique_path.push_back(cur);
  while (cur != to) {
    for (const auto& [child, kind] : q.children_of(cur)) {
      if (count[child] >= 1) {
        if (kind == EdgeKind::attack) ++info.theta;
        info.unique_path.push_back(child);
        cur = child;
        break;
      }
    }
  }
  info.cls = info.unique_path.size() == 2 ? ConnectivityClass::direct
                                          : ConnectivityClass::indirect;
  return info;
}

}  // namespace detail

inline ConnectivityClass classify_connectivity(const Qbaf& q,
                                               const ArgumentId& from,
                                               const ArgumentId& to) {
  return detail::connectivity_info(q, q.index_of(from), q.index_of(to)).cls;
}

}  // namespace qbaf
