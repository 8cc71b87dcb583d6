#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/port_graph.hpp"

namespace thompson {

/// Finite rooted binary tree stored as its leaves: the complete prefix code of
/// root-to-leaf paths ('0' = left, '1' = right), sorted left to right.
class BinaryTree {
 public:
  BinaryTree() : leaves_{""} {}

  static BinaryTree from_leaves(std::vector<std::string> leaves) {
    std::sort(leaves.begin(), leaves.end());
    BinaryTree t;
    t.leaves_ = std::move(leaves);
    if (!t.is_complete()) {
      throw Error(ErrorCode::BoundaryMismatch, "leaf set is not a complete prefix code");
    }
    return t;
  }

  /// Right vine with `n` leaves: 0, 10, 110, ..., 1^(n-1).
  static BinaryTree right_vine(int n) {
    std::vector<std::string> leaves;
    std::string ones;
    for (int i = 0; i + 1 < n; ++i) {
      leaves.push_back(ones + "0");
      ones += '1';
    }
    leaves.push_back(ones);
    return from_leaves(std::move(leaves));
  }

  const std::vector<std::string>& leaves() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  std::size_t internal_count() const { return leaves_.size() - 1; }

  bool is_leaf(const std::string& prefix) const {
    return std::binary_search(leaves_.begin(), leaves_.end(), prefix);
  }

  friend bool operator==(const BinaryTree&, const BinaryTree&) = default;

 private:
  bool is_complete() const {
    // Kraft sum exactly one and no leaf is a prefix of the next.
    if (leaves_.empty()) return false;
    for (std::size_t i = 0; i + 1 < leaves_.size(); ++i) {
      const auto& a = leaves_[i];
      const auto& b = leaves_[i + 1];
      if (b.compare(0, a.size(), a) == 0) return false;
    }
    long double sum = 0;
    for (const auto& l : leaves_) {
      if (l.size() > 60) return false;
      sum += 1.0L / static_cast<long double>(1ULL << l.size());
    }
    return sum == 1.0L;
  }

  std::vector<std::string> leaves_;
};

/// Tree pair diagram: leaf i of the domain tree is glued to leaf
/// `bijection[i]` of the range tree.
struct TreePair {
  BinaryTree domain;
  BinaryTree range;
  std::vector<int> bijection;

  bool valid() const {
    if (domain.leaf_count() != range.leaf_count() || bijection.size() != domain.leaf_count()) {
      return false;
    }
    std::vector<int> seen(bijection.size(), 0);
    for (int b : bijection) {
      if (b < 0 || static_cast<std::size_t>(b) >= seen.size() || seen[b]++) return false;
    }
    return true;
  }

  /// Shift s when the bijection is i -> i+s mod n, otherwise nullopt.
  std::optional<int> cyclic_shift() const {
    const int n = static_cast<int>(bijection.size());
    const int s = bijection.empty() ? 0 : bijection[0];
    for (int i = 0; i < n; ++i) {
      if (bijection[i] != (i + s) % n) return std::nullopt;
    }
    return s;
  }

  friend bool operator==(const TreePair&, const TreePair&) = default;
};

/// (m,n)-strand diagram: an acyclic ported graph with ordered sources on top
/// and ordered sinks at the bottom.
class StrandDiagram : public PortGraph {
 public:
  int m() const { return static_cast<int>(sources.size()); }
  int n() const { return static_cast<int>(sinks.size()); }

  static StrandDiagram identity(int k = 1) {
    StrandDiagram d;
    for (int i = 0; i < k; ++i) d.add_edge(Endpoint::source(i), Endpoint::sink(i));
    return d;
  }

  StrandDiagram compacted() const {
    StrandDiagram out;
    compact_into(out);
    return out;
  }

  /// Glues `bottom` below this diagram in place: sink i meets source i.
  void append(const StrandDiagram& bottom) {
    if (n() != bottom.m()) {
      throw Error(ErrorCode::ArityMismatch, "cannot concatenate a diagram with " +
                                                std::to_string(n()) + " sinks onto one with " +
                                                std::to_string(bottom.m()) + " sources");
    }
    const auto voff = static_cast<VertexId>(vertices.size());
    const std::vector<EdgeId> top_sinks = std::move(sinks);
    sinks.assign(bottom.sinks.size(), kNone);

    for (const Vertex& v : bottom.vertices) {
      vertices.push_back(Vertex{v.kind, v.alive});
      if (v.alive) ++live_vertices_;
    }
    auto shift = [voff](Endpoint p) {
      if (p.is_vertex()) p.index += voff;
      return p;
    };
    for (const Edge& e : bottom.edges) {
      if (!e.alive) continue;
      const Endpoint to = shift(e.to);
      if (e.from.kind == Endpoint::Kind::Source) {
        const EdgeId a = top_sinks[e.from.index];
        edges[a].to = to;
        edges[a].w += e.w;
        head_slot(to) = a;
      } else {
        add_edge(shift(e.from), to, e.w);
      }
    }
  }
};

/// Checks every structural invariant; nullopt means the diagram is valid.
inline std::optional<Error> validate(const StrandDiagram& d) {
  if (d.m() < 1 || d.n() < 1) {
    return Error(ErrorCode::BoundaryMismatch, "diagram needs at least one source and one sink");
  }
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const Edge& x = d.edges[e];
    if (!x.alive) continue;
    const std::string name = "edge " + std::to_string(e);
    if (x.from.kind == Endpoint::Kind::Sink || x.to.kind == Endpoint::Kind::Source) {
      return Error(ErrorCode::BoundaryMismatch, name + " is oriented against the boundary");
    }
    if (x.from.kind == Endpoint::Kind::Source &&
        (x.from.index >= d.m() || d.sources[x.from.index] != static_cast<EdgeId>(e))) {
      return Error(ErrorCode::BoundaryMismatch, name + " leaves an unregistered source");
    }
    if (x.to.kind == Endpoint::Kind::Sink &&
        (x.to.index >= d.n() || d.sinks[x.to.index] != static_cast<EdgeId>(e))) {
      return Error(ErrorCode::BoundaryMismatch, name + " enters an unregistered sink");
    }
    for (const Endpoint* p : {&x.from, &x.to}) {
      if (!p->is_vertex()) continue;
      if (p->index < 0 || static_cast<std::size_t>(p->index) >= d.vertices.size() ||
          !d.vertices[p->index].alive) {
        return Error(ErrorCode::DanglingPort, name + " touches a deleted vertex");
      }
    }
  }
  for (int i = 0; i < d.m(); ++i) {
    const EdgeId e = d.sources[i];
    if (e == kNone || !d.edges[e].alive || d.edges[e].from != Endpoint::source(i)) {
      return Error(ErrorCode::BoundaryMismatch, "source " + std::to_string(i) + " is unmatched");
    }
  }
  for (int i = 0; i < d.n(); ++i) {
    const EdgeId e = d.sinks[i];
    if (e == kNone || !d.edges[e].alive || d.edges[e].to != Endpoint::sink(i)) {
      return Error(ErrorCode::BoundaryMismatch, "sink " + std::to_string(i) + " is unmatched");
    }
  }
  std::vector<int> indegree(d.vertices.size(), 0);
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    const Vertex& x = d.vertices[v];
    if (!x.alive) continue;
    const std::string name = "vertex " + std::to_string(v);
    for (int p = 0; p < x.input_count(); ++p) {
      const EdgeId e = x.in[p];
      if (e == kNone || !d.edges[e].alive || d.edges[e].to != Endpoint::at(static_cast<VertexId>(v), p)) {
        return Error(ErrorCode::DanglingPort, name + " input " + std::to_string(p) + " is unmatched");
      }
      if (d.edges[e].from.is_vertex()) ++indegree[v];
    }
    for (int p = 0; p < x.output_count(); ++p) {
      const EdgeId e = x.out[p];
      if (e == kNone || !d.edges[e].alive ||
          d.edges[e].from != Endpoint::at(static_cast<VertexId>(v), p)) {
        return Error(ErrorCode::DanglingPort, name + " output " + std::to_string(p) + " is unmatched");
      }
    }
  }
  // Kahn's algorithm.
  std::vector<VertexId> ready;
  std::size_t visited = 0;
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    if (d.vertices[v].alive && indegree[v] == 0) ready.push_back(static_cast<VertexId>(v));
  }
  while (!ready.empty()) {
    const VertexId v = ready.back();
    ready.pop_back();
    ++visited;
    const Vertex& x = d.vertices[v];
    for (int p = 0; p < x.output_count(); ++p) {
      const Endpoint& to = d.edges[x.out[p]].to;
      if (to.is_vertex() && --indegree[to.index] == 0) ready.push_back(to.index);
    }
  }
  if (visited != d.vertex_count()) {
    for (std::size_t v = 0; v < d.vertices.size(); ++v) {
      if (d.vertices[v].alive && indegree[v] > 0) {
        return Error(ErrorCode::CyclicGraph, "vertex " + std::to_string(v) + " lies on a directed cycle");
      }
    }
  }
  return std::nullopt;
}

inline StrandDiagram concatenate(const StrandDiagram& top, const StrandDiagram& bottom) {
  StrandDiagram out = top;
  out.append(bottom);
  return out;
}

/// Mirror image across a horizontal line with every edge reversed.
inline StrandDiagram invert(const StrandDiagram& d) {
  StrandDiagram out;
  out.vertices.reserve(d.vertices.size());
  for (const Vertex& v : d.vertices) {
    out.vertices.push_back(Vertex{mirror(v.kind), v.alive});
  }
  auto flip = [](Endpoint p) {
    if (p.kind == Endpoint::Kind::Source) return Endpoint::sink(p.index);
    if (p.kind == Endpoint::Kind::Sink) return Endpoint::source(p.index);
    return p;
  };
  out.sources.assign(d.sinks.size(), kNone);
  out.sinks.assign(d.sources.size(), kNone);
  for (const Edge& e : d.edges) {
    out.edges.push_back(Edge{flip(e.to), flip(e.from), Weight{-e.w.c, -e.w.lon}, e.alive});
  }
  for (std::size_t e = 0; e < out.edges.size(); ++e) {
    if (!out.edges[e].alive) continue;
    out.tail_slot(out.edges[e].from) = static_cast<EdgeId>(e);
    out.head_slot(out.edges[e].to) = static_cast<EdgeId>(e);
  }
  out.recount();
  return out;
}

/// Glues the domain tree (splits, top) to the upside-down range tree (merges,
/// bottom) along corresponding leaves. With `wrap_longitude`, a cyclic
/// bijection is drawn on the cylinder and strands that pass the seam carry
/// longitude weight 1.
inline StrandDiagram from_tree_pair(const TreePair& tp, bool wrap_longitude = false) {
  if (!tp.valid()) throw Error(ErrorCode::BoundaryMismatch, "invalid tree pair");
  StrandDiagram d;
  const std::size_t n = tp.domain.leaf_count();
  std::vector<Endpoint> leaf_tail(n), leaf_head(n);

  // Split tree, built by explicit preorder so leaves come out left to right.
  {
    std::vector<std::pair<std::string, Endpoint>> stack{{"", Endpoint::source(0)}};
    std::size_t leaf = 0;
    while (!stack.empty()) {
      auto [prefix, tail] = std::move(stack.back());
      stack.pop_back();
      if (tp.domain.is_leaf(prefix)) {
        leaf_tail[leaf++] = tail;
        continue;
      }
      const VertexId v = d.add_vertex(VertexKind::Split);
      d.add_edge(tail, Endpoint::at(v, 0));
      stack.emplace_back(prefix + "1", Endpoint::at(v, 1));
      stack.emplace_back(prefix + "0", Endpoint::at(v, 0));
    }
  }
  {
    std::vector<std::pair<std::string, Endpoint>> stack{{"", Endpoint::sink(0)}};
    std::size_t leaf = 0;
    while (!stack.empty()) {
      auto [prefix, head] = std::move(stack.back());
      stack.pop_back();
      if (tp.range.is_leaf(prefix)) {
        leaf_head[leaf++] = head;
        continue;
      }
      const VertexId v = d.add_vertex(VertexKind::Merge);
      d.add_edge(Endpoint::at(v, 0), head);
      stack.emplace_back(prefix + "1", Endpoint::at(v, 1));
      stack.emplace_back(prefix + "0", Endpoint::at(v, 0));
    }
  }
  std::optional<int> shift;
  if (wrap_longitude) {
    shift = tp.cyclic_shift();
    if (!shift) throw Error(ErrorCode::AlphabetError, "cylindrical gluing needs a cyclic bijection");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int j = tp.bijection[i];
    Weight w;
    if (wrap_longitude && j < static_cast<int>(i)) w.lon = 1;
    d.add_edge(leaf_tail[i], leaf_head[j], w);
  }
  return d;
}

/// (1,k) right vine: k-1 splits, each right output feeding the next split.
inline StrandDiagram vine(int k) {
  if (k < 1) throw Error(ErrorCode::ArityMismatch, "vine needs at least one leaf");
  StrandDiagram d;
  Endpoint tail = Endpoint::source(0);
  for (int i = 0; i + 1 < k; ++i) {
    const VertexId v = d.add_vertex(VertexKind::Split);
    d.add_edge(tail, Endpoint::at(v, 0));
    d.add_edge(Endpoint::at(v, 0), Endpoint::sink(i));
    tail = Endpoint::at(v, 1);
  }
  d.add_edge(tail, Endpoint::sink(k - 1));
  return d;
}

/// Transports a (k,k)-diagram to the (1,1)-diagram vine . d . vine^-1.
inline StrandDiagram conjugate_by_vine(const StrandDiagram& d) {
  if (d.m() != d.n()) {
    throw Error(ErrorCode::ArityMismatch, "conjugating by a vine needs a square (k,k) diagram");
  }
  StrandDiagram out = vine(d.m());
  out.append(d);
  out.append(invert(vine(d.m())));
  return out;
}

}  // namespace thompson
