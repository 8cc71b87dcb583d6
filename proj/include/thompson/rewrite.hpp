#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/port_graph.hpp"
#include "thompson/strand_diagram.hpp"

namespace thompson {

/// TypeI: a split whose left/right outputs feed the left/right inputs of one
/// merge (top = split, bottom = merge). TypeII: a merge whose output feeds a
/// split (top = merge, bottom = split).
struct Redex {
  enum class Kind : std::uint8_t { TypeI, TypeII };
  Kind kind;
  VertexId top;
  VertexId bottom;

  friend bool operator==(const Redex&, const Redex&) = default;
  friend auto operator<=>(const Redex&, const Redex&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Redex& r) {
  return os << (r.kind == Redex::Kind::TypeI ? "I" : "II") << ' ' << r.top << ' ' << r.bottom;
}

/// Counters for the frontier worklist. `frontier_total` is the sum of the
/// frontier sizes, `reduced_total` the number of vertices removed.
struct ReduceStats {
  std::size_t rounds = 0;
  std::size_t frontier_total = 0;
  std::size_t reduced_total = 0;
  std::size_t initial_vertices = 0;
  std::vector<std::size_t> frontier_sizes;
  std::vector<std::size_t> reduced_sizes;
};

namespace detail {

inline bool is_kind(const PortGraph& g, const Endpoint& p, VertexKind k) {
  return p.is_vertex() && g.vertices[p.index].alive && g.vertices[p.index].kind == k;
}

// Bigon check: both sides of a split->merge pair must carry the same cochain
// values, otherwise the bigon winds around a puncture (or a handle).
inline std::optional<VertexId> bigon_partner(const PortGraph& g, VertexId split) {
  const Vertex& s = g.vertices[split];
  const Edge& left = g.edges[s.out[0]];
  const Edge& right = g.edges[s.out[1]];
  if (!is_kind(g, left.to, VertexKind::Merge) || left.to.port != 0) return std::nullopt;
  if (right.to != Endpoint::at(left.to.index, 1)) return std::nullopt;
  if (!(left.w == right.w)) return std::nullopt;
  return left.to.index;
}

}  // namespace detail

/// First redex involving `v`, TypeI before TypeII.
inline std::optional<Redex> redex_at(const PortGraph& g, VertexId v) {
  const Vertex& x = g.vertices[v];
  if (!x.alive) return std::nullopt;
  if (x.kind == VertexKind::Split) {
    if (auto m = detail::bigon_partner(g, v)) return Redex{Redex::Kind::TypeI, v, *m};
    const Endpoint& from = g.edges[x.in[0]].from;
    if (detail::is_kind(g, from, VertexKind::Merge)) return Redex{Redex::Kind::TypeII, from.index, v};
    return std::nullopt;
  }
  const Endpoint& l = g.edges[x.in[0]].from;
  if (detail::is_kind(g, l, VertexKind::Split) && l.port == 0) {
    if (auto m = detail::bigon_partner(g, l.index); m && *m == v) {
      return Redex{Redex::Kind::TypeI, l.index, v};
    }
  }
  const Endpoint& to = g.edges[x.out[0]].to;
  if (detail::is_kind(g, to, VertexKind::Split)) return Redex{Redex::Kind::TypeII, v, to.index};
  return std::nullopt;
}

inline bool redex_valid(const PortGraph& g, const Redex& r) {
  const auto n = static_cast<VertexId>(g.vertices.size());
  if (r.top < 0 || r.top >= n || r.bottom < 0 || r.bottom >= n) return false;
  const Vertex& t = g.vertices[r.top];
  const Vertex& b = g.vertices[r.bottom];
  if (!t.alive || !b.alive) return false;
  if (r.kind == Redex::Kind::TypeI) {
    return t.kind == VertexKind::Split && detail::bigon_partner(g, r.top) == r.bottom;
  }
  return t.kind == VertexKind::Merge && b.kind == VertexKind::Split &&
         g.edges[t.out[0]].to == Endpoint::at(r.bottom, 0);
}

/// Every redex of the diagram, sorted by (kind, top, bottom).
inline std::vector<Redex> find_redexes(const PortGraph& g) {
  std::vector<Redex> out;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const Vertex& x = g.vertices[v];
    if (!x.alive || x.kind != VertexKind::Split) continue;
    const auto s = static_cast<VertexId>(v);
    if (auto m = detail::bigon_partner(g, s)) out.push_back({Redex::Kind::TypeI, s, *m});
    const Endpoint& from = g.edges[x.in[0]].from;
    if (detail::is_kind(g, from, VertexKind::Merge)) out.push_back({Redex::Kind::TypeII, from.index, s});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Performs one reduction in place. Removes exactly two vertices.
inline void apply_redex(PortGraph& g, const Redex& r) {
  if (!redex_valid(g, r)) {
    throw Error(ErrorCode::StaleRedex, "redex on vertices " + std::to_string(r.top) + "," +
                                           std::to_string(r.bottom) + " is no longer present");
  }
  const Vertex t = g.vertices[r.top];
  const Vertex b = g.vertices[r.bottom];
  auto cuts = [&g](std::initializer_list<EdgeId> es) {
    std::vector<CutId> out;
    for (EdgeId e : es) {
      const auto& c = g.cuts_of(e);
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  };
  std::vector<CutId> candidates;
  std::vector<Segment> segs;
  if (r.kind == Redex::Kind::TypeI) {
    const EdgeId in = t.in[0], left = t.out[0], right = t.out[1], out = b.out[0];
    segs.push_back({{in, left, out}, g.edges[in].w + g.edges[left].w + g.edges[out].w,
                    cuts({in, left, out})});
    candidates = cuts({right});
  } else {
    const EdgeId in0 = t.in[0], in1 = t.in[1], mid = t.out[0], out0 = b.out[0], out1 = b.out[1];
    const Weight wm = g.edges[mid].w;
    std::vector<CutId> dup;
    if (g.tracks_cuts) {
      // The strand through the merge becomes two parallel strands; the right
      // one crosses the ray just after the left one.
      for (CutId c : g.edge_cuts[mid]) dup.push_back(g.cut_order.insert_after(c));
    }
    Segment left{{in0, mid, out0}, g.edges[in0].w + wm + g.edges[out0].w, cuts({in0})};
    const auto& mc = g.cuts_of(mid);
    left.cuts.insert(left.cuts.end(), mc.begin(), mc.end());
    const auto c0 = cuts({out0});
    left.cuts.insert(left.cuts.end(), c0.begin(), c0.end());
    Segment right{{in1, mid, out1}, g.edges[in1].w + wm + g.edges[out1].w, cuts({in1})};
    right.cuts.insert(right.cuts.end(), dup.begin(), dup.end());
    const auto c1 = cuts({out1});
    right.cuts.insert(right.cuts.end(), c1.begin(), c1.end());
    segs.push_back(std::move(left));
    segs.push_back(std::move(right));
  }
  g.kill_vertex(r.top);
  g.kill_vertex(r.bottom);
  if (r.kind == Redex::Kind::TypeI) g.kill_edge(t.out[1]);
  g.splice(std::move(segs), candidates);
}

/// Frontier worklist reduction: the first frontier is every vertex in id
/// order; each later frontier holds the surviving neighbours of the vertices
/// removed in the previous round. Stops when a frontier yields no reduction.
inline ReduceStats reduce_in_place(PortGraph& g, std::ostream* trace = nullptr) {
  ReduceStats stats;
  stats.initial_vertices = g.vertex_count();
  std::vector<VertexId> frontier;
  frontier.reserve(g.vertex_count());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.vertices[v].alive) frontier.push_back(static_cast<VertexId>(v));
  }
  std::vector<std::uint32_t> stamp(g.vertices.size(), 0);
  std::vector<VertexId> next;
  std::uint32_t round = 0;
  while (!frontier.empty()) {
    ++round;
    stats.frontier_sizes.push_back(frontier.size());
    stats.frontier_total += frontier.size();
    std::size_t reduced = 0;
    next.clear();
    for (VertexId v : frontier) {
      const auto r = redex_at(g, v);
      if (!r) continue;
      VertexId around[8];
      int count = 0;
      for (VertexId x : {r->top, r->bottom}) {
        g.for_each_neighbor(x, [&](VertexId nb) {
          if (nb != r->top && nb != r->bottom) around[count++] = nb;
        });
      }
      if (trace) *trace << *r << '\n';
      apply_redex(g, *r);
      reduced += 2;
      for (int i = 0; i < count; ++i) {
        const VertexId nb = around[i];
        if (stamp[nb] != round) {
          stamp[nb] = round;
          next.push_back(nb);
        }
      }
    }
    stats.reduced_sizes.push_back(reduced);
    stats.reduced_total += reduced;
    ++stats.rounds;
    if (reduced == 0) break;
    // Entries removed later in the round are skipped when popped.
    std::erase_if(next, [&g](VertexId v) { return !g.vertices[v].alive; });
    std::sort(next.begin(), next.end());
    frontier.swap(next);
  }
  return stats;
}

inline StrandDiagram reduce(const StrandDiagram& d, ReduceStats* stats = nullptr) {
  StrandDiagram out = d;
  const ReduceStats s = reduce_in_place(out);
  if (stats) *stats = s;
  return out.compacted();
}

/// Applies a uniformly random available redex until none remain. Quadratic;
/// exists to exercise confluence.
template <typename Rng>
void reduce_random_in_place(PortGraph& g, Rng& rng) {
  for (;;) {
    const auto all = find_redexes(g);
    if (all.empty()) return;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    apply_redex(g, all[pick(rng)]);
  }
}

template <typename Rng>
StrandDiagram reduce_random(const StrandDiagram& d, Rng& rng) {
  StrandDiagram out = d;
  reduce_random_in_place(out, rng);
  return out.compacted();
}

inline bool is_reduced(const PortGraph& g) {
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (redex_at(g, static_cast<VertexId>(v))) return false;
  }
  return true;
}

/// True for the (1,1) identity: no vertices, one strand.
inline bool is_identity(const StrandDiagram& d) {
  return d.m() == 1 && d.n() == 1 && d.vertex_count() == 0;
}

/// Cuts a reduced (1,1)-diagram along every split->merge edge.
inline TreePair to_tree_pair(const StrandDiagram& d) {
  if (d.m() != 1 || d.n() != 1) throw Error(ErrorCode::ArityMismatch, "tree pairs need a (1,1) diagram");
  if (!is_reduced(d)) throw Error(ErrorCode::NotReduced, "diagram still has a redex");

  std::vector<std::string> dom, ran;
  std::vector<EdgeId> dom_edge, ran_edge;
  {
    std::vector<std::pair<EdgeId, std::string>> stack{{d.sources[0], ""}};
    while (!stack.empty()) {
      auto [e, prefix] = std::move(stack.back());
      stack.pop_back();
      const Endpoint& to = d.edges[e].to;
      if (to.is_vertex() && d.vertices[to.index].kind == VertexKind::Split) {
        const Vertex& s = d.vertices[to.index];
        stack.emplace_back(s.out[1], prefix + "1");
        stack.emplace_back(s.out[0], prefix + "0");
      } else {
        dom.push_back(prefix);
        dom_edge.push_back(e);
      }
    }
  }
  {
    std::vector<std::pair<EdgeId, std::string>> stack{{d.sinks[0], ""}};
    while (!stack.empty()) {
      auto [e, prefix] = std::move(stack.back());
      stack.pop_back();
      const Endpoint& from = d.edges[e].from;
      if (from.is_vertex() && d.vertices[from.index].kind == VertexKind::Merge) {
        const Vertex& m = d.vertices[from.index];
        stack.emplace_back(m.in[1], prefix + "1");
        stack.emplace_back(m.in[0], prefix + "0");
      } else {
        ran.push_back(prefix);
        ran_edge.push_back(e);
      }
    }
  }
  TreePair tp{BinaryTree::from_leaves(dom), BinaryTree::from_leaves(ran), {}};
  tp.bijection.resize(dom_edge.size());
  for (std::size_t i = 0; i < dom_edge.size(); ++i) {
    const auto it = std::find(ran_edge.begin(), ran_edge.end(), dom_edge[i]);
    if (it == ran_edge.end()) throw Error(ErrorCode::StructureViolation, "leaf edge missing from range tree");
    tp.bijection[i] = static_cast<int>(it - ran_edge.begin());
  }
  return tp;
}

}  // namespace thompson
