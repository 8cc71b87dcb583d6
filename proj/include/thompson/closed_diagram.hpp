#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/port_graph.hpp"
#include "thompson/rewrite.hpp"
#include "thompson/strand_diagram.hpp"

namespace thompson {

/// Where the closure lives. Annulus: F, cuts ordered along a ray from the
/// inner to the outer boundary. Torus: T, cuts ordered cyclically along the
/// meridian, `lon` counts crossings with a fixed longitude. Abstract: V, only
/// the cut counts matter.
enum class Surface : std::uint8_t { Annulus, Torus, Abstract };

constexpr std::string_view to_string(Surface s) {
  switch (s) {
    case Surface::Annulus: return "annulus";
    case Surface::Torus: return "torus";
    case Surface::Abstract: return "abstract";
  }
  return "?";
}

/// Closed strand diagram: no boundary, edge weights form the cutting cochain.
/// On the annulus and torus every cut point is tracked so the radial (or
/// cyclic) order of rings can be read back after reduction.
class ClosedDiagram : public PortGraph {
 public:
  Surface surface = Surface::Abstract;

  ClosedDiagram compacted() const {
    ClosedDiagram out;
    compact_into(out);
    out.surface = surface;
    return out;
  }

  std::size_t free_loop_count() const { return free_loops.size(); }
};

/// Glues sink i to source (i + shift) mod k. Each glued edge gains one cut
/// (c += 1); on the torus a strand whose target index wraps past k - 1 also
/// crosses the longitude once, and `twist` adds a further seam twist.
inline ClosedDiagram close(const StrandDiagram& d, Surface surface, std::int64_t shift = 0,
                           std::int64_t twist = 0) {
  if (d.m() != d.n()) {
    throw Error(ErrorCode::ArityMismatch, "closing needs a (k,k) diagram, got (" + std::to_string(d.m()) +
                                              "," + std::to_string(d.n()) + ")");
  }
  const std::int64_t k = d.m();
  ClosedDiagram g;
  static_cast<PortGraph&>(g) = d.compacted();
  g.surface = surface;
  if (surface != Surface::Torus) {
    for (Edge& e : g.edges) e.w.lon = 0;
  }
  if (surface != Surface::Abstract) g.enable_cuts();

  std::vector<Segment> segs;
  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t t = i + shift;
    const std::int64_t j = ((t % k) + k) % k;
    const std::int64_t wraps = (t - j) / k;
    const EdgeId in = g.sinks[i];
    const EdgeId out = g.sources[j];
    Weight extra{1, surface == Surface::Torus ? wraps + twist : 0};
    std::vector<CutId> cuts;
    if (g.tracks_cuts) cuts.push_back(g.cut_order.push_back());
    segs.push_back({{in, out}, g.edges[in].w + g.edges[out].w + extra, std::move(cuts)});
  }
  g.sources.clear();
  g.sinks.clear();
  g.splice(std::move(segs), {});
  return g;
}

/// Annular closure (F): sink i meets source i.
inline ClosedDiagram close_annular(const StrandDiagram& d) { return close(d, Surface::Annulus); }

/// Toral closure (T) with a cyclic offset and an optional seam twist.
inline ClosedDiagram close_cylindrical(const StrandDiagram& d, std::int64_t shift = 0, std::int64_t twist = 0) {
  return close(d, Surface::Torus, shift, twist);
}

/// Abstract closure (V).
inline ClosedDiagram close_abstract(const StrandDiagram& d) { return close(d, Surface::Abstract); }

namespace detail {

inline constexpr std::int32_t kUnowned = std::numeric_limits<std::int32_t>::min();

// Owner of each live cut: component index >= 0 or ~loop index for free loops.
inline std::vector<std::int32_t> cut_owners(const PortGraph& g, const std::vector<std::int32_t>& vertex_comp) {
  std::vector<std::int32_t> owner(g.cut_order.capacity(), kUnowned);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& x = g.edges[e];
    if (!x.alive) continue;
    const std::int32_t comp = vertex_comp[x.from.index];
    for (CutId c : g.edge_cuts[e]) owner[c] = comp;
  }
  for (std::size_t i = 0; i < g.free_loops.size(); ++i) {
    for (CutId c : g.free_loops[i].cuts) owner[c] = ~static_cast<std::int32_t>(i);
  }
  return owner;
}

}  // namespace detail

/// Undirected connected components over live vertices; dead vertices get kNone.
inline std::vector<std::int32_t> component_ids(const PortGraph& g, std::int32_t* count = nullptr) {
  std::vector<std::int32_t> comp(g.vertices.size(), kNone);
  std::int32_t next = 0;
  std::vector<VertexId> stack;
  for (std::size_t s = 0; s < g.vertices.size(); ++s) {
    if (!g.vertices[s].alive || comp[s] != kNone) continue;
    comp[s] = next;
    stack.push_back(static_cast<VertexId>(s));
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      g.for_each_neighbor(v, [&](VertexId u) {
        if (comp[u] == kNone) {
          comp[u] = next;
          stack.push_back(u);
        }
      });
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

/// Type III: removes free loops that are parallel to an adjacent free loop.
/// Annulus: consecutive along the ray. Torus: consecutive along the meridian
/// (cyclically) with equal class. Abstract: equal cut count.
inline std::size_t merge_free_loops(ClosedDiagram& g) {
  std::size_t merged = 0;
  if (g.free_loops.size() < 2) return 0;
  if (g.surface == Surface::Abstract || !g.tracks_cuts) {
    std::vector<FreeLoop> kept;
    for (FreeLoop& l : g.free_loops) {
      const bool dup = std::any_of(kept.begin(), kept.end(), [&](const FreeLoop& k) { return k.w == l.w; });
      if (dup) {
        ++merged;
      } else {
        kept.push_back(std::move(l));
      }
    }
    g.free_loops = std::move(kept);
    return merged;
  }
  const bool cyclic = g.surface == Surface::Torus;
  for (bool again = true; again;) {
    again = false;
    const auto comp = component_ids(g);
    const auto owner = detail::cut_owners(g, comp);
    const auto seq = g.cut_order.sequence();
    const std::size_t steps = cyclic ? seq.size() : seq.size() - (seq.empty() ? 0 : 1);
    for (std::size_t i = 0; i < steps; ++i) {
      const std::int32_t a = owner[seq[i]];
      const std::int32_t b = owner[seq[(i + 1) % seq.size()]];
      if (a >= 0 || b >= 0 || a == b) continue;
      FreeLoop& la = g.free_loops[~a];
      FreeLoop& lb = g.free_loops[~b];
      if (!(la.w == lb.w)) continue;
      for (CutId c : lb.cuts) g.cut_order.erase(c);
      g.free_loops.erase(g.free_loops.begin() + ~b);
      ++merged;
      again = true;
      break;
    }
  }
  return merged;
}

/// Moves I and II by the frontier worklist, then move III.
inline ReduceStats reduce_closed_in_place(ClosedDiagram& g, std::ostream* trace = nullptr) {
  ReduceStats st = reduce_in_place(g, trace);
  merge_free_loops(g);
  return st;
}

inline ClosedDiagram reduce_closed(const ClosedDiagram& g, ReduceStats* stats = nullptr) {
  ClosedDiagram out = g;
  const ReduceStats st = reduce_closed_in_place(out);
  if (stats) *stats = st;
  return out.compacted();
}

template <typename Rng>
ClosedDiagram reduce_closed_random(const ClosedDiagram& g, Rng& rng) {
  ClosedDiagram out = g;
  reduce_random_in_place(out, rng);
  merge_free_loops(out);
  return out.compacted();
}

/// Reduced means no move I, II or III applies.
inline bool is_reduced_closed(const ClosedDiagram& g) {
  if (!is_reduced(g)) return false;
  ClosedDiagram copy = g;
  return merge_free_loops(copy) == 0;
}

/// Strongly connected component id per live vertex (iterative Tarjan).
inline std::vector<std::int32_t> strong_components(const PortGraph& g, std::int32_t* count = nullptr) {
  const std::size_t n = g.vertices.size();
  std::vector<std::int32_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<char> on_stack(n, 0);
  std::vector<VertexId> stack;
  struct Frame {
    VertexId v;
    int next_port;
  };
  std::vector<Frame> call;
  std::int32_t counter = 0, comps = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (!g.vertices[s].alive || index[s] != kNone) continue;
    call.push_back({static_cast<VertexId>(s), 0});
    index[s] = low[s] = counter++;
    stack.push_back(static_cast<VertexId>(s));
    on_stack[s] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const Vertex& x = g.vertices[f.v];
      if (f.next_port < x.output_count()) {
        const Endpoint& to = g.edges[x.out[f.next_port++]].to;
        if (!to.is_vertex()) continue;
        const VertexId u = to.index;
        if (index[u] == kNone) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = 1;
          call.push_back({u, 0});
        } else if (on_stack[u]) {
          low[f.v] = std::min(low[f.v], index[u]);
        }
        continue;
      }
      const VertexId v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        VertexId u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = 0;
          comp[u] = comps;
        } while (u != v);
        ++comps;
      }
    }
  }
  if (count) *count = comps;
  return comp;
}

/// A directed cycle through vertices (free loops are reported separately).
struct Cycle {
  std::vector<VertexId> vertices;  // in cycle order, starting at the least id
  std::vector<EdgeId> edges;       // edges[i] leaves vertices[i]
  Weight w;
};

/// Directed cycles of a graph whose nontrivial strong components are simple
/// cycles (true of reduced closed diagrams). Returns nullopt if some strong
/// component is not a simple cycle.
inline std::optional<std::vector<Cycle>> simple_cycles(const PortGraph& g) {
  std::int32_t count = 0;
  const auto scc = strong_components(g, &count);
  std::vector<std::int32_t> size(count, 0);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.vertices[v].alive) ++size[scc[v]];
  }
  std::vector<char> done(count, 0);
  std::vector<Cycle> out;
  for (std::size_t s = 0; s < g.vertices.size(); ++s) {
    if (!g.vertices[s].alive || done[scc[s]]) continue;
    const std::int32_t id = scc[s];
    done[id] = 1;
    const Vertex& x = g.vertices[s];
    int inside = 0;
    for (int p = 0; p < x.output_count(); ++p) {
      const Endpoint& to = g.edges[x.out[p]].to;
      inside += to.is_vertex() && scc[to.index] == id;
    }
    if (size[id] == 1 && inside == 0) continue;
    Cycle cyc;
    VertexId v = static_cast<VertexId>(s);
    do {
      const Vertex& y = g.vertices[v];
      EdgeId step = kNone;
      int hits = 0;
      for (int p = 0; p < y.output_count(); ++p) {
        const Endpoint& to = g.edges[y.out[p]].to;
        if (to.is_vertex() && scc[to.index] == id) {
          step = y.out[p];
          ++hits;
        }
      }
      if (hits != 1) return std::nullopt;
      cyc.vertices.push_back(v);
      cyc.edges.push_back(step);
      cyc.w += g.edges[step].w;
      v = g.edges[step].to.index;
      if (cyc.vertices.size() > static_cast<std::size_t>(size[id])) return std::nullopt;
    } while (v != static_cast<VertexId>(s));
    if (cyc.vertices.size() != static_cast<std::size_t>(size[id])) return std::nullopt;
    out.push_back(std::move(cyc));
  }
  return out;
}

/// Every directed cycle has positive cut count: c >= 0 on every edge and the
/// edges with c = 0 carry no directed cycle.
inline bool cutting_class_positive(const PortGraph& g) {
  std::vector<std::int32_t> indeg(g.vertices.size(), 0);
  for (const Edge& e : g.edges) {
    if (!e.alive) continue;
    if (e.w.c < 0) return false;
    if (e.w.c == 0 && e.to.is_vertex()) ++indeg[e.to.index];
  }
  for (const FreeLoop& l : g.free_loops) {
    if (l.w.c <= 0) return false;
  }
  std::vector<VertexId> ready;
  std::size_t live = 0, seen = 0;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (!g.vertices[v].alive) continue;
    ++live;
    if (indeg[v] == 0) ready.push_back(static_cast<VertexId>(v));
  }
  while (!ready.empty()) {
    const VertexId v = ready.back();
    ready.pop_back();
    ++seen;
    const Vertex& x = g.vertices[v];
    for (int p = 0; p < x.output_count(); ++p) {
      const Edge& e = g.edges[x.out[p]];
      if (e.w.c == 0 && e.to.is_vertex() && --indeg[e.to.index] == 0) ready.push_back(e.to.index);
    }
  }
  return seen == live;
}

/// Cut counts agree with the tracked cut lists (annulus and torus).
inline bool cuts_consistent(const PortGraph& g) {
  if (!g.tracks_cuts) return true;
  std::size_t total = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!g.edges[e].alive) continue;
    if (g.edges[e].w.c != static_cast<std::int64_t>(g.edge_cuts[e].size())) return false;
    total += g.edge_cuts[e].size();
  }
  for (const FreeLoop& l : g.free_loops) {
    if (l.w.c != static_cast<std::int64_t>(l.cuts.size())) return false;
    total += l.cuts.size();
  }
  return total == g.cut_order.size();
}

}  // namespace thompson
