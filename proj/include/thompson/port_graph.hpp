#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "thompson/error.hpp"

namespace thompson {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using CutId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

enum class VertexKind : std::uint8_t { Split, Merge };

constexpr VertexKind mirror(VertexKind k) {
  return k == VertexKind::Split ? VertexKind::Merge : VertexKind::Split;
}

/// One end of an edge: a boundary slot or a (vertex, port) pair. Whether a
/// vertex port is an input or an output follows from which end of the edge
/// it is.
struct Endpoint {
  enum class Kind : std::uint8_t { Source, Sink, Vertex };

  Kind kind = Kind::Vertex;
  std::uint8_t port = 0;
  std::int32_t index = kNone;

  static constexpr Endpoint source(std::int32_t slot) { return {Kind::Source, 0, slot}; }
  static constexpr Endpoint sink(std::int32_t slot) { return {Kind::Sink, 0, slot}; }
  static constexpr Endpoint at(VertexId v, int port) {
    return {Kind::Vertex, static_cast<std::uint8_t>(port), v};
  }

  bool is_vertex() const { return kind == Kind::Vertex; }

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Integer 1-cochain values carried by an edge: `c` counts crossings with the
/// cutting ray/loop, `lon` crossings with the longitudinal seam (torus only).
struct Weight {
  std::int64_t c = 0;
  std::int64_t lon = 0;

  Weight& operator+=(const Weight& o) {
    c += o.c;
    lon += o.lon;
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    c -= o.c;
    lon -= o.lon;
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend bool operator==(const Weight&, const Weight&) = default;
};

struct Vertex {
  VertexKind kind = VertexKind::Split;
  bool alive = true;
  std::array<EdgeId, 2> in{kNone, kNone};
  std::array<EdgeId, 2> out{kNone, kNone};

  int input_count() const { return kind == VertexKind::Split ? 1 : 2; }
  int output_count() const { return kind == VertexKind::Split ? 2 : 1; }
};

struct Edge {
  Endpoint from;
  Endpoint to;
  Weight w;
  bool alive = true;
};

/// A directed cycle with no vertices on it.
struct FreeLoop {
  Weight w;
  std::vector<CutId> cuts;
};

/// Order-maintenance list for the points where the reference ray (or loop)
/// crosses the diagram. Ids are stable; ranks are recomputed on demand.
class CutOrder {
 public:
  CutId push_back() {
    const CutId id = allocate();
    if (head_ == kNone) {
      head_ = tail_ = id;
    } else {
      next_[tail_] = id;
      prev_[id] = tail_;
      tail_ = id;
    }
    return id;
  }

  CutId insert_after(CutId at) {
    const CutId id = allocate();
    const CutId nxt = next_[at];
    prev_[id] = at;
    next_[id] = nxt;
    next_[at] = id;
    if (nxt == kNone) {
      tail_ = id;
    } else {
      prev_[nxt] = id;
    }
    return id;
  }

  void erase(CutId id) {
    if (!alive_[id]) return;
    alive_[id] = 0;
    const CutId p = prev_[id];
    const CutId n = next_[id];
    (p == kNone ? head_ : next_[p]) = n;
    (n == kNone ? tail_ : prev_[n]) = p;
    --size_;
  }

  bool alive(CutId id) const { return alive_[id] != 0; }
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return alive_.size(); }

  /// Position of every live cut along the ray; dead ids map to kNone.
  std::vector<std::int32_t> ranks() const {
    std::vector<std::int32_t> r(alive_.size(), kNone);
    std::int32_t k = 0;
    for (CutId c = head_; c != kNone; c = next_[c]) r[c] = k++;
    return r;
  }

  std::vector<CutId> sequence() const {
    std::vector<CutId> s;
    for (CutId c = head_; c != kNone; c = next_[c]) s.push_back(c);
    return s;
  }

 private:
  CutId allocate() {
    const auto id = static_cast<CutId>(alive_.size());
    next_.push_back(kNone);
    prev_.push_back(kNone);
    alive_.push_back(1);
    ++size_;
    return id;
  }

  std::vector<CutId> next_, prev_;
  std::vector<char> alive_;
  CutId head_ = kNone, tail_ = kNone;
  std::size_t size_ = 0;
};

/// A run of old edges threaded through vertices that are being deleted. After
/// a local move each segment becomes one new edge (or a free loop if it
/// closes up on itself).
struct Segment {
  std::vector<EdgeId> edges;
  Weight w;
  std::vector<CutId> cuts;
};

/// Ported directed graph of splits and merges with optional boundary slots.
/// Deleted vertices and edges stay in place as tombstones.
class PortGraph {
 public:
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<EdgeId> sources;  // slot -> edge leaving that source
  std::vector<EdgeId> sinks;    // slot -> edge entering that sink
  std::vector<FreeLoop> free_loops;

  // Cut bookkeeping, only populated for closed diagrams.
  bool tracks_cuts = false;
  std::vector<std::vector<CutId>> edge_cuts;
  CutOrder cut_order;

  std::size_t vertex_count() const { return live_vertices_; }
  std::size_t edge_count() const { return live_edges_; }

  VertexId add_vertex(VertexKind kind) {
    vertices.push_back(Vertex{kind});
    ++live_vertices_;
    return static_cast<VertexId>(vertices.size() - 1);
  }

  /// Adds an edge and registers it at both endpoints' port slots.
  EdgeId add_edge(Endpoint from, Endpoint to, Weight w = {}) {
    edges.push_back(Edge{from, to, w});
    if (tracks_cuts) edge_cuts.emplace_back();
    ++live_edges_;
    const auto e = static_cast<EdgeId>(edges.size() - 1);
    tail_slot(from) = e;
    head_slot(to) = e;
    return e;
  }

  /// Port slot that records the edge leaving `from`.
  EdgeId& tail_slot(const Endpoint& from) {
    switch (from.kind) {
      case Endpoint::Kind::Source: return grow(sources, from.index);
      case Endpoint::Kind::Vertex: return vertices[from.index].out[from.port];
      case Endpoint::Kind::Sink: break;
    }
    throw Error(ErrorCode::BoundaryMismatch, "edge cannot start at a sink");
  }

  /// Port slot that records the edge entering `to`.
  EdgeId& head_slot(const Endpoint& to) {
    switch (to.kind) {
      case Endpoint::Kind::Sink: return grow(sinks, to.index);
      case Endpoint::Kind::Vertex: return vertices[to.index].in[to.port];
      case Endpoint::Kind::Source: break;
    }
    throw Error(ErrorCode::BoundaryMismatch, "edge cannot end at a source");
  }

  /// Recomputes the live vertex and edge counters after bulk edits.
  void recount() {
    live_vertices_ = static_cast<std::size_t>(
        std::count_if(vertices.begin(), vertices.end(), [](const Vertex& v) { return v.alive; }));
    live_edges_ = static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return e.alive; }));
  }

  void kill_vertex(VertexId v) {
    if (vertices[v].alive) {
      vertices[v].alive = false;
      --live_vertices_;
    }
  }

  void kill_edge(EdgeId e) {
    if (edges[e].alive) {
      edges[e].alive = false;
      --live_edges_;
      if (tracks_cuts) edge_cuts[e].clear();
    }
  }

  const std::vector<CutId>& cuts_of(EdgeId e) const {
    static const std::vector<CutId> kEmpty;
    return tracks_cuts ? edge_cuts[e] : kEmpty;
  }

  void enable_cuts() {
    if (tracks_cuts) return;
    tracks_cuts = true;
    edge_cuts.assign(edges.size(), {});
  }

  /// Replaces the edges named by `segs` with one edge (or free loop) per
  /// segment after joining segments that share an end edge. Cut ids in
  /// `candidates` that end up on no output are removed from the cut order.
  void splice(std::vector<Segment> segs, std::span<const CutId> candidates) {
    bool joined = true;
    while (joined) {
      joined = false;
      for (std::size_t a = 0; a < segs.size() && !joined; ++a) {
        for (std::size_t b = 0; b < segs.size() && !joined; ++b) {
          if (a == b || segs[a].edges.back() != segs[b].edges.front()) continue;
          const EdgeId shared = segs[b].edges.front();
          Segment& sa = segs[a];
          Segment& sb = segs[b];
          sa.edges.insert(sa.edges.end(), sb.edges.begin() + 1, sb.edges.end());
          sa.w += sb.w - edges[shared].w;
          const auto skip = static_cast<std::ptrdiff_t>(cuts_of(shared).size());
          sa.cuts.insert(sa.cuts.end(), sb.cuts.begin() + skip, sb.cuts.end());
          segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(b));
          joined = true;
        }
      }
    }

    std::vector<EdgeId> keep;
    std::vector<CutId> surviving;
    for (Segment& s : segs) {
      const EdgeId first = s.edges.front();
      if (s.edges.size() > 1 && first == s.edges.back()) {
        FreeLoop loop{s.w - edges[first].w, std::move(s.cuts)};
        loop.cuts.resize(loop.cuts.size() - cuts_of(first).size());
        if (tracks_cuts) surviving.insert(surviving.end(), loop.cuts.begin(), loop.cuts.end());
        free_loops.push_back(std::move(loop));
        continue;
      }
      const Endpoint to = edges[s.edges.back()].to;
      edges[first].to = to;
      edges[first].w = s.w;
      if (tracks_cuts) {
        surviving.insert(surviving.end(), s.cuts.begin(), s.cuts.end());
        edge_cuts[first] = std::move(s.cuts);
      }
      keep.push_back(first);
    }
    for (const Segment& s : segs) {
      for (EdgeId e : s.edges) {
        if (std::find(keep.begin(), keep.end(), e) == keep.end()) kill_edge(e);
      }
    }
    // Reattach heads only after all kills so a reused edge is not clobbered.
    for (EdgeId e : keep) head_slot(edges[e].to) = e;

    if (tracks_cuts && !candidates.empty()) {
      std::unordered_set<CutId> live(surviving.begin(), surviving.end());
      for (CutId c : candidates) {
        if (!live.count(c)) cut_order.erase(c);
      }
    }
  }

  /// Dense copy with tombstones dropped; relative order of survivors kept.
  template <typename Derived>
  void compact_into(Derived& out) const {
    std::vector<VertexId> vmap(vertices.size(), kNone);
    std::vector<EdgeId> emap(edges.size(), kNone);
    out.vertices.clear();
    out.edges.clear();
    out.edge_cuts.clear();
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (!vertices[v].alive) continue;
      vmap[v] = static_cast<VertexId>(out.vertices.size());
      out.vertices.push_back(Vertex{vertices[v].kind});
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!edges[e].alive) continue;
      emap[e] = static_cast<EdgeId>(out.edges.size());
      out.edges.push_back(edges[e]);
      if (tracks_cuts) out.edge_cuts.push_back(edge_cuts[e]);
    }
    auto remap = [&](Endpoint p) {
      if (p.is_vertex()) p.index = vmap[p.index];
      return p;
    };
    for (Edge& e : out.edges) {
      e.from = remap(e.from);
      e.to = remap(e.to);
    }
    out.sources.assign(sources.size(), kNone);
    out.sinks.assign(sinks.size(), kNone);
    for (std::size_t e = 0; e < out.edges.size(); ++e) {
      out.tail_slot(out.edges[e].from) = static_cast<EdgeId>(e);
      out.head_slot(out.edges[e].to) = static_cast<EdgeId>(e);
    }
    out.free_loops = free_loops;
    out.tracks_cuts = tracks_cuts;
    out.cut_order = cut_order;
    out.live_vertices_ = out.vertices.size();
    out.live_edges_ = out.edges.size();
  }

  /// Vertex at the other end of each edge incident to `v` (live only).
  template <typename Fn>
  void for_each_neighbor(VertexId v, Fn&& fn) const {
    const Vertex& x = vertices[v];
    for (int p = 0; p < x.input_count(); ++p) {
      const Endpoint& o = edges[x.in[p]].from;
      if (o.is_vertex()) fn(o.index);
    }
    for (int p = 0; p < x.output_count(); ++p) {
      const Endpoint& o = edges[x.out[p]].to;
      if (o.is_vertex()) fn(o.index);
    }
  }

 protected:
  std::size_t live_vertices_ = 0;
  std::size_t live_edges_ = 0;

 private:
  static EdgeId& grow(std::vector<EdgeId>& slots, std::int32_t index) {
    if (static_cast<std::size_t>(index) >= slots.size()) slots.resize(index + 1, kNone);
    return slots[index];
  }
};

}  // namespace thompson
