#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "thompson/annular.hpp"
#include "thompson/closed_diagram.hpp"
#include "thompson/error.hpp"
#include "thompson/word.hpp"

namespace thompson {

/// Order-comparable token string for a reduced closed diagram. Equal token
/// strings mean isotopic diagrams (under the surface's equality convention).
struct CanonicalForm {
  std::vector<std::int64_t> tokens;
  std::size_t rings = 0;
  std::size_t vertices = 0;
  std::size_t free_loops = 0;

  /// Lowercase hex of the tokens, 16 digits each.
  std::string hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    s.reserve(tokens.size() * 16);
    for (std::int64_t t : tokens) {
      const auto u = static_cast<std::uint64_t>(t);
      for (int shift = 60; shift >= 0; shift -= 4) s += kDigits[(u >> shift) & 0xF];
    }
    return s;
  }

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.tokens == b.tokens; }
  friend auto operator<=>(const CanonicalForm& a, const CanonicalForm& b) { return a.tokens <=> b.tokens; }
};

namespace token {
inline constexpr std::int64_t kAnnulus = -1;
inline constexpr std::int64_t kTorus = -2;
inline constexpr std::int64_t kAbstract = -3;
inline constexpr std::int64_t kRing = -10;
inline constexpr std::int64_t kFreeLoop = -11;
inline constexpr std::int64_t kSplit = -20;
inline constexpr std::int64_t kMerge = -21;
}  // namespace token

namespace detail {

// Breadth-first port-respecting traversal from `root`. Visits inputs then
// outputs at each vertex; emits the kind, then for each port the neighbour's
// index and port and the edge weight after subtracting the coboundary of the
// traversal-tree potentials (so tree edges read 0).
class ComponentEncoder {
 public:
  explicit ComponentEncoder(const PortGraph& g) : g_(g), index_(g.vertices.size(), kNone), phi_(g.vertices.size()) {}

  std::vector<std::int64_t> encode(VertexId root) {
    for (VertexId v : order_) index_[v] = kNone;
    order_.clear();
    std::vector<std::int64_t> out;
    visit(root, Weight{});
    for (std::size_t head = 0; head < order_.size(); ++head) {
      const VertexId u = order_[head];
      const Vertex& x = g_.vertices[u];
      out.push_back(x.kind == VertexKind::Split ? token::kSplit : token::kMerge);
      for (int p = 0; p < x.input_count(); ++p) {
        const Edge& e = g_.edges[x.in[p]];
        const VertexId o = e.from.index;
        if (index_[o] == kNone) visit(o, phi_[u] - e.w);
        emit(out, o, e.from.port, e.w + phi_[o] - phi_[u]);
      }
      for (int p = 0; p < x.output_count(); ++p) {
        const Edge& e = g_.edges[x.out[p]];
        const VertexId o = e.to.index;
        if (index_[o] == kNone) visit(o, phi_[u] + e.w);
        emit(out, o, e.to.port, e.w + phi_[u] - phi_[o]);
      }
    }
    return out;
  }

  /// Vertices in traversal order of the last `encode`.
  const std::vector<VertexId>& order() const { return order_; }

 private:
  void visit(VertexId v, Weight phi) {
    index_[v] = static_cast<std::int32_t>(order_.size());
    phi_[v] = phi;
    order_.push_back(v);
  }

  void emit(std::vector<std::int64_t>& out, VertexId o, int port, const Weight& w) const {
    out.push_back(index_[o]);
    out.push_back(port);
    out.push_back(w.c);
    out.push_back(w.lon);
  }

  const PortGraph& g_;
  std::vector<std::int32_t> index_;
  std::vector<Weight> phi_;
  std::vector<VertexId> order_;
};

// Roots tried for a component: every vertex on one of its directed cycles.
inline std::vector<std::int64_t> encode_component(ComponentEncoder& enc, const std::vector<VertexId>& roots) {
  std::vector<std::int64_t> best;
  for (VertexId r : roots) {
    auto code = enc.encode(r);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

inline std::vector<VertexId> cycle_roots(const Ring& r) {
  std::vector<VertexId> roots;
  for (const Cycle& c : r.cycles) roots.insert(roots.end(), c.vertices.begin(), c.vertices.end());
  return roots;
}

inline std::vector<std::int64_t> ring_code(const ClosedDiagram& g, ComponentEncoder& enc, const Ring& r) {
  std::vector<std::int64_t> code;
  if (r.kind == Ring::Kind::FreeLoop) {
    const Weight& w = g.free_loops[r.index].w;
    return {token::kFreeLoop, w.c, w.lon};
  }
  code.push_back(token::kRing);
  code.push_back(static_cast<std::int64_t>(r.vertices.size()));
  auto body = encode_component(enc, cycle_roots(r));
  code.insert(code.end(), body.begin(), body.end());
  return code;
}

inline void require_reduced(const ClosedDiagram& g) {
  if (!is_reduced_closed(g)) throw Error(ErrorCode::NotReduced, "canonical forms need a reduced diagram");
}

}  // namespace detail

inline constexpr std::int64_t kSquareTag = -4;
inline constexpr std::int64_t kSinkTag = -30;
inline constexpr std::int64_t kSourceTag = -31;

/// Token string of a square diagram: traversal from the sources in slot order,
/// vertices numbered by discovery. Equal strings iff the diagrams agree up to
/// renumbering of vertices and edges.
inline CanonicalForm canonical_square(const StrandDiagram& d) {
  std::vector<std::int32_t> index(d.vertices.size(), kNone);
  std::vector<VertexId> order;
  auto see = [&](const Endpoint& p) {
    if (p.is_vertex() && index[p.index] == kNone) {
      index[p.index] = static_cast<std::int32_t>(order.size());
      order.push_back(p.index);
    }
  };
  CanonicalForm f;
  auto emit = [&](const Endpoint& p, const Weight& w) {
    switch (p.kind) {
      case Endpoint::Kind::Vertex: f.tokens.insert(f.tokens.end(), {index[p.index], p.port}); break;
      case Endpoint::Kind::Source: f.tokens.insert(f.tokens.end(), {kSourceTag, p.index}); break;
      case Endpoint::Kind::Sink: f.tokens.insert(f.tokens.end(), {kSinkTag, p.index}); break;
    }
    f.tokens.insert(f.tokens.end(), {w.c, w.lon});
  };
  f.tokens.insert(f.tokens.end(), {kSquareTag, d.m(), d.n()});
  for (EdgeId e : d.sources) {
    see(d.edges[e].to);
    emit(d.edges[e].to, d.edges[e].w);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex& x = d.vertices[order[head]];
    f.tokens.push_back(x.kind == VertexKind::Split ? token::kSplit : token::kMerge);
    for (int p = 0; p < x.input_count(); ++p) {
      see(d.edges[x.in[p]].from);
      emit(d.edges[x.in[p]].from, d.edges[x.in[p]].w);
    }
    for (int p = 0; p < x.output_count(); ++p) {
      see(d.edges[x.out[p]].to);
      emit(d.edges[x.out[p]].to, d.edges[x.out[p]].w);
    }
  }
  f.vertices = d.vertex_count();
  return f;
}

/// Radial sequence of ring codes, inner to outer.
inline CanonicalForm canonical_annular(const ClosedDiagram& a) {
  detail::require_reduced(a);
  const auto rings = ring_decomposition(a);
  detail::ComponentEncoder enc(a);
  CanonicalForm f;
  f.tokens.push_back(token::kAnnulus);
  for (const Ring& r : rings) {
    const auto code = detail::ring_code(a, enc, r);
    f.tokens.insert(f.tokens.end(), code.begin(), code.end());
  }
  f.rings = rings.size();
  f.vertices = a.vertex_count();
  f.free_loops = a.free_loops.size();
  return f;
}

/// Least rotation of a cyclic sequence of codes, concatenated.
inline std::vector<std::int64_t> least_rotation(const std::vector<std::vector<std::int64_t>>& codes) {
  const std::size_t m = codes.size();
  std::size_t best = 0;
  for (std::size_t s = 1; s < m; ++s) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto& a = codes[(s + i) % m];
      const auto& b = codes[(best + i) % m];
      if (a == b) continue;
      if (a < b) best = s;
      break;
    }
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = codes[(best + i) % m];
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

/// Undirected plain graph (adjacency lists) whose isomorphism type pins down
/// the isotopy class of a reduced annular diagram.
struct PlainGraph {
  std::vector<std::vector<std::int32_t>> adj;

  std::int32_t add_vertex() {
    adj.emplace_back();
    return static_cast<std::int32_t>(adj.size() - 1);
  }
  void add_edge(std::int32_t a, std::int32_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::size_t vertex_count() const { return adj.size(); }
  std::size_t edge_count() const {
    std::size_t d = 0;
    for (const auto& a : adj) d += a.size();
    return d / 2;
  }
};

/// Counts of the gadgets `decorate` adds, for checking the construction.
struct DecorationCounts {
  std::size_t original = 0;     // split and merge vertices
  std::size_t subdivision = 0;  // two per edge, three per free loop
  std::size_t gadget = 0;       // direction, port and ring markers
};

/// Edges are subdivided in three (tail node, head node). A pendant on the
/// tail node fixes the direction; port order is pinned by a path of length
/// 2 + port on the tail node and 4 + port on the head node. With two or more
/// rings, each ring gets a marker joined to all of its vertices (or loop
/// nodes), markers carry a path of length 7 and form a spine inner to outer
/// whose inner end carries one more path of length 8.
inline PlainGraph decorate(const ClosedDiagram& a, DecorationCounts* counts = nullptr) {
  detail::require_reduced(a);
  const auto rings = ring_decomposition(a);
  PlainGraph p;
  DecorationCounts cnt;
  std::vector<std::int32_t> node(a.vertices.size(), kNone);
  for (std::size_t v = 0; v < a.vertices.size(); ++v) {
    if (!a.vertices[v].alive) continue;
    node[v] = p.add_vertex();
    ++cnt.original;
  }
  auto gadget = [&] {
    ++cnt.gadget;
    return p.add_vertex();
  };
  auto hang_path = [&](std::int32_t at, int length) {
    std::int32_t prev = at;
    for (int i = 0; i < length; ++i) {
      const std::int32_t x = gadget();
      p.add_edge(prev, x);
      prev = x;
    }
  };
  for (const Edge& x : a.edges) {
    if (!x.alive) continue;
    const std::int32_t t = p.add_vertex(), h = p.add_vertex();
    cnt.subdivision += 2;
    p.add_edge(node[x.from.index], t);
    p.add_edge(t, h);
    p.add_edge(h, node[x.to.index]);
    hang_path(t, 1);
    hang_path(t, 2 + x.from.port);
    hang_path(h, 4 + x.to.port);
  }
  std::vector<std::vector<std::int32_t>> members;
  for (const Ring& r : rings) {
    if (r.kind == Ring::Kind::FreeLoop) {
      const std::int32_t a0 = p.add_vertex(), a1 = p.add_vertex(), a2 = p.add_vertex();
      cnt.subdivision += 3;
      p.add_edge(a0, a1);
      p.add_edge(a1, a2);
      p.add_edge(a2, a0);
      members.push_back({a0, a1, a2});
      continue;
    }
    std::vector<std::int32_t> m;
    for (VertexId v : r.vertices) m.push_back(node[v]);
    members.push_back(std::move(m));
  }
  if (rings.size() >= 2) {
    std::int32_t prev = kNone;
    for (const auto& m : members) {
      const std::int32_t marker = gadget();
      for (std::int32_t x : m) p.add_edge(marker, x);
      hang_path(marker, 7);
      if (prev == kNone) {
        hang_path(marker, 8);
      } else {
        p.add_edge(prev, marker);
      }
      prev = marker;
    }
  }
  if (counts) *counts = cnt;
  return p;
}

inline void require_alphabet(const Word& w, Group g) {
  for (const Generator& x : w.letters) {
    if (!allowed_in(x.symbol, g)) {
      throw Error(ErrorCode::AlphabetError, "generator " + std::string(to_string(x.symbol)) +
                                                " is not in the alphabet of " + std::string(to_string(g)));
    }
  }
}

/// Reduced annular closure of a word over F.
inline ClosedDiagram reduced_annular(const Word& w, ReduceStats* stats = nullptr) {
  require_alphabet(w, Group::F);
  return reduce_closed(close_annular(word_to_diagram(w)), stats);
}

/// True iff the words are conjugate in F: equal reduced annular diagrams.
inline bool is_conjugate_f(const Word& w1, const Word& w2) {
  return canonical_annular(reduced_annular(w1)) == canonical_annular(reduced_annular(w2));
}

}  // namespace thompson
