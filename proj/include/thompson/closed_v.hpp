#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "thompson/canonical.hpp"
#include "thompson/closed_diagram.hpp"
#include "thompson/error.hpp"
#include "thompson/oracle.hpp"
#include "thompson/word.hpp"

namespace thompson {

/// Plain directed multigraph for cochain questions. Self-loops allowed.
struct IncidenceGraph {
  std::int32_t vertex_count = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;  // (from, to)
};

/// True iff c1 - c2 = δf for some 0-cochain f, i.e. f(to) - f(from) = c1 - c2
/// on every edge. Rational elimination on the incidence system; a rational
/// solution gives an integral one because H^1 of a graph is free.
inline bool cohomology_equivalent(const IncidenceGraph& g, const std::vector<std::int64_t>& c1,
                                  const std::vector<std::int64_t>& c2) {
  using Q = boost::rational<std::int64_t>;
  const std::size_t rows = g.edges.size();
  const std::size_t cols = static_cast<std::size_t>(g.vertex_count);
  std::vector<std::vector<Q>> a(rows, std::vector<Q>(cols + 1, Q(0)));
  for (std::size_t e = 0; e < rows; ++e) {
    const auto [from, to] = g.edges[e];
    a[e][to] += 1;
    a[e][from] -= 1;
    a[e][cols] = Q(c1[e] - c2[e]);
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && a[piv][col].numerator() == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    const Q inv = Q(1) / a[r][col];
    for (std::size_t j = col; j <= cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][col].numerator() == 0) continue;
      const Q f = a[i][col];
      for (std::size_t j = col; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i][cols].numerator() != 0) return false;
  }
  return true;
}

namespace detail {

struct PortMatch {
  std::vector<VertexId> vertex;  // vertex of a -> vertex of b
  std::vector<EdgeId> edge;      // edge of a -> edge of b
};

// Extends root_a -> root_b through ports. The whole component is forced once
// the root is fixed, so there is no backtracking inside a component.
inline std::optional<PortMatch> match_from(const PortGraph& a, VertexId root_a, const PortGraph& b, VertexId root_b) {
  if (a.vertices[root_a].kind != b.vertices[root_b].kind) return std::nullopt;
  PortMatch m{std::vector<VertexId>(a.vertices.size(), kNone), std::vector<EdgeId>(a.edges.size(), kNone)};
  std::vector<VertexId> back(b.vertices.size(), kNone);
  std::vector<VertexId> queue{root_a};
  m.vertex[root_a] = root_b;
  back[root_b] = root_a;
  auto pair_up = [&](VertexId x, VertexId y) {
    if (a.vertices[x].kind != b.vertices[y].kind) return false;
    if (m.vertex[x] == kNone && back[y] == kNone) {
      m.vertex[x] = y;
      back[y] = x;
      queue.push_back(x);
      return true;
    }
    return m.vertex[x] == y && back[y] == x;
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    const Vertex& xa = a.vertices[u];
    const Vertex& xb = b.vertices[m.vertex[u]];
    for (int p = 0; p < xa.input_count(); ++p) {
      const Edge& ea = a.edges[xa.in[p]];
      const Edge& eb = b.edges[xb.in[p]];
      if (ea.from.port != eb.from.port || !pair_up(ea.from.index, eb.from.index)) return std::nullopt;
      m.edge[xa.in[p]] = xb.in[p];
    }
    for (int p = 0; p < xa.output_count(); ++p) {
      const Edge& ea = a.edges[xa.out[p]];
      const Edge& eb = b.edges[xb.out[p]];
      if (ea.to.port != eb.to.port || !pair_up(ea.to.index, eb.to.index)) return std::nullopt;
      m.edge[xa.out[p]] = xb.out[p];
    }
  }
  return m;
}

// Incidence graph and cut counts of one component, plus the pulled-back
// counts of its image.
inline bool component_classes_agree(const PortGraph& a, const std::vector<VertexId>& comp, const PortGraph& b,
                                    const PortMatch& m) {
  IncidenceGraph g;
  std::vector<std::int32_t> local(a.vertices.size(), kNone);
  for (VertexId v : comp) local[v] = g.vertex_count++;
  std::vector<std::int64_t> c1, c2;
  for (VertexId v : comp) {
    const Vertex& x = a.vertices[v];
    for (int p = 0; p < x.output_count(); ++p) {
      const EdgeId e = x.out[p];
      g.edges.emplace_back(local[v], local[a.edges[e].to.index]);
      c1.push_back(a.edges[e].w.c);
      c2.push_back(b.edges[m.edge[e]].w.c);
    }
  }
  return cohomology_equivalent(g, c1, c2);
}

inline std::vector<std::vector<VertexId>> components_of(const PortGraph& g) {
  std::int32_t count = 0;
  const auto comp = component_ids(g, &count);
  std::vector<std::vector<VertexId>> out(count);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.vertices[v].alive) out[comp[v]].push_back(static_cast<VertexId>(v));
  }
  return out;
}

inline std::vector<std::int64_t> loop_counts(const PortGraph& g) {
  std::vector<std::int64_t> out;
  for (const FreeLoop& l : g.free_loops) out.push_back(l.w.c);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Port-preserving isomorphism that carries one cutting class to a class
/// cohomologous to the other, found component by component.
inline bool closed_equivalent(const ClosedDiagram& a, const ClosedDiagram& b) {
  if (a.vertex_count() != b.vertex_count() || detail::loop_counts(a) != detail::loop_counts(b)) return false;
  const auto ca = detail::components_of(a);
  const auto cb = detail::components_of(b);
  if (ca.size() != cb.size()) return false;
  std::vector<char> used(cb.size(), 0);
  for (const auto& comp : ca) {
    bool found = false;
    for (std::size_t j = 0; j < cb.size() && !found; ++j) {
      if (used[j] || cb[j].size() != comp.size()) continue;
      for (VertexId root_b : cb[j]) {
        const auto m = detail::match_from(a, comp.front(), b, root_b);
        if (m && detail::component_classes_agree(a, comp, b, *m)) {
          used[j] = 1;
          found = true;
          break;
        }
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Reduced abstract closure of a word over V.
inline ClosedDiagram reduced_closed(const Word& w, ReduceStats* stats = nullptr) {
  require_alphabet(w, Group::V);
  return reduce_closed(close_abstract(word_to_diagram(w)), stats);
}

inline bool is_conjugate_v(const Word& w1, const Word& w2) {
  return closed_equivalent(reduced_closed(w1), reduced_closed(w2));
}

/// Canonical token string for a reduced abstract diagram: sorted component
/// codes (cochains normalized along the traversal tree), then loop counts.
inline CanonicalForm canonical_closed(const ClosedDiagram& g) {
  detail::require_reduced(g);
  detail::ComponentEncoder enc(g);
  std::vector<std::vector<std::int64_t>> codes;
  for (const auto& comp : detail::components_of(g)) {
    auto code = detail::encode_component(enc, comp);
    code.insert(code.begin(), {token::kRing, static_cast<std::int64_t>(comp.size())});
    codes.push_back(std::move(code));
  }
  std::sort(codes.begin(), codes.end());
  CanonicalForm f;
  f.tokens.push_back(token::kAbstract);
  for (const auto& c : codes) f.tokens.insert(f.tokens.end(), c.begin(), c.end());
  for (std::int64_t c : detail::loop_counts(g)) f.tokens.insert(f.tokens.end(), {token::kFreeLoop, c, 0});
  f.rings = codes.size() + g.free_loops.size();
  f.vertices = g.vertex_count();
  f.free_loops = g.free_loops.size();
  return f;
}

struct TorsionResult {
  bool torsion = false;
  std::optional<std::int64_t> order;
};

/// Oracle-only check: iterates the prefix map until it returns to the
/// identity. Throws CutoffExceeded if `cutoff` powers are not enough.
inline std::int64_t oracle_order(const Word& w, std::int64_t cutoff) {
  const auto m = oracle::word_to_map(w);
  oracle::PrefixMap p = m;
  for (std::int64_t k = 1; k <= cutoff; ++k) {
    if (p.is_identity()) return k;
    p = p.then(m);
  }
  throw Error(ErrorCode::CutoffExceeded, "no return to the identity within " + std::to_string(cutoff) + " powers");
}

/// Torsion iff the reduced closed diagram is only free loops; the order is
/// then the lcm of the loop cut counts. The order is confirmed by iterating
/// the oracle map with that lcm as the cutoff.
inline TorsionResult torsion_check(const Word& w) {
  const ClosedDiagram g = reduced_closed(w);
  if (g.vertex_count() != 0) return {false, std::nullopt};
  std::int64_t order = 1;
  for (const FreeLoop& l : g.free_loops) order = std::lcm(order, l.w.c);
  const std::int64_t seen = oracle_order(w, order);
  if (seen != order) {
    throw Error(ErrorCode::StructureViolation, "closed diagram predicts order " + std::to_string(order) +
                                                   " but the map has order " + std::to_string(seen));
  }
  return {true, order};
}

}  // namespace thompson
