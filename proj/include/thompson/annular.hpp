#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thompson/closed_diagram.hpp"
#include "thompson/error.hpp"

namespace thompson {

/// A free loop or a connected component, with its position along the ray
/// (annulus) or meridian (torus).
struct Ring {
  enum class Kind : std::uint8_t { FreeLoop, Component };
  Kind kind = Kind::FreeLoop;
  std::int32_t index = kNone;      // free loop index or component id
  std::vector<VertexId> vertices;  // component vertices, ascending
  std::vector<Cycle> cycles;       // component cycles, ordered by first cut
  std::int32_t first_rank = kNone;
};

namespace detail {

struct RingData {
  std::vector<Ring> rings;                 // indexed by owner slot
  std::vector<std::int32_t> owner_of_cut;  // cut id -> owner slot
  std::vector<std::int32_t> rank;          // cut id -> position
};

// Collects rings and the owner slot of every cut. Slots: components first,
// then free loops.
inline RingData collect_rings(const ClosedDiagram& g) {
  RingData out;
  std::int32_t comps = 0;
  const auto comp = component_ids(g, &comps);
  const auto cycles = simple_cycles(g);
  if (!cycles) throw Error(ErrorCode::StructureViolation, "a strong component is not a simple cycle");
  out.rings.resize(static_cast<std::size_t>(comps) + g.free_loops.size());
  for (std::int32_t i = 0; i < comps; ++i) {
    out.rings[i].kind = Ring::Kind::Component;
    out.rings[i].index = i;
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.vertices[v].alive) out.rings[comp[v]].vertices.push_back(static_cast<VertexId>(v));
  }
  for (std::size_t i = 0; i < g.free_loops.size(); ++i) {
    Ring& r = out.rings[comps + i];
    r.kind = Ring::Kind::FreeLoop;
    r.index = static_cast<std::int32_t>(i);
  }
  out.rank = g.cut_order.ranks();
  auto owner = cut_owners(g, comp);
  for (auto& o : owner) {
    if (o != detail::kUnowned && o < 0) o = comps + ~o;
  }
  out.owner_of_cut = std::move(owner);
  for (CutId c = 0; c < static_cast<CutId>(out.rank.size()); ++c) {
    if (out.rank[c] == kNone) continue;
    Ring& r = out.rings[out.owner_of_cut[c]];
    if (r.first_rank == kNone || out.rank[c] < r.first_rank) r.first_rank = out.rank[c];
  }
  auto cycle_rank = [&](const Cycle& cyc) {
    std::int32_t best = kNone;
    for (EdgeId e : cyc.edges) {
      for (CutId c : g.edge_cuts[e]) {
        if (best == kNone || out.rank[c] < best) best = out.rank[c];
      }
    }
    return best;
  };
  std::vector<std::pair<std::int32_t, const Cycle*>> ranked;
  for (const Cycle& cyc : *cycles) ranked.emplace_back(cycle_rank(cyc), &cyc);
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [rk, cyc] : ranked) out.rings[comp[cyc->vertices.front()]].cycles.push_back(*cyc);
  return out;
}

}  // namespace detail

/// Rings of a reduced annular or toral diagram. On the annulus they come out
/// inner to outer; on the torus in meridian order starting at the first cut.
inline std::vector<Ring> ring_decomposition(const ClosedDiagram& g) {
  if (g.surface == Surface::Abstract || !g.tracks_cuts) {
    throw Error(ErrorCode::StructureViolation, "ring order needs a tracked annular or toral diagram");
  }
  if (!is_reduced_closed(g)) throw Error(ErrorCode::NotReduced, "ring decomposition needs a reduced diagram");
  auto data = detail::collect_rings(g);
  for (const Ring& r : data.rings) {
    if (r.first_rank == kNone) throw Error(ErrorCode::StructureViolation, "a ring never meets the cutting ray");
  }
  if (g.surface == Surface::Annulus) {
    std::sort(data.rings.begin(), data.rings.end(),
              [](const Ring& a, const Ring& b) { return a.first_rank < b.first_rank; });
    return std::move(data.rings);
  }
  // Torus: the meridian meets the rings in one cyclic order, repeated once
  // per winding.
  std::vector<std::int32_t> seq;
  for (CutId c : g.cut_order.sequence()) {
    const std::int32_t o = data.owner_of_cut[c];
    if (seq.empty() || seq.back() != o) seq.push_back(o);
  }
  while (seq.size() > 1 && seq.front() == seq.back()) seq.pop_back();
  const std::size_t m = data.rings.size();
  if (seq.size() % m != 0) throw Error(ErrorCode::StructureViolation, "meridian order is not periodic");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] != seq[i % m]) throw Error(ErrorCode::StructureViolation, "meridian order is not periodic");
  }
  std::vector<Ring> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(std::move(data.rings[seq[i]]));
  return out;
}

/// Checks the shape of a reduced closed diagram: directed cycles are disjoint
/// and pure, components contain at least two cycles, and on the annulus every
/// cycle winds once and cycles alternate between merge and split loops.
/// A violation is an engine bug, never bad input.
inline std::optional<Error> check_cycle_structure(const ClosedDiagram& g) {
  auto fail = [](const std::string& msg) { return Error(ErrorCode::StructureViolation, msg); };
  const auto cycles = simple_cycles(g);
  if (!cycles) return fail("directed cycles are not pairwise disjoint");
  std::int32_t comps = 0;
  const auto comp = component_ids(g, &comps);
  std::vector<int> per_comp(comps, 0);
  std::optional<Weight> cls;
  auto same_class = [&](const Weight& w) {
    if (g.surface != Surface::Torus) return true;
    if (!cls) cls = w;
    return *cls == w;
  };
  for (const Cycle& cyc : *cycles) {
    const VertexKind k = g.vertices[cyc.vertices.front()].kind;
    for (VertexId v : cyc.vertices) {
      if (g.vertices[v].kind != k) return fail("cycle through vertex " + std::to_string(v) + " mixes splits and merges");
    }
    if (cyc.w.c <= 0) return fail("cycle through vertex " + std::to_string(cyc.vertices.front()) + " has c <= 0");
    if (g.surface == Surface::Annulus && cyc.w.c != 1) {
      return fail("cycle through vertex " + std::to_string(cyc.vertices.front()) + " winds " +
                  std::to_string(cyc.w.c) + " times");
    }
    if (!same_class(cyc.w)) return fail("directed cycles represent different classes");
    ++per_comp[comp[cyc.vertices.front()]];
  }
  for (const FreeLoop& l : g.free_loops) {
    if (l.w.c <= 0) return fail("free loop has c <= 0");
    if (g.surface == Surface::Annulus && l.w.c != 1) return fail("free loop winds more than once");
    if (!same_class(l.w)) return fail("free loop class differs from the cycles");
  }
  for (std::int32_t i = 0; i < comps; ++i) {
    if (per_comp[i] == 0) return fail("component " + std::to_string(i) + " has no directed cycle");
    if (per_comp[i] == 1) return fail("component " + std::to_string(i) + " has a single directed cycle");
  }
  if (g.surface == Surface::Annulus && g.tracks_cuts) {
    std::vector<Ring> rings;
    try {
      rings = ring_decomposition(g);
    } catch (const Error& e) {
      return e;
    }
    for (const Ring& r : rings) {
      for (std::size_t i = 1; i < r.cycles.size(); ++i) {
        const VertexKind a = g.vertices[r.cycles[i - 1].vertices.front()].kind;
        const VertexKind b = g.vertices[r.cycles[i].vertices.front()].kind;
        if (a == b) return fail("adjacent cycles of component " + std::to_string(r.index) + " have the same kind");
      }
    }
  }
  return std::nullopt;
}

/// close + reduce for F.
inline ClosedDiagram reduce_annular(const ClosedDiagram& a, ReduceStats* stats = nullptr) {
  return reduce_closed(a, stats);
}

}  // namespace thompson
