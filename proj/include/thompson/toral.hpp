#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "thompson/annular.hpp"
#include "thompson/canonical.hpp"
#include "thompson/closed_diagram.hpp"
#include "thompson/error.hpp"
#include "thompson/word.hpp"

namespace thompson {

/// k/n with 0 <= k < n and gcd(k, n) = 1.
struct RotationNumber {
  std::int64_t k = 0;
  std::int64_t n = 1;

  std::string str() const { return std::to_string(k) + "/" + std::to_string(n); }
  friend bool operator==(const RotationNumber&, const RotationNumber&) = default;
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// Class (n, k) = (c, lon) shared by every directed cycle of a reduced toral
/// diagram.
inline Weight toral_class(const ClosedDiagram& t) {
  if (!t.free_loops.empty()) return t.free_loops.front().w;
  const auto cycles = simple_cycles(t);
  if (!cycles || cycles->empty()) {
    throw Error(ErrorCode::StructureViolation, "reduced toral diagram without a simple directed cycle");
  }
  return cycles->front().w;
}

/// Applies the Dehn twist lon -= q*c with q = floor(k/n), so the common class
/// becomes (n, k mod n). Idempotent.
inline ClosedDiagram dehn_normalize(const ClosedDiagram& t) {
  if (t.surface != Surface::Torus) throw Error(ErrorCode::StructureViolation, "Dehn normalization is for toral diagrams");
  if (!is_reduced_closed(t)) throw Error(ErrorCode::NotReduced, "Dehn normalization needs a reduced diagram");
  const Weight cls = toral_class(t);
  const std::int64_t q = detail::floor_div(cls.lon, cls.c);
  ClosedDiagram out = t;
  if (q == 0) return out;
  for (Edge& e : out.edges) e.w.lon -= q * e.w.c;
  for (FreeLoop& l : out.free_loops) l.w.lon -= q * l.w.c;
  return out;
}

inline ClosedDiagram reduce_toral(const ClosedDiagram& t, ReduceStats* stats = nullptr) { return reduce_closed(t, stats); }

/// Reduced toral closure of a word over T.
inline ClosedDiagram reduced_toral(const Word& w, std::int64_t shift = 0, std::int64_t twist = 0) {
  require_alphabet(w, Group::T);
  return reduce_closed(close_cylindrical(word_to_diagram(w), shift, twist));
}

/// Cyclic sequence of ring codes after Dehn normalization, least rotation.
inline CanonicalForm canonical_toral(const ClosedDiagram& t) {
  const ClosedDiagram n = dehn_normalize(t);
  if (auto err = check_cycle_structure(n)) throw *err;
  const auto rings = ring_decomposition(n);
  detail::ComponentEncoder enc(n);
  std::vector<std::vector<std::int64_t>> codes;
  for (const Ring& r : rings) codes.push_back(detail::ring_code(n, enc, r));
  CanonicalForm f;
  f.tokens.push_back(token::kTorus);
  const auto body = least_rotation(codes);
  f.tokens.insert(f.tokens.end(), body.begin(), body.end());
  f.rings = rings.size();
  f.vertices = n.vertex_count();
  f.free_loops = n.free_loops.size();
  return f;
}

inline RotationNumber rotation_number(const ClosedDiagram& reduced) {
  const Weight cls = toral_class(dehn_normalize(reduced));
  const std::int64_t g = std::gcd(cls.lon, cls.c);
  return {cls.lon / g, cls.c / g};
}

inline RotationNumber rotation_number(const Word& w) { return rotation_number(reduced_toral(w)); }

inline bool is_conjugate_t(const Word& w1, const Word& w2) {
  return canonical_toral(reduced_toral(w1)) == canonical_toral(reduced_toral(w2));
}

/// Word for x_j (j >= 0) or its inverse: x_j = x0^-(j-1) x1 x0^(j-1).
inline Word x_generator(int j, bool inverse, Group group) {
  Word w{group, {}};
  if (j == 0) {
    w.letters.push_back({Symbol::X0, inverse});
    return w;
  }
  for (int i = 0; i < j - 1; ++i) w.letters.push_back({Symbol::X0, true});
  w.letters.push_back({Symbol::X1, inverse});
  for (int i = 0; i < j - 1; ++i) w.letters.push_back({Symbol::X0, false});
  return w;
}

/// Word for the element sending vine leaf i to vine leaf i+k mod n, where the
/// n-leaf right vine has leaves 0, 10, 110, ..., 1^(n-1). Uses c for n = 3,
/// x0 c for n = 2 and A(n+1) = x_(n-2)^-1 A(n). The power k is not reduced mod n.
inline Word torsion_witness(std::int64_t n, std::int64_t k) {
  if (n < 1) throw Error(ErrorCode::ArityMismatch, "torsion witness needs n >= 1");
  Word base{Group::T, {}};
  if (n == 2) {
    base.letters = {{Symbol::X0, false}, {Symbol::C, false}};
  } else if (n >= 3) {
    for (std::int64_t j = n - 3; j >= 1; --j) base = base * x_generator(static_cast<int>(j), true, Group::T);
    base.letters.push_back({Symbol::C, false});
  }
  return power(base, static_cast<int>(k));
}

}  // namespace thompson
