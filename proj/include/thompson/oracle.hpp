#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "thompson/word.hpp"

namespace thompson::oracle {

/// Element of V as a prefix-replacement map on infinite binary strings:
/// every string starting with domain[i] has that prefix replaced by range[i].
/// Domain and range are complete prefix codes. Exact, no arithmetic.
class PrefixMap {
 public:
  using Pair = std::pair<std::string, std::string>;

  PrefixMap() : pairs_{{"", ""}} {}

  explicit PrefixMap(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    minimize();
  }

  static PrefixMap identity() { return {}; }

  /// Generator maps, fixed independently of the diagram side:
  /// x0: 00->0, 01->10, 1->11; x1: 0->0, 100->10, 101->110, 11->111;
  /// c: 0->10, 10->11, 11->0; pi0: 0->10, 10->0, 11->11.
  static PrefixMap generator(Generator g) {
    PrefixMap m;
    switch (g.symbol) {
      case Symbol::X0: m = PrefixMap({{"00", "0"}, {"01", "10"}, {"1", "11"}}); break;
      case Symbol::X1: m = PrefixMap({{"0", "0"}, {"100", "10"}, {"101", "110"}, {"11", "111"}}); break;
      case Symbol::C: m = PrefixMap({{"0", "10"}, {"10", "11"}, {"11", "0"}}); break;
      case Symbol::Pi0: m = PrefixMap({{"0", "10"}, {"10", "0"}, {"11", "11"}}); break;
    }
    return g.inverse ? m.inverse() : m;
  }

  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  PrefixMap inverse() const {
    std::vector<Pair> p;
    p.reserve(pairs_.size());
    for (const auto& [d, r] : pairs_) p.emplace_back(r, d);
    return PrefixMap(std::move(p));
  }

  /// Apply this map first, then `next`.
  PrefixMap then(const PrefixMap& next) const {
    std::unordered_map<std::string, const std::string*> lookup;
    for (const auto& [d, r] : next.pairs_) lookup.emplace(d, &r);
    std::vector<Pair> out;
    for (const auto& [d, r] : pairs_) {
      bool found = false;
      for (std::size_t len = 0; len <= r.size() && !found; ++len) {
        auto it = lookup.find(r.substr(0, len));
        if (it != lookup.end()) {
          out.emplace_back(d, *it->second + r.substr(len));
          found = true;
        }
      }
      if (found) continue;
      // r is a proper prefix of several domain words of `next`.
      auto lo = std::lower_bound(next.pairs_.begin(), next.pairs_.end(), Pair{r, ""});
      for (; lo != next.pairs_.end() && lo->first.compare(0, r.size(), r) == 0; ++lo) {
        out.emplace_back(d + lo->first.substr(r.size()), lo->second);
      }
    }
    return PrefixMap(std::move(out));
  }

  bool is_identity() const { return pairs_.size() == 1 && pairs_[0].first.empty() && pairs_[0].second.empty(); }

  /// Image of a finite prefix long enough to lie inside one domain cone.
  std::optional<std::string> apply(const std::string& x) const {
    for (const auto& [d, r] : pairs_) {
      if (x.compare(0, d.size(), d) == 0 && x.size() >= d.size()) return r + x.substr(d.size());
    }
    return std::nullopt;
  }

  /// Serialization of the minimized form; equal keys iff equal elements.
  std::string key() const {
    std::string k;
    for (const auto& [d, r] : pairs_) {
      k += d;
      k += '>';
      k += r;
      k += ';';
    }
    return k;
  }

  friend bool operator==(const PrefixMap& a, const PrefixMap& b) { return a.pairs_ == b.pairs_; }

 private:
  // Cancels carets: sibling cones d0,d1 sent to sibling cones r0,r1 in order
  // merge into d -> r. The fixed point is the unique coarsest representative.
  void minimize() {
    std::map<std::string, std::string> m(pairs_.begin(), pairs_.end());
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = m.begin(); it != m.end();) {
        const std::string& d = it->first;
        if (d.empty() || d.back() != '0') {
          ++it;
          continue;
        }
        const std::string parent = d.substr(0, d.size() - 1);
        auto sib = m.find(parent + "1");
        const std::string& r = it->second;
        if (sib == m.end() || r.empty() || r.back() != '0' ||
            sib->second != r.substr(0, r.size() - 1) + "1") {
          ++it;
          continue;
        }
        const std::string image = r.substr(0, r.size() - 1);
        m.erase(sib);
        it = m.erase(it);
        m.emplace(parent, image);
        changed = true;
      }
    }
    pairs_.assign(m.begin(), m.end());
  }

  std::vector<Pair> pairs_;
};

inline PrefixMap word_to_map(const Word& w) {
  PrefixMap m;
  for (const Generator& g : w.letters) m = m.then(PrefixMap::generator(g));
  return m;
}

inline bool equals_identity(const PrefixMap& m) { return m.is_identity(); }

inline PrefixMap conjugate(const PrefixMap& w, const PrefixMap& g) { return g.inverse().then(w).then(g); }

/// Smallest k in [1, cutoff] with m^k = id, or nullopt.
inline std::optional<int> order(const PrefixMap& m, int cutoff) {
  PrefixMap p = m;
  for (int k = 1; k <= cutoff; ++k) {
    if (p.is_identity()) return k;
    p = p.then(m);
  }
  return std::nullopt;
}

namespace detail {

struct Ball {
  struct Entry {
    Word word;
    PrefixMap map;
  };
  std::vector<Entry> layer;
  std::unordered_set<std::string> seen;
  std::unordered_map<std::string, Word> conjugates;  // key(h^-1 w h) -> h
  int radius = 0;
};

}  // namespace detail

/// Searches for g with |g| <= max_len and g^-1 w1 g = w2. Meets in the
/// middle: h^-1 w1 h = k^-1 w2 k gives g = h k^-1. Balls are grown one layer
/// at a time, so the witness found has minimal length.
inline std::optional<Word> brute_conj_witness(const Word& w1, const Word& w2, int max_len) {
  const Group group = w1.group;
  const auto letters = alphabet(group);
  const PrefixMap m1 = word_to_map(w1), m2 = word_to_map(w2);

  detail::Ball a, b;
  const PrefixMap* target[2] = {&m1, &m2};
  detail::Ball* balls[2] = {&a, &b};
  for (int side = 0; side < 2; ++side) {
    detail::Ball& ball = *balls[side];
    ball.layer.push_back({Word{group, {}}, PrefixMap::identity()});
    ball.seen.insert(PrefixMap::identity().key());
    ball.conjugates.emplace(target[side]->key(), Word{group, {}});
  }
  auto join = [&](const Word& h, const Word& k) { return h * k.inverse(); };
  if (auto it = b.conjugates.find(m1.key()); it != b.conjugates.end()) return join({group, {}}, it->second);

  for (int total = 1; total <= max_len; ++total) {
    const int side = a.radius <= b.radius ? 0 : 1;
    detail::Ball& grow = *balls[side];
    const detail::Ball& other = *balls[1 - side];
    std::vector<detail::Ball::Entry> next;
    std::optional<Word> found;
    for (const auto& e : grow.layer) {
      for (const Generator& g : letters) {
        PrefixMap m = e.map.then(PrefixMap::generator(g));
        std::string key = m.key();
        if (!grow.seen.insert(key).second) continue;
        Word word = e.word;
        word.letters.push_back(g);
        const std::string ckey = conjugate(*target[side], m).key();
        if (!found) {
          if (auto hit = other.conjugates.find(ckey); hit != other.conjugates.end()) {
            found = side == 0 ? join(word, hit->second) : join(hit->second, word);
          }
        }
        grow.conjugates.emplace(ckey, word);
        next.push_back({std::move(word), std::move(m)});
      }
    }
    if (found) return found;
    grow.layer = std::move(next);
    ++grow.radius;
  }
  return std::nullopt;
}

}  // namespace thompson::oracle
