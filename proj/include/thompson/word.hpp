#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/error.hpp"
#include "thompson/strand_diagram.hpp"

namespace thompson {

enum class Group : std::uint8_t { F, T, V };

enum class Symbol : std::uint8_t { X0, X1, C, Pi0 };

constexpr std::string_view to_string(Group g) {
  switch (g) {
    case Group::F: return "F";
    case Group::T: return "T";
    case Group::V: return "V";
  }
  return "?";
}

constexpr std::string_view to_string(Symbol s) {
  switch (s) {
    case Symbol::X0: return "x0";
    case Symbol::X1: return "x1";
    case Symbol::C: return "c";
    case Symbol::Pi0: return "pi0";
  }
  return "?";
}

inline Group parse_group(std::string_view s) {
  if (s == "F" || s == "f") return Group::F;
  if (s == "T" || s == "t") return Group::T;
  if (s == "V" || s == "v") return Group::V;
  throw Error(ErrorCode::ParseError, "unknown group '" + std::string(s) + "'");
}

constexpr bool allowed_in(Symbol s, Group g) {
  switch (s) {
    case Symbol::X0:
    case Symbol::X1: return true;
    case Symbol::C: return g != Group::F;
    case Symbol::Pi0: return g == Group::V;
  }
  return false;
}

struct Generator {
  Symbol symbol = Symbol::X0;
  bool inverse = false;

  Generator inverted() const { return {symbol, !inverse}; }
  friend bool operator==(const Generator&, const Generator&) = default;
};

struct Word {
  Group group = Group::F;
  std::vector<Generator> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  Word inverse() const {
    Word w{group, {}};
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(it->inverted());
    return w;
  }

  friend Word operator*(Word a, const Word& b) {
    a.letters.insert(a.letters.end(), b.letters.begin(), b.letters.end());
    return a;
  }

  friend bool operator==(const Word&, const Word&) = default;
};

/// g^-1 w g
inline Word conjugate(const Word& w, const Word& g) { return g.inverse() * w * g; }

inline Word power(const Word& w, int k) {
  Word base = k < 0 ? w.inverse() : w;
  Word out{w.group, {}};
  for (int i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
  return out;
}

/// Grammar: tokens separated by whitespace or '*'; token := gen ('^' int)?;
/// gen is x0, x1, c or pi0. An uppercase generator is the inverse letter.
inline Word parse_word(std::string_view text, Group group) {
  Word w{group, {}};
  std::size_t i = 0;
  auto fail = [&](std::size_t pos, const std::string& msg) -> Error {
    return Error(ErrorCode::ParseError, "at position " + std::to_string(pos) + ": " + msg);
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    const std::string_view name = text.substr(start, i - start);
    if (name.empty()) throw fail(start, std::string("unexpected character '") + ch + "'");
    std::string lower(name);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    Symbol sym;
    if (lower == "x0") {
      sym = Symbol::X0;
    } else if (lower == "x1") {
      sym = Symbol::X1;
    } else if (lower == "c") {
      sym = Symbol::C;
    } else if (lower == "pi0") {
      sym = Symbol::Pi0;
    } else {
      throw fail(start, "unknown generator '" + std::string(name) + "'");
    }
    const bool upper = std::isupper(static_cast<unsigned char>(name[0])) != 0;
    if (upper && name != "X0" && name != "X1" && name != "C" && name != "PI0") {
      throw fail(start, "mixed-case generator '" + std::string(name) + "'");
    }
    if (!allowed_in(sym, group)) {
      throw Error(ErrorCode::AlphabetError, "generator " + std::string(to_string(sym)) +
                                                " is not in the alphabet of " +
                                                std::string(to_string(group)));
    }
    long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      const std::size_t num = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      std::string_view digits = text.substr(num, i - num);
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
      if (digits.empty() || res.ec != std::errc{} || res.ptr != digits.data() + digits.size()) {
        throw fail(num, "malformed exponent");
      }
    }
    if (upper) exponent = -exponent;
    const Generator g{sym, exponent < 0};
    for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) w.letters.push_back(g);
  }
  return w;
}

/// Prints in the same grammar `parse_word` reads.
inline std::string to_string(const Word& w) {
  std::string out;
  for (const Generator& g : w.letters) {
    if (!out.empty()) out += ' ';
    out += to_string(g.symbol);
    if (g.inverse) out += "^-1";
  }
  return out;
}

/// Standard tree pairs: x0 = {00,01,1} -> {0,10,11}; x1 acts as x0 below the
/// right child; c sends domain leaf i to range leaf i+1 mod 3 on the 3-leaf
/// vine; pi0 swaps the first two leaves of the 3-leaf vine.
inline TreePair generator_tree_pair(Symbol s) {
  switch (s) {
    case Symbol::X0:
      return {BinaryTree::from_leaves({"00", "01", "1"}), BinaryTree::from_leaves({"0", "10", "11"}),
              {0, 1, 2}};
    case Symbol::X1:
      return {BinaryTree::from_leaves({"0", "100", "101", "11"}),
              BinaryTree::from_leaves({"0", "10", "110", "111"}), {0, 1, 2, 3}};
    case Symbol::C:
      return {BinaryTree::right_vine(3), BinaryTree::right_vine(3), {1, 2, 0}};
    case Symbol::Pi0:
      return {BinaryTree::right_vine(3), BinaryTree::right_vine(3), {1, 0, 2}};
  }
  throw Error(ErrorCode::AlphabetError, "unknown generator");
}

inline StrandDiagram generator_diagram(Generator g, Group group) {
  if (!allowed_in(g.symbol, group)) {
    throw Error(ErrorCode::AlphabetError, "generator " + std::string(to_string(g.symbol)) +
                                              " is not in the alphabet of " + std::string(to_string(group)));
  }
  // On the cylinder the cyclic generator wraps one strand across the seam.
  const bool wrap = group == Group::T && g.symbol == Symbol::C;
  StrandDiagram d = from_tree_pair(generator_tree_pair(g.symbol), wrap);
  return g.inverse ? invert(d) : d;
}

/// Left-to-right concatenation of generator diagrams, no reduction.
inline StrandDiagram word_to_diagram(const Word& w) {
  std::array<StrandDiagram, 8> cache;
  std::array<bool, 8> ready{};
  StrandDiagram d = StrandDiagram::identity(1);
  for (const Generator& g : w.letters) {
    const std::size_t key = static_cast<std::size_t>(g.symbol) * 2 + (g.inverse ? 1 : 0);
    if (!ready[key]) {
      cache[key] = generator_diagram(g, w.group);
      ready[key] = true;
    }
    d.append(cache[key]);
  }
  return d;
}

inline std::vector<Generator> alphabet(Group group) {
  std::vector<Generator> out;
  for (Symbol s : {Symbol::X0, Symbol::X1, Symbol::C, Symbol::Pi0}) {
    if (!allowed_in(s, group)) continue;
    out.push_back({s, false});
    out.push_back({s, true});
  }
  return out;
}

/// Uniform random letters over the signed alphabet of `group`.
template <typename Rng>
Word random_word(Group group, std::size_t length, Rng& rng) {
  const auto letters = alphabet(group);
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  Word w{group, {}};
  w.letters.reserve(length);
  for (std::size_t i = 0; i < length; ++i) w.letters.push_back(letters[pick(rng)]);
  return w;
}

}  // namespace thompson
