#pragma once

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "thompson/serialize.hpp"
#include "thompson/thompson.hpp"

namespace thompson::cli {

enum Exit : int { kOk = 0, kInternal = 1, kUsage = 2 };

struct BenchRow {
  std::size_t n = 0;
  double seconds = 0;
  std::size_t vertices = 0;
};

/// Builds and reduces a uniform random word of length n over {x0, x1}^+-1.
/// The word for (n, seed) is fixed: mt19937_64 seeded with seed ^ n.
inline BenchRow bench_reduce_once(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(n));
  const Word w = random_word(Group::F, n, rng);
  const auto t0 = std::chrono::steady_clock::now();
  const StrandDiagram r = reduce(word_to_diagram(w));
  const auto t1 = std::chrono::steady_clock::now();
  return {n, std::chrono::duration<double>(t1 - t0).count(), r.vertex_count()};
}

namespace detail {

inline Word parse(const std::string& s, Group g) { return parse_word(s, g); }

inline bool words_equal(const Word& a, const Word& b) { return is_identity(reduce(word_to_diagram(a * b.inverse()))); }

inline bool conjugate_in(Group g, const Word& a, const Word& b) {
  switch (g) {
    case Group::F: return is_conjugate_f(a, b);
    case Group::T: return is_conjugate_t(a, b);
    case Group::V: return is_conjugate_v(a, b);
  }
  return false;
}

inline CanonicalForm conjugacy_form(Group g, const Word& w) {
  switch (g) {
    case Group::F: return canonical_annular(reduced_annular(w));
    case Group::T: return canonical_toral(reduced_toral(w));
    case Group::V: return canonical_closed(reduced_closed(w));
  }
  return {};
}

}  // namespace detail

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strand-diagram word and conjugacy problems for Thompson's groups F, T and V"};
  app.require_subcommand(1);

  std::string group_name = "F";
  bool emit_canon = false;
  std::vector<std::string> words;
  auto add_group = [&](CLI::App* sub) {
    sub->add_option("-g,--group", group_name, "F, T or V")->check(CLI::IsMember({"F", "T", "V", "f", "t", "v"}));
  };

  auto* reduce_cmd = app.add_subcommand("reduce", "reduce the strand diagram of a word");
  add_group(reduce_cmd);
  reduce_cmd->add_flag("--emit-canon", emit_canon, "also print the canonical form as hex");
  reduce_cmd->add_option("word", words, "word, e.g. \"x0 x1^-1\"")->required()->expected(1);

  auto* eq_cmd = app.add_subcommand("eq", "word problem: do two words give the same element?");
  add_group(eq_cmd);
  eq_cmd->add_option("words", words)->required()->expected(2);

  auto* conj_cmd = app.add_subcommand("conj", "conjugacy problem");
  add_group(conj_cmd);
  conj_cmd->add_flag("--emit-canon", emit_canon, "also print both conjugacy invariants as hex");
  conj_cmd->add_option("words", words)->required()->expected(2);

  auto* rot_cmd = app.add_subcommand("rotnum", "rotation number of an element of T");
  rot_cmd->add_option("word", words)->required()->expected(1);

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force checks on prefix maps");
  std::string oracle_mode;
  int max_len = 8;
  add_group(oracle_cmd);
  oracle_cmd->add_option("mode", oracle_mode)->required()->check(CLI::IsMember({"eq", "conj"}));
  oracle_cmd->add_option("words", words)->required()->expected(2);
  oracle_cmd->add_option("--max-len", max_len, "longest conjugator tried")->check(CLI::Range(0, 64));

  auto* export_cmd = app.add_subcommand("export", "print a diagram as DOT or JSON");
  std::string format = "dot";
  std::string closure = "none";
  bool raw = false;
  add_group(export_cmd);
  export_cmd->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  export_cmd->add_option("--closure", closure, "none, annular, toral or abstract")
      ->check(CLI::IsMember({"none", "annular", "toral", "abstract"}));
  export_cmd->add_flag("--raw", raw, "skip reduction");
  export_cmd->add_option("word", words)->required()->expected(1);

  auto* bench_cmd = app.add_subcommand("bench", "timing runs");
  std::string bench_what;
  std::vector<std::size_t> lengths{1000, 10000, 100000, 1000000};
  std::uint64_t seed = 1;
  bench_cmd->add_option("what", bench_what)->required()->check(CLI::IsMember({"reduce"}));
  bench_cmd->add_option("--lengths", lengths)->delimiter(',');
  bench_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Group group = parse_group(group_name);
    if (*reduce_cmd) {
      const StrandDiagram r = reduce(word_to_diagram(detail::parse(words[0], group)));
      out << "vertices " << r.vertex_count() << "\nedges " << r.edge_count() << "\n";
      if (emit_canon) out << "canon " << canonical_square(r).hex() << "\n";
    } else if (*eq_cmd) {
      out << (detail::words_equal(detail::parse(words[0], group), detail::parse(words[1], group)) ? "true" : "false")
          << "\n";
    } else if (*conj_cmd) {
      const Word a = detail::parse(words[0], group), b = detail::parse(words[1], group);
      out << (detail::conjugate_in(group, a, b) ? "true" : "false") << "\n";
      if (emit_canon) {
        out << "canon " << detail::conjugacy_form(group, a).hex() << "\n";
        out << "canon " << detail::conjugacy_form(group, b).hex() << "\n";
      }
    } else if (*rot_cmd) {
      out << rotation_number(detail::parse(words[0], Group::T)).str() << "\n";
    } else if (*oracle_cmd) {
      const Word a = detail::parse(words[0], group), b = detail::parse(words[1], group);
      if (oracle_mode == "eq") {
        out << (oracle::word_to_map(a) == oracle::word_to_map(b) ? "true" : "false") << "\n";
      } else if (auto g = oracle::brute_conj_witness(a, b, max_len)) {
        out << "true\nwitness " << to_string(*g) << "\n";
      } else {
        out << "unknown: no conjugator of length <= " << max_len << "\n";
      }
    } else if (*export_cmd) {
      const Word w = detail::parse(words[0], group);
      const StrandDiagram d = raw ? word_to_diagram(w) : reduce(word_to_diagram(w));
      if (closure == "none") {
        out << (format == "dot" ? to_dot(d) : to_json(d).dump(2) + "\n");
      } else {
        const Surface s = closure == "annular" ? Surface::Annulus
                          : closure == "toral" ? Surface::Torus
                                               : Surface::Abstract;
        if (s == Surface::Annulus) require_alphabet(w, Group::F);
        if (s == Surface::Torus) require_alphabet(w, Group::T);
        ClosedDiagram g = close(d, s);
        if (!raw) g = reduce_closed(g);
        out << (format == "dot" ? to_dot(g) : to_json(g).dump(2) + "\n");
      }
    } else if (*bench_cmd) {
      out << "N seconds vertices\n";
      for (std::size_t n : lengths) {
        const BenchRow row = bench_reduce_once(n, seed);
        out << row.n << " " << std::fixed << std::setprecision(6) << row.seconds << " " << row.vertices << "\n";
        out.unsetf(std::ios::fixed);
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_user_error() ? kUsage : kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace thompson::cli
