// Acceptance suite: one PASS/FAIL line per criterion. Seeds, sample sizes and
// time limits are fixed here; nothing is read from the environment.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cli.hpp"
#include "test_support.hpp"
#include "thompson/thompson.hpp"

namespace {

using namespace thompson;

constexpr std::uint64_t kSeed = 20240917;

constexpr double kC1Seconds = 5.0;
constexpr double kC2Seconds = 10.0;
constexpr double kC4Seconds = 600.0;
constexpr double kC9Ratio = 15.0;
constexpr double kC9MaxSeconds = 60.0;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::mt19937_64 rng_for(int criterion) { return std::mt19937_64(kSeed + static_cast<std::uint64_t>(criterion)); }

// F words whose reduced annular diagrams criterion 5 re-checks.
std::vector<Word> g_annular_words;

Word random_f(std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
  return random_word(Group::F, testing::random_length(lo, hi, rng), rng);
}

Outcome criterion1() {
  auto rng = rng_for(1);
  std::vector<Word> words;
  for (int i = 0; i < 500; ++i) words.push_back(random_f(0, 40, rng));
  int mismatches = 0;
  const auto t0 = Clock::now();
  for (const Word& w : words) {
    const StrandDiagram d = word_to_diagram(w);
    if (canonical_square(reduce(d)).hex() != canonical_square(reduce_random(d, rng)).hex()) ++mismatches;
  }
  const double secs = since(t0);
  g_annular_words.insert(g_annular_words.end(), words.begin(), words.end());
  char buf[160];
  std::snprintf(buf, sizeof buf, "500 words, %d mismatches, %.2fs (limit %.0fs)", mismatches, secs, kC1Seconds);
  return {mismatches == 0 && secs < kC1Seconds, buf};
}

Outcome criterion2() {
  auto rng = rng_for(2);
  std::vector<Word> words;
  for (int i = 0; i < 1000; ++i) {
    // Every other word is w w^-1 style so both verdicts are exercised.
    Word w = random_f(0, 30, rng);
    if (i % 2 == 1) {
      Word half = random_f(0, 15, rng);
      w = half * half.inverse();
    }
    words.push_back(std::move(w));
  }
  int mismatches = 0, identities = 0;
  const auto t0 = Clock::now();
  for (const Word& w : words) {
    const bool engine = is_identity(reduce(word_to_diagram(w)));
    const bool oracle_says = oracle::word_to_map(w).is_identity();
    identities += oracle_says;
    if (engine != oracle_says) ++mismatches;
  }
  const double secs = since(t0);
  g_annular_words.insert(g_annular_words.end(), words.begin(), words.end());
  char buf[160];
  std::snprintf(buf, sizeof buf, "1000 words (%d trivial), %d mismatches, %.2fs (limit %.0fs)", identities, mismatches,
                secs, kC2Seconds);
  return {mismatches == 0 && secs < kC2Seconds, buf};
}

Outcome criterion3() {
  auto rng = rng_for(3);
  struct Run {
    Group group;
    int pairs;
    std::function<bool(const Word&, const Word&)> test;
  };
  const Run runs[] = {{Group::F, 500, is_conjugate_f}, {Group::T, 300, is_conjugate_t}, {Group::V, 300, is_conjugate_v}};
  std::string detail;
  bool ok = true;
  for (const Run& r : runs) {
    int misses = 0;
    for (int i = 0; i < r.pairs; ++i) {
      const Word w = random_word(r.group, testing::random_length(0, 20, rng), rng);
      const Word g = random_word(r.group, testing::random_length(0, 10, rng), rng);
      const Word w2 = conjugate(w, g);
      if (!r.test(w, w2)) ++misses;
      if (r.group == Group::F) {
        g_annular_words.push_back(w);
        g_annular_words.push_back(w2);
      }
    }
    ok = ok && misses == 0;
    detail += std::string(detail.empty() ? "" : ", ") + std::string(to_string(r.group)) + " " +
              std::to_string(misses) + "/" + std::to_string(r.pairs) + " missed";
  }
  return {ok, detail};
}

Outcome criterion4() {
  const auto t0 = Clock::now();
  const auto letters = alphabet(Group::F);
  std::vector<Word> words{Word{Group::F, {}}};
  for (std::size_t begin = 0, len = 1; len <= 6; ++len) {
    const std::size_t end = words.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const Generator& g : letters) {
        Word w = words[i];
        w.letters.push_back(g);
        words.push_back(std::move(w));
      }
    }
    begin = end;
  }
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> classes;
  std::vector<const std::vector<std::int64_t>*> class_of(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto it = classes.try_emplace(canonical_annular(reduced_annular(words[i])).tokens).first;
    it->second.push_back(i);
  }
  for (auto& [key, members] : classes) {
    for (std::size_t i : members) class_of[i] = &key;
  }
  g_annular_words.insert(g_annular_words.end(), words.begin(), words.end());

  auto rng = rng_for(4);
  std::vector<std::size_t> in_big_class;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (classes.at(*class_of[i]).size() >= 2) in_big_class.push_back(i);
  }
  auto pick = [&](const std::vector<std::size_t>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };

  int within_fail = 0, across_fail = 0;
  std::string first_violation;
  for (int s = 0; s < 50; ++s) {
    const std::size_t a = pick(in_big_class);
    const auto& members = classes.at(*class_of[a]);
    std::size_t b = a;
    while (b == a) b = pick(members);
    if (!oracle::brute_conj_witness(words[a], words[b], 12)) {
      ++within_fail;
      if (first_violation.empty()) first_violation = "; no witness for " + to_string(words[a]) + " ~ " + to_string(words[b]);
    }
  }
  std::vector<std::size_t> all(words.size());
  std::iota(all.begin(), all.end(), 0);
  for (int s = 0; s < 50; ++s) {
    std::size_t a = pick(all), b = pick(all);
    while (class_of[a] == class_of[b]) b = pick(all);
    if (auto g = oracle::brute_conj_witness(words[a], words[b], 8)) {
      ++across_fail;
      if (first_violation.empty()) {
        first_violation = "; witness " + to_string(*g) + " for " + to_string(words[a]) + " ~ " + to_string(words[b]);
      }
    }
  }
  const double secs = since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu words in %zu classes, within %d/50 and across %d/50 violations, %.1fs (limit %.0fs)",
                words.size(), classes.size(), within_fail, across_fail, secs, kC4Seconds);
  return {within_fail == 0 && across_fail == 0 && secs < kC4Seconds, buf + first_violation};
}

Outcome criterion5() {
  std::size_t bad = 0;
  std::string first;
  for (const Word& w : g_annular_words) {
    if (auto err = check_cycle_structure(reduced_annular(w))) {
      if (bad++ == 0) first = "; first: " + to_string(w) + ": " + err->what();
    }
  }
  return {bad == 0 && !g_annular_words.empty(),
          std::to_string(g_annular_words.size()) + " diagrams, " + std::to_string(bad) + " violations" + first};
}

Outcome criterion6() {
  int bad = 0, checked = 0;
  std::string first;
  const CanonicalForm identity = canonical_toral(reduced_toral(Word{Group::T, {}}));
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k < n; ++k) {
      const RotationNumber got = rotation_number(torsion_witness(n, k));
      const int g = std::gcd(n, k);
      ++checked;
      if (!(got == RotationNumber{k / g, n / g})) {
        if (bad++ == 0) first = "; (" + std::to_string(n) + "," + std::to_string(k) + ") gave " + got.str();
      }
    }
    ++checked;
    if (canonical_toral(reduced_toral(torsion_witness(n, n))) != identity) {
      if (bad++ == 0) first = "; witness(" + std::to_string(n) + "," + std::to_string(n) + ") is not the identity";
    }
  }
  return {bad == 0, std::to_string(checked) + " cases, " + std::to_string(bad) + " wrong" + first};
}

Outcome criterion7() {
  auto rng = rng_for(7);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    const Word w = random_word(Group::T, testing::random_length(0, 20, rng), rng);
    if (canonical_toral(reduced_toral(w, 0, 0)).hex() != canonical_toral(reduced_toral(w, 0, 1)).hex()) ++bad;
  }
  return {bad == 0, "100 words, " + std::to_string(bad) + " differ after the seam twist"};
}

// Every connected closed split/merge graph with s splits and s merges
// (3s edges, so s <= 2 for at most 8 edges): all bijections from the 3s
// output ports to the 3s input ports. Each graph is paired with every
// difference cochain in {-1,0,1}^E.
Outcome criterion8() {
  std::size_t graphs = 0, cochains = 0, mismatches = 0;
  for (int s = 1; s <= 2; ++s) {
    const int nv = 2 * s;
    struct Port {
      int vertex, port;
    };
    std::vector<Port> outs, ins;
    for (int v = 0; v < nv; ++v) {
      const bool split = v < s;
      for (int p = 0; p < (split ? 2 : 1); ++p) outs.push_back({v, p});
      for (int p = 0; p < (split ? 1 : 2); ++p) ins.push_back({v, p});
    }
    std::vector<int> perm(ins.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      IncidenceGraph g{nv, {}};
      for (std::size_t i = 0; i < outs.size(); ++i) g.edges.emplace_back(outs[i].vertex, ins[perm[i]].vertex);
      std::vector<int> root(nv);
      std::iota(root.begin(), root.end(), 0);
      std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
      for (const auto& [a, b] : g.edges) root[find(a)] = find(b);
      bool connected = true;
      for (int v = 0; v < nv; ++v) connected = connected && find(v) == find(0);
      if (!connected) continue;
      ++graphs;
      const std::size_t m = g.edges.size();
      std::vector<std::int64_t> d(m, -1), zero(m, 0);
      while (true) {
        ++cochains;
        const bool fast = cohomology_equivalent(g, d, zero);
        const bool brute = testing::brute_cohomologous(nv, g.edges, d, zero, nv - 1);
        mismatches += fast != brute;
        std::size_t i = 0;
        while (i < m && d[i] == 1) d[i++] = -1;
        if (i == m) break;
        ++d[i];
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return {mismatches == 0 && graphs > 0, std::to_string(graphs) + " wirings, " + std::to_string(cochains) +
                                             " cochains, " + std::to_string(mismatches) + " mismatches"};
}

// Best of three runs for N below 10^6, one run at 10^6.
Outcome criterion9() {
  const std::size_t ns[] = {1000, 10000, 100000, 1000000};
  std::vector<double> t;
  std::string detail;
  for (std::size_t n : ns) {
    double best = 1e300;
    const int reps = n < 1000000 ? 3 : 1;
    for (int r = 0; r < reps; ++r) best = std::min(best, cli::bench_reduce_once(n, kSeed).seconds);
    t.push_back(best);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%sN=%zu %.4fs", detail.empty() ? "" : ", ", n, best);
    detail += buf;
  }
  bool ok = t.back() < kC9MaxSeconds;
  double worst = 0;
  for (std::size_t i = 1; i < t.size(); ++i) worst = std::max(worst, t[i] / std::max(t[i - 1], 1e-9));
  ok = ok && worst <= kC9Ratio;
  char buf[96];
  std::snprintf(buf, sizeof buf, "; worst step ratio %.2f (limit %.0f), limit %.0fs at 10^6", worst, kC9Ratio,
                kC9MaxSeconds);
  return {ok, detail + buf};
}

// Even pairs are conjugates (w, g^-1 w g); odd pairs are independent words.
// Any disagreement is reported with a T conjugator from the oracle when one
// of length <= 8 exists.
Outcome criterion10() {
  auto rng = rng_for(10);
  int mismatches = 0, agree_true = 0;
  std::string notes;
  for (int i = 0; i < 300; ++i) {
    Word a = random_f(1, 20, rng), b;
    if (i % 2 == 0) {
      b = conjugate(a, random_f(0, 10, rng));
    } else {
      b = random_f(1, 20, rng);
    }
    const bool f = is_conjugate_f(a, b);
    Word at = a, bt = b, av = a, bv = b;
    at.group = bt.group = Group::T;
    av.group = bv.group = Group::V;
    const bool t = is_conjugate_t(at, bt);
    const bool v = is_conjugate_v(av, bv);
    if (f == t && t == v) {
      agree_true += f;
      continue;
    }
    ++mismatches;
    std::string note = "; pair " + std::to_string(i) + " F=" + (f ? "1" : "0") + " T=" + (t ? "1" : "0") +
                       " V=" + (v ? "1" : "0");
    if (auto g = oracle::brute_conj_witness(at, bt, 8)) note += " (T witness " + to_string(*g) + ")";
    notes += note;
  }
  return {mismatches == 0, "300 pairs, " + std::to_string(agree_true) + " agreed conjugate, " +
                               std::to_string(mismatches) + " disagreements" + notes};
}

}  // namespace

int main() {
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                               criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (int i = 0; i < 10; ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %d: %s - %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
