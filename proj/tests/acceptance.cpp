// Acceptance runner: one PASS/FAIL line per criterion.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "folcalc/io.hpp"
#include "folcalc/moves.hpp"
#include "folcalc/openbook_norm.hpp"
#include "folcalc/realization.hpp"
#include "folcalc/tightness.hpp"
#include "move_space.hpp"

using namespace folcalc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<FoliationMovie> random_corpus() {
  std::vector<FoliationMovie> out;
  std::mt19937_64 rng(1000);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    int k = 1 + static_cast<int>(rng() % 8);
    int extra = static_cast<int>(rng() % k);
    out.push_back(random_movie(k, extra, rng()));
  }
  return out;
}

std::vector<FoliationMovie> corpus() {
  auto all = enumerate_movies(3);
  auto r = random_corpus();
  all.insert(all.end(), r.begin(), r.end());
  return all;
}

Outcome poincare_hopf() {
  auto t0 = std::chrono::steady_clock::now();
  auto census = enumerate_movies(3);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int bad = 0, n = 0;
  for (const auto& m : census) {
    ++n;
    bad += singularity_counts(m).euler() == 2 && validate(m).ok ? 0 : 1;
  }
  for (const auto& m : random_corpus()) {
    ++n;
    bad += singularity_counts(m).euler() == 2 && validate(m).ok ? 0 : 1;
  }
  std::ostringstream os;
  os << n << " movies, " << bad << " violations, enumeration " << secs << " s";
  return {bad == 0 && secs < 60.0, os.str()};
}

Outcome tree_dividing() {
  int bad = 0, n = 0, trees = 0;
  for (const auto& m : corpus()) {
    ++n;
    auto g = build_gpp(m);
    auto c = boundary_circles(g);
    bool tree = is_tree(g);
    trees += tree ? 1 : 0;
    if (c.closed_form != c.face_trace || tree != (c.face_trace == 1) || tree != (dividing_circle_count(m) == 1)) ++bad;
  }
  std::ostringstream os;
  os << n << " movies (" << trees << " trees), " << bad << " mismatches";
  return {bad == 0, os.str()};
}

Outcome bookkeeping() {
  int bad = 0, trees = 0;
  for (const auto& m : corpus()) {
    if (!is_tree(build_gpp(m))) continue;
    ++trees;
    auto c = singularity_counts(m);
    if (c.h_plus != c.e_plus - 1 || c.h_minus != c.e_plus - 1) ++bad;
  }
  std::ostringstream os;
  os << trees << " tree movies, " << bad << " violations";
  return {bad == 0, os.str()};
}

Outcome realization() {
  int trees = 0, realized = 0, obstructed = 0, nontree = 0, too_long = 0, open = 0;
  std::string first_open;
  for (const auto& m : enumerate_movies(3)) {
    auto r = realize(m);
    if (!is_tree(build_gpp(m))) {
      ++nontree;
      obstructed += !r.realized() && !r.obstruction.empty() ? 1 : 0;
      continue;
    }
    ++trees;
    if (!r.realized()) {
      ++open;
      if (first_open.empty()) first_open = serialize_fol_line(m);
      continue;
    }
    int k = m.k(), h = static_cast<int>(m.events.size());
    if (static_cast<int>(r.script->steps.size()) > 4 * (k + h) * (k + h)) ++too_long;
    realized += verify_realization(m, *r.script).ok ? 1 : 0;
  }
  std::ostringstream os;
  os << "k<=3: " << realized << "/" << trees << " tree movies realized and verified, " << obstructed << "/" << nontree
     << " non-tree obstructed, " << too_long << " over length bound";
  if (open) os << ", " << open << " open case(s), first: " << first_open;
  return {realized == trees && obstructed == nontree && too_long == 0, os.str()};
}

SingularityCounts plus(SingularityCounts a, const SingularityCounts& b) {
  return {a.e_plus + b.e_plus, a.e_minus + b.e_minus, a.h_plus + b.h_plus, a.h_minus + b.h_minus};
}

Outcome move_algebra() {
  std::mt19937_64 rng(5);
  int done = 0, invalid = 0, delta = 0, roundtrip = 0;
  std::map<std::string, int> kinds;
  for (std::uint64_t seed = 0; done < 1000; ++seed) {
    int k = 1 + static_cast<int>(seed % 6);
    auto m = random_movie(k, static_cast<int>(seed / 6 % k), seed);
    auto pick = testing::random_applicable(m, rng);
    if (!pick) continue;
    const Move& mv = *pick;
    ++done;
    ++kinds[move_kind(mv)];
    auto out = folcalc::apply(mv, m);
    if (!validate(out).ok) {
      ++invalid;
      continue;
    }
    if (singularity_counts(out) != plus(singularity_counts(m), count_delta(mv))) ++delta;
    if (folcalc::apply(inverse(mv), out) != normalized(m)) ++roundtrip;
  }
  std::ostringstream os;
  os << done << " moves (";
  bool first = true;
  for (const auto& [k, n] : kinds) {
    os << (first ? "" : " ") << k << "=" << n;
    first = false;
  }
  os << "), invalid=" << invalid << " delta=" << delta << " roundtrip=" << roundtrip;
  return {invalid == 0 && delta == 0 && roundtrip == 0, os.str()};
}

Outcome norm_identities() {
  int bad = 0;
  bad += euler_char(Page(0, 1)) == 1 ? 0 : 1;
  bad += norm(Page(0, 1)) == -1 ? 0 : 1;
  for (int g1 = 0; g1 < 5; ++g1) {
    for (int b1 = 1; b1 < 5; ++b1) {
      for (int g2 = 0; g2 < 5; ++g2) {
        for (int b2 = 1; b2 < 5; ++b2) {
          Page p1(g1, b1), p2(g2, b2);
          bad += norm(boundary_connect_sum(p1, p2)) == norm(p1) + norm(p2) + 1 ? 0 : 1;
        }
      }
    }
  }
  for (int sn = -1; sn < 30; ++sn) bad += heegaard_genus_from_norm(sn) == sn - 1 ? 0 : 1;
  int ledgers = 0;
  for (int chi = 1; chi >= -30; --chi) {
    auto l = surgery_ledger(chi);
    ++ledgers;
    if (!l.all_hold()) ++bad;
    for (std::size_t i = 2; i + 1 < l.entries.size(); i += 2) {
      if (l.entries[i].norm + l.entries[i + 1].norm != -chi - 1) ++bad;
    }
  }
  std::ostringstream os;
  os << "disc, 400 boundary sums, 31 Hg values, " << ledgers << " ledgers; " << bad << " failures";
  return {bad == 0, os.str()};
}

std::string enumeration_bytes() {
  std::string out;
  for (int k = 1; k <= 3; ++k) {
    std::vector<FoliationMovie> level;
    for (const auto& m : enumerate_movies(3)) {
      if (m.k() == k) level.push_back(m);
    }
    out += census_text(k, level);
  }
  return out;
}

std::string realize_bytes() {
  std::string out;
  for (const auto& m : enumerate_movies(3)) {
    auto r = realize(m);
    if (r.realized()) out += serialize_mov(*r.script);
    out += "--\n";
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto r = realize(random_movie(1 + static_cast<int>(seed % 6), 0, seed));
    if (r.realized()) out += serialize_mov(*r.script);
    out += "--\n";
  }
  return out;
}

Outcome determinism() {
  bool e = enumeration_bytes() == enumeration_bytes();
  bool r = realize_bytes() == realize_bytes();
  std::ostringstream os;
  os << "enumerate " << (e ? "identical" : "differs") << ", realize scripts " << (r ? "identical" : "differs");
  return {e && r, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> which;
  app.add_option("--criterion", which, "criteria to run (default all)")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7};

  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"poincare-hopf", poincare_hopf}, {"tree-dividing-set", tree_dividing}, {"tree-bookkeeping", bookkeeping},
      {"realization", realization},     {"move-algebra", move_algebra},       {"norm-arithmetic", norm_identities},
      {"determinism", determinism}};
  bool all = true;
  for (int n : which) {
    const auto& [name, run] = criteria[n - 1];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << n << " " << name << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")"
              << std::endl;
  }
  return all ? 0 : 1;
}
