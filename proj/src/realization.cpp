#include "folcalc/realization.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "folcalc/tightness.hpp"

namespace folcalc {

FoliationMovie base_movie() { return trivial_movie(); }

namespace {

using IdMap = std::map<std::string, std::string>;

std::string mapped(const IdMap& m, const std::string& id) {
  auto it = m.find(id);
  return it == m.end() ? id : it->second;
}

Move rename_ids(Move mv, const IdMap& ids) {
  auto fix = [&](FingerData& d) {
    d.target = mapped(ids, d.target);
    d.new_positive = mapped(ids, d.new_positive);
    d.new_negative = mapped(ids, d.new_negative);
    d.new_arc = mapped(ids, d.new_arc);
  };
  if (auto* f = std::get_if<FingerMove>(&mv)) fix(f->data);
  if (auto* f = std::get_if<InverseFingerMove>(&mv)) fix(f->data);
  return mv;
}

struct Stuck : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Reducer {
 public:
  explicit Reducer(FoliationMovie m) : work_(normalized(std::move(m))) {}

  void run() {
    while (work_.k() > 1) {
      auto g = build_gpp(work_);
      auto counts = singularity_counts(work_);
      if (!is_tree(g) || counts.h_plus != counts.e_plus - 1 || counts.h_minus != counts.e_plus - 1) {
        throw std::logic_error("realize: tree bookkeeping h+ = h- = k-1 broken during reduction");
      }
      std::vector<std::string> leaves;
      for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (g.rotation[v].size() == 1) leaves.push_back(g.vertices[v]);
      }
      std::sort(leaves.begin(), leaves.end(), IdLess{});
      bool progressed = false;
      for (const auto& p : leaves) {
        if (reduce_star(p)) {
          progressed = true;
          break;
        }
      }
      if (!progressed) {
        std::string where;
        for (const auto& p : leaves) where += (where.empty() ? "" : ", ") + p;
        throw Stuck("no degree-one star of G++ can be reduced (leaves " + where +
                    "): every pair of consecutive negative star saddles is separated by a saddle that depends on "
                    "the first and feeds the second, or shares both arcs with its partner");
      }
    }
  }

  const FoliationMovie& work() const { return work_; }
  const std::vector<Move>& moves() const { return moves_; }

 private:
  void step(const Move& mv) {
    work_ = folcalc::apply(mv, work_);
    moves_.push_back(mv);
    if (!is_tree(build_gpp(work_))) throw std::logic_error("realize: G++ stopped being a tree");
  }

  std::vector<int> star_of(const FoliationMovie& m, const std::string& p) const {
    auto pages = replay(m);
    std::vector<int> star;
    for (std::size_t j = 0; j < m.events.size(); ++j) {
      if (event_support(pages[j], m.events[j]).count(p)) star.push_back(static_cast<int>(j) + 1);
    }
    return star;
  }

  bool reduce_star(const std::string& p) {
    auto star = star_of(work_, p);
    const int n = static_cast<int>(star.size());
    int plus = 0;
    for (int r : star) plus += work_.events[r - 1].sign == Sign::Plus ? 1 : 0;
    if (plus != 1) {
      throw std::logic_error("realize: star of degree-one vertex '" + p + "' has " + std::to_string(plus) +
                             " positive hyperbolic points");
    }
    if (n == 2) {
      auto data = star_collapse_data(work_, p);
      if (!data) return false;
      Move mv = InverseFingerMove{*data};
      if (!applicable(mv, work_)) return false;
      step(mv);
      return true;
    }

    std::optional<std::vector<Move>> best;
    for (int i = 0; i < n; ++i) {
      int first = star[i], second = star[(i + 1) % n];
      if (work_.events[first - 1].sign != Sign::Minus || work_.events[second - 1].sign != Sign::Minus) continue;
      auto plan = merge_plan(first, second);
      if (plan && (!best || plan->size() < best->size())) best = std::move(plan);
    }
    if (!best) return false;
    for (const auto& mv : *best) step(mv);
    return true;
  }

  // SwapPi moves that make the saddles at positions `first` and `second`
  // adjacent, followed by the change in foliation that merges them.
  std::optional<std::vector<Move>> merge_plan(int first, int second) const {
    const int h = static_cast<int>(work_.events.size());
    auto pages = replay(work_);
    std::vector<std::set<std::string>> support(h + 1);
    for (int j = 1; j <= h; ++j) support[j] = event_support(pages[j - 1], work_.events[j - 1]);
    auto meets = [&](int x, int y) {
      return std::any_of(support[x].begin(), support[x].end(), [&](const std::string& s) { return support[y].count(s) > 0; });
    };

    std::vector<int> window;
    for (int j = first % h + 1; j != second; j = j % h + 1) window.push_back(j);
    std::set<int> after_first, feeds_second;
    for (int f : window) {
      bool dep = meets(f, first);
      for (int d : after_first) dep = dep || meets(f, d);
      if (dep) after_first.insert(f);
    }
    for (auto it = window.rbegin(); it != window.rend(); ++it) {
      bool dep = meets(*it, second);
      for (int d : feeds_second) dep = dep || meets(*it, d);
      if (dep) feeds_second.insert(*it);
    }
    for (int f : after_first) {
      if (feeds_second.count(f)) return std::nullopt;
    }

    // Cyclic arrangement: slot -> original position.
    std::vector<int> at(h + 1);
    std::iota(at.begin(), at.end(), 0);
    auto slot_of = [&](int ev) { return static_cast<int>(std::find(at.begin() + 1, at.end(), ev) - at.begin()); };
    std::vector<Move> plan;
    auto swap_at = [&](int r) {
      int s = r % h + 1;
      std::swap(at[r], at[s]);
      plan.push_back(SwapPi{r});
    };
    for (int f : window) {
      if (after_first.count(f)) continue;
      while (true) {
        int q = slot_of(f);
        int left = q == 1 ? h : q - 1;
        int passed = at[left];
        swap_at(left);
        if (passed == first) break;
      }
    }
    for (auto it = window.rbegin(); it != window.rend(); ++it) {
      if (!after_first.count(*it)) continue;
      while (true) {
        int q = slot_of(*it);
        int passed = at[q % h + 1];
        swap_at(q);
        if (passed == second) break;
      }
    }

    FoliationMovie trial = work_;
    for (const auto& mv : plan) {
      if (!applicable(mv, trial)) return std::nullopt;
      trial = folcalc::apply(mv, trial);
    }
    ChangeInFoliation change;
    change.rank = slot_of(first);
    change.variant = ChangeVariant::Second;
    change.prior_resolution = trial.events[change.rank - 1].resolution;
    for (int res : {1, 2}) {
      change.resolution = res;
      if (applicable(change, trial)) {
        plan.push_back(change);
        return plan;
      }
    }
    return std::nullopt;
  }

  FoliationMovie work_;
  std::vector<Move> moves_;
};

}  // namespace

RealizationResult realize(const FoliationMovie& input) {
  FoliationMovie movie = normalized(input);
  require_valid(movie);
  RealizationResult result;
  auto g = build_gpp(movie);
  if (!is_tree(g)) {
    result.obstruction = "G++ is not a tree: " + tree_obstruction(g);
    return result;
  }
  Reducer reducer(movie);
  try {
    reducer.run();
  } catch (const Stuck& e) {
    result.open_case = e.what();
    return result;
  }

  // Align the surviving ids with the base movie, then reverse the reduction.
  const FoliationMovie& last = reducer.work();
  const FoliationMovie base = base_movie();
  IdMap ids;
  auto pair_up = [&](const std::string& have, const std::string& want) {
    if (have == want) return;
    ids[have] = want;
    ids[want] = have;
  };
  pair_up(last.elliptic[0].sign == Sign::Plus ? last.elliptic[0].id : last.elliptic[1].id, "p1");
  pair_up(last.elliptic[0].sign == Sign::Minus ? last.elliptic[0].id : last.elliptic[1].id, "n1");
  pair_up(last.arcs[0].id, base.arcs[0].id);

  MoveScript script;
  script.base = base;
  const auto& moves = reducer.moves();
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) script.steps.push_back(rename_ids(inverse(*it), ids));

  auto check = verify_realization(movie, script);
  if (!check) throw std::logic_error("realize: script does not replay to the input: " + check.detail);
  result.script = std::move(script);
  return result;
}

VerifyResult verify_realization(const FoliationMovie& movie, const MoveScript& script) {
  VerifyResult r;
  try {
    auto replayed = apply_script(script);
    r.ok = is_isomorphic(replayed, movie);
    if (!r.ok) r.detail = "replayed movie is not isomorphic to the target";
  } catch (const MoveError& e) {
    r.failed_step = e.step;
    r.detail = e.what();
  }
  return r;
}

namespace {

// Integer census search: sources 0..k-1, partner[i] is the sink on the arc at
// source i, sinks named by their partner on the base page.
struct Census {
  int k = 0;
  int h = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> sign, pair_choice;
  std::set<std::vector<int>> codes;

  void search(int depth, std::vector<int>& partner) {
    if (depth == h) {
      for (int i = 0; i < k; ++i) {
        if (partner[i] != i) return;
      }
      if (connected()) codes.insert(canonical());
      return;
    }
    // Transpositions still needed to return to the base matching.
    int misplaced = 0;
    std::vector<char> seen(k, 0);
    for (int i = 0; i < k; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = partner[j]) {
        seen[j] = 1;
        ++len;
      }
      misplaced += len - 1;
    }
    if (misplaced > h - depth) return;
    for (int c = 0; c < static_cast<int>(pairs.size()); ++c) {
      auto [a, b] = pairs[c];
      std::swap(partner[a], partner[b]);
      pair_choice[depth] = c;
      for (int s : {0, 1}) {
        sign[depth] = s;
        search(depth + 1, partner);
      }
      std::swap(partner[a], partner[b]);
    }
  }

  bool connected() const {
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int d = 0; d < h; ++d) parent[find(pairs[pair_choice[d]].first)] = find(pairs[pair_choice[d]].second);
    for (int i = 1; i < k; ++i) {
      if (find(i) != find(0)) return false;
    }
    return true;
  }

  std::vector<int> canonical() const {
    // pre[d][i]: sink at source i right before saddle d.
    std::vector<std::vector<int>> pre(h, std::vector<int>(k));
    std::vector<int> partner(k);
    std::iota(partner.begin(), partner.end(), 0);
    for (int d = 0; d < h; ++d) {
      pre[d] = partner;
      auto [a, b] = pairs[pair_choice[d]];
      std::swap(partner[a], partner[b]);
    }
    std::vector<int> best, code, perm(k), sink_label(k);
    for (int s = 0; s < h; ++s) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        for (int i = 0; i < k; ++i) sink_label[pre[s][i]] = perm[i];
        code.assign({k, h});
        for (int t = 0; t < h; ++t) {
          int d = (s + t) % h;
          auto [a, b] = pairs[pair_choice[d]];
          int ca = perm[a] * k + sink_label[pre[d][a]];
          int cb = perm[b] * k + sink_label[pre[d][b]];
          code.push_back(sign[d]);
          code.push_back(std::min(ca, cb));
          code.push_back(std::max(ca, cb));
        }
        if (best.empty() || code < best) best = code;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return best;
  }
};

}  // namespace

std::vector<FoliationMovie> enumerate_movies(int k_max, int guard) {
  if (k_max < 1) throw std::invalid_argument("enumerate_movies: k_max must be at least 1");
  if (k_max > guard) {
    throw std::invalid_argument("enumerate_movies: k_max " + std::to_string(k_max) + " exceeds the complexity guard " +
                                std::to_string(guard));
  }
  std::vector<FoliationMovie> out;
  out.push_back(movie_from_code({1, 0}));
  for (int k = 2; k <= k_max; ++k) {
    Census c;
    c.k = k;
    c.h = 2 * k - 2;
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) c.pairs.push_back({a, b});
    }
    c.sign.assign(c.h, 0);
    c.pair_choice.assign(c.h, 0);
    std::vector<int> partner(k);
    std::iota(partner.begin(), partner.end(), 0);
    c.search(0, partner);
    for (const auto& code : c.codes) {
      FoliationMovie m = movie_from_code(code);
      auto report = validate(m);
      if (!report.ok) {
        throw std::logic_error("enumerate_movies: census produced an invalid movie: " +
                               report.violations.front().invariant);
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace folcalc
