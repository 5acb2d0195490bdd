#include <doctest.h>

#include <map>
#include <random>

#include "folcalc/foliation.hpp"
#include "support.hpp"

using namespace folcalc;
using testing::fixture;
using testing::has_violation;

namespace {

FoliationMovie relabel(const FoliationMovie& m, const std::string& tag) {
  std::map<std::string, std::string> ids;
  auto to = [&](const std::string& id) {
    auto it = ids.find(id);
    if (it != ids.end()) return it->second;
    return ids[id] = tag + std::to_string(ids.size() * 7 % 11) + "_" + id;
  };
  FoliationMovie out;
  out.genus = m.genus;
  for (auto e : m.elliptic) {
    e.id = to(e.id);
    out.elliptic.push_back(e);
  }
  for (auto a : m.arcs) {
    a.id = to(a.id);
    a.pos = to(a.pos);
    a.neg = to(a.neg);
    out.arcs.push_back(a);
  }
  for (const auto& [id, ends] : m.rotation) {
    auto& r = out.rotation[to(id)];
    for (const auto& end : ends) r.push_back(to(end));
  }
  for (auto e : m.events) {
    e.arc_a = to(e.arc_a);
    e.arc_b = to(e.arc_b);
    e.rank *= 10;
    out.events.push_back(e);
  }
  return out;
}

FoliationMovie two_arc_base() {
  FoliationMovie m;
  m.elliptic = {{"p1", Sign::Plus}, {"p2", Sign::Plus}, {"n1", Sign::Minus}, {"n2", Sign::Minus}};
  m.arcs = {{"a1", "p1", "n1"}, {"a2", "p2", "n2"}};
  m.rotation = {{"p1", {"a1"}}, {"n1", {"a1"}}, {"p2", {"a2"}}, {"n2", {"a2"}}};
  return m;
}

}  // namespace

TEST_SUITE("foliation") {
  TEST_CASE("trivial movie is valid with one source and one sink") {
    auto m = trivial_movie();
    CHECK(validate(m).ok);
    CHECK(m.k() == 1);
    CHECK(singularity_counts(m) == SingularityCounts{1, 1, 0, 0});
    CHECK(singularity_counts(m).euler() == 2);
    CHECK(fixture("trivial.fol") == m);
  }

  TEST_CASE("numeric-aware id order") {
    CHECK(id_less("p2", "p10"));
    CHECK_FALSE(id_less("p10", "p2"));
    CHECK(id_less("a9", "b1"));
    CHECK(id_less("n1", "p1"));
    CHECK_FALSE(id_less("p1", "p1"));
  }

  TEST_CASE("fixture validation verdicts") {
    CHECK(validate(fixture("k2_tree.fol")).ok);
    CHECK(validate(fixture("k2_parallel.fol")).ok);
    CHECK(validate(fixture("k3_cycle.fol")).ok);
    CHECK(validate(fixture("k3_open_case.fol")).ok);
    CHECK(has_violation(validate(fixture("genus1.fol")), "unsupported genus"));
    CHECK(has_violation(validate(fixture("bad_rank.fol")), "duplicate π-rank"));
    CHECK(has_violation(validate(fixture("open_closure.fol")), "cyclic closure"));
    CHECK(has_violation(validate(fixture("right_corridor.fol")), "corridor"));
    auto torus = validate(fixture("torus.fol"));
    CHECK(has_violation(torus, "poincare-hopf"));
    CHECK(has_violation(torus, "genus"));
  }

  TEST_CASE("structural violations") {
    auto m = two_arc_base();
    m.events = {{1, Sign::Plus, "a1", "a2"}, {2, Sign::Minus, "a1", "a2"}};
    REQUIRE(validate(m).ok);

    SUBCASE("dangling arc reference") {
      m.events[1].arc_b = "a7";
      CHECK(has_violation(validate(m), "dangling reference"));
    }
    SUBCASE("dangling endpoint") {
      m.arcs[1].neg = "n9";
      CHECK(has_violation(validate(m), "dangling reference"));
    }
    SUBCASE("arc endpoint sign") {
      m.arcs[0] = {"a1", "n1", "p1"};
      CHECK(has_violation(validate(m), "arc endpoint sign"));
    }
    SUBCASE("point on two arcs") {
      m.arcs[1].neg = "n1";
      CHECK(has_violation(validate(m), "perfect matching"));
    }
    SUBCASE("unbalanced elliptic signs") {
      m.elliptic.push_back({"p3", Sign::Plus});
      CHECK(has_violation(validate(m), "e+ = e-"));
    }
    SUBCASE("rotation listing the wrong arc") {
      m.rotation["p1"] = {"a2"};
      CHECK(has_violation(validate(m), "rotation"));
    }
    SUBCASE("missing rotation") {
      m.rotation.erase("n2");
      CHECK(has_violation(validate(m), "rotation"));
    }
    SUBCASE("self saddle") {
      m.events[0].arc_b = "a1";
      CHECK(has_violation(validate(m), "self-saddle"));
    }
    SUBCASE("resolution out of range") {
      m.events[0].resolution = 3;
      CHECK(has_violation(validate(m), "resolution"));
    }
    SUBCASE("duplicate ids") {
      m.elliptic.push_back({"p1", Sign::Plus});
      m.arcs.push_back({"a1", "p1", "n1"});
      auto r = validate(m);
      CHECK(has_violation(r, "duplicate elliptic id"));
      CHECK(has_violation(r, "duplicate arc id"));
    }
    SUBCASE("two arcs that never meet") {
      m.events.clear();
      CHECK(has_violation(validate(m), "disconnected"));
    }
  }

  TEST_CASE("require_valid throws with the report") {
    auto m = fixture("genus1.fol");
    try {
      require_valid(m);
      FAIL("no exception");
    } catch (const InvalidMovie& e) {
      CHECK(has_violation(e.report, "unsupported genus"));
    }
    CHECK_NOTHROW(require_valid(trivial_movie()));
  }

  TEST_CASE("saddle resolutions and involution") {
    Slice s = two_arc_base().initial_slice();
    SaddleEvent e{1, Sign::Plus, "a1", "a2"};
    e.resolution = 1;
    Slice r1 = apply_event(s, e);
    CHECK(*r1.find("a1") == Arc{"a1", "p1", "n2"});
    CHECK(*r1.find("a2") == Arc{"a2", "p2", "n1"});
    e.resolution = 2;
    Slice r2 = apply_event(s, e);
    CHECK(*r2.find("a1") == Arc{"a1", "p2", "n1"});
    CHECK(*r2.find("a2") == Arc{"a2", "p1", "n2"});
    CHECK(apply_event(r2, e) == s);
    e.resolution = 1;
    CHECK(apply_event(r1, e) == s);
    CHECK(r1.arc_at("n2")->id == "a1");
    CHECK(r1.arc_at("p9") == nullptr);
    SaddleEvent bad{1, Sign::Plus, "a1", "zz"};
    CHECK_THROWS_AS(apply_event(s, bad), std::invalid_argument);
  }

  TEST_CASE("slice_at and replay") {
    auto m = fixture("k3_tree.fol");
    const int h = static_cast<int>(m.events.size());
    auto pages = replay(m);
    REQUIRE(pages.size() == static_cast<std::size_t>(h + 1));
    CHECK(pages.front() == m.initial_slice());
    CHECK(pages.back() == m.initial_slice());
    CHECK(slice_at(m, 0) == m.initial_slice());
    CHECK(slice_at(m, h) == m.initial_slice());
    for (int r = 1; r < h; ++r) {
      CHECK(slice_at(m, r) == pages[r]);
      CHECK(slice_at(m, r + h) == pages[r]);
    }
    CHECK(slice_at(m, 1) == apply_event(m.initial_slice(), m.events[0]));
    CHECK_THROWS_AS(slice_at(m, -1), std::out_of_range);
  }

  TEST_CASE("normalization sorts ids and renumbers ranks") {
    auto m = relabel(fixture("k3_tree.fol"), "x");
    auto n = normalized(m);
    for (std::size_t i = 0; i < n.events.size(); ++i) CHECK(n.events[i].rank == static_cast<int>(i) + 1);
    for (std::size_t i = 1; i < n.elliptic.size(); ++i) CHECK(id_less(n.elliptic[i - 1].id, n.elliptic[i].id));
    CHECK(validate(n).ok);
    CHECK(normalized(n) == n);
  }

  TEST_CASE("canonical form is invariant under relabeling and base rotation") {
    for (int k = 1; k <= 3; ++k) {
      for (const auto& line : testing::census_lines(k)) {
        auto m = parse_fol(line);
        auto code = canonical_code(m);
        CHECK(canonical_code(relabel(m, "q")) == code);
        for (int s = 0; s < static_cast<int>(m.events.size()); ++s) {
          auto rot = rotate_base(m, s);
          REQUIRE(validate(rot).ok);
          CHECK(canonical_code(rot) == code);
        }
        CHECK(movie_from_code(code) == canonical_movie(m));
        CHECK(is_isomorphic(canonical_movie(m), m));
      }
    }
  }

  TEST_CASE("census classes are pairwise non-isomorphic") {
    std::vector<FoliationMovie> all;
    for (int k = 1; k <= 3; ++k) {
      for (const auto& line : testing::census_lines(k)) all.push_back(parse_fol(line));
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) CHECK(is_isomorphic(all[i], all[j]) == (i == j));
    }
  }

  TEST_CASE("event support") {
    auto m = fixture("k2_tree.fol");
    auto s = event_support(m.initial_slice(), m.events[0]);
    CHECK(s == std::set<std::string>{"n1", "n2", "p1", "p2"});
  }

  TEST_CASE("random movies") {
    for (int k = 1; k <= 6; ++k) {
      for (int extra = 0; extra < k; ++extra) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
          auto m = random_movie(k, extra, seed * 31 + k);
          CAPTURE(k);
          CAPTURE(extra);
          CHECK(validate(m).ok);
          CHECK(singularity_counts(m) == SingularityCounts{k, k, k - 1 + extra, k - 1 - extra});
          CHECK(singularity_counts(m).euler() == 2);
        }
      }
    }
    CHECK(random_movie(4, 1, 99) == random_movie(4, 1, 99));
    CHECK_THROWS_AS(random_movie(0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_movie(3, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_movie(3, -1, 1), std::invalid_argument);
  }
}
