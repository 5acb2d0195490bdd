#include <random>

#include "folcalc/foliation.hpp"
#include "folcalc/moves.hpp"

namespace folcalc {

FoliationMovie trivial_movie() {
  FoliationMovie m;
  m.elliptic = {{"p1", Sign::Plus}, {"n1", Sign::Minus}};
  m.arcs = {{"a1", "p1", "n1"}};
  return normalized(m);
}

namespace {

FoliationMovie attempt(int k, int h_extra, std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  FoliationMovie m = trivial_movie();
  for (int i = 1; i < k; ++i) {
    std::vector<std::string> sinks;
    for (const auto& e : m.elliptic) {
      if (e.sign == Sign::Minus) sinks.push_back(e.id);
    }
    const int h = static_cast<int>(m.events.size());
    FingerData d;
    d.target = sinks[pick(0, static_cast<int>(sinks.size()) - 1)];
    d.new_positive = fresh_id(m, "p");
    d.new_negative = fresh_id(m, "n");
    d.new_arc = fresh_id(m, "a");
    d.pos_rank = pick(1, h + 2);
    do {
      d.neg_rank = pick(1, h + 2);
    } while (d.neg_rank == d.pos_rank);
    d.keep_a = pick(0, 1) == 0;
    d.identification = pick(0, 1) == 0 ? Identification::Straight : Identification::Crossed;
    if (!applicable(FingerMove{d}, m)) d.identification = Identification::Straight;
    m = folcalc::apply(FingerMove{d}, m);
  }

  const int h = static_cast<int>(m.events.size());
  for (int step = 0; step < 3 * h; ++step) {
    int rank = pick(1, h);
    Move mv;
    if (pick(0, 1) == 0) {
      mv = SwapPi{rank};
    } else {
      ChangeInFoliation c;
      c.rank = rank;
      c.variant = pick(0, 1) == 0 ? ChangeVariant::Second : ChangeVariant::Third;
      c.resolution = pick(1, 2);
      c.prior_resolution = m.events[rank - 1].resolution;
      mv = c;
    }
    if (applicable(mv, m)) m = folcalc::apply(mv, m);
  }

  std::vector<int> negatives;
  for (int j = 0; j < h; ++j) {
    if (m.events[j].sign == Sign::Minus) negatives.push_back(j);
  }
  std::shuffle(negatives.begin(), negatives.end(), rng);
  for (int i = 0; i < h_extra; ++i) m.events[negatives[i]].sign = Sign::Plus;
  return m;
}

}  // namespace

FoliationMovie random_movie(int k, int h_extra, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("random_movie: k must be at least 1");
  if (h_extra < 0 || h_extra > k - 1) {
    throw std::invalid_argument("random_movie: h_extra must lie in 0..k-1");
  }
  std::mt19937_64 rng(seed);
  for (int tries = 0; tries < 16; ++tries) {
    FoliationMovie m = attempt(k, h_extra, rng);
    if (validate(m).ok) return m;
  }
  throw std::runtime_error("random_movie: no valid movie after 16 attempts");
}

}  // namespace folcalc
