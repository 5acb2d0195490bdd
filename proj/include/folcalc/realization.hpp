#pragma once

// Constructive realisation of foliations with tree G++ in the standard open
// book of S^3, and the brute-force census of small movies.
//
// realize() peels degree-one sources off G++: the star of such a source has
// one positive saddle and n-1 negative ones. While n > 2 two star saddles of
// the same sign that are consecutive around the source are made adjacent in
// page order with SwapPi moves and merged by a change in foliation; at n = 2
// the star is collapsed into a single sink. The recorded moves, inverted and
// reversed, rebuild the input from the trivial movie.

#include <optional>
#include <string>
#include <vector>

#include "folcalc/foliation.hpp"
#include "folcalc/moves.hpp"

namespace folcalc {

FoliationMovie base_movie();

struct RealizationResult {
  std::optional<MoveScript> script;
  std::string obstruction;  // set when G++ is not a tree
  // Tree G++ but the star reduction stalls: two consecutive star saddles
  // cannot be made adjacent in page order. Reported, never forced.
  std::string open_case;
  bool realized() const { return script.has_value(); }
};

RealizationResult realize(const FoliationMovie& movie);

struct VerifyResult {
  bool ok = false;
  int failed_step = -1;
  std::string detail;
  explicit operator bool() const { return ok; }
};

VerifyResult verify_realization(const FoliationMovie& movie, const MoveScript& script);

inline constexpr int kEnumerationGuard = 4;

/// Every valid movie with at most k_max sources, one per isomorphism class,
/// ordered by (k, canonical code). Throws std::invalid_argument when k_max
/// exceeds `guard` or is below 1.
std::vector<FoliationMovie> enumerate_movies(int k_max, int guard = kEnumerationGuard);

}  // namespace folcalc
