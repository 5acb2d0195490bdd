#pragma once

// Reversible local rewrites of foliation movies.
//
// Ranks in moves are ordinal positions 1..h in the page order of the movie the
// move is applied to. Position h is followed cyclically by position 1; a move
// whose locus straddles that wrap moves the base page accordingly.
//
// SwapPi             exchange the critical values of two adjacent saddles with
//                    disjoint supports.
// ChangeInFoliation  two adjacent same-sign saddles that share exactly one arc
//                    act on three arcs P, Q, T as "P with Q, then P with T"
//                    (P is the pivot: the arc the second saddle takes from the
//                    first, named by its source). The net effect on the page
//                    is a 3-cycle of sinks, which has exactly three such
//                    factorisations:
//                        (pivot, other, third) = (P, Q, T)   current picture
//                        second picture        = (T, P, Q)
//                        third picture         = (Q, T, P)
//                    The move replaces the current factorisation by one of the
//                    other two; Second and Third are mutually inverse.
// FingerMove         split a sink m into a star: a new source p, a new sink
//                    and two saddles of opposite sign around p. After the
//                    positive saddle p pairs with sink "a", after the negative
//                    one with sink "b"; outside the star m's former partners
//                    use "b" while p holds "a" and vice versa.
// InverseFingerMove  collapse such an n = 2 star back into a single sink.

#include <string>
#include <variant>
#include <vector>

#include "folcalc/foliation.hpp"

namespace folcalc {

struct SwapPi {
  int rank = 1;  // exchanges positions rank and rank+1 (cyclically)
  bool operator==(const SwapPi&) const = default;
};

enum class ChangeVariant { Second, Third };

struct ChangeInFoliation {
  int rank = 1;  // first of the two saddles; the second is at rank+1 (cyclically)
  ChangeVariant variant = ChangeVariant::Second;
  int resolution = 1;        // resolution of the new first saddle
  int prior_resolution = 1;  // resolution of the current first saddle
  bool operator==(const ChangeInFoliation&) const = default;
};

/// Boundary identification of a finger move.
enum class Identification { Straight, Crossed };

struct FingerData {
  std::string target;        // sink that is split (and restored by the collapse)
  std::string new_positive;  // source at the centre of the star
  std::string new_negative;  // the second sink created by the split
  std::string new_arc;       // arc of the new source while it pairs with sink "a"
  int pos_rank = 1;          // position of the positive saddle in the new movie
  int neg_rank = 2;          // position of the negative saddle in the new movie
  bool keep_a = true;        // sink "a" keeps the target id (else sink "b" does)
  Identification identification = Identification::Straight;
  bool operator==(const FingerData&) const = default;
};

struct FingerMove {
  FingerData data;
  bool operator==(const FingerMove&) const = default;
};

struct InverseFingerMove {
  FingerData data;
  bool operator==(const InverseFingerMove&) const = default;
};

using Move = std::variant<SwapPi, ChangeInFoliation, FingerMove, InverseFingerMove>;

struct MoveScript {
  FoliationMovie base;
  std::vector<Move> steps;
};

struct Applicability {
  bool ok = false;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

class MoveError : public std::runtime_error {
 public:
  MoveError(std::string diagnostic, int step = -1);
  std::string diagnostic;
  int step;  // index into a script, -1 for a single move
};

std::string move_kind(const Move& m);

Applicability applicable(const Move& move, const FoliationMovie& movie);
/// Result is normalized and valid. Throws MoveError when not applicable.
FoliationMovie apply(const Move& move, const FoliationMovie& movie);
FoliationMovie apply_script(const MoveScript& script);
Move inverse(const Move& move);

/// Count change (e+, e-, h+, h-) a move of this kind produces.
SingularityCounts count_delta(const Move& move);

/// Smallest unused id with the given prefix ("p", "n", "a").
std::string fresh_id(const FoliationMovie& m, const std::string& prefix);

/// Finger data describing the n = 2 star around a source, if it is one.
std::optional<FingerData> star_collapse_data(const FoliationMovie& m, const std::string& source);

}  // namespace folcalc
