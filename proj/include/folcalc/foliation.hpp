#pragma once

// Combinatorial encoding of circle-free open book foliations on the 2-sphere.
//
// A foliation is stored as a movie: the arc system of one page (every
// elliptic point lies on exactly one arc, every arc joins a source to a sink)
// followed by the cyclically ordered saddle events. A saddle consumes two arcs
// (p1,n1), (p2,n2) of the page just before it and produces (p1,n2), (p2,n1).
// Arc ids are persistent: the resolution of an event says whether the two ids
// follow the positive ends (1) or the negative ends (2) through the saddle.
//
// Orientation convention: seen from the positive side of the sphere, leaves
// turn counterclockwise around sources and clockwise around sinks as the page
// parameter increases. The side of an arc that the sweep moves into is its
// left side (arc oriented from source to sink), so a saddle always joins two
// arcs along their left sides.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace folcalc {

enum class Sign { Plus, Minus };
enum class ArcSide { L, R };

char sign_char(Sign s);

/// Numeric-aware ordering for ids ("p2" < "p10"). Used everywhere ids are sorted.
bool id_less(const std::string& a, const std::string& b);

struct IdLess {
  bool operator()(const std::string& a, const std::string& b) const { return id_less(a, b); }
};

struct EllipticPoint {
  std::string id;
  Sign sign = Sign::Plus;
  bool operator==(const EllipticPoint&) const = default;
};

struct Arc {
  std::string id;
  std::string pos;  // source endpoint
  std::string neg;  // sink endpoint
  bool operator==(const Arc&) const = default;
};

/// One page of the movie: the arc system, keyed by arc id.
struct Slice {
  std::map<std::string, Arc, IdLess> arcs;

  const Arc* find(const std::string& arc_id) const;
  /// Arc incident to an elliptic point, if any.
  const Arc* arc_at(const std::string& elliptic_id) const;
  bool operator==(const Slice&) const = default;
};

struct SaddleEvent {
  int rank = 0;
  Sign sign = Sign::Plus;
  std::string arc_a;
  std::string arc_b;
  ArcSide side_a = ArcSide::L;
  ArcSide side_b = ArcSide::L;
  int resolution = 1;
  bool operator==(const SaddleEvent&) const = default;
};

struct FoliationMovie {
  int genus = 0;
  std::vector<EllipticPoint> elliptic;
  std::vector<Arc> arcs;  // initial slice
  // Counterclockwise arc-end order around each elliptic point in the initial
  // slice. Every point carries exactly one arc-end.
  std::map<std::string, std::vector<std::string>, IdLess> rotation;
  std::vector<SaddleEvent> events;

  bool operator==(const FoliationMovie&) const = default;

  Slice initial_slice() const;
  std::optional<Sign> sign_of(const std::string& elliptic_id) const;
  int k() const;  // number of sources
};

struct Violation {
  std::string invariant;
  std::string location;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string invariant, std::string location, std::string detail);
};

struct SingularityCounts {
  int e_plus = 0;
  int e_minus = 0;
  int h_plus = 0;
  int h_minus = 0;
  int euler() const { return (e_plus + e_minus) - (h_plus + h_minus); }
  bool operator==(const SingularityCounts&) const = default;
};

class InvalidMovie : public std::invalid_argument {
 public:
  explicit InvalidMovie(const ValidationReport& report);
  ValidationReport report;
};

/// Sorts elliptic points and arcs by id, orders events by rank, renumbers
/// ranks 1..h, sorts each event's arc pair and regenerates rotation data.
FoliationMovie normalized(FoliationMovie m);

/// Applies one saddle to a slice. Throws std::invalid_argument if the event's
/// arcs are missing or coincide.
Slice apply_event(const Slice& s, const SaddleEvent& e);

ValidationReport validate(const FoliationMovie& m);
void require_valid(const FoliationMovie& m);

/// Slice after the rank-th event in cyclic order (ordinal positions 1..h;
/// rank 0 is the initial slice). Ranks wrap modulo h. Throws
/// std::out_of_range for negative ranks.
Slice slice_at(const FoliationMovie& m, int rank);

/// Slice before each event: result[i] is the page right before event i
/// (ordinal order); result[h] is the page after the last event.
std::vector<Slice> replay(const FoliationMovie& m);

SingularityCounts singularity_counts(const FoliationMovie& m);

/// Canonical invariant of a movie under relabeling of points and arcs, choice
/// of arc-id resolutions and cyclic rotation of the base page.
std::vector<int> canonical_code(const FoliationMovie& m);
bool is_isomorphic(const FoliationMovie& a, const FoliationMovie& b);
/// The representative of the isomorphism class with ids p1..pk, n1..nk,
/// a1..ak, arcs ai = (pi, ni) on the base page and resolution 1 everywhere.
FoliationMovie canonical_movie(const FoliationMovie& m);
FoliationMovie movie_from_code(const std::vector<int>& code);

/// Moves the base page forward past the first `steps` events.
FoliationMovie rotate_base(const FoliationMovie& m, int steps);

/// Elliptic points touched by an event on its pre-event page.
std::set<std::string> event_support(const Slice& before, const SaddleEvent& e);

/// One source, one sink, one arc, no saddles.
FoliationMovie trivial_movie();

/// Random valid movie with k sources, built by finger moves and changes in
/// foliation from the trivial movie; h_extra negative saddles are then turned
/// positive, so counts are (k, k, k-1+h_extra, k-1-h_extra).
FoliationMovie random_movie(int k, int h_extra, std::uint64_t seed);

}  // namespace folcalc
