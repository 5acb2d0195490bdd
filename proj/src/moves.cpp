#include "folcalc/moves.hpp"

#include <algorithm>

namespace folcalc {

MoveError::MoveError(std::string diag, int step_index)
    : std::runtime_error(step_index >= 0 ? "step " + std::to_string(step_index) + ": " + diag : diag),
      diagnostic(std::move(diag)),
      step(step_index) {}

std::string move_kind(const Move& m) {
  switch (m.index()) {
    case 0:
      return "SwapPi";
    case 1:
      return "ChangeInFoliation";
    case 2:
      return "FingerMove";
    default:
      return "InverseFingerMove";
  }
}

namespace {

struct Outcome {
  std::optional<FoliationMovie> movie;
  std::string diagnostic;

  static Outcome fail(std::string why) { return {std::nullopt, std::move(why)}; }
  static Outcome done(FoliationMovie m) { return {std::move(m), {}}; }
};

Outcome finish(FoliationMovie m, const char* what) {
  m = normalized(std::move(m));
  auto report = validate(m);
  if (!report.ok) {
    return Outcome::fail(std::string(what) + " produced an invalid movie: " + report.violations.front().invariant +
                         " (" + report.violations.front().detail + ")");
  }
  return Outcome::done(std::move(m));
}

/// Runs `core` on a pair at positions (r, r+1) with 1 <= r < h; a pair at the
/// wrap (h, 1) is handled by moving the base page past the first saddle.
template <class Core>
Outcome on_adjacent_pair(const FoliationMovie& m, int rank, Core core) {
  const int h = static_cast<int>(m.events.size());
  if (h < 2) return Outcome::fail("needs at least two saddles");
  if (rank < 1 || rank > h) return Outcome::fail("rank " + std::to_string(rank) + " out of range 1.." + std::to_string(h));
  if (rank < h) return core(m, rank);
  auto rotated = core(rotate_base(m, 1), h - 1);
  if (!rotated.movie) return rotated;
  return Outcome::done(normalized(rotate_base(*rotated.movie, h - 1)));
}

Outcome swap_core(const FoliationMovie& m, int r) {
  auto pages = replay(m);
  const auto& e1 = m.events[r - 1];
  const auto& e2 = m.events[r];
  auto s1 = event_support(pages[r - 1], e1);
  auto s2 = event_support(pages[r], e2);
  for (const auto& p : s1) {
    if (s2.count(p)) {
      return Outcome::fail("saddles at ranks " + std::to_string(r) + " and " + std::to_string(r + 1) +
                           " share elliptic point '" + p + "'");
    }
  }
  FoliationMovie out = m;
  std::swap(out.events[r - 1], out.events[r]);
  out.events[r - 1].rank = r;
  out.events[r].rank = r + 1;
  return finish(std::move(out), "SwapPi");
}

const Arc* arc_with_source(const Slice& s, const std::string& source) {
  for (const auto& [id, arc] : s.arcs) {
    if (arc.pos == source) return &arc;
  }
  return nullptr;
}

Outcome change_core(const FoliationMovie& m, int r, const ChangeInFoliation& mv) {
  auto pages = replay(m);
  const SaddleEvent e1 = m.events[r - 1];
  const SaddleEvent e2 = m.events[r];
  if (e1.sign != e2.sign) {
    return Outcome::fail("saddles at ranks " + std::to_string(r) + " and " + std::to_string(r + 1) +
                         " have opposite signs; the change needs all hyperbolic points of one sign");
  }
  std::vector<std::string> shared;
  for (const auto& id : {e2.arc_a, e2.arc_b}) {
    if (id == e1.arc_a || id == e1.arc_b) shared.push_back(id);
  }
  if (shared.size() != 1) {
    return Outcome::fail("saddles at ranks " + std::to_string(r) + " and " + std::to_string(r + 1) + " share " +
                         std::to_string(shared.size()) + " arcs; the disc pattern needs exactly one");
  }
  if (e1.resolution != mv.prior_resolution) {
    return Outcome::fail("first saddle has resolution " + std::to_string(e1.resolution) + ", move expects " +
                         std::to_string(mv.prior_resolution));
  }
  if (mv.resolution != 1 && mv.resolution != 2) return Outcome::fail("resolution must be 1 or 2");

  const Slice& before = pages[r - 1];
  const Slice& after_first = pages[r];
  const Slice& after_both = pages[r + 1];
  const std::string pivot = after_first.find(shared.front())->pos;
  const Arc* a = before.find(e1.arc_a);
  const std::string other = a->pos == pivot ? before.find(e1.arc_b)->pos : a->pos;
  const std::string third_id = e2.arc_a == shared.front() ? e2.arc_b : e2.arc_a;
  const std::string third = before.find(third_id)->pos;

  // Sources of the new factorisation: (pivot, other, third).
  std::string np, no, nt;
  if (mv.variant == ChangeVariant::Second) {
    np = third, no = pivot, nt = other;
  } else {
    np = other, no = third, nt = pivot;
  }

  SaddleEvent f1 = e1;
  f1.arc_a = arc_with_source(before, np)->id;
  f1.arc_b = arc_with_source(before, no)->id;
  f1.resolution = mv.resolution;
  Slice mid = apply_event(before, f1);
  SaddleEvent f2 = e2;
  f2.arc_a = arc_with_source(mid, np)->id;
  f2.arc_b = arc_with_source(mid, nt)->id;
  bool matched = false;
  for (int res : {1, 2}) {
    f2.resolution = res;
    if (apply_event(mid, f2) == after_both) {
      matched = true;
      break;
    }
  }
  if (!matched) {
    return Outcome::fail("no arc-id assignment reproduces the page after the pair with first resolution " +
                         std::to_string(mv.resolution));
  }
  FoliationMovie out = m;
  out.events[r - 1] = f1;
  out.events[r] = f2;
  return finish(std::move(out), "ChangeInFoliation");
}

bool has_elliptic(const FoliationMovie& m, const std::string& id) { return m.sign_of(id).has_value(); }

bool has_arc(const FoliationMovie& m, const std::string& id) {
  return std::any_of(m.arcs.begin(), m.arcs.end(), [&](const Arc& a) { return a.id == id; });
}

/// Whether a slot of the new movie lies in the stretch after the negative
/// saddle and before the positive one.
bool in_interval_b(int slot, int pos_rank, int neg_rank) {
  if (neg_rank < pos_rank) return slot > neg_rank && slot < pos_rank;
  return slot > neg_rank || slot < pos_rank;
}

Outcome finger_core(const FoliationMovie& m, const FingerData& d) {
  auto target = m.sign_of(d.target);
  if (!target) return Outcome::fail("target '" + d.target + "' is not an elliptic point");
  if (*target != Sign::Minus) return Outcome::fail("target '" + d.target + "' is a positive elliptic point");
  if (d.new_positive.empty() || d.new_negative.empty() || d.new_arc.empty()) {
    return Outcome::fail("new ids must be non-empty");
  }
  if (d.new_positive == d.new_negative) return Outcome::fail("new elliptic ids coincide");
  for (const auto* id : {&d.new_positive, &d.new_negative, &d.new_arc}) {
    if (has_elliptic(m, *id) || has_arc(m, *id)) return Outcome::fail("id '" + *id + "' is already in use");
  }
  const int h = static_cast<int>(m.events.size());
  const int rp = d.pos_rank, rn = d.neg_rank;
  if (rp < 1 || rp > h + 2 || rn < 1 || rn > h + 2 || rp == rn) {
    return Outcome::fail("insertion ranks must be distinct and within 1.." + std::to_string(h + 2));
  }

  auto pages = replay(m);
  auto old_before = [&](int slot) { return (slot - 1) - (rp < slot ? 1 : 0) - (rn < slot ? 1 : 0); };
  auto target_arc = [&](int slot) { return pages[old_before(slot)].arc_at(d.target)->id; };
  const std::string beta_neg = target_arc(rn);
  const std::string beta_pos = target_arc(rp);
  const bool crossed = d.identification == Identification::Crossed;
  if (crossed && beta_neg != beta_pos) {
    return Outcome::fail("crossed identification needs the arc at '" + d.target +
                         "' to carry the same id at both insertion ranks");
  }
  const std::string& alpha = d.new_arc;
  const std::string& beta = beta_neg;
  auto rename = [&](const std::string& id, bool in_b) {
    if (!crossed || !in_b) return id;
    if (id == beta) return alpha;
    if (id == alpha) return beta;
    return id;
  };
  const std::string sink_a = d.keep_a ? d.target : d.new_negative;
  const std::string sink_b = d.keep_a ? d.new_negative : d.target;
  const bool base_in_b = rn > rp;

  FoliationMovie out;
  out.genus = m.genus;
  out.elliptic = m.elliptic;
  out.elliptic.push_back({d.new_positive, Sign::Plus});
  out.elliptic.push_back({d.new_negative, Sign::Minus});
  for (Arc a : m.arcs) {
    if (a.neg == d.target) a.neg = base_in_b ? sink_a : sink_b;
    a.id = rename(a.id, base_in_b);
    out.arcs.push_back(a);
  }
  out.arcs.push_back({rename(alpha, base_in_b), d.new_positive, base_in_b ? sink_b : sink_a});

  const int res = crossed ? 2 : 1;
  std::size_t next_old = 0;
  for (int slot = 1; slot <= h + 2; ++slot) {
    SaddleEvent e;
    if (slot == rn) {
      e.sign = Sign::Minus;
      e.arc_a = alpha;
      e.arc_b = beta_neg;
      e.resolution = res;
    } else if (slot == rp) {
      e.sign = Sign::Plus;
      e.arc_a = crossed ? beta : alpha;
      e.arc_b = crossed ? alpha : beta_pos;
      e.resolution = res;
    } else {
      e = m.events[next_old++];
      bool in_b = in_interval_b(slot, rp, rn);
      e.arc_a = rename(e.arc_a, in_b);
      e.arc_b = rename(e.arc_b, in_b);
    }
    e.rank = slot;
    out.events.push_back(e);
  }
  return finish(std::move(out), "FingerMove");
}

Outcome collapse_core(const FoliationMovie& n, const FingerData& d) {
  auto p_sign = n.sign_of(d.new_positive);
  if (!p_sign || *p_sign != Sign::Plus) {
    return Outcome::fail("'" + d.new_positive + "' is not a positive elliptic point");
  }
  for (const auto* id : {&d.target, &d.new_negative}) {
    auto s = n.sign_of(*id);
    if (!s || *s != Sign::Minus) return Outcome::fail("'" + *id + "' is not a negative elliptic point");
  }
  auto pages = replay(n);
  const int h = static_cast<int>(n.events.size());
  std::vector<int> star;
  for (int j = 0; j < h; ++j) {
    if (event_support(pages[j], n.events[j]).count(d.new_positive)) star.push_back(j + 1);
  }
  if (star.size() != 2) {
    return Outcome::fail("star of '" + d.new_positive + "' has " + std::to_string(star.size()) +
                         " hyperbolic points, a collapse needs n = 2");
  }
  int plus = 0;
  for (int r : star) plus += n.events[r - 1].sign == Sign::Plus ? 1 : 0;
  if (plus != 1) {
    return Outcome::fail("star of '" + d.new_positive + "' has " + std::to_string(plus) +
                         " positive hyperbolic points, a collapse needs exactly one");
  }
  const int rp = d.pos_rank, rn = d.neg_rank;
  if (!((star[0] == rp && star[1] == rn) || (star[0] == rn && star[1] == rp)) ||
      n.events[rp - 1].sign != Sign::Plus) {
    return Outcome::fail("star saddles are not at the positive/negative ranks of the move");
  }
  const Arc* in_a = pages[rp].arc_at(d.new_positive);
  const Arc* in_b = pages[rn].arc_at(d.new_positive);
  const std::string sink_a = d.keep_a ? d.target : d.new_negative;
  const std::string sink_b = d.keep_a ? d.new_negative : d.target;
  if (in_a->neg != sink_a || in_b->neg != sink_b) {
    return Outcome::fail("sinks around '" + d.new_positive + "' do not match the move's identification");
  }
  if (in_a->id != d.new_arc) return Outcome::fail("arc of the star centre is not '" + d.new_arc + "'");
  const bool crossed = in_b->id != in_a->id;
  if (crossed != (d.identification == Identification::Crossed)) {
    return Outcome::fail("boundary identification of the star differs from the move's");
  }

  const std::string alpha = in_a->id;
  const std::string beta = in_b->id;
  auto rename = [&](const std::string& id, bool b) {
    if (!crossed || !b) return id;
    if (id == beta) return alpha;
    if (id == alpha) return beta;
    return id;
  };
  const bool base_in_b = rn > rp;
  FoliationMovie out;
  out.genus = n.genus;
  for (const auto& e : n.elliptic) {
    if (e.id != d.new_positive && e.id != d.new_negative) out.elliptic.push_back(e);
  }
  for (Arc a : n.arcs) {
    if (a.pos == d.new_positive) continue;
    if (a.neg == sink_a || a.neg == sink_b) a.neg = d.target;
    a.id = rename(a.id, base_in_b);
    out.arcs.push_back(a);
  }
  int slot_out = 0;
  for (int slot = 1; slot <= h; ++slot) {
    if (slot == rp || slot == rn) continue;
    SaddleEvent e = n.events[slot - 1];
    bool b = in_interval_b(slot, rp, rn);
    e.arc_a = rename(e.arc_a, b);
    e.arc_b = rename(e.arc_b, b);
    e.rank = ++slot_out;
    out.events.push_back(e);
  }
  auto collapsed = finish(std::move(out), "InverseFingerMove");
  if (!collapsed.movie) return collapsed;
  // The collapse is exact only if splitting again reproduces the input.
  auto again = finger_core(*collapsed.movie, d);
  if (!again.movie || !(*again.movie == normalized(n))) {
    return Outcome::fail("star of '" + d.new_positive + "' does not match the move's boundary identification");
  }
  return collapsed;
}

Outcome run(const Move& move, const FoliationMovie& input) {
  auto report = validate(input);
  if (!report.ok) {
    return Outcome::fail("movie is not valid: " + report.violations.front().invariant);
  }
  FoliationMovie m = normalized(input);
  return std::visit(
      [&](const auto& mv) -> Outcome {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, SwapPi>) {
          return on_adjacent_pair(m, mv.rank, swap_core);
        } else if constexpr (std::is_same_v<T, ChangeInFoliation>) {
          return on_adjacent_pair(m, mv.rank, [&](const FoliationMovie& x, int r) { return change_core(x, r, mv); });
        } else if constexpr (std::is_same_v<T, FingerMove>) {
          return finger_core(m, mv.data);
        } else {
          return collapse_core(m, mv.data);
        }
      },
      move);
}

}  // namespace

Applicability applicable(const Move& move, const FoliationMovie& movie) {
  auto out = run(move, movie);
  return {out.movie.has_value(), out.diagnostic};
}

FoliationMovie apply(const Move& move, const FoliationMovie& movie) {
  auto out = run(move, movie);
  if (!out.movie) throw MoveError(move_kind(move) + ": " + out.diagnostic);
  return std::move(*out.movie);
}

FoliationMovie apply_script(const MoveScript& script) {
  FoliationMovie cur = normalized(script.base);
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    auto out = run(script.steps[i], cur);
    if (!out.movie) {
      throw MoveError(move_kind(script.steps[i]) + ": " + out.diagnostic, static_cast<int>(i));
    }
    cur = std::move(*out.movie);
  }
  return cur;
}

Move inverse(const Move& move) {
  return std::visit(
      [](const auto& mv) -> Move {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, SwapPi>) {
          return mv;
        } else if constexpr (std::is_same_v<T, ChangeInFoliation>) {
          ChangeInFoliation inv = mv;
          inv.variant = mv.variant == ChangeVariant::Second ? ChangeVariant::Third : ChangeVariant::Second;
          inv.resolution = mv.prior_resolution;
          inv.prior_resolution = mv.resolution;
          return inv;
        } else if constexpr (std::is_same_v<T, FingerMove>) {
          return InverseFingerMove{mv.data};
        } else {
          return FingerMove{mv.data};
        }
      },
      move);
}

SingularityCounts count_delta(const Move& move) {
  if (std::holds_alternative<FingerMove>(move)) return {1, 1, 1, 1};
  if (std::holds_alternative<InverseFingerMove>(move)) return {-1, -1, -1, -1};
  return {};
}

std::string fresh_id(const FoliationMovie& m, const std::string& prefix) {
  for (int i = 1;; ++i) {
    std::string id = prefix + std::to_string(i);
    if (!has_elliptic(m, id) && !has_arc(m, id)) return id;
  }
}

std::optional<FingerData> star_collapse_data(const FoliationMovie& input, const std::string& source) {
  FoliationMovie m = normalized(input);
  auto s = m.sign_of(source);
  if (!s || *s != Sign::Plus) return std::nullopt;
  auto pages = replay(m);
  const int h = static_cast<int>(m.events.size());
  std::vector<int> star;
  for (int j = 0; j < h; ++j) {
    if (event_support(pages[j], m.events[j]).count(source)) star.push_back(j + 1);
  }
  if (star.size() != 2) return std::nullopt;
  const auto& e1 = m.events[star[0] - 1];
  const auto& e2 = m.events[star[1] - 1];
  if (e1.sign == e2.sign) return std::nullopt;
  FingerData d;
  d.pos_rank = e1.sign == Sign::Plus ? star[0] : star[1];
  d.neg_rank = e1.sign == Sign::Plus ? star[1] : star[0];
  const Arc* in_a = pages[d.pos_rank].arc_at(source);
  const Arc* in_b = pages[d.neg_rank].arc_at(source);
  d.new_positive = source;
  d.target = in_a->neg;
  d.new_negative = in_b->neg;
  d.new_arc = in_a->id;
  d.keep_a = true;
  d.identification = in_a->id == in_b->id ? Identification::Straight : Identification::Crossed;
  return d;
}

}  // namespace folcalc
