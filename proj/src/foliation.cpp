#include "folcalc/foliation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "folcalc/rotation.hpp"

namespace folcalc {

char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

bool id_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::size_t is = i, js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      if (ie - is != je - js) return ie - is < je - js;
      int c = a.compare(is, ie - is, b, js, je - js);
      if (c != 0) return c < 0;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;
}

const Arc* Slice::find(const std::string& arc_id) const {
  auto it = arcs.find(arc_id);
  return it == arcs.end() ? nullptr : &it->second;
}

const Arc* Slice::arc_at(const std::string& elliptic_id) const {
  for (const auto& [id, arc] : arcs) {
    if (arc.pos == elliptic_id || arc.neg == elliptic_id) return &arc;
  }
  return nullptr;
}

Slice FoliationMovie::initial_slice() const {
  Slice s;
  for (const auto& a : arcs) s.arcs.emplace(a.id, a);
  return s;
}

std::optional<Sign> FoliationMovie::sign_of(const std::string& elliptic_id) const {
  for (const auto& e : elliptic) {
    if (e.id == elliptic_id) return e.sign;
  }
  return std::nullopt;
}

int FoliationMovie::k() const {
  return static_cast<int>(std::count_if(elliptic.begin(), elliptic.end(),
                                        [](const EllipticPoint& e) { return e.sign == Sign::Plus; }));
}

void ValidationReport::add(std::string invariant, std::string location, std::string detail) {
  ok = false;
  violations.push_back({std::move(invariant), std::move(location), std::move(detail)});
}

namespace {

std::string describe(const ValidationReport& r) {
  if (r.violations.empty()) return "invalid movie";
  const auto& v = r.violations.front();
  return "invalid movie: " + v.invariant + " at " + v.location + ": " + v.detail;
}

std::vector<SaddleEvent> events_by_rank(const FoliationMovie& m) {
  std::vector<SaddleEvent> ev = m.events;
  std::stable_sort(ev.begin(), ev.end(),
                   [](const SaddleEvent& a, const SaddleEvent& b) { return a.rank < b.rank; });
  return ev;
}

std::map<std::string, std::vector<std::string>, IdLess> rotation_of(const FoliationMovie& m) {
  std::map<std::string, std::vector<std::string>, IdLess> rot;
  for (const auto& e : m.elliptic) rot[e.id];
  for (const auto& a : m.arcs) {
    rot[a.pos].push_back(a.id);
    rot[a.neg].push_back(a.id);
  }
  return rot;
}

}  // namespace

InvalidMovie::InvalidMovie(const ValidationReport& r) : std::invalid_argument(describe(r)), report(r) {}

FoliationMovie normalized(FoliationMovie m) {
  std::sort(m.elliptic.begin(), m.elliptic.end(),
            [](const EllipticPoint& a, const EllipticPoint& b) { return id_less(a.id, b.id); });
  std::sort(m.arcs.begin(), m.arcs.end(), [](const Arc& a, const Arc& b) { return id_less(a.id, b.id); });
  m.events = events_by_rank(m);
  for (std::size_t i = 0; i < m.events.size(); ++i) {
    auto& e = m.events[i];
    e.rank = static_cast<int>(i) + 1;
    if (id_less(e.arc_b, e.arc_a)) {
      std::swap(e.arc_a, e.arc_b);
      std::swap(e.side_a, e.side_b);
    }
  }
  m.rotation = rotation_of(m);
  return m;
}

Slice apply_event(const Slice& s, const SaddleEvent& e) {
  const Arc* a = s.find(e.arc_a);
  const Arc* b = s.find(e.arc_b);
  if (!a || !b) throw std::invalid_argument("saddle references an arc missing from the page");
  if (e.arc_a == e.arc_b) throw std::invalid_argument("saddle joins an arc to itself");
  Arc na = *a, nb = *b;
  if (e.resolution == 1) {
    na.neg = b->neg;
    nb.neg = a->neg;
  } else {
    na.pos = b->pos;
    nb.pos = a->pos;
  }
  Slice out = s;
  out.arcs[na.id] = na;
  out.arcs[nb.id] = nb;
  return out;
}

std::set<std::string> event_support(const Slice& before, const SaddleEvent& e) {
  std::set<std::string> pts;
  for (const auto* arc : {before.find(e.arc_a), before.find(e.arc_b)}) {
    if (arc) {
      pts.insert(arc->pos);
      pts.insert(arc->neg);
    }
  }
  return pts;
}

ValidationReport validate(const FoliationMovie& m) {
  ValidationReport r;
  if (m.genus != 0) {
    r.add("unsupported genus", "header", "genus=" + std::to_string(m.genus) + ", only genus 0 is supported");
  }

  std::map<std::string, Sign> sign;
  for (const auto& e : m.elliptic) {
    if (e.id.empty()) r.add("elliptic id", "elliptic", "empty id");
    if (!sign.emplace(e.id, e.sign).second) r.add("duplicate elliptic id", "elliptic " + e.id, "declared twice");
  }
  int e_plus = 0, e_minus = 0;
  for (const auto& [id, s] : sign) (s == Sign::Plus ? e_plus : e_minus)++;
  if (e_plus == 0) r.add("elliptic points", "elliptic", "no positive elliptic point");
  if (e_plus != e_minus) {
    r.add("e+ = e-", "elliptic",
          "e+=" + std::to_string(e_plus) + " differs from e-=" + std::to_string(e_minus));
  }

  bool structural = true;
  std::set<std::string> arc_ids;
  std::map<std::string, int> incidence;
  for (const auto& a : m.arcs) {
    std::string loc = "arc " + a.id;
    if (!arc_ids.insert(a.id).second) {
      r.add("duplicate arc id", loc, "declared twice");
      structural = false;
    }
    auto check_end = [&](const std::string& end, Sign want, const char* role) {
      auto it = sign.find(end);
      if (it == sign.end()) {
        r.add("dangling reference", loc, std::string(role) + " endpoint '" + end + "' is not an elliptic point");
        structural = false;
      } else if (it->second != want) {
        r.add("arc endpoint sign", loc,
              std::string(role) + " endpoint '" + end + "' has sign " + sign_char(it->second));
        structural = false;
      }
      ++incidence[end];
    };
    check_end(a.pos, Sign::Plus, "positive");
    check_end(a.neg, Sign::Minus, "negative");
  }
  for (const auto& [id, s] : sign) {
    int n = incidence.count(id) ? incidence[id] : 0;
    if (n != 1) {
      r.add("perfect matching", "elliptic " + id, "lies on " + std::to_string(n) + " arcs of the base page");
      structural = false;
    }
  }

  for (const auto& [id, ends] : m.rotation) {
    if (!sign.count(id)) {
      r.add("dangling reference", "rot " + id, "not an elliptic point");
      continue;
    }
  }
  if (structural) {
    for (const auto& [id, s] : sign) {
      auto it = m.rotation.find(id);
      const Arc* arc = nullptr;
      for (const auto& a : m.arcs) {
        if (a.pos == id || a.neg == id) arc = &a;
      }
      if (it == m.rotation.end()) {
        r.add("rotation", "rot " + id, "missing rotation declaration");
      } else if (it->second.size() != 1 || it->second.front() != arc->id) {
        r.add("rotation", "rot " + id, "must list exactly the incident arc-end '" + arc->id + "'");
      }
    }
  }

  std::set<int> ranks;
  for (const auto& e : m.events) {
    std::string loc = "event " + std::to_string(e.rank);
    if (!ranks.insert(e.rank).second) {
      r.add("duplicate π-rank", loc, "two saddles share a critical value");
    }
    if (e.resolution != 1 && e.resolution != 2) {
      r.add("resolution", loc, "resolution must be 1 or 2");
      structural = false;
    }
    if (e.side_a != ArcSide::L || e.side_b != ArcSide::L) {
      r.add("corridor", loc, "a saddle joins arcs along the side the sweep moves into (L,L)");
    }
    if (e.arc_a == e.arc_b) {
      r.add("self-saddle", loc, "arc '" + e.arc_a + "' saddles with itself, creating a closed leaf");
      structural = false;
    }
    for (const auto* id : {&e.arc_a, &e.arc_b}) {
      if (!arc_ids.count(*id)) {
        r.add("dangling reference", loc, "arc '" + *id + "' is not declared");
        structural = false;
      }
    }
  }
  if (!structural) return r;

  auto ordered = events_by_rank(m);
  const Slice base = m.initial_slice();
  std::vector<Slice> pre;
  pre.reserve(ordered.size());
  Slice cur = base;
  for (const auto& e : ordered) {
    pre.push_back(cur);
    cur = apply_event(cur, e);
  }
  if (!(cur == base)) {
    std::string detail;
    for (const auto& [id, arc] : cur.arcs) {
      const Arc& b = base.arcs.at(id);
      if (!(arc == b)) {
        detail += id + " ends as (" + arc.pos + "," + arc.neg + ") but starts as (" + b.pos + "," + b.neg + "); ";
      }
    }
    r.add("cyclic closure", "movie", detail);
    return r;
  }

  const int h = static_cast<int>(ordered.size());
  const int k = e_plus;
  int h_plus = 0;
  for (const auto& e : ordered) h_plus += e.sign == Sign::Plus ? 1 : 0;
  if ((e_plus + e_minus) - h != 2) {
    r.add("poincare-hopf", "movie",
          "(e+ + e-) - (h+ + h-) = " + std::to_string(e_plus + e_minus - h) + ", expected 2");
  }

  if (h == 0) {
    if (k != 1) r.add("disconnected", "movie", std::to_string(k) + " arcs never meet a saddle");
    return r;
  }

  // Separatrix graph: elliptic points, then one vertex per saddle with four
  // separatrices. Sources list their saddles in page order, sinks in reverse.
  std::map<std::string, int> index;
  for (const auto& e : m.elliptic) index.emplace(e.id, static_cast<int>(index.size()));
  const int pts = static_cast<int>(index.size());
  RotationSystem sep(pts + h);
  std::map<int, std::vector<int>> at_point;
  for (int j = 0; j < h; ++j) {
    const Arc& a = *pre[j].find(ordered[j].arc_a);
    const Arc& b = *pre[j].find(ordered[j].arc_b);
    int hv = pts + j;
    int to_pa = sep.add_edge(hv, index[a.pos]);
    int to_na = sep.add_edge(hv, index[a.neg]);
    int to_pb = sep.add_edge(hv, index[b.pos]);
    int to_nb = sep.add_edge(hv, index[b.neg]);
    sep.set_rotation(hv, {2 * to_pa, 2 * to_na, 2 * to_pb, 2 * to_nb});
    for (int e : {to_pa, to_na, to_pb, to_nb}) at_point[sep.vertex_of(2 * e + 1)].push_back(2 * e + 1);
  }
  for (const auto& e : m.elliptic) {
    int v = index[e.id];
    auto darts = at_point[v];
    if (e.sign == Sign::Minus) std::reverse(darts.begin(), darts.end());
    sep.set_rotation(v, darts);
  }
  int comps = 0;
  sep.components(&comps);
  if (comps != 1) {
    r.add("disconnected", "movie", "the glued surface has " + std::to_string(comps) + " components");
    return r;
  }
  int chi = sep.euler_characteristic();
  if (chi != 2) {
    std::ostringstream os;
    os << "face tracing gives Euler characteristic " << chi << " (genus " << (2 - chi) / 2 << "), expected a sphere";
    r.add("genus", "movie", os.str());
  }
  return r;
}

void require_valid(const FoliationMovie& m) {
  auto r = validate(m);
  if (!r.ok) throw InvalidMovie(r);
}

std::vector<Slice> replay(const FoliationMovie& m) {
  std::vector<Slice> out;
  Slice cur = m.initial_slice();
  for (const auto& e : events_by_rank(m)) {
    out.push_back(cur);
    cur = apply_event(cur, e);
  }
  out.push_back(cur);
  return out;
}

Slice slice_at(const FoliationMovie& m, int rank) {
  if (rank < 0) throw std::out_of_range("slice_at: negative rank " + std::to_string(rank));
  const int h = static_cast<int>(m.events.size());
  if (h == 0) return m.initial_slice();
  auto pages = replay(m);
  return pages[rank % h];
}

SingularityCounts singularity_counts(const FoliationMovie& m) {
  SingularityCounts c;
  for (const auto& e : m.elliptic) (e.sign == Sign::Plus ? c.e_plus : c.e_minus)++;
  for (const auto& e : m.events) (e.sign == Sign::Plus ? c.h_plus : c.h_minus)++;
  return c;
}

FoliationMovie rotate_base(const FoliationMovie& m, int steps) {
  const int h = static_cast<int>(m.events.size());
  if (h == 0) return m;
  steps = ((steps % h) + h) % h;
  auto ordered = events_by_rank(m);
  auto pages = replay(m);
  FoliationMovie out = m;
  out.arcs.clear();
  for (const auto& [id, arc] : pages[steps].arcs) out.arcs.push_back(arc);
  out.events.clear();
  for (int i = 0; i < h; ++i) {
    SaddleEvent e = ordered[(steps + i) % h];
    e.rank = i + 1;
    out.events.push_back(e);
  }
  out.rotation = rotation_of(out);
  return out;
}

std::vector<int> canonical_code(const FoliationMovie& m) {
  auto ordered = events_by_rank(m);
  auto pages = replay(m);
  const int h = static_cast<int>(ordered.size());
  std::vector<std::string> positives;
  for (const auto& e : m.elliptic) {
    if (e.sign == Sign::Plus) positives.push_back(e.id);
  }
  std::sort(positives.begin(), positives.end(), IdLess{});
  const int k = static_cast<int>(positives.size());
  if (h == 0) return {k, 0};

  std::map<std::string, int> pos_index;
  for (int i = 0; i < k; ++i) pos_index[positives[i]] = i;

  std::vector<int> best;
  std::vector<int> perm(k);
  std::vector<int> code;
  for (int s = 0; s < h; ++s) {
    const Slice& base = pages[s];
    std::map<std::string, int> partner;  // sink -> index of its source on the base page
    for (const auto& [id, arc] : base.arcs) partner[arc.neg] = pos_index.at(arc.pos);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      code.assign({k, h});
      for (int i = 0; i < h; ++i) {
        int j = (s + i) % h;
        const Arc& a = *pages[j].find(ordered[j].arc_a);
        const Arc& b = *pages[j].find(ordered[j].arc_b);
        int ca = perm[pos_index.at(a.pos)] * k + perm[partner.at(a.neg)];
        int cb = perm[pos_index.at(b.pos)] * k + perm[partner.at(b.neg)];
        code.push_back(ordered[j].sign == Sign::Plus ? 0 : 1);
        code.push_back(std::min(ca, cb));
        code.push_back(std::max(ca, cb));
      }
      if (best.empty() || code < best) best = code;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return best;
}

bool is_isomorphic(const FoliationMovie& a, const FoliationMovie& b) {
  auto ca = singularity_counts(a);
  auto cb = singularity_counts(b);
  if (!(ca == cb)) return false;
  return canonical_code(a) == canonical_code(b);
}

FoliationMovie movie_from_code(const std::vector<int>& code) {
  if (code.size() < 2) throw std::invalid_argument("movie_from_code: truncated code");
  const int k = code[0];
  const int h = code[1];
  if (static_cast<int>(code.size()) != 2 + 3 * h) throw std::invalid_argument("movie_from_code: bad length");
  FoliationMovie m;
  for (int i = 1; i <= k; ++i) m.elliptic.push_back({"p" + std::to_string(i), Sign::Plus});
  for (int i = 1; i <= k; ++i) m.elliptic.push_back({"n" + std::to_string(i), Sign::Minus});
  for (int i = 1; i <= k; ++i) {
    m.arcs.push_back({"a" + std::to_string(i), "p" + std::to_string(i), "n" + std::to_string(i)});
  }
  for (int i = 0; i < h; ++i) {
    SaddleEvent e;
    e.rank = i + 1;
    e.sign = code[2 + 3 * i] == 0 ? Sign::Plus : Sign::Minus;
    // With resolution 1 arc ids stay with their sources, so a_i is the arc at p_i.
    e.arc_a = "a" + std::to_string(code[3 + 3 * i] / k + 1);
    e.arc_b = "a" + std::to_string(code[4 + 3 * i] / k + 1);
    e.resolution = 1;
    m.events.push_back(e);
  }
  return normalized(m);
}

FoliationMovie canonical_movie(const FoliationMovie& m) { return movie_from_code(canonical_code(m)); }

}  // namespace folcalc
