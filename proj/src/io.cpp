#include "folcalc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace folcalc {

ParseError::ParseError(int line_no, int col, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_no) + ", column " + std::to_string(col) + ": " + msg),
      line(line_no),
      column(col),
      message(msg) {}

namespace {

struct Token {
  std::string text;
  int line = 0;
  int column = 0;
};

struct Statement {
  std::vector<Token> tokens;
  int line = 0;
  int column = 0;
};

// Splits into statements at newlines and ';', dropping '#' comments.
std::vector<Statement> statements(const std::string& text) {
  std::vector<Statement> out;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Statement cur;
    cur.line = line_no;
    cur.column = 1;
    std::size_t i = 0;
    auto flush = [&](std::size_t next_col) {
      if (!cur.tokens.empty()) out.push_back(cur);
      cur = Statement{};
      cur.line = line_no;
      cur.column = static_cast<int>(next_col) + 1;
    };
    while (i < raw.size()) {
      char c = raw[i];
      if (c == ';') {
        flush(i + 1);
        ++i;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else {
        std::size_t j = i;
        while (j < raw.size() && raw[j] != ';' && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
        cur.tokens.push_back({raw.substr(i, j - i), line_no, static_cast<int>(i) + 1});
        i = j;
      }
    }
    flush(raw.size());
  }
  return out;
}

[[noreturn]] void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

int parse_int(const Token& t, const std::string& text, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(t, std::string("expected an integer ") + what + ", got '" + text + "'");
  }
  return v;
}

std::string value_of(const Token& t, const std::string& key) {
  const std::string prefix = key + "=";
  if (t.text.rfind(prefix, 0) != 0) fail(t, "expected '" + prefix + "...', got '" + t.text + "'");
  return t.text.substr(prefix.size());
}

Sign parse_sign(const Token& t) {
  if (t.text == "+") return Sign::Plus;
  if (t.text == "-") return Sign::Minus;
  fail(t, "expected '+' or '-', got '" + t.text + "'");
}

ArcSide parse_side(const Token& t, const std::string& s) {
  if (s == "L") return ArcSide::L;
  if (s == "R") return ArcSide::R;
  fail(t, "corridor side must be L or R, got '" + s + "'");
}

void arity(const Statement& s, std::size_t n, const char* shape) {
  if (s.tokens.size() < n) {
    const Token& last = s.tokens.back();
    throw ParseError(last.line, last.column + static_cast<int>(last.text.size()),
                     std::string("incomplete declaration, expected: ") + shape);
  }
  if (s.tokens.size() > n) fail(s.tokens[n], std::string("unexpected token, expected: ") + shape);
}

void check_id(const Token& t) {
  for (char c : t.text) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'')) {
      fail(t, "invalid character '" + std::string(1, c) + "' in id '" + t.text + "'");
    }
  }
}

void header(const Statement& s, const char* magic, const char* shape) {
  if (s.tokens[0].text != magic) fail(s.tokens[0], std::string("document must start with '") + shape + "'");
  arity(s, 3, shape);
  if (s.tokens[1].text != "1") fail(s.tokens[1], "unsupported format version '" + s.tokens[1].text + "'");
}

}  // namespace

FoliationMovie parse_fol(const std::string& text) {
  auto stmts = statements(text);
  if (stmts.empty()) throw ParseError(1, 1, "empty document, expected 'fol 1 genus=0'");
  FoliationMovie m;
  header(stmts[0], "fol", "fol 1 genus=<g>");
  m.genus = parse_int(stmts[0].tokens[2], value_of(stmts[0].tokens[2], "genus"), "genus");

  std::set<std::string> elliptic_ids, arc_ids, rot_ids;
  for (std::size_t i = 1; i < stmts.size(); ++i) {
    const auto& s = stmts[i];
    const auto& t = s.tokens;
    const std::string& kw = t[0].text;
    if (kw == "elliptic") {
      arity(s, 3, "elliptic <id> <+|->");
      check_id(t[1]);
      if (!elliptic_ids.insert(t[1].text).second) fail(t[1], "duplicate elliptic id '" + t[1].text + "'");
      m.elliptic.push_back({t[1].text, parse_sign(t[2])});
    } else if (kw == "arc") {
      arity(s, 4, "arc <id> <pos-elliptic-id> <neg-elliptic-id>");
      for (int j = 1; j <= 3; ++j) check_id(t[j]);
      if (!arc_ids.insert(t[1].text).second) fail(t[1], "duplicate arc id '" + t[1].text + "'");
      m.arcs.push_back({t[1].text, t[2].text, t[3].text});
    } else if (kw == "rot") {
      if (t.size() < 3 || t[2].text != ":") {
        const Token& at = t.size() < 3 ? t.back() : t[2];
        fail(at, "expected 'rot <elliptic-id> : <arc-ends>'");
      }
      check_id(t[1]);
      if (!rot_ids.insert(t[1].text).second) fail(t[1], "duplicate rotation for '" + t[1].text + "'");
      auto& ends = m.rotation[t[1].text];
      for (std::size_t j = 3; j < t.size(); ++j) {
        check_id(t[j]);
        ends.push_back(t[j].text);
      }
    } else if (kw == "event") {
      const char* shape = "event <rank> <+|-> <arcA> <arcB> corridor=<L|R>,<L|R> resolution=<1|2>";
      arity(s, 7, shape);
      SaddleEvent e;
      e.rank = parse_int(t[1], t[1].text, "rank");
      e.sign = parse_sign(t[2]);
      check_id(t[3]);
      check_id(t[4]);
      e.arc_a = t[3].text;
      e.arc_b = t[4].text;
      std::string corridor = value_of(t[5], "corridor");
      auto comma = corridor.find(',');
      if (comma == std::string::npos) fail(t[5], "corridor needs two sides separated by ','");
      e.side_a = parse_side(t[5], corridor.substr(0, comma));
      e.side_b = parse_side(t[5], corridor.substr(comma + 1));
      e.resolution = parse_int(t[6], value_of(t[6], "resolution"), "resolution");
      m.events.push_back(e);
    } else if (kw == "fol") {
      fail(t[0], "repeated header");
    } else {
      fail(t[0], "unknown directive '" + kw + "'");
    }
  }
  return m;
}

namespace {

std::vector<std::string> fol_lines(const FoliationMovie& input) {
  FoliationMovie m = normalized(input);
  std::vector<std::string> out;
  out.push_back("fol 1 genus=" + std::to_string(m.genus));
  for (const auto& e : m.elliptic) out.push_back("elliptic " + e.id + " " + sign_char(e.sign));
  for (const auto& a : m.arcs) out.push_back("arc " + a.id + " " + a.pos + " " + a.neg);
  for (const auto& [id, ends] : m.rotation) {
    std::string line = "rot " + id + " :";
    for (const auto& end : ends) line += " " + end;
    out.push_back(line);
  }
  auto side = [](ArcSide s) { return s == ArcSide::L ? "L" : "R"; };
  for (const auto& e : m.events) {
    std::ostringstream os;
    os << "event " << e.rank << " " << sign_char(e.sign) << " " << e.arc_a << " " << e.arc_b << " corridor="
       << side(e.side_a) << "," << side(e.side_b) << " resolution=" << e.resolution;
    out.push_back(os.str());
  }
  return out;
}

}  // namespace

std::string serialize_fol(const FoliationMovie& m) {
  std::string out;
  for (const auto& line : fol_lines(m)) out += line + "\n";
  return out;
}

std::string serialize_fol_line(const FoliationMovie& m) {
  std::string out;
  for (const auto& line : fol_lines(m)) out += (out.empty() ? "" : "; ") + line;
  return out;
}

namespace {

FingerData parse_finger(const Statement& s) {
  const char* shape =
      "finger|unfinger target=<id> pos=<r> neg=<r> new=<p>,<n>,<arc> keep=<a|b> ident=<straight|crossed>";
  arity(s, 7, shape);
  const auto& t = s.tokens;
  FingerData d;
  d.target = value_of(t[1], "target");
  d.pos_rank = parse_int(t[2], value_of(t[2], "pos"), "rank");
  d.neg_rank = parse_int(t[3], value_of(t[3], "neg"), "rank");
  std::string ids = value_of(t[4], "new");
  auto c1 = ids.find(',');
  auto c2 = c1 == std::string::npos ? c1 : ids.find(',', c1 + 1);
  if (c2 == std::string::npos) fail(t[4], "new= needs three ids: positive, negative, arc");
  d.new_positive = ids.substr(0, c1);
  d.new_negative = ids.substr(c1 + 1, c2 - c1 - 1);
  d.new_arc = ids.substr(c2 + 1);
  std::string keep = value_of(t[5], "keep");
  if (keep != "a" && keep != "b") fail(t[5], "keep must be a or b");
  d.keep_a = keep == "a";
  std::string ident = value_of(t[6], "ident");
  if (ident == "straight") {
    d.identification = Identification::Straight;
  } else if (ident == "crossed") {
    d.identification = Identification::Crossed;
  } else {
    fail(t[6], "ident must be straight or crossed");
  }
  return d;
}

std::string format_finger(const char* kw, const FingerData& d) {
  std::ostringstream os;
  os << kw << " target=" << d.target << " pos=" << d.pos_rank << " neg=" << d.neg_rank << " new=" << d.new_positive
     << "," << d.new_negative << "," << d.new_arc << " keep=" << (d.keep_a ? "a" : "b")
     << " ident=" << (d.identification == Identification::Straight ? "straight" : "crossed");
  return os.str();
}

}  // namespace

MoveScript parse_mov(const std::string& text) {
  auto stmts = statements(text);
  if (stmts.empty()) throw ParseError(1, 1, "empty document, expected 'mov 1 base=trivial'");
  header(stmts[0], "mov", "mov 1 base=trivial");
  const Token& base = stmts[0].tokens[2];
  if (value_of(base, "base") != "trivial") fail(base, "only base=trivial is supported");
  MoveScript script;
  script.base = trivial_movie();
  for (std::size_t i = 1; i < stmts.size(); ++i) {
    const auto& s = stmts[i];
    const auto& t = s.tokens;
    const std::string& kw = t[0].text;
    if (kw == "swap") {
      arity(s, 2, "swap <rank>");
      script.steps.push_back(SwapPi{parse_int(t[1], t[1].text, "rank")});
    } else if (kw == "change") {
      arity(s, 5, "change <rank> <second|third> res=<1|2> prior=<1|2>");
      ChangeInFoliation c;
      c.rank = parse_int(t[1], t[1].text, "rank");
      if (t[2].text == "second") {
        c.variant = ChangeVariant::Second;
      } else if (t[2].text == "third") {
        c.variant = ChangeVariant::Third;
      } else {
        fail(t[2], "variant must be second or third");
      }
      c.resolution = parse_int(t[3], value_of(t[3], "res"), "resolution");
      c.prior_resolution = parse_int(t[4], value_of(t[4], "prior"), "resolution");
      script.steps.push_back(c);
    } else if (kw == "finger") {
      script.steps.push_back(FingerMove{parse_finger(s)});
    } else if (kw == "unfinger") {
      script.steps.push_back(InverseFingerMove{parse_finger(s)});
    } else if (kw == "mov") {
      fail(t[0], "repeated header");
    } else {
      fail(t[0], "unknown move '" + kw + "'");
    }
  }
  return script;
}

std::string format_move(const Move& move) {
  if (auto* s = std::get_if<SwapPi>(&move)) return "swap " + std::to_string(s->rank);
  if (auto* c = std::get_if<ChangeInFoliation>(&move)) {
    std::ostringstream os;
    os << "change " << c->rank << " " << (c->variant == ChangeVariant::Second ? "second" : "third")
       << " res=" << c->resolution << " prior=" << c->prior_resolution;
    return os.str();
  }
  if (auto* f = std::get_if<FingerMove>(&move)) return format_finger("finger", f->data);
  return format_finger("unfinger", std::get<InverseFingerMove>(move).data);
}

std::string serialize_mov(const MoveScript& script) {
  if (!(normalized(script.base) == trivial_movie())) {
    throw std::invalid_argument("only scripts based on the trivial movie can be written");
  }
  std::string out = "mov 1 base=trivial\n";
  for (const auto& step : script.steps) out += format_move(step) + "\n";
  return out;
}

std::string gpp_dot(const GppGraph& g) {
  std::ostringstream os;
  os << "graph gpp {\n";
  for (const auto& v : g.vertices) os << "  \"" << v << "\";\n";
  for (const auto& e : g.edges) os << "  \"" << e.u << "\" -- \"" << e.v << "\" [label=\"" << e.rank << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string gpp_text(const GppGraph& g) {
  std::ostringstream os;
  os << "vertices=" << g.vertices.size() << " edges=" << g.edges.size() << " tree=" << (is_tree(g) ? "true" : "false")
     << "\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    os << "vertex id=" << g.vertices[v] << " degree=" << g.rotation[v].size() << " rotation=";
    for (std::size_t i = 0; i < g.rotation[v].size(); ++i) os << (i ? "," : "") << g.edges[g.rotation[v][i].edge].rank;
    os << "\n";
  }
  for (const auto& e : g.edges) os << "edge rank=" << e.rank << " u=" << e.u << " v=" << e.v << "\n";
  return os.str();
}

std::string counts_line(const SingularityCounts& c) {
  std::ostringstream os;
  os << "e+=" << c.e_plus << " e-=" << c.e_minus << " h+=" << c.h_plus << " h-=" << c.h_minus << " PH=" << c.euler();
  return os.str();
}

std::string ledger_text(const NormLedger& ledger) {
  std::size_t label_w = 5, stmt_w = 9;
  for (const auto& e : ledger.entries) label_w = std::max(label_w, e.label.size());
  for (const auto& id : ledger.identities) stmt_w = std::max(stmt_w, id.statement.size());
  std::ostringstream os;
  os << "surgery ledger chi(B)=" << ledger.chi_b << "\n";
  os << std::left << std::setw(static_cast<int>(label_w)) << "page" << "  " << std::right << std::setw(5) << "chi"
     << "  " << std::setw(5) << "norm" << "\n";
  for (const auto& e : ledger.entries) {
    os << std::left << std::setw(static_cast<int>(label_w)) << e.label << "  " << std::right << std::setw(5)
       << e.page_euler << "  " << std::setw(5) << e.norm << "\n";
  }
  os << "\n";
  for (const auto& id : ledger.identities) {
    os << std::left << std::setw(static_cast<int>(stmt_w)) << id.statement << "  " << std::right << std::setw(4)
       << id.lhs << " " << std::setw(2) << id.relation << " " << std::setw(4) << id.rhs << "  "
       << (id.holds ? "holds" : "FAILS") << "\n";
  }
  return os.str();
}

std::string ledger_kv(const NormLedger& ledger) {
  std::ostringstream os;
  os << "chi_B=" << ledger.chi_b << "\n";
  for (const auto& e : ledger.entries) os << "entry label=" << e.label << " chi=" << e.page_euler << " norm=" << e.norm << "\n";
  for (std::size_t i = 0; i < ledger.identities.size(); ++i) {
    const auto& id = ledger.identities[i];
    os << "identity index=" << i << " lhs=" << id.lhs << " relation=" << id.relation << " rhs=" << id.rhs
       << " holds=" << (id.holds ? "true" : "false") << "\n";
  }
  os << "all_hold=" << (ledger.all_hold() ? "true" : "false") << "\n";
  return os.str();
}

std::string census_text(int k, const std::vector<FoliationMovie>& movies) {
  int trees = 0;
  for (const auto& m : movies) trees += is_tree(build_gpp(m)) ? 1 : 0;
  std::ostringstream os;
  os << "# census k=" << k << " movies=" << movies.size() << " tree=" << trees
     << " nontree=" << movies.size() - trees << "\n";
  for (const auto& m : movies) os << serialize_fol_line(m) << "\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace folcalc
