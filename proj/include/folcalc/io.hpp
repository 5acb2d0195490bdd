#pragma once

// Text formats: .fol foliation documents, .mov move scripts, DOT output for
// G++, norm ledgers and census files.

#include <stdexcept>
#include <string>
#include <vector>

#include "folcalc/foliation.hpp"
#include "folcalc/moves.hpp"
#include "folcalc/openbook_norm.hpp"
#include "folcalc/tightness.hpp"

namespace folcalc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line;
  int column;
  std::string message;
};

/// Parses a .fol document, either one declaration per line or the single-line
/// form with declarations separated by ';'. The result is not validated.
FoliationMovie parse_fol(const std::string& text);
/// Normalized multi-line document.
std::string serialize_fol(const FoliationMovie& m);
/// Normalized single-line document (census form), no trailing newline.
std::string serialize_fol_line(const FoliationMovie& m);

MoveScript parse_mov(const std::string& text);
/// Throws std::invalid_argument unless the script starts from the trivial movie.
std::string serialize_mov(const MoveScript& script);
std::string format_move(const Move& move);

std::string gpp_dot(const GppGraph& g);
std::string gpp_text(const GppGraph& g);

std::string counts_line(const SingularityCounts& c);

std::string ledger_text(const NormLedger& ledger);
std::string ledger_kv(const NormLedger& ledger);

/// Census file for the movies with k sources: comment header with counts,
/// then one single-line document per movie.
std::string census_text(int k, const std::vector<FoliationMovie>& movies);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace folcalc
