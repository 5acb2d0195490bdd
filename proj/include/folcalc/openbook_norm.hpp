#pragma once

// Euler characteristic and support-norm arithmetic for abstract open books.
// The stored quantity is the honest page Euler characteristic; the norm of
// an open book is its negative.

#include <optional>
#include <string>
#include <vector>

namespace folcalc {

struct Page {
  int genus = 0;
  int boundary_count = 1;

  Page() = default;
  /// Throws std::invalid_argument for negative genus or empty boundary.
  Page(int genus, int boundary_count);
  bool operator==(const Page&) const = default;
};

struct AbstractOpenBook {
  Page page;
  std::optional<std::string> monodromy_note;
};

int euler_char(const Page& page);
int norm(const Page& page);
int norm(const AbstractOpenBook& ob);

int heegaard_genus_from_norm(int sn);

Page boundary_connect_sum(const Page& a, const Page& b);

enum class Semantics { UpperBound, Equality };

struct Additivity {
  int value = 0;
  Semantics semantics = Semantics::UpperBound;
  bool tight_flag = false;
};

/// sn1 + sn2 + 1, an upper bound for the support norm of the connected sum.
int subadditivity_bound(int sn1, int sn2);
/// Same number; equality semantics only when both summands are declared tight.
Additivity tight_additivity(int sn1, int sn2, bool both_tight);

struct LedgerEntry {
  std::string label;
  int page_euler = 0;
  int norm = 0;
};

struct LedgerIdentity {
  std::string statement;
  long lhs = 0;
  long rhs = 0;
  std::string relation;  // "=", "<=" or ">="
  bool holds = false;
};

struct NormLedger {
  int chi_b = 0;
  std::vector<LedgerEntry> entries;
  std::vector<LedgerIdentity> identities;
  bool all_hold() const;
};

/// Bookkeeping of surgery against the standard disc-page open book: every
/// split chi(B1) + chi(B2) = chi(B0) + chi(B) with both pages connected.
/// Throws std::invalid_argument when chi_B > 1.
NormLedger surgery_ledger(int chi_b);

}  // namespace folcalc
