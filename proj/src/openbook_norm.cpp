#include "folcalc/openbook_norm.hpp"

#include <stdexcept>

namespace folcalc {

Page::Page(int g, int b) : genus(g), boundary_count(b) {
  if (g < 0) throw std::invalid_argument("page genus must be non-negative, got " + std::to_string(g));
  if (b < 1) throw std::invalid_argument("page needs at least one boundary component, got " + std::to_string(b));
}

int euler_char(const Page& page) { return 2 - 2 * page.genus - page.boundary_count; }

int norm(const Page& page) { return -euler_char(page); }

int norm(const AbstractOpenBook& ob) { return norm(ob.page); }

int heegaard_genus_from_norm(int sn) { return sn - 1; }

Page boundary_connect_sum(const Page& a, const Page& b) {
  Page sum(a.genus + b.genus, a.boundary_count + b.boundary_count - 1);
  if (euler_char(sum) != euler_char(a) + euler_char(b) - 1 || norm(sum) != norm(a) + norm(b) + 1) {
    throw std::logic_error("boundary connected sum broke the Euler characteristic count");
  }
  return sum;
}

int subadditivity_bound(int sn1, int sn2) { return sn1 + sn2 + 1; }

Additivity tight_additivity(int sn1, int sn2, bool both_tight) {
  Additivity r;
  r.value = subadditivity_bound(sn1, sn2);
  r.tight_flag = both_tight;
  r.semantics = both_tight ? Semantics::Equality : Semantics::UpperBound;
  return r;
}

bool NormLedger::all_hold() const {
  for (const auto& id : identities) {
    if (!id.holds) return false;
  }
  return true;
}

namespace {

LedgerIdentity identity(std::string statement, long lhs, const std::string& rel, long rhs) {
  LedgerIdentity id{std::move(statement), lhs, rhs, rel, false};
  if (rel == "=") id.holds = lhs == rhs;
  if (rel == "<=") id.holds = lhs <= rhs;
  if (rel == ">=") id.holds = lhs >= rhs;
  return id;
}

}  // namespace

NormLedger surgery_ledger(int chi_b) {
  if (chi_b > 1) {
    throw std::invalid_argument("a connected page with boundary has chi <= 1, got chi_B=" + std::to_string(chi_b));
  }
  NormLedger ledger;
  ledger.chi_b = chi_b;
  const int chi_0 = euler_char(Page(0, 1));
  ledger.entries.push_back({"B0", chi_0, -chi_0});
  ledger.entries.push_back({"B", chi_b, -chi_b});
  const int n_b = -chi_b;
  ledger.identities.push_back(identity("n(B0)", -chi_0, "=", -1));
  for (int chi_1 = chi_b; chi_1 <= 1; ++chi_1) {
    const int chi_2 = chi_b + 1 - chi_1;
    const std::string tag = "[" + std::to_string(chi_1) + "," + std::to_string(chi_2) + "]";
    ledger.entries.push_back({"B1" + tag, chi_1, -chi_1});
    ledger.entries.push_back({"B2" + tag, chi_2, -chi_2});
    ledger.identities.push_back(
        identity("chi(B1)+chi(B2) = chi(B0)+chi(B) " + tag, chi_1 + chi_2, "=", chi_0 + chi_b));
    ledger.identities.push_back(identity("n(B1)+n(B2) = n(B)-1 " + tag, -chi_1 - chi_2, "=", n_b - 1));
    // With sn(xi_i) <= n(B_i): sn1+sn2 <= n(B)-1, so the bound sn1+sn2+1 is attained by B.
    ledger.identities.push_back(
        identity("n(B1)+n(B2)+1 = n(B) " + tag, subadditivity_bound(-chi_1, -chi_2), "=", n_b));
  }
  return ledger;
}

}  // namespace folcalc
