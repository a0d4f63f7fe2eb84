#pragma once

#include <map>
#include <string>

#include "mhd/domains.hpp"
#include "mhd/rules.hpp"

namespace mhd {

struct EnumerationBudget {
    long long max_nodes = 100'000'000;
    double max_seconds = 300.0;
};

enum class Status { Verified, Refuted, BudgetExhausted, HypothesisUnmet };

std::string status_name(Status s);

struct VerificationReport {
    std::string claim;
    Status status = Status::Verified;
    std::string scope;  // what was actually verified: n, sizes, domain size
    std::map<std::string, long long> counts;
    std::vector<std::string> witnesses;
};

// ---- enumerators ----------------------------------------------------------------

/// All ballot families with ballot unanimity and monotonicity over the
/// coalition lattice; optionally filtered to constrained dictatorships for
/// (lower, upper). k = chain size. Output sorted by ballot table.
std::vector<Fbr> enum_fbrs(int k, int component, int n,
                           std::optional<std::pair<int, int>> constrained = std::nullopt);

struct MarginalEnumResult {
    Status status = Status::Verified;  // Verified = complete, else BudgetExhausted
    std::vector<MarginalScf> rules;    // sorted by table
    long long nodes = 0;
};

/// Backtracking enumeration of all unanimous strategy-proof marginal rules.
MarginalEnumResult enum_sp_marginal_rules(std::vector<MarginalOrder> marginal_domain, int n,
                                          const EnumerationBudget& budget = {}, int workers = 1);

enum class EnumMode { Full, TopsOnly };

struct ScfEnumResult {
    Status status = Status::Verified;
    std::vector<Scf> rules;  // sorted by table
    long long nodes = 0;
};

/// Backtracking enumeration of all unanimous strategy-proof rules. TopsOnly
/// mode enumerates peak-profile tables and validates each lift against the
/// full domain.
ScfEnumResult enum_sp_rules(const Domain& d, int n, EnumMode mode = EnumMode::Full,
                            const EnumerationBudget& budget = {}, int workers = 1);

// ---- verification ---------------------------------------------------------------

/// Set equality between strategy-proof marginal rules on [D]^s and tables of
/// enumerated fixed ballot rules (constrained when the component thresholds
/// differ).
VerificationReport verify_proposition1(const Domain& d, const Thresholds& t, int s, int n,
                                       const EnumerationBudget& budget = {}, int workers = 1);

/// Both directions of the decomposability equivalence: every assembly of
/// strategy-proof marginal rules is strategy-proof, and every strategy-proof
/// rule decomposes into strategy-proof marginal rules.
VerificationReport verify_decomposable_domain(const Domain& d, int n,
                                              const EnumerationBudget& budget = {},
                                              int workers = 1);

/// On a rich domain: the hybrid-domain test and decomposability agree.
VerificationReport verify_theorem(const Domain& d, int n, const EnumerationBudget& budget = {},
                                  int workers = 1);

}  // namespace mhd
