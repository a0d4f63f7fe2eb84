#pragma once

#include <optional>

#include "mhd/core.hpp"

namespace mhd {

inline constexpr long long kDefaultTableGuard = 1'000'000;

/// Throws ResourceError unless base^n <= guard; returns base^n.
long long checked_table_size(int base, int n, long long guard = kDefaultTableGuard);

/// Mixed-radix profile index, voter 0 most significant; uniform base.
int encode_profile(const std::vector<int>& profile, int base);
std::vector<int> decode_profile(int index, int base, int n);

/// A social choice function as a dense table over preference-index profiles.
struct Scf {
    int n = 0;
    int domain_size = 0;
    std::vector<int> table;  // profile index -> alternative index

    int profile_count() const { return static_cast<int>(table.size()); }
    int operator()(const std::vector<int>& profile) const {
        return table[encode_profile(profile, domain_size)];
    }

    bool operator==(const Scf&) const = default;
};

/// A marginal social choice function over one component's marginal domain.
struct MarginalScf {
    int component = 0;
    int n = 0;
    std::vector<MarginalOrder> marginal_domain;  // canonical sorted order
    std::vector<int> table;                      // profile index -> element

    int domain_size() const { return static_cast<int>(marginal_domain.size()); }
    int operator()(const std::vector<int>& profile) const {
        return table[encode_profile(profile, domain_size())];
    }

    bool operator==(const MarginalScf&) const = default;
};

/// One fixed ballot per voter coalition; voter i occupies bit i.
struct Fbr {
    int component = 0;
    int n = 0;
    std::vector<int> ballots;  // indexed by coalition bitmask, size 2^n

    bool operator==(const Fbr&) const = default;
};

/// Peak-profile table: the compressed form of a tops-only rule. Cells for
/// peak vectors not realized in the originating domain hold -1.
struct VotingScheme {
    ProductSpace space;
    int n = 0;
    std::vector<int> table;  // peak-profile index -> alternative index

    int operator()(const std::vector<int>& peaks) const {
        return table[encode_profile(peaks, space.alt_count())];
    }
};

// ---- axioms ---------------------------------------------------------------------

struct Manipulation {
    int voter = 0;
    std::vector<int> profile;  // sincere profile (preference indices)
    int misreport = 0;         // preference index voter deviates to
    int sincere_outcome = 0;
    int misreport_outcome = 0;
};

bool is_unanimous(const Scf& f, const Domain& d);
bool is_unanimous(const MarginalScf& f);

/// Voting-scheme compression when the outcome depends only on peaks, else
/// nullopt.
std::optional<VotingScheme> as_voting_scheme(const Scf& f, const Domain& d);
bool is_tops_only(const Scf& f, const Domain& d);
bool is_tops_only(const MarginalScf& f);

/// Lexicographically smallest manipulation (profile, voter, misreport), or
/// nullopt when the rule is strategy-proof.
std::optional<Manipulation> find_manipulation(const Scf& f, const Domain& d);
std::optional<Manipulation> find_manipulation(const MarginalScf& f);
bool is_strategy_proof(const Scf& f, const Domain& d);
bool is_strategy_proof(const MarginalScf& f);

// ---- fixed ballot rules -----------------------------------------------------------

/// Ballot unanimity and monotonicity over all 2^n coalitions; k = chain size.
bool validate_fbr(const Fbr& f, int k);

/// max over coalitions J of min({peaks of J's members, ballot of J}).
int evaluate_fbr(const Fbr& f, const std::vector<int>& peaks);

/// Some voter's membership pins ballots to [upper, max] and absence to
/// [min, lower].
bool is_constrained_dictatorship(const Fbr& f, int lower, int upper);

MarginalScf fbr_to_marginal_scf(const Fbr& f, std::vector<MarginalOrder> marginal_domain);

// ---- constructions ---------------------------------------------------------------

Scf make_dictatorship(const Domain& d, int voter, int n,
                      long long guard = kDefaultTableGuard);
MarginalScf make_marginal_dictatorship(std::vector<MarginalOrder> marginal_domain, int voter,
                                       int n, long long guard = kDefaultTableGuard);
/// Median of the three reported peaks; n = 3.
MarginalScf make_median_marginal(std::vector<MarginalOrder> marginal_domain,
                                 long long guard = kDefaultTableGuard);

// ---- decomposition ---------------------------------------------------------------

struct DecomposeResult {
    bool ok = false;
    std::vector<MarginalScf> marginals;
    // on failure: two profiles agreeing on every voter's component peak yet
    // mapped to different component outcomes
    int component = -1;
    std::vector<int> profile_a;
    std::vector<int> profile_b;
};

/// Splits f into per-component marginal rules keyed by peak coordinates;
/// fails with a witness when the component outcome is not a function of them.
DecomposeResult decompose(const Scf& f, const Domain& d);

/// f(P) = (f^1([P]^1), ..., f^m([P]^m)) as a dense table.
Scf assemble(const std::vector<MarginalScf>& marginals, const Domain& d,
             long long guard = kDefaultTableGuard);

}  // namespace mhd
