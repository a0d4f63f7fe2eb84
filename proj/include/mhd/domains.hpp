#pragma once

#include <optional>

#include "mhd/core.hpp"

namespace mhd {

/// A pair of threshold alternatives: per component, either equal or spanning
/// an interval of at least 3 elements.
struct Thresholds {
    Alt lower;
    Alt upper;

    bool operator==(const Thresholds&) const = default;
};

bool validate_thresholds(const ProductSpace& space, const Thresholds& t);

/// Degenerate thresholds (lower = upper = all-minimum).
Thresholds degenerate_thresholds(const ProductSpace& space);

/// Extreme thresholds: full interval wherever the component has >= 3
/// elements, degenerate on binary components.
Thresholds extreme_thresholds(const ProductSpace& space);

/// Componentwise marginal orders that witness separability, or nullopt.
std::optional<std::vector<MarginalOrder>> separability_witness(const ProductSpace& space,
                                                               const Preference& p);
bool is_separable(const ProductSpace& space, const Preference& p);

bool is_top_separable(const ProductSpace& space, const Preference& p);

/// Single-peaked outside the open threshold interval, unrestricted strictly
/// inside it.
bool is_hybrid_marginal(const MarginalOrder& m, int lower, int upper);

/// Respects every relative ranking that is unanimous across all marginal
/// orders (per component of disagreement) peaked at the preference's own peak.
bool is_semi_separable(const ProductSpace& space, const Preference& p,
                       const std::vector<std::vector<MarginalOrder>>& marginal_domains);

bool is_mh_preference(const ProductSpace& space, const Preference& p, const Thresholds& t);

bool is_msp_preference(const ProductSpace& space, const Preference& p);

// ---- generators (factorial enumeration, guarded) -----------------------------

inline constexpr int kDefaultAltGuard = 8;

Domain gen_universal(const ProductSpace& space, int guard = kDefaultAltGuard);
Domain gen_mh_domain(const ProductSpace& space, const Thresholds& t, int guard = kDefaultAltGuard);
Domain gen_msp_domain(const ProductSpace& space, int guard = kDefaultAltGuard);
Domain gen_top_separable_domain(const ProductSpace& space, int guard = kDefaultAltGuard);
Domain gen_separable_domain(const ProductSpace& space, int guard = kDefaultAltGuard);

// ---- domain-level checks ------------------------------------------------------

/// First (lexicographically, lower then upper alternative index, lower <=
/// upper componentwise) thresholds for which the domain qualifies as a
/// multidimensional hybrid domain, or nullopt.
std::optional<Thresholds> is_mh_domain(const Domain& d);

/// All qualifying thresholds, in search order.
std::vector<Thresholds> mh_domain_thresholds_all(const Domain& d);

/// A relabeling of one component plus marginal thresholds making every given
/// marginal order hybrid.
struct HybridRepresentation {
    int component = 0;
    std::vector<int> order;  // order[k] = element at chain position k
    int lower = 0;           // chain positions under `order`
    int upper = 0;
};

/// Minimal-interval hybrid representation of a set of marginal orders, or
/// nullopt. Ties broken lexicographically on (order, lower, upper).
std::optional<HybridRepresentation> find_hybrid_representation(
    const std::vector<MarginalOrder>& ds, int guard = kDefaultAltGuard);

}  // namespace mhd
