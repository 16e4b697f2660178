#pragma once

#include <vector>

#include "relayrate/lp.hpp"
#include "relayrate/source_model.hpp"

namespace relayrate {

struct RateTuple {
  std::vector<double> rates;  // bits per source symbol, one per user

  int size() const { return static_cast<int>(rates.size()); }
  double l1_norm() const;
};

// One Slepian-Wolf style constraint: sum of r_i over i in subset >= bound,
// where bound = H(W_S | W_{S^c}).
struct RegionConstraint {
  SubsetMask subset = 0;
  double bound = 0.0;
};

// The data-exchange rate region: one constraint per nonempty strict subset
// (2^L - 2 in total), ordered by (cardinality, mask).  The total sum-rate
// constraint is deliberately absent: every user already holds its own data.
struct RegionConstraints {
  int num_users = 0;
  std::vector<RegionConstraint> constraints;
};

RegionConstraints region_constraints(const SourceModel& model);

// The exchange region plus the total sum-rate row sum r_i >= H(W_[1,L]):
// the classical distributed-coding region, kept for side-by-side
// comparison.  The exchange analyses never use it.
RegionConstraints slepian_wolf_constraints(const SourceModel& model);

struct RegionMembership {
  bool inside = false;
  double worst_slack = 0.0;   // smallest lhs-minus-bound over all checks
  bool worst_is_nonneg = false;
  SubsetMask worst_subset = 0;  // when the worst check is an entropic constraint
  int worst_user = 0;           // 1-based, when the worst check is r_l >= 0
};

// Membership of r in the region, allowing tol slack on every facet.
RegionMembership region_contains(const SourceModel& model, const RateTuple& r,
                                 double tol = kDefaultTol);

// The unique tuple that meets every exchange requirement with equality:
// sum of r_i over i != l equals H(W_{l^c} | W_l) for every l.  Closed form
// r_l = |h|_1/(L-1) - h_l; components may be negative, in which case the
// tuple lies outside the region.
RateTuple tight_rate_tuple(const SourceModel& model);

// The same tuple assembled from the atom table:
// r_l = sum over strict subsets K of w_l(K) * atom(K), with weight
// (L-|K|)/(L-1) when l is in K and (1-|K|)/(L-1) otherwise.
RateTuple tight_rate_tuple_from_atoms(const SourceModel& model);

struct PstarResult {
  bool member = false;
  RateTuple witness;          // the tight tuple that was tested
  RegionMembership detail;
};

// P* membership: the tight tuple lies inside the region.  For such sources
// the source-channel rate bounds meet for every channel.
PstarResult in_pstar(const SourceModel& model, double tol = kDefaultTol);

struct RegionOptimum {
  double value = 0.0;
  RateTuple argmin;
};

// minimize t  s.t.  sum_{i != l} r_i <= capacities[l] * t for the users
// selected by active (all by default), r in region, r >= 0, t >= 0.
// Capacities of active users must be positive.
RegionOptimum minimize_relay_load(const SourceModel& model,
                                  const std::vector<double>& capacities);
RegionOptimum minimize_relay_load(const SourceModel& model,
                                  const std::vector<double>& capacities,
                                  SubsetMask active);

// minimize sum of r_l over the region; the optimal centralised storage rate.
RegionOptimum minimize_sum_rate(const SourceModel& model);

// The LPs behind the two optimizations, exposed so the vertex-enumeration
// oracle can be run against the exact same programs.
LinearProgram relay_load_lp(const SourceModel& model,
                            const std::vector<double>& capacities,
                            SubsetMask active);
LinearProgram sum_rate_lp(const SourceModel& model);

}  // namespace relayrate
