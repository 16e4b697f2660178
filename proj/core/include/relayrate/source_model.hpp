#pragma once

#include <map>
#include <string>
#include <vector>

#include "relayrate/subset.hpp"

namespace relayrate {

// An immutable entropy oracle for a discrete memoryless multi-terminal
// source: num_users() variables W_1..W_L and the joint entropy H(W_S) in
// bits for every subset S.  All entropies are precomputed at construction,
// so queries are O(1) and safe for concurrent reads.
class SourceModel {
 public:
  SourceModel() = default;

  // subset_entropy[s] = H(W_S) for mask s; size must be 2^num_users.
  SourceModel(int num_users, std::vector<double> subset_entropy);

  int num_users() const noexcept { return num_users_; }
  SubsetMask full_set() const noexcept { return full_mask(num_users_); }

  // H(W_S).  H(empty) = 0.
  double entropy(SubsetMask s) const;

  // H(W_S | W_T) = H(W_{S u T}) - H(W_T) with S, T disjoint.  Values in
  // [-tol, 0) are clamped to 0.
  double conditional_entropy(SubsetMask s, SubsetMask given,
                             double tol = kDefaultTol) const;

 private:
  int num_users_ = 0;
  std::vector<double> entropy_;
};

// Per-user exchange requirement: element l is H(W_{l^c} | W_l), the number
// of bits per source symbol user l still needs about everyone else's data.
// Requires num_users >= 2.
std::vector<double> exchange_requirements(const SourceModel& model);

// Sparse joint pmf.  Symbols are 0-based; tuples absent from entries have
// probability zero.
struct TabularPmf {
  struct Entry {
    std::vector<int> symbols;
    double p = 0.0;
  };

  std::vector<int> alphabet_sizes;
  std::vector<Entry> entries;

  int num_users() const { return static_cast<int>(alphabet_sizes.size()); }
};

// Validates the pmf (nonnegative, total mass 1 within tol, symbols in range,
// no duplicate tuples) and builds the entropy oracle by marginalisation.
SourceModel validate_tabular(const TabularPmf& pmf, double tol = kDefaultTol);

// A source assembled from independent uniform components: for each subset S
// with rate R_S > 0, an independent variable of R_S bits shared by exactly
// the users in S.  H(W_T) = sum of R_S over S intersecting T.
struct ComponentSource {
  int num_users = 0;
  std::map<SubsetMask, double> bits;  // nonempty subset -> rate >= 0

  SourceModel to_model() const;
};

ComponentSource make_component(int num_users,
                               const std::map<SubsetMask, double>& bits);

// Noisy-measurement source: a hidden event B in {0,1} with Pr{B=0} = rho is
// observed by L binary sensors as W_l = B xor E_l, Pr{E_l=0} = sigmas[l-1],
// all of B, E_1..E_L independent.
TabularPmf make_sensor(double rho, const std::vector<double>& sigmas);

// A source specified directly by its subset entropies.
struct EntropyProfile {
  int num_users = 0;
  std::map<SubsetMask, double> values;  // every nonempty subset required
};

struct ProfileValidation {
  SourceModel model;
  std::vector<std::string> warnings;
};

// Builds the oracle from an entropy profile.  Monotonicity or submodularity
// violations beyond tol produce warnings; with strict=true they throw
// instead.  Non-entropic profiles are otherwise accepted so hypothetical
// set functions can be explored.
ProfileValidation profile_validate(const EntropyProfile& profile,
                                   double tol = kDefaultTol,
                                   bool strict = false);

}  // namespace relayrate
