#pragma once

#include <map>
#include <span>
#include <vector>

#include "relayrate/rate_region.hpp"
#include "relayrate/source_model.hpp"

namespace relayrate {

// Additive-noise uplink/downlink channels over a finite field of order q.
// Every quantity computed here depends on the noise laws only through their
// entropies, so that is all the type stores.
struct ChannelSpec {
  int field_order = 2;
  double uplink_noise_entropy = 0.0;               // H(Z), bits
  std::vector<double> downlink_noise_entropies;    // H(N_l), bits, one per user

  int num_users() const {
    return static_cast<int>(downlink_noise_entropies.size());
  }
  double log_field() const;  // log2(field_order)
};

// Validates ranges: q >= 2 and all noise entropies within [0, log2 q].
ChannelSpec make_channel(int field_order, double uplink_noise_entropy,
                         std::vector<double> downlink_noise_entropies,
                         double tol = kDefaultTol);

// Entropy in bits of a pmf over the field; validates nonnegativity and
// total mass within tol of 1.
double pmf_entropy(std::span<const double> pmf, double tol = kDefaultTol);

// C_l = log2(q) - max{H(Z), H(N_l)}; may be <= 0 for very noisy links.
std::vector<double> capacity_terms(const ChannelSpec& channel);

// Channel-coding capacity region membership:
// sum_{i != l} R_i <= C_l for every l, R >= 0.
bool capacity_region_contains(const ChannelSpec& channel, const RateTuple& r,
                              double tol = kDefaultTol);

// Converse bound on the source-channel rate (channel uses per source
// symbol): max over l of H(W_{l^c}|W_l) / C_l.  Users with C_l <= tol and a
// positive requirement make the problem infeasible, returned as +infinity;
// users with both near zero are skipped.
double rate_lower_bound(const SourceModel& model, const ChannelSpec& channel,
                        double tol = kDefaultTol);

// Load factor of a source-coding rate tuple on the relay's links:
// max over l of (sum_{i != l} r_i) / C_l.  Requires every C_l > 0.
double relay_load(const RateTuple& r, const ChannelSpec& channel);

struct KappaResult {
  enum class Kind { Exact, Bounds, Unbounded };

  Kind kind = Kind::Unbounded;
  double lower = 0.0;   // converse bound (finite kinds)
  double upper = 0.0;   // minimum relay load over the region (finite kinds)
  RateTuple witness;    // region tuple attaining upper (finite kinds)
};

// Lower and upper bounds on the optimal source-channel rate kappa*.  When
// they meet within exact_tol the optimum is known exactly and strict
// source-channel separation achieves it.
KappaResult kappa_bounds(const SourceModel& model, const ChannelSpec& channel,
                         double exact_tol = 1e-7,
                         double degenerate_tol = kDefaultTol);

struct CommonMessageResult {
  double threshold = 0.0;  // source-channel rates above this are achievable
  bool balanced = false;
};

// Three-user common-message analysis: the source is assembled from
// independent uniform messages, one per nonempty strict subset, with the
// given per-subset rates.  threshold = max over l of
// (sum of rates of subsets inside l^c) / C_l, and the tuple is balanced when
// max pair rate <= 2 * min pair rate (0/0 counts as balanced).
CommonMessageResult common_message_threshold(
    const std::map<SubsetMask, double>& rates, const ChannelSpec& channel,
    double tol = kDefaultTol);

}  // namespace relayrate
