#include "relayrate/relay.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "relayrate/errors.hpp"

namespace relayrate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double ChannelSpec::log_field() const { return std::log2(field_order); }

ChannelSpec make_channel(int field_order, double uplink_noise_entropy,
                         std::vector<double> downlink_noise_entropies,
                         double tol) {
  if (field_order < 2) {
    throw Error(Errc::EntropyOutOfRange,
                "field order must be >= 2, got " + std::to_string(field_order));
  }
  const int num_users = static_cast<int>(downlink_noise_entropies.size());
  if (num_users < 1 || num_users > kMaxUsers) {
    throw Error(Errc::UserCountOutOfRange,
                "channel must serve between 1 and " +
                    std::to_string(kMaxUsers) + " users");
  }
  const double log_field = std::log2(field_order);
  auto check_range = [&](double h, const std::string& what) {
    if (h < -tol || h > log_field + tol) {
      throw Error(Errc::EntropyOutOfRange,
                  what + " entropy " + std::to_string(h) +
                      " outside [0, log2 q] = [0, " +
                      std::to_string(log_field) + "]");
    }
  };
  check_range(uplink_noise_entropy, "uplink noise");
  for (double h : downlink_noise_entropies) check_range(h, "downlink noise");
  return ChannelSpec{field_order, uplink_noise_entropy,
                     std::move(downlink_noise_entropies)};
}

double pmf_entropy(std::span<const double> pmf, double tol) {
  double mass = 0.0;
  for (double p : pmf) {
    if (p < 0.0) {
      throw Error(Errc::NegativeProbability,
                  "noise pmf entry " + std::to_string(p) + " is negative");
    }
    mass += p;
  }
  if (std::abs(mass - 1.0) > tol) {
    throw Error(Errc::MassNotOne,
                "noise pmf mass is " + std::to_string(mass) + ", expected 1");
  }
  double h = 0.0;
  for (double p : pmf) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

std::vector<double> capacity_terms(const ChannelSpec& channel) {
  const double log_field = channel.log_field();
  std::vector<double> c;
  c.reserve(channel.downlink_noise_entropies.size());
  for (double hn : channel.downlink_noise_entropies) {
    c.push_back(log_field - std::max(channel.uplink_noise_entropy, hn));
  }
  return c;
}

bool capacity_region_contains(const ChannelSpec& channel, const RateTuple& r,
                              double tol) {
  const int num_users = channel.num_users();
  if (r.size() != num_users) {
    throw Error(Errc::LengthMismatch,
                "rate tuple length must match the channel user count");
  }
  const std::vector<double> c = capacity_terms(channel);
  double total = 0.0;
  for (double v : r.rates) {
    if (v < -tol) return false;
    total += v;
  }
  for (int l = 0; l < num_users; ++l) {
    if (total - r.rates[l] > c[l] + tol) return false;
  }
  return true;
}

double rate_lower_bound(const SourceModel& model, const ChannelSpec& channel,
                        double tol) {
  if (channel.num_users() != model.num_users()) {
    throw Error(Errc::LengthMismatch,
                "channel serves " + std::to_string(channel.num_users()) +
                    " users but the source has " +
                    std::to_string(model.num_users()));
  }
  const std::vector<double> h = exchange_requirements(model);
  const std::vector<double> c = capacity_terms(channel);
  double bound = 0.0;
  for (std::size_t l = 0; l < h.size(); ++l) {
    if (c[l] <= tol) {
      if (h[l] > tol) return kInf;  // positive demand over a dead link
      continue;
    }
    bound = std::max(bound, h[l] / c[l]);
  }
  return bound;
}

double relay_load(const RateTuple& r, const ChannelSpec& channel) {
  const int num_users = channel.num_users();
  if (r.size() != num_users) {
    throw Error(Errc::LengthMismatch,
                "rate tuple length must match the channel user count");
  }
  const std::vector<double> c = capacity_terms(channel);
  double total = 0.0;
  for (double v : r.rates) total += v;
  double load = 0.0;
  for (int l = 0; l < num_users; ++l) {
    if (c[l] <= 0.0) {
      throw Error(Errc::NonpositiveCapacity,
                  "relay load needs positive capacity on every link");
    }
    load = std::max(load, (total - r.rates[l]) / c[l]);
  }
  return load;
}

KappaResult kappa_bounds(const SourceModel& model, const ChannelSpec& channel,
                         double exact_tol, double degenerate_tol) {
  const double lower = rate_lower_bound(model, channel, degenerate_tol);
  if (std::isinf(lower)) {
    return KappaResult{KappaResult::Kind::Unbounded, 0.0, 0.0, {}};
  }

  // Dead links whose user demands nothing are dropped from the load
  // objective; rate_lower_bound already skipped them.
  const std::vector<double> c = capacity_terms(channel);
  SubsetMask active = 0;
  for (int l = 1; l <= model.num_users(); ++l) {
    if (c[l - 1] > degenerate_tol) active |= singleton_mask(l);
  }

  KappaResult result;
  result.lower = lower;
  if (active == 0) {
    // Nothing needs to be exchanged at all.
    result.kind = KappaResult::Kind::Exact;
    result.upper = lower;
    result.witness.rates.assign(model.num_users(), 0.0);
    return result;
  }

  const RegionOptimum opt = minimize_relay_load(model, c, active);
  result.upper = opt.value;
  result.witness = opt.argmin;
  result.kind = std::abs(result.upper - result.lower) <= exact_tol
                    ? KappaResult::Kind::Exact
                    : KappaResult::Kind::Bounds;
  if (result.kind == KappaResult::Kind::Exact) result.upper = result.lower;
  return result;
}

CommonMessageResult common_message_threshold(
    const std::map<SubsetMask, double>& rates, const ChannelSpec& channel,
    double tol) {
  if (channel.num_users() != 3) {
    throw Error(Errc::WrongUserCount,
                "the common-message analysis is defined for 3 users");
  }
  const SubsetMask full = full_mask(3);
  for (SubsetMask s = 1; s < full; ++s) {
    if (!rates.count(s)) {
      throw Error(Errc::WrongUserCount,
                  "rates must cover all six nonempty strict subsets; " +
                      subset_to_string(s) + " is missing");
    }
  }
  for (const auto& [subset, rate] : rates) {
    if (subset == 0 || subset >= full) {
      throw Error(Errc::WrongUserCount,
                  "rate subset " + subset_to_string(subset) +
                      " is not a nonempty strict subset of {1,2,3}");
    }
    if (rate < 0.0) {
      throw Error(Errc::NegativeRate, "message rates must be nonnegative");
    }
  }

  const std::vector<double> c = capacity_terms(channel);
  CommonMessageResult out;
  for (int l = 1; l <= 3; ++l) {
    const SubsetMask others = complement_mask(singleton_mask(l), 3);
    double demand = 0.0;
    for (SubsetMask s = 1; s < full; ++s) {
      if (is_subset_of(s, others)) demand += rates.at(s);
    }
    if (c[l - 1] <= tol) {
      if (demand > tol) {
        out.threshold = kInf;
        break;
      }
      continue;
    }
    out.threshold = std::max(out.threshold, demand / c[l - 1]);
  }

  double pair_max = 0.0, pair_min = 0.0;
  bool first = true;
  for (SubsetMask s = 1; s < full; ++s) {
    if (subset_size(s) != 2) continue;
    const double v = rates.at(s);
    if (first || v > pair_max) pair_max = v;
    if (first || v < pair_min) pair_min = v;
    first = false;
  }
  // All-zero pair rates count as balanced (equal atoms).
  out.balanced = pair_max <= tol || pair_max <= 2.0 * pair_min + tol;
  return out;
}

}  // namespace relayrate
