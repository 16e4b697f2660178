#pragma once

#include "relayrate/rate_region.hpp"
#include "relayrate/source_model.hpp"

namespace relayrate {

struct StorageReport {
  double optimal_rate = 0.0;  // bits per source symbol
  RateTuple argmin;
  bool closed_form_applicable = false;  // true iff the source is in P*
  double closed_form_value = 0.0;       // |h|_1 / (L-1), always computed
};

// Minimum total rate a dumb centralised store needs so that any client,
// using its own data as side information, can recover everyone's data:
// the minimum L1 norm over the exchange region.  When the source is in P*
// this equals the closed form and the minimiser is the tight tuple.
StorageReport optimal_storage_rate(const SourceModel& model,
                                   double tol = kDefaultTol);

// The P* closed form |h|_1 / (L-1).  Computed unconditionally for
// diagnostics; it is the true optimum only when the source is in P*.
double storage_rate_closed_form(const SourceModel& model);

}  // namespace relayrate
