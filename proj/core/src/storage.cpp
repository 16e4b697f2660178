#include "relayrate/storage.hpp"

#include <numeric>

namespace relayrate {

double storage_rate_closed_form(const SourceModel& model) {
  const std::vector<double> h = exchange_requirements(model);
  const double total = std::accumulate(h.begin(), h.end(), 0.0);
  return total / (model.num_users() - 1);
}

StorageReport optimal_storage_rate(const SourceModel& model, double tol) {
  const RegionOptimum opt = minimize_sum_rate(model);
  StorageReport report;
  report.optimal_rate = opt.value;
  report.argmin = opt.argmin;
  report.closed_form_value = storage_rate_closed_form(model);
  report.closed_form_applicable = in_pstar(model, tol).member;
  return report;
}

}  // namespace relayrate
