#include "relayrate/rate_region.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "relayrate/errors.hpp"
#include "relayrate/imeasure.hpp"

namespace relayrate {

double RateTuple::l1_norm() const {
  double total = 0.0;
  for (double v : rates) total += std::abs(v);
  return total;
}

namespace {

void require_exchange_setting(const SourceModel& model) {
  if (model.num_users() < 2) {
    throw Error(Errc::UserCountOutOfRange,
                "the exchange region needs at least 2 users");
  }
}

void require_matching_tuple(const SourceModel& model, const RateTuple& r) {
  if (r.size() != model.num_users()) {
    throw Error(Errc::LengthMismatch,
                "rate tuple has " + std::to_string(r.size()) +
                    " entries for a " + std::to_string(model.num_users()) +
                    "-user source");
  }
}

}  // namespace

RegionConstraints region_constraints(const SourceModel& model) {
  require_exchange_setting(model);
  RegionConstraints region;
  region.num_users = model.num_users();
  for (SubsetMask s : sorted_subsets(model.num_users(), false, false)) {
    const SubsetMask comp = complement_mask(s, model.num_users());
    region.constraints.push_back({s, model.conditional_entropy(s, comp)});
  }
  return region;
}

RegionConstraints slepian_wolf_constraints(const SourceModel& model) {
  RegionConstraints region = region_constraints(model);
  region.constraints.push_back(
      {model.full_set(), model.entropy(model.full_set())});
  return region;
}

RegionMembership region_contains(const SourceModel& model, const RateTuple& r,
                                 double tol) {
  require_matching_tuple(model, r);
  RegionMembership result;
  result.inside = true;
  bool first = true;

  for (int l = 1; l <= model.num_users(); ++l) {
    const double slack = r.rates[l - 1];
    if (first || slack < result.worst_slack) {
      result.worst_slack = slack;
      result.worst_is_nonneg = true;
      result.worst_user = l;
      result.worst_subset = 0;
      first = false;
    }
    if (slack < -tol) result.inside = false;
  }

  for (const RegionConstraint& c : region_constraints(model).constraints) {
    double lhs = 0.0;
    for (int u : subset_users(c.subset)) lhs += r.rates[u - 1];
    const double slack = lhs - c.bound;
    if (slack < result.worst_slack) {
      result.worst_slack = slack;
      result.worst_is_nonneg = false;
      result.worst_user = 0;
      result.worst_subset = c.subset;
    }
    if (slack < -tol) result.inside = false;
  }
  return result;
}

RateTuple tight_rate_tuple(const SourceModel& model) {
  require_exchange_setting(model);
  const std::vector<double> h = exchange_requirements(model);
  const double total = std::accumulate(h.begin(), h.end(), 0.0);
  RateTuple r;
  r.rates.resize(h.size());
  for (std::size_t l = 0; l < h.size(); ++l) {
    r.rates[l] = total / (model.num_users() - 1) - h[l];
  }
  return r;
}

RateTuple tight_rate_tuple_from_atoms(const SourceModel& model) {
  require_exchange_setting(model);
  const int num_users = model.num_users();
  const AtomTable atoms = atom_table(model);
  RateTuple r;
  r.rates.assign(num_users, 0.0);
  const SubsetMask full = model.full_set();
  for (SubsetMask k = 1; k < full; ++k) {  // strict subsets only
    const double atom = atoms.at(k);
    const double size = subset_size(k);
    const double in_weight = (num_users - size) / (num_users - 1.0);
    const double out_weight = (1.0 - size) / (num_users - 1.0);
    for (int l = 1; l <= num_users; ++l) {
      r.rates[l - 1] += (contains_user(k, l) ? in_weight : out_weight) * atom;
    }
  }
  return r;
}

PstarResult in_pstar(const SourceModel& model, double tol) {
  PstarResult result;
  result.witness = tight_rate_tuple(model);
  result.detail = region_contains(model, result.witness, tol);
  result.member = result.detail.inside;
  return result;
}

LinearProgram relay_load_lp(const SourceModel& model,
                            const std::vector<double>& capacities,
                            SubsetMask active) {
  require_exchange_setting(model);
  const int num_users = model.num_users();
  if (static_cast<int>(capacities.size()) != num_users) {
    throw Error(Errc::LengthMismatch,
                "capacity vector length must match the user count");
  }

  // Variables r_1..r_L, then the load bound t.
  LinearProgram lp;
  lp.objective.assign(num_users + 1, 0.0);
  lp.objective[num_users] = 1.0;

  for (const RegionConstraint& c : region_constraints(model).constraints) {
    std::vector<double> row(num_users + 1, 0.0);
    for (int u : subset_users(c.subset)) row[u - 1] = 1.0;
    lp.constraints.push_back(std::move(row));
    lp.rhs.push_back(c.bound);
  }
  for (int l = 1; l <= num_users; ++l) {
    if (!contains_user(active, l)) continue;
    if (capacities[l - 1] <= 0.0) {
      throw Error(Errc::NonpositiveCapacity,
                  "capacity of user " + std::to_string(l) +
                      " must be positive");
    }
    std::vector<double> row(num_users + 1, 0.0);
    for (int i = 1; i <= num_users; ++i) {
      if (i != l) row[i - 1] = -1.0;
    }
    row[num_users] = capacities[l - 1];
    lp.constraints.push_back(std::move(row));
    lp.rhs.push_back(0.0);
  }
  return lp;
}

LinearProgram sum_rate_lp(const SourceModel& model) {
  require_exchange_setting(model);
  LinearProgram lp;
  lp.objective.assign(model.num_users(), 1.0);
  for (const RegionConstraint& c : region_constraints(model).constraints) {
    std::vector<double> row(model.num_users(), 0.0);
    for (int u : subset_users(c.subset)) row[u - 1] = 1.0;
    lp.constraints.push_back(std::move(row));
    lp.rhs.push_back(c.bound);
  }
  return lp;
}

namespace {

RegionOptimum optimum_from_lp(const LinearProgram& lp, int num_users) {
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw Error(Errc::NumericalBreakdown,
                "region optimization did not reach an optimum");
  }
  RegionOptimum out;
  out.value = sol.value;
  out.argmin.rates.assign(sol.x.begin(), sol.x.begin() + num_users);
  return out;
}

}  // namespace

RegionOptimum minimize_relay_load(const SourceModel& model,
                                  const std::vector<double>& capacities,
                                  SubsetMask active) {
  return optimum_from_lp(relay_load_lp(model, capacities, active),
                         model.num_users());
}

RegionOptimum minimize_relay_load(const SourceModel& model,
                                  const std::vector<double>& capacities) {
  return minimize_relay_load(model, capacities,
                             full_mask(model.num_users()));
}

RegionOptimum minimize_sum_rate(const SourceModel& model) {
  return optimum_from_lp(sum_rate_lp(model), model.num_users());
}

}  // namespace relayrate
