#include "relayrate/imeasure.hpp"

#include <cmath>
#include <string>

#include "relayrate/errors.hpp"

namespace relayrate {

double multi_information_given(const SourceModel& model, SubsetMask k,
                               SubsetMask cond) {
  if (k == 0) {
    throw Error(Errc::EmptySubset,
                "multiple-mutual information needs a nonempty argument set");
  }
  if ((k & cond) != 0) {
    throw Error(Errc::OverlappingSets,
                "argument set " + subset_to_string(k) +
                    " overlaps conditioning set " + subset_to_string(cond));
  }
  // Alternating sum of H(W_T | W_cond) over nonempty T inside k, expanded as
  // raw entropy differences; clamping would bias the signed sum.
  const double h_cond = model.entropy(cond);
  double acc = 0.0;
  for (SubsetMask t = k;; t = (t - 1) & k) {
    if (t != 0) {
      const double term = model.entropy(t | cond) - h_cond;
      acc += (subset_size(t) & 1) ? term : -term;
    }
    if (t == 0) break;
  }
  return acc;
}

double multi_information(const SourceModel& model, SubsetMask k) {
  if (k > model.full_set()) {
    throw Error(Errc::BitOutOfRange, "subset " + subset_to_string(k) +
                                         " has bits beyond user " +
                                         std::to_string(model.num_users()));
  }
  return multi_information_given(model, k,
                                 complement_mask(k, model.num_users()));
}

AtomTable atom_table(const SourceModel& model) {
  const SubsetMask full = model.full_set();
  AtomTable table;
  table.num_users = model.num_users();
  table.atoms.assign(std::size_t{full} + 1, 0.0);
  for (SubsetMask k = 1; k <= full; ++k) {
    table.atoms[k] = multi_information(model, k);
  }
  return table;
}

double atom_composition_residual(const SourceModel& model, SubsetMask s) {
  const SubsetMask comp = complement_mask(s, model.num_users());
  const double lhs = model.entropy(model.full_set()) - model.entropy(comp);
  double rhs = 0.0;
  for (SubsetMask k = s;; k = (k - 1) & s) {
    if (k != 0) rhs += multi_information(model, k);
    if (k == 0) break;
  }
  return std::abs(lhs - rhs);
}

double singleton_expansion_residual(const SourceModel& model, SubsetMask s,
                                    int j) {
  const int num_users = model.num_users();
  if (j < 1 || j > num_users || contains_user(s, j)) {
    throw Error(Errc::JNotInComplement,
                "user " + std::to_string(j) +
                    " must lie outside the subset " + subset_to_string(s));
  }
  const SubsetMask comp = complement_mask(s, num_users);  // contains j
  const SubsetMask jm = singleton_mask(j);
  const double lhs = model.entropy(comp) - model.entropy(comp ^ jm);
  double rhs = 0.0;
  for (SubsetMask k = s;; k = (k - 1) & s) {
    rhs += multi_information(model, k | jm);
    if (k == 0) break;
  }
  return std::abs(lhs - rhs);
}

double pair_expansion_residual(const SourceModel& model, SubsetMask s, int j,
                               int m) {
  const int num_users = model.num_users();
  if (j < 1 || j > num_users || m < 1 || m > num_users || j == m ||
      contains_user(s, j) || contains_user(s, m)) {
    throw Error(Errc::InvalidPair,
                "users " + std::to_string(j) + "," + std::to_string(m) +
                    " must be distinct and lie outside " +
                    subset_to_string(s));
  }
  const SubsetMask pair = singleton_mask(j) | singleton_mask(m);
  const SubsetMask cond = complement_mask(s | pair, num_users);
  // I(W_j; W_m | W_cond) from raw entropies.
  const double lhs = model.entropy(singleton_mask(j) | cond) +
                     model.entropy(singleton_mask(m) | cond) -
                     model.entropy(pair | cond) - model.entropy(cond);
  double rhs = 0.0;
  for (SubsetMask k = s;; k = (k - 1) & s) {
    rhs += multi_information(model, k | pair);
    if (k == 0) break;
  }
  return std::abs(lhs - rhs);
}

double balance_gap(int k, int num_users) {
  if (num_users < 3 || k < 2 || k > num_users - 1) {
    throw Error(Errc::KOutOfRange,
                "gap is defined for 2 <= k <= L-1, got k=" +
                    std::to_string(k) + ", L=" + std::to_string(num_users));
  }
  return 1.0 + (1.0 / k) * ((num_users - 1.0) / (2.0 * num_users - k - 3.0));
}

BalanceReport balanced_check(const SourceModel& model, double tol) {
  const int num_users = model.num_users();
  if (num_users < 2) {
    throw Error(Errc::UserCountOutOfRange,
                "balance test needs at least 2 users");
  }

  BalanceReport report;
  if (num_users == 2) return report;  // vacuous

  const AtomTable atoms = atom_table(model);
  const SubsetMask full = model.full_set();
  for (int k = 2; k <= num_users - 1; ++k) {
    BalanceReport::Cardinality row;
    row.k = k;
    bool first = true;
    for (SubsetMask s = 1; s <= full; ++s) {
      if (subset_size(s) != k) continue;
      const double v = atoms.at(s);
      if (first || v > row.mu_max) row.mu_max = v;
      if (first || v < row.mu_min) row.mu_min = v;
      first = false;
    }
    row.gap = balance_gap(k, num_users);
    row.margin = row.gap * row.mu_min - row.mu_max;
    row.pass = row.margin >= -tol;
    report.balanced = report.balanced && row.pass;
    if (row.mu_min < -tol) report.negative_atoms = true;
    report.per_k.push_back(row);
  }
  return report;
}

}  // namespace relayrate
