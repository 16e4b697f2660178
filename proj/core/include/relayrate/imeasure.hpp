#pragma once

#include <vector>

#include "relayrate/source_model.hpp"

namespace relayrate {

// Conditional multiple-mutual information of the variables indexed by k,
// conditioned on the variables indexed by cond (disjoint from k):
//
//   I(W_{l1}; ...; W_{lk} | W_cond)
//     = sum over nonempty T subseteq k of (-1)^(|T|-1) H(W_T | W_cond).
//
// Reduces to entropy for |k| = 1 and mutual information for |k| = 2; may be
// negative for |k| >= 3.
double multi_information_given(const SourceModel& model, SubsetMask k,
                               SubsetMask cond);

// The information-diagram atom of k: the multiple-mutual information of k
// conditioned on all remaining variables.
double multi_information(const SourceModel& model, SubsetMask k);

// All 2^L - 1 atoms, indexed by subset mask (index 0 is the empty set, 0).
struct AtomTable {
  int num_users = 0;
  std::vector<double> atoms;

  double at(SubsetMask k) const { return atoms[k]; }
};

AtomTable atom_table(const SourceModel& model);

// Residual |H(W_S | W_{S^c}) - sum over K subseteq S of atoms|; zero for
// exact entropy oracles, so this doubles as a consistency check.
double atom_composition_residual(const SourceModel& model, SubsetMask s);

// Residual of the singleton expansion
//   H(W_j | W_{S^c \ {j}}) = sum over K subseteq S of atom(K u {j}),
// valid for j in S^c.
double singleton_expansion_residual(const SourceModel& model, SubsetMask s,
                                    int j);

// Residual of the pairwise expansion
//   I(W_j; W_m | W_{S^c \ {j,m}}) = sum over K subseteq S of atom(K u {j,m}),
// valid for distinct j, m in S^c.
double pair_expansion_residual(const SourceModel& model, SubsetMask s, int j,
                               int m);

// Allowed spread factor between same-cardinality atoms in the balance test,
//   1 + (1/k) * (L-1)/(2L-k-3),  for 2 <= k <= L-1.
double balance_gap(int k, int num_users);

struct BalanceReport {
  struct Cardinality {
    int k = 0;
    double mu_max = 0.0;  // largest atom of cardinality k
    double mu_min = 0.0;  // smallest atom of cardinality k
    double gap = 0.0;
    double margin = 0.0;  // gap * mu_min - mu_max; pass iff >= -tol
    bool pass = false;
  };

  std::vector<Cardinality> per_k;  // k = 2 .. L-1
  bool balanced = true;            // AND of the per-k passes
  bool negative_atoms = false;     // some inspected mu_min < -tol
};

// A source is balanced when, for every cardinality k in [2, L-1], the
// largest atom of that cardinality is at most balance_gap(k, L) times the
// smallest.  For L = 2 the range is empty and the report passes vacuously.
BalanceReport balanced_check(const SourceModel& model,
                             double tol = kDefaultTol);

}  // namespace relayrate
