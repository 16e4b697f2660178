// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "relayrate/imeasure.hpp"
#include "relayrate/json_io.hpp"
#include "relayrate/lp.hpp"
#include "relayrate/rate_region.hpp"
#include "relayrate/relay.hpp"
#include "relayrate/source_model.hpp"
#include "relayrate/storage.hpp"
#include "support/oracles.hpp"

#ifndef RELAYRATE_FIXTURES_DIR
#error "RELAYRATE_FIXTURES_DIR must be defined by the build"
#endif

using namespace relayrate;
using namespace testsupport;

namespace {

struct Criterion {
  Criterion(int id_, std::string title_) : id(id_), title(std::move(title_)) {}

  int id;
  std::string title;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& detail) {
    if (!ok) failures.push_back(detail);
  }

  void expect_near(double actual, double expected, double tol,
                   const std::string& what) {
    if (!(std::abs(actual - expected) <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: got %.10g, expected %.10g (tol %g)",
                    what.c_str(), actual, expected, tol);
      failures.emplace_back(buf);
    }
  }
};

SourceModel fixture_model(const std::string& name) {
  return load_source(std::string(RELAYRATE_FIXTURES_DIR) + "/" + name).model;
}

ChannelSpec fixture_channel(const std::string& name) {
  return load_channel(std::string(RELAYRATE_FIXTURES_DIR) + "/" + name);
}

void criterion1(Criterion& c) {
  const SourceModel m = fixture_model("example3.json");
  const RateTuple r = tight_rate_tuple(m);
  for (int l = 0; l < 3; ++l) {
    c.expect_near(r.rates[l], 1.5, 1e-9, "r*[" + std::to_string(l + 1) + "]");
  }
  c.expect(in_pstar(m).member, "membership expected");
  const RegionConstraints region = region_constraints(m);
  c.expect(region.constraints.size() == 6, "expected 6 constraints");
  for (const RegionConstraint& rc : region.constraints) {
    const double expected = subset_size(rc.subset) == 1 ? 1.0 : 3.0;
    c.expect_near(rc.bound, expected, 1e-12,
                  "bound of " + subset_to_string(rc.subset));
  }
}

void criterion2(Criterion& c) {
  const SourceModel m = fixture_model("example4.json");
  const RateTuple r = tight_rate_tuple(m);
  c.expect_near(r.rates[0], 0.5, 1e-9, "r*[1]");
  c.expect_near(r.rates[1], 1.5, 1e-9, "r*[2]");
  c.expect_near(r.rates[2], 1.5, 1e-9, "r*[3]");
  const PstarResult res = in_pstar(m);
  c.expect(!res.member, "membership must fail");
  c.expect(!res.detail.worst_is_nonneg && res.detail.worst_subset == 0b001,
           "violated subset must be {1}");
}

void criterion3(Criterion& c) {
  const SourceModel m = fixture_model("example5.json");
  const std::vector<double> h = exchange_requirements(m);
  c.expect_near(h[0], 10.0, 1e-9, "h[1]");
  c.expect_near(h[1], 5.0, 1e-9, "h[2]");
  c.expect_near(h[2], 5.0, 1e-9, "h[3]");

  // The profile-form fixture describes the same source.
  const SourceModel profile = fixture_model("example5_profile.json");
  for (SubsetMask s = 0; s <= m.full_set(); ++s) {
    if (std::abs(profile.entropy(s) - m.entropy(s)) > 1e-9) {
      c.expect(false, "profile fixture disagrees at " + subset_to_string(s));
    }
  }
  const RateTuple r = tight_rate_tuple(m);
  c.expect_near(r.rates[0], 0.0, 1e-9, "r*[1]");
  c.expect_near(r.rates[1], 5.0, 1e-9, "r*[2]");
  c.expect_near(r.rates[2], 5.0, 1e-9, "r*[3]");

  const KappaResult unit = kappa_bounds(m, fixture_channel("channel_unit.json"));
  c.expect(unit.kind == KappaResult::Kind::Exact,
           "C=(1,1,1) must make the bounds meet");
  c.expect_near(unit.lower, 10.0, 1e-7, "psi at C=(1,1,1)");
  c.expect_near(unit.upper, 10.0, 1e-7, "min upsilon at C=(1,1,1)");

  const KappaResult split =
      kappa_bounds(m, fixture_channel("channel_split.json"));
  c.expect(split.kind == KappaResult::Kind::Bounds,
           "C=(10,4,4) must leave a gap");
  // Stated expectation Psi = 1; the converse formula max_l h_l/C_l gives
  // max(10/10, 5/4, 5/4) = 1.25, so this sub-check cannot pass.  See the
  // decisions ledger.
  c.expect_near(split.lower, 1.0, 1e-7, "psi at C=(10,4,4) as stated");
  c.expect_near(split.upper, 1.5, 1e-7, "min upsilon at C=(10,4,4)");
}

void criterion4(Criterion& c) {
  c.expect(balanced_check(fixture_model("example7a.json")).balanced,
           "sigma=(0.10,0.12,0.14) must be balanced");
  c.expect(balanced_check(fixture_model("example7b.json")).balanced,
           "sigma=(0.40,0.41,0.42) must be balanced");
  c.expect(!balanced_check(fixture_model("example7c.json")).balanced,
           "sigma=(0.10,0.12,0.20) must not be balanced");

  // The shipped common-message instance is balanced, so its achievability
  // threshold coincides with the exact source-channel rate.
  const SourceModel nine = fixture_model("example9.json");
  c.expect(balanced_check(nine).balanced,
           "shipped common-message instance must be balanced");
  const ChannelSpec unit = fixture_channel("channel_unit.json");
  const KappaResult kb = kappa_bounds(nine, unit);
  c.expect(kb.kind == KappaResult::Kind::Exact,
           "balanced instance must meet the bounds");
  const std::map<SubsetMask, double> rates{{0b001, 1.0}, {0b010, 1.0},
                                           {0b100, 1.0}, {0b011, 1.0},
                                           {0b101, 1.5}, {0b110, 1.8}};
  const CommonMessageResult cm = common_message_threshold(rates, unit);
  c.expect(cm.balanced, "pair spread 1.8 must pass the ratio test");
  c.expect_near(cm.threshold, kb.lower, 1e-8,
                "threshold vs exact source-channel rate");
}

void criterion5(Criterion& c) {
  std::mt19937 rng(500);
  long checks = 0;
  for (int num_users = 2; num_users <= 4; ++num_users) {
    for (int trial = 0; trial < 100; ++trial) {
      const SourceModel m =
          validate_tabular(random_tabular(rng, num_users, 3));
      const SubsetMask full = m.full_set();
      for (SubsetMask s = 0; s <= full; ++s) {
        const double comp = atom_composition_residual(m, s);
        ++checks;
        if (comp > 1e-8) {
          c.expect(false, "composition residual " + std::to_string(comp));
        }
        if (s == full) continue;
        for (int j = 1; j <= num_users; ++j) {
          if (contains_user(s, j)) continue;
          const double r5 = singleton_expansion_residual(m, s, j);
          ++checks;
          if (r5 > 1e-8) {
            c.expect(false, "singleton residual " + std::to_string(r5));
          }
          for (int mm = j + 1; mm <= num_users; ++mm) {
            if (contains_user(s, mm)) continue;
            const double r6 = pair_expansion_residual(m, s, j, mm);
            ++checks;
            if (r6 > 1e-8) {
              c.expect(false, "pair residual " + std::to_string(r6));
            }
          }
        }
      }
    }
  }
  c.expect(checks > 10000, "corpus too small");
}

void criterion6(Criterion& c) {
  std::mt19937 rng(600);
  for (int num_users = 2; num_users <= 4; ++num_users) {
    for (int trial = 0; trial < 100; ++trial) {
      const SourceModel m =
          validate_tabular(random_tabular(rng, num_users, 3));
      const RateTuple a = tight_rate_tuple(m);
      const RateTuple b = tight_rate_tuple_from_atoms(m);
      for (int l = 0; l < num_users; ++l) {
        const double diff = std::abs(a.rates[l] - b.rates[l]);
        if (diff > 1e-8) {
          c.expect(false, "atom representation off by " + std::to_string(diff));
        }
      }
    }
  }
}

void criterion7(Criterion& c) {
  std::mt19937 rng(700);
  int balanced_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int num_users = 3 + trial % 3;
    const ComponentSource source =
        random_component(rng, num_users, trial % 2 == 0);
    const SourceModel m = source.to_model();
    if (!balanced_check(m).balanced) continue;
    ++balanced_count;
    if (!in_pstar(m).member) {
      c.expect(false, "balanced source escaped P* (users=" +
                          std::to_string(num_users) + ")");
    }
  }
  c.expect(balanced_count > 50, "only " + std::to_string(balanced_count) +
                                    " balanced sources generated");
}

void criterion8(Criterion& c) {
  std::mt19937 rng(800);
  for (int trial = 0; trial < 100; ++trial) {
    const SourceModel m = validate_tabular(random_tabular(rng, 2, 4));
    if (!in_pstar(m).member) {
      c.expect(false, "two-user source escaped P*");
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const SourceModel m =
        validate_tabular(random_independent(rng, 2 + trial % 3, 3));
    if (!in_pstar(m).member) {
      c.expect(false, "independent product source escaped P*");
    }
  }
}

void criterion9(Criterion& c) {
  std::mt19937 rng(900);
  for (int trial = 0; trial < 200; ++trial) {
    const LinearProgram lp = random_bounded_lp(rng, 5, 20);
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) {
      c.expect(false, "random bounded LP not solved");
      continue;
    }
    const VertexList oracle = enumerate_vertices(lp);
    if (oracle.status != LpStatus::Optimal) {
      c.expect(false, "oracle failed on a bounded LP");
      continue;
    }
    if (std::abs(sol.value - oracle.min_value) > 1e-7) {
      c.expect(false, "simplex/oracle gap " +
                          std::to_string(sol.value - oracle.min_value));
    }
  }

  const SourceModel ex3 = fixture_model("example3.json");
  const SourceModel ex4 = fixture_model("example4.json");
  const SourceModel ex5 = fixture_model("example5.json");
  std::vector<LinearProgram> lps{
      sum_rate_lp(ex3),
      sum_rate_lp(ex4),
      sum_rate_lp(ex5),
      relay_load_lp(ex3, {1.0, 1.0, 1.0}, full_mask(3)),
      relay_load_lp(ex4, {1.0, 1.0, 1.0}, full_mask(3)),
      relay_load_lp(ex5, {1.0, 1.0, 1.0}, full_mask(3)),
      relay_load_lp(ex5, {10.0, 4.0, 4.0}, full_mask(3)),
  };
  for (std::size_t i = 0; i < lps.size(); ++i) {
    const LpSolution sol = solve_lp(lps[i]);
    const VertexList oracle = enumerate_vertices(lps[i]);
    if (sol.status != LpStatus::Optimal ||
        oracle.status != LpStatus::Optimal ||
        std::abs(sol.value - oracle.min_value) > 1e-7) {
      c.expect(false, "region LP " + std::to_string(i) + " disagrees");
    }
  }
}

void criterion10(Criterion& c) {
  const SourceModel ex3 = fixture_model("example3.json");
  const StorageReport ex3_report = optimal_storage_rate(ex3);
  c.expect_near(ex3_report.optimal_rate, 4.5, 1e-7, "storage of example 3");
  c.expect_near(storage_rate_closed_form(ex3), 4.5, 1e-7,
                "closed form of example 3");

  std::mt19937 rng(1000);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    SourceModel m = trial % 2 == 0
                        ? validate_tabular(random_tabular(rng, 2, 4))
                        : random_component(rng, 3 + trial % 3, true)
                              .to_model();
    if (!in_pstar(m).member) continue;
    ++checked;
    const StorageReport report = optimal_storage_rate(m);
    const double gap =
        std::abs(report.optimal_rate - storage_rate_closed_form(m));
    if (gap > 1e-7) {
      c.expect(false, "closed-form gap " + std::to_string(gap));
    }
  }
  c.expect(checked >= 20, "too few P* sources sampled");

  const SourceModel ex4 = fixture_model("example4.json");
  const StorageReport ex4_report = optimal_storage_rate(ex4);
  const VertexList oracle = enumerate_vertices(sum_rate_lp(ex4));
  c.expect(oracle.status == LpStatus::Optimal, "vertex oracle failed");
  c.expect_near(ex4_report.optimal_rate, oracle.min_value, 1e-7,
                "example 4 storage vs oracle");
  c.expect_near(ex4_report.optimal_rate, 4.0, 1e-7,
                "example 4 storage fixture");
}

void criterion11(Criterion& c) {
  c.expect(balance_gap(2, 3) == 2.0, "gap(2,3) must equal 2 exactly");
  for (int num_users = 3; num_users <= 20; ++num_users) {
    for (int k = 2; k <= num_users - 1; ++k) {
      const double direct =
          1.0 + (num_users - 1.0) / (k * (2.0 * num_users - k - 3.0));
      c.expect_near(balance_gap(k, num_users), direct, 1e-12,
                    "gap(" + std::to_string(k) + "," +
                        std::to_string(num_users) + ")");
    }
  }
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "example 3: tight tuple, membership, region"},
      {2, "example 4: tight tuple, violated subset"},
      {3, "example 5: h, tight tuple, kappa bounds on two channels"},
      {4, "examples 7 and 9: balance verdicts and threshold"},
      {5, "composition/expansion identity suites"},
      {6, "atom representation of the tight tuple"},
      {7, "balanced sources lie in P*"},
      {8, "two-user and independent sources lie in P*"},
      {9, "simplex agrees with the vertex oracle"},
      {10, "storage rates and closed form"},
      {11, "balance gap table"},
  };

  criterion1(criteria[0]);
  criterion2(criteria[1]);
  criterion3(criteria[2]);
  criterion4(criteria[3]);
  criterion5(criteria[4]);
  criterion6(criteria[5]);
  criterion7(criteria[6]);
  criterion8(criteria[7]);
  criterion9(criteria[8]);
  criterion10(criteria[9]);
  criterion11(criteria[10]);

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (c.failures.empty()) {
      std::printf("criterion %2d: PASS  %s\n", c.id, c.title.c_str());
    } else {
      ++failed;
      std::printf("criterion %2d: FAIL  %s\n", c.id, c.title.c_str());
      for (const std::string& f : c.failures) {
        std::printf("              - %s\n", f.c_str());
      }
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
