#include <doctest.h>

#include <cmath>
#include <random>

#include "relayrate/imeasure.hpp"
#include "relayrate/storage.hpp"
#include "support/oracles.hpp"

using namespace relayrate;
using namespace testsupport;

TEST_CASE("storage rates of the worked sources") {
  SUBCASE("pairwise-coupled source hits the closed form") {
    const StorageReport report = optimal_storage_rate(example3_model());
    CHECK(report.optimal_rate == doctest::Approx(4.5).epsilon(1e-9));
    CHECK(report.closed_form_applicable);
    CHECK(report.closed_form_value == doctest::Approx(4.5));
    for (double v : report.argmin.rates) CHECK(v == doctest::Approx(1.5));
  }

  SUBCASE("outside P* the closed form is only a diagnostic") {
    const StorageReport report = optimal_storage_rate(example4_model());
    CHECK(report.optimal_rate == doctest::Approx(4.0).epsilon(1e-9));
    CHECK_FALSE(report.closed_form_applicable);
    CHECK(report.closed_form_value == doctest::Approx(3.5));
  }

  SUBCASE("zero source stores nothing") {
    const StorageReport report =
        optimal_storage_rate(make_component(3, {}).to_model());
    CHECK(report.optimal_rate == doctest::Approx(0.0));
  }
}

TEST_CASE("closed form values") {
  CHECK(storage_rate_closed_form(example3_model()) == doctest::Approx(4.5));
  CHECK(storage_rate_closed_form(example5_model()) == doctest::Approx(10.0));
  // Fully shared bit: each user reconstructs the other for free.
  CHECK(storage_rate_closed_form(make_component(2, {{0b11, 1.0}}).to_model()) ==
        doctest::Approx(0.0));
}

TEST_CASE("P* sources: LP optimum equals the closed form and tight tuple") {
  std::mt19937 rng(211);
  int sources_checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    SourceModel m = trial % 2 == 0
                        ? validate_tabular(random_tabular(rng, 2, 4))
                        : random_component(rng, 3 + trial % 2, true)
                              .to_model();
    const PstarResult membership = in_pstar(m);
    if (!membership.member) continue;
    ++sources_checked;
    const StorageReport report = optimal_storage_rate(m);
    CHECK(std::abs(report.optimal_rate - storage_rate_closed_form(m)) <=
          1e-7);
    CHECK(report.closed_form_applicable);
    const RateTuple tight = tight_rate_tuple(m);
    for (int l = 0; l < m.num_users(); ++l) {
      CHECK(std::abs(report.argmin.rates[l] - tight.rates[l]) <= 1e-7);
    }
  }
  CHECK(sources_checked > 10);
}

TEST_CASE("storage rate brackets") {
  std::mt19937 rng(223);
  for (int trial = 0; trial < 15; ++trial) {
    const int num_users = 2 + trial % 3;
    const SourceModel m =
        validate_tabular(random_tabular(rng, num_users, 3));
    const StorageReport report = optimal_storage_rate(m);

    // Storing everything raw is feasible.
    double raw = 0.0;
    for (int l = 1; l <= num_users; ++l) {
      raw += m.entropy(singleton_mask(l));
    }
    CHECK(report.optimal_rate <= raw + 1e-7);

    // The argmin is feasible, so every constraint bound is a lower bound on
    // the objective restricted to its support.
    CHECK(region_contains(m, report.argmin, 1e-7).inside);
    for (const RegionConstraint& c : region_constraints(m).constraints) {
      CHECK(report.optimal_rate >= c.bound - 1e-7);
    }
  }
}
