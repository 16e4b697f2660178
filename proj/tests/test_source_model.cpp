#include <doctest.h>

#include <cmath>
#include <random>

#include "relayrate/errors.hpp"
#include "relayrate/source_model.hpp"
#include "support/oracles.hpp"

using namespace relayrate;
using namespace testsupport;

namespace {

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

TabularPmf uniform_bits(int num_users) {
  TabularPmf pmf;
  pmf.alphabet_sizes.assign(num_users, 2);
  const int tuples = 1 << num_users;
  for (int t = 0; t < tuples; ++t) {
    TabularPmf::Entry e;
    e.symbols.resize(num_users);
    for (int l = 0; l < num_users; ++l) e.symbols[l] = (t >> l) & 1;
    e.p = 1.0 / tuples;
    pmf.entries.push_back(std::move(e));
  }
  return pmf;
}

}  // namespace

TEST_CASE("tabular validation and entropies") {
  SUBCASE("single uniform bit") {
    const SourceModel m = validate_tabular(uniform_bits(1));
    CHECK(m.entropy(0b1) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("two independent uniform bits") {
    const SourceModel m = validate_tabular(uniform_bits(2));
    CHECK(m.entropy(0b11) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m.entropy(0b01) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("sensor source matches hidden-configuration enumeration") {
    const std::vector<double> sigmas{0.1, 0.12, 0.2};
    const SourceModel m = validate_tabular(make_sensor(0.2, sigmas));
    for (SubsetMask s = 0; s <= 0b111; ++s) {
      CHECK(std::abs(m.entropy(s) -
                     sensor_entropy_bruteforce(0.2, sigmas, s)) <= 1e-12);
    }
  }

  SUBCASE("rejects bad pmfs") {
    TabularPmf pmf = uniform_bits(1);
    pmf.entries[0].p = -0.5;
    pmf.entries[1].p = 1.5;
    CHECK_THROWS_AS(validate_tabular(pmf), Error);

    pmf = uniform_bits(1);
    pmf.entries[0].p = 0.4;
    CHECK_THROWS_WITH_AS(validate_tabular(pmf),
                         doctest::Contains("mass"), Error);

    pmf = uniform_bits(1);
    pmf.entries[0].symbols[0] = 7;
    CHECK_THROWS_AS(validate_tabular(pmf), Error);

    pmf = uniform_bits(1);
    pmf.entries[1].symbols[0] = 0;
    CHECK_THROWS_AS(validate_tabular(pmf), Error);
  }
}

TEST_CASE("entropy oracle basics") {
  const SourceModel ex3 = example3_model();
  CHECK(ex3.entropy(0b001) == doctest::Approx(3.0));
  CHECK(ex3.entropy(0) == 0.0);
  CHECK_THROWS_AS(ex3.entropy(0b1111), Error);

  EntropyProfile profile;
  profile.num_users = 3;
  profile.values = {{0b001, 7.0},  {0b010, 12.0}, {0b100, 12.0},
                    {0b011, 16.0}, {0b101, 16.0}, {0b110, 16.0},
                    {0b111, 17.0}};
  const ProfileValidation v = profile_validate(profile);
  CHECK(v.warnings.empty());
  CHECK(v.model.entropy(0b110) == doctest::Approx(16.0));
}

TEST_CASE("conditional entropies of the worked sources") {
  const SourceModel ex3 = example3_model();
  const SourceModel ex4 = example4_model();
  const SourceModel ex5 = example5_model();
  CHECK(ex3.conditional_entropy(0b001, 0b110) == doctest::Approx(1.0));
  CHECK(ex4.conditional_entropy(0b110, 0b001) == doctest::Approx(3.0));
  CHECK(ex5.conditional_entropy(0b110, 0b001) == doctest::Approx(10.0));
  CHECK_THROWS_AS(ex3.conditional_entropy(0b011, 0b001), Error);
}

TEST_CASE("exchange requirements") {
  CHECK(exchange_requirements(example3_model()) ==
        std::vector<double>{3.0, 3.0, 3.0});
  CHECK(exchange_requirements(example4_model()) ==
        std::vector<double>{3.0, 2.0, 2.0});
  CHECK(exchange_requirements(example5_model()) ==
        std::vector<double>{10.0, 5.0, 5.0});
}

TEST_CASE("component sources") {
  SUBCASE("unit-rate pairs reproduce the three-bit-string source") {
    const SourceModel m = example3_model();
    CHECK(m.entropy(0b111) == doctest::Approx(6.0));
    CHECK(m.entropy(0b011) == doctest::Approx(5.0));
  }

  SUBCASE("empty construction is the all-zero source") {
    const SourceModel m = make_component(2, {}).to_model();
    for (SubsetMask s = 0; s <= 0b11; ++s) CHECK(m.entropy(s) == 0.0);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(make_component(3, {{0, 1.0}}), Error);
    CHECK_THROWS_AS(make_component(3, {{0b001, -1.0}}), Error);
    CHECK_THROWS_AS(make_component(3, {{0b11111, 1.0}}), Error);
  }
}

TEST_CASE("sensor pmf") {
  SUBCASE("deterministic event decouples the sensors") {
    const std::vector<double> sigmas{0.3, 0.5, 0.9};
    const SourceModel m = validate_tabular(make_sensor(1.0, sigmas));
    double expected = 0.0;
    for (double s : sigmas) expected += binary_entropy(s);
    CHECK(m.entropy(0b111) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(m.entropy(0b101) ==
          doctest::Approx(binary_entropy(0.3) + binary_entropy(0.9)));
  }

  SUBCASE("range validation") {
    CHECK_THROWS_AS(make_sensor(1.2, {0.5}), Error);
    CHECK_THROWS_AS(make_sensor(0.5, {-0.1, 0.5}), Error);
  }
}

TEST_CASE("profile validation") {
  SUBCASE("monotonicity violation warns") {
    EntropyProfile p;
    p.num_users = 2;
    p.values = {{0b01, 2.0}, {0b10, 1.0}, {0b11, 1.0}};
    const ProfileValidation v = profile_validate(p);
    REQUIRE(!v.warnings.empty());
    CHECK(v.warnings.front().find("monotonicity") != std::string::npos);
    CHECK_THROWS_AS(profile_validate(p, kDefaultTol, true), Error);
  }

  SUBCASE("all-zero profile is valid") {
    EntropyProfile p;
    p.num_users = 2;
    p.values = {{0b01, 0.0}, {0b10, 0.0}, {0b11, 0.0}};
    CHECK(profile_validate(p).warnings.empty());
  }

  SUBCASE("missing subsets are rejected") {
    EntropyProfile p;
    p.num_users = 2;
    p.values = {{0b01, 1.0}, {0b11, 2.0}};
    CHECK_THROWS_AS(profile_validate(p), Error);
  }
}

TEST_CASE("chain rule on random tabular sources") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 25; ++trial) {
    const int num_users = 2 + trial % 3;
    const SourceModel m =
        validate_tabular(random_tabular(rng, num_users, 3));
    const SubsetMask full = m.full_set();
    for (SubsetMask t = 0; t <= full; ++t) {
      for (SubsetMask s = 0; s <= full; ++s) {
        if ((s & t) != 0) continue;
        CHECK(std::abs(m.entropy(s | t) - m.entropy(t) -
                       m.conditional_entropy(s, t)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("component oracle equivalence with materialised pmfs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> rate(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const int num_users = 2 + trial % 2;
    std::map<SubsetMask, double> bits;
    for (SubsetMask s = 1; s <= full_mask(num_users); ++s) {
      bits[s] = rate(rng);
    }
    const ComponentSource source = make_component(num_users, bits);
    const SourceModel direct = source.to_model();
    const SourceModel materialised =
        validate_tabular(materialize_component(source));
    for (SubsetMask s = 0; s <= full_mask(num_users); ++s) {
      CHECK(std::abs(direct.entropy(s) - materialised.entropy(s)) <= 1e-9);
    }
  }
}

TEST_CASE("Shannon inequalities hold for random pmfs") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int num_users = 2 + trial % 3;
    const SourceModel m =
        validate_tabular(random_tabular(rng, num_users, 3));
    const SubsetMask full = m.full_set();
    for (SubsetMask s = 0; s <= full; ++s) {
      for (int i = 1; i <= num_users; ++i) {
        const SubsetMask bi = singleton_mask(i);
        if (s & bi) continue;
        CHECK(m.entropy(s) <= m.entropy(s | bi) + 1e-9);  // monotone
        for (int j = i + 1; j <= num_users; ++j) {
          const SubsetMask bj = singleton_mask(j);
          if (s & bj) continue;
          CHECK(m.entropy(s | bi) + m.entropy(s | bj) + 1e-9 >=
                m.entropy(s | bi | bj) + m.entropy(s));  // submodular
        }
      }
    }
  }
}

TEST_CASE("exchange requirement equals full-set entropy difference") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    const int num_users = 2 + trial % 3;
    const SourceModel m =
        validate_tabular(random_tabular(rng, num_users, 3));
    const std::vector<double> h = exchange_requirements(m);
    for (int l = 1; l <= num_users; ++l) {
      CHECK(std::abs(h[l - 1] - (m.entropy(m.full_set()) -
                                 m.entropy(singleton_mask(l)))) <= 1e-9);
    }
  }
}
