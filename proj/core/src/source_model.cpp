#include "relayrate/source_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>

#include "relayrate/errors.hpp"

namespace relayrate {

namespace {

// Largest dense accumulation table for a marginal; larger sub-alphabets fall
// back to hashed aggregation.
constexpr std::uint64_t kDenseTableCap = std::uint64_t{1} << 24;

void check_user_count(int num_users) {
  if (num_users < 1 || num_users > kMaxUsers) {
    throw Error(Errc::UserCountOutOfRange,
                "number of users must lie in [1," +
                    std::to_string(kMaxUsers) + "], got " +
                    std::to_string(num_users));
  }
}

double entropy_bits(const std::vector<double>& masses) {
  double h = 0.0;
  for (double m : masses) {
    if (m > 0.0) h -= m * std::log2(m);
  }
  return h;
}

}  // namespace

SourceModel::SourceModel(int num_users, std::vector<double> subset_entropy)
    : num_users_(num_users), entropy_(std::move(subset_entropy)) {
  check_user_count(num_users_);
  if (entropy_.size() != (std::size_t{1} << num_users_)) {
    throw Error(Errc::LengthMismatch, "entropy table size must be 2^L");
  }
  entropy_[0] = 0.0;
}

double SourceModel::entropy(SubsetMask s) const {
  if (s > full_set()) {
    throw Error(Errc::BitOutOfRange, "subset " + std::to_string(s) +
                                         " has bits beyond user " +
                                         std::to_string(num_users_));
  }
  return entropy_[s];
}

double SourceModel::conditional_entropy(SubsetMask s, SubsetMask given,
                                        double tol) const {
  if ((s & given) != 0) {
    throw Error(Errc::OverlappingSets,
                "conditional entropy requires disjoint sets, got " +
                    subset_to_string(s) + " and " + subset_to_string(given));
  }
  double value = entropy(s | given) - entropy(given);
  if (value < 0.0 && value >= -tol) value = 0.0;
  return value;
}

std::vector<double> exchange_requirements(const SourceModel& model) {
  const int num_users = model.num_users();
  if (num_users < 2) {
    throw Error(Errc::UserCountOutOfRange,
                "exchange requirements need at least 2 users");
  }
  std::vector<double> h(num_users);
  const SubsetMask full = model.full_set();
  for (int l = 1; l <= num_users; ++l) {
    const SubsetMask own = singleton_mask(l);
    h[l - 1] = model.conditional_entropy(full ^ own, own);
  }
  return h;
}

SourceModel validate_tabular(const TabularPmf& pmf, double tol) {
  const int num_users = pmf.num_users();
  check_user_count(num_users);
  for (int a : pmf.alphabet_sizes) {
    if (a < 1) {
      throw Error(Errc::SymbolOutOfRange, "alphabet sizes must be >= 1");
    }
  }

  double mass = 0.0;
  std::map<std::vector<int>, double> seen;
  for (const TabularPmf::Entry& e : pmf.entries) {
    if (static_cast<int>(e.symbols.size()) != num_users) {
      throw Error(Errc::SymbolOutOfRange,
                  "symbol tuple length must equal the number of users");
    }
    for (int l = 0; l < num_users; ++l) {
      if (e.symbols[l] < 0 || e.symbols[l] >= pmf.alphabet_sizes[l]) {
        throw Error(Errc::SymbolOutOfRange,
                    "symbol " + std::to_string(e.symbols[l]) +
                        " outside alphabet of user " + std::to_string(l + 1));
      }
    }
    if (e.p < 0.0) {
      throw Error(Errc::NegativeProbability,
                  "probability " + std::to_string(e.p) + " is negative");
    }
    if (!seen.emplace(e.symbols, e.p).second) {
      throw Error(Errc::DuplicateEntry, "duplicate symbol tuple in pmf");
    }
    mass += e.p;
  }
  if (std::abs(mass - 1.0) > tol) {
    throw Error(Errc::MassNotOne,
                "pmf mass is " + std::to_string(mass) + ", expected 1");
  }

  const SubsetMask full = full_mask(num_users);
  std::vector<double> table(std::size_t{1} << num_users, 0.0);
  for (SubsetMask s = 1; s <= full; ++s) {
    const std::vector<int> users = subset_users(s);

    std::uint64_t dense_size = 1;
    for (int u : users) {
      dense_size *= static_cast<std::uint64_t>(pmf.alphabet_sizes[u - 1]);
      if (dense_size > kDenseTableCap) break;
    }

    if (dense_size <= kDenseTableCap) {
      std::vector<double> marginal(dense_size, 0.0);
      for (const TabularPmf::Entry& e : pmf.entries) {
        std::uint64_t idx = 0;
        for (int u : users) {
          idx = idx * pmf.alphabet_sizes[u - 1] + e.symbols[u - 1];
        }
        marginal[idx] += e.p;
      }
      table[s] = entropy_bits(marginal);
    } else {
      std::map<std::vector<int>, double> marginal;
      for (const TabularPmf::Entry& e : pmf.entries) {
        std::vector<int> key;
        key.reserve(users.size());
        for (int u : users) key.push_back(e.symbols[u - 1]);
        marginal[key] += e.p;
      }
      double h = 0.0;
      for (const auto& [key, m] : marginal) {
        if (m > 0.0) h -= m * std::log2(m);
      }
      table[s] = h;
    }
  }
  return SourceModel(num_users, std::move(table));
}

SourceModel ComponentSource::to_model() const {
  check_user_count(num_users);
  const SubsetMask full = full_mask(num_users);

  // subset_sum[m] = total rate of components contained in m.
  std::vector<double> subset_sum(std::size_t{1} << num_users, 0.0);
  double total = 0.0;
  for (const auto& [subset, rate] : bits) {
    if (subset == 0 || subset > full) {
      throw Error(Errc::BitOutOfRange,
                  "component subset " + subset_to_string(subset) +
                      " outside the nonempty subsets of [1," +
                      std::to_string(num_users) + "]");
    }
    subset_sum[subset] += rate;
    total += rate;
  }
  for (int bit = 0; bit < num_users; ++bit) {
    for (SubsetMask m = 0; m <= full; ++m) {
      if (m & (SubsetMask{1} << bit)) {
        subset_sum[m] += subset_sum[m ^ (SubsetMask{1} << bit)];
      }
    }
  }

  // H(W_S) = total - (rate of components that miss S entirely).
  std::vector<double> table(std::size_t{1} << num_users, 0.0);
  for (SubsetMask s = 1; s <= full; ++s) {
    table[s] = total - subset_sum[complement_mask(s, num_users)];
  }
  return SourceModel(num_users, std::move(table));
}

ComponentSource make_component(int num_users,
                               const std::map<SubsetMask, double>& bits) {
  check_user_count(num_users);
  const SubsetMask full = full_mask(num_users);
  for (const auto& [subset, rate] : bits) {
    if (subset == 0) {
      throw Error(Errc::EmptyComponentSubset,
                  "component subsets must be nonempty");
    }
    if (subset > full) {
      throw Error(Errc::BitOutOfRange,
                  "component subset " + subset_to_string(subset) +
                      " has bits beyond user " + std::to_string(num_users));
    }
    if (rate < 0.0) {
      throw Error(Errc::NegativeRate,
                  "component rate " + std::to_string(rate) + " is negative");
    }
  }
  return ComponentSource{num_users, bits};
}

TabularPmf make_sensor(double rho, const std::vector<double>& sigmas) {
  const int num_users = static_cast<int>(sigmas.size());
  check_user_count(num_users);
  auto check01 = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(Errc::ProbabilityOutOfRange,
                  std::string(what) + " " + std::to_string(p) +
                      " outside [0,1]");
    }
  };
  check01(rho, "event probability");
  for (double s : sigmas) check01(s, "sensor accuracy");

  TabularPmf pmf;
  pmf.alphabet_sizes.assign(num_users, 2);
  const std::uint32_t tuples = std::uint32_t{1} << num_users;
  for (std::uint32_t w = 0; w < tuples; ++w) {
    double p = 0.0;
    for (int b = 0; b <= 1; ++b) {
      double term = (b == 0) ? rho : 1.0 - rho;
      for (int l = 0; l < num_users; ++l) {
        const int wl = (w >> l) & 1;
        const int el = wl ^ b;  // W_l = B xor E_l
        term *= (el == 0) ? sigmas[l] : 1.0 - sigmas[l];
      }
      p += term;
    }
    if (p <= 0.0) continue;
    TabularPmf::Entry entry;
    entry.symbols.resize(num_users);
    for (int l = 0; l < num_users; ++l) entry.symbols[l] = (w >> l) & 1;
    entry.p = p;
    pmf.entries.push_back(std::move(entry));
  }
  return pmf;
}

ProfileValidation profile_validate(const EntropyProfile& profile, double tol,
                                   bool strict) {
  check_user_count(profile.num_users);
  const int num_users = profile.num_users;
  const SubsetMask full = full_mask(num_users);

  std::vector<double> table(std::size_t{1} << num_users, 0.0);
  for (SubsetMask s = 1; s <= full; ++s) {
    auto it = profile.values.find(s);
    if (it == profile.values.end()) {
      throw Error(Errc::MissingSubset,
                  "profile is missing subset " + subset_to_string(s));
    }
    table[s] = it->second;
  }
  for (const auto& [subset, value] : profile.values) {
    if (subset == 0 || subset > full) {
      throw Error(Errc::BitOutOfRange,
                  "profile subset " + subset_to_string(subset) +
                      " outside the nonempty subsets of [1," +
                      std::to_string(num_users) + "]");
    }
    (void)value;
  }

  std::vector<std::string> warnings;
  char buf[160];
  // Elemental checks imply the full monotonicity and submodularity families.
  for (SubsetMask s = 0; s <= full; ++s) {
    for (int i = 1; i <= num_users; ++i) {
      const SubsetMask bi = singleton_mask(i);
      if (s & bi) continue;
      if (table[s] > table[s | bi] + tol) {
        std::snprintf(buf, sizeof(buf),
                      "monotonicity violated: H(%s)=%.9g > H(%s)=%.9g",
                      subset_to_string(s).c_str(), table[s],
                      subset_to_string(s | bi).c_str(), table[s | bi]);
        warnings.emplace_back(buf);
      }
      for (int j = i + 1; j <= num_users; ++j) {
        const SubsetMask bj = singleton_mask(j);
        if (s & bj) continue;
        const double lhs = table[s | bi] + table[s | bj];
        const double rhs = table[s | bi | bj] + table[s];
        if (lhs + tol < rhs) {
          std::snprintf(
              buf, sizeof(buf),
              "submodularity violated at %s with users %d,%d: %.9g < %.9g",
              subset_to_string(s).c_str(), i, j, lhs, rhs);
          warnings.emplace_back(buf);
        }
      }
    }
  }

  if (strict && !warnings.empty()) {
    throw Error(Errc::NonEntropicProfile,
                "profile is not entropic: " + warnings.front());
  }
  return ProfileValidation{SourceModel(num_users, std::move(table)),
                           std::move(warnings)};
}

}  // namespace relayrate
