#include "relayrate/subset.hpp"

#include <algorithm>

#include "relayrate/errors.hpp"

namespace relayrate {

std::vector<int> subset_users(SubsetMask s) {
  std::vector<int> users;
  for (int l = 1; s != 0; ++l, s >>= 1) {
    if (s & 1u) users.push_back(l);
  }
  return users;
}

SubsetMask subset_from_users(const std::vector<int>& users, int num_users) {
  SubsetMask mask = 0;
  for (int u : users) {
    if (u < 1 || u > num_users) {
      throw Error(Errc::BitOutOfRange,
                  "user label " + std::to_string(u) + " outside [1," +
                      std::to_string(num_users) + "]");
    }
    SubsetMask bit = singleton_mask(u);
    if (mask & bit) {
      throw Error(Errc::DuplicateEntry,
                  "user label " + std::to_string(u) + " listed twice");
    }
    mask |= bit;
  }
  return mask;
}

std::string subset_to_string(SubsetMask s) {
  std::string out = "{";
  bool first = true;
  for (int u : subset_users(s)) {
    if (!first) out += ',';
    out += std::to_string(u);
    first = false;
  }
  out += '}';
  return out;
}

std::vector<SubsetMask> sorted_subsets(int num_users, bool include_empty,
                                       bool include_full) {
  const SubsetMask full = full_mask(num_users);
  std::vector<SubsetMask> subsets;
  subsets.reserve(full + 1);
  for (SubsetMask s = 0; s <= full; ++s) {
    if (s == 0 && !include_empty) continue;
    if (s == full && !include_full) continue;
    subsets.push_back(s);
  }
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](SubsetMask a, SubsetMask b) {
                     int ca = subset_size(a), cb = subset_size(b);
                     return ca != cb ? ca < cb : a < b;
                   });
  return subsets;
}

}  // namespace relayrate
