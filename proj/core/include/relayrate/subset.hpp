#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace relayrate {

// Users are labelled 1..L.  A subset of users is a bitmask whose bit (l-1)
// encodes membership of user l.  The empty set is mask 0.
using SubsetMask = std::uint32_t;

// All algorithms in this library enumerate subsets of [1,L].
inline constexpr int kMaxUsers = 20;

inline constexpr double kDefaultTol = 1e-9;

constexpr SubsetMask full_mask(int num_users) {
  return (SubsetMask{1} << num_users) - 1u;
}

constexpr SubsetMask complement_mask(SubsetMask s, int num_users) {
  return full_mask(num_users) & ~s;
}

constexpr int subset_size(SubsetMask s) { return std::popcount(s); }

constexpr bool is_subset_of(SubsetMask a, SubsetMask b) { return (a & ~b) == 0; }

constexpr SubsetMask singleton_mask(int user) {
  return SubsetMask{1} << (user - 1);
}

constexpr bool contains_user(SubsetMask s, int user) {
  return (s >> (user - 1)) & 1u;
}

// 1-indexed user labels of s, ascending.
std::vector<int> subset_users(SubsetMask s);

// Builds a mask from 1-indexed labels; validates 1 <= label <= num_users
// and rejects duplicates.
SubsetMask subset_from_users(const std::vector<int>& users, int num_users);

// "{}" for the empty set, "{1,3}" otherwise.
std::string subset_to_string(SubsetMask s);

// Every subset of [1,num_users], ordered by (cardinality, numeric mask).
// This is the canonical listing order for all user-facing output.
std::vector<SubsetMask> sorted_subsets(int num_users, bool include_empty,
                                       bool include_full);

}  // namespace relayrate
