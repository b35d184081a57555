#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "madc/rational.hpp"

namespace madc {

// A k-subset of the ground set [1..n], members sorted ascending.  rank is the
// 0-based position in the lexicographic enumeration of all k-subsets of
// [1..n].
struct SubsetId {
  std::vector<int> members;
  std::uint64_t rank = 0;

  bool operator==(const SubsetId& other) const { return members == other.members; }
};

// Exact binomial coefficient.  Total: returns 0 whenever k < 0, n < 0 or
// k > n, which is the convention every counting formula in this library
// relies on.
BigInt binom(long long n, long long k);

// binom narrowed to uint64_t; throws InvalidParameters when the exact value
// does not fit.
std::uint64_t binom_u64(long long n, long long k);

// All k-subsets of [1..n] in lexicographic order, ranks filled in.
std::vector<SubsetId> k_subsets(int n, int k);

// Lexicographic rank of a sorted member list among all k-subsets of [1..n].
// Throws InvalidParameters if members is not a strictly increasing sequence
// inside [1..n].
std::uint64_t subset_rank(const std::vector<int>& members, int n);

SubsetId subset_unrank(std::uint64_t rank, int n, int k);

// Lexicographic enumeration without materialising the whole list.
void for_each_k_subset(int n, int k,
                       const std::function<void(const std::vector<int>&)>& fn);

// Same, but drawing members from an arbitrary strictly increasing pool.
void for_each_k_subset_of(const std::vector<int>& pool, int k,
                          const std::function<void(const std::vector<int>&)>& fn);

// Rank of subset among all |subset|-subsets of pool (both sorted).
std::uint64_t rank_within(const std::vector<int>& pool, const std::vector<int>& subset);

// Sorted-vector set algebra used throughout the shuffle machinery.
std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_difference(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> set_intersection(const std::vector<int>& a, const std::vector<int>& b);
bool set_contains(const std::vector<int>& sorted, int value);

// "{1,3,4}" rendering used in labels and error messages.
std::string set_to_string(const std::vector<int>& members);

}  // namespace madc
