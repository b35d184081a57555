#include "madc/combin.hpp"

#include <algorithm>

#include "madc/errors.hpp"

namespace madc {

BigInt binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  if (k > n - k) {
    k = n - k;
  }
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is binom(n-k+i, i) after this step
  }
  return result;
}

std::uint64_t binom_u64(long long n, long long k) { return to_uint64(binom(n, k)); }

static void check_subset(const std::vector<int>& members, int n, const char* who) {
  int prev = 0;
  for (int m : members) {
    if (m <= prev || m > n) {
      throw InvalidParameters(std::string(who) + ": " + set_to_string(members) +
                              " is not a strictly increasing subset of [1.." +
                              std::to_string(n) + "]");
    }
    prev = m;
  }
}

std::uint64_t subset_rank(const std::vector<int>& members, int n) {
  check_subset(members, n, "subset_rank");
  const int k = static_cast<int>(members.size());
  BigInt rank = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < members[i]; ++v) {
      rank += binom(n - v, k - i - 1);
    }
    prev = members[i];
  }
  return to_uint64(rank);
}

SubsetId subset_unrank(std::uint64_t rank, int n, int k) {
  if (k < 0 || n < 0 || k > n) {
    throw InvalidParameters("subset_unrank: no " + std::to_string(k) +
                            "-subsets of [1.." + std::to_string(n) + "]");
  }
  BigInt remaining = rank;
  if (remaining >= binom(n, k)) {
    throw InvalidParameters("subset_unrank: rank " + std::to_string(rank) +
                            " out of range for binom(" + std::to_string(n) + "," +
                            std::to_string(k) + ")");
  }
  SubsetId id;
  id.rank = rank;
  id.members.reserve(k);
  int v = 1;
  for (int i = 0; i < k; ++i) {
    while (true) {
      BigInt skip = binom(n - v, k - i - 1);
      if (remaining < skip) {
        break;
      }
      remaining -= skip;
      ++v;
    }
    id.members.push_back(v);
    ++v;
  }
  return id;
}

void for_each_k_subset(int n, int k,
                       const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || n < 0 || k > n) {
    return;
  }
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) {
    cur[i] = i + 1;
  }
  while (true) {
    fn(cur);
    // advance to the lexicographic successor
    int i = k - 1;
    while (i >= 0 && cur[i] == n - (k - 1 - i)) {
      --i;
    }
    if (i < 0) {
      return;
    }
    ++cur[i];
    for (int j = i + 1; j < k; ++j) {
      cur[j] = cur[j - 1] + 1;
    }
  }
}

void for_each_k_subset_of(const std::vector<int>& pool, int k,
                          const std::function<void(const std::vector<int>&)>& fn) {
  const int n = static_cast<int>(pool.size());
  std::vector<int> picked(std::max(k, 0));
  for_each_k_subset(n, k, [&](const std::vector<int>& idx) {
    for (int i = 0; i < k; ++i) {
      picked[i] = pool[idx[i] - 1];
    }
    fn(picked);
  });
}

std::uint64_t rank_within(const std::vector<int>& pool, const std::vector<int>& subset) {
  std::vector<int> idx;
  idx.reserve(subset.size());
  for (int m : subset) {
    auto it = std::lower_bound(pool.begin(), pool.end(), m);
    if (it == pool.end() || *it != m) {
      throw InvalidParameters("rank_within: " + set_to_string(subset) +
                              " is not contained in pool " + set_to_string(pool));
    }
    idx.push_back(static_cast<int>(it - pool.begin()) + 1);
  }
  return subset_rank(idx, static_cast<int>(pool.size()));
}

std::vector<SubsetId> k_subsets(int n, int k) {
  std::vector<SubsetId> out;
  if (k < 0 || n < 0 || k > n) {
    return out;
  }
  out.reserve(static_cast<std::size_t>(binom_u64(n, k)));
  for_each_k_subset(n, k, [&](const std::vector<int>& members) {
    SubsetId id;
    id.members = members;
    id.rank = out.size();
    out.push_back(std::move(id));
  });
  return out;
}

std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> set_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const std::vector<int>& sorted, int value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

std::string set_to_string(const std::vector<int>& members) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += std::to_string(members[i]);
  }
  out += "}";
  return out;
}

}  // namespace madc
