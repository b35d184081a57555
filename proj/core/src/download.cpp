#include "madc/download.hpp"

#include <algorithm>
#include <string>

#include "madc/errors.hpp"

namespace madc {

DeliveryPlan plan_delivery(const ProblemInstance& instance, const FileAssignment& assignment,
                           const Topology& topology) {
  const int free_mappers = instance.num_mappers - instance.access_degree;
  DeliveryPlan plan;
  plan.links.reserve(topology.reducers.size() * instance.access_degree);

  for (const SubsetId& reducer : topology.reducers) {
    const std::size_t first_link = plan.links.size();
    for (int mapper : reducer.members) {
      DeliveryLink link;
      link.mapper = mapper;
      link.reducer = reducer;
      plan.links.push_back(std::move(link));
    }
    auto link_of = [&](int mapper) -> DeliveryLink& {
      const auto& members = reducer.members;
      const std::size_t pos =
          std::lower_bound(members.begin(), members.end(), mapper) - members.begin();
      return plan.links[first_link + pos];
    };

    for (int level = 1; level <= instance.num_mappers; ++level) {
      const long long level_files = assignment.level_counts[level - 1];
      if (level_files == 0) {
        continue;
      }
      const long long per_label = level_files / to_int64(binom(instance.num_mappers, level));
      for (int group_size = 1; group_size <= std::min(instance.access_degree, level);
           ++group_size) {
        // Labels meeting the reducer in exactly this group: the remaining
        // level - group_size mappers come from outside the reducer.
        const BigInt labels = binom(free_mappers, level - group_size);
        if (labels == 0) {
          continue;
        }
        const BigInt group_bytes =
            labels * per_label * instance.num_functions * instance.iv_bytes();
        if (group_bytes % group_size != 0) {
          throw InvalidParameters(
              "plan_delivery: level " + std::to_string(level) + " group of " +
              std::to_string(group_size) + " cannot split " + group_bytes.str() +
              " bytes evenly");
        }
        const std::uint64_t share = 8 * to_uint64(group_bytes / group_size);
        for_each_k_subset_of(reducer.members, group_size, [&](const std::vector<int>& group) {
          for (int sender : group) {
            DeliveryLink& link = link_of(sender);
            link.slices.push_back({level, group, sender, share});
            link.bits += share;
            plan.total_bits += share;
          }
        });
      }
    }
  }
  return plan;
}

Rational measure_download_cost(const DeliveryPlan& plan, const ProblemInstance& instance) {
  std::uint64_t worst = 0;
  for (const DeliveryLink& link : plan.links) {
    worst = std::max(worst, link.bits);
  }
  const BigInt denom =
      BigInt(instance.num_functions) * instance.num_files * instance.iv_bits;
  return Rational(BigInt(worst), denom);
}

Rational measure_maxlink(const Rational& comm_load, const Rational& download_cost) {
  return std::max(comm_load, download_cost);
}

}  // namespace madc
