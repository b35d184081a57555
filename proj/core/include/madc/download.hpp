#pragma once

#include <cstdint>
#include <vector>

#include "madc/model.hpp"

namespace madc {

// One slice of a reducer's download.  group is the exact set of the
// reducer's mappers that replicate the files in question (batch labels whose
// intersection with the reducer equals group); the group splits those bytes
// evenly and sender contributes this share.
struct DeliverySlice {
  int level = 0;
  std::vector<int> group;
  int sender = 0;
  std::uint64_t bits = 0;
};

// Everything one mapper sends to one of its reducers.
struct DeliveryLink {
  int mapper = 0;
  SubsetId reducer;
  std::uint64_t bits = 0;
  std::vector<DeliverySlice> slices;
};

struct DeliveryPlan {
  std::vector<DeliveryLink> links;  // reducer-major by rank, mapper ascending
  std::uint64_t total_bits = 0;
};

// Splits every reducer's accessible data over its mappers so that each byte
// travels exactly once and every link of a reducer carries the same amount.
DeliveryPlan plan_delivery(const ProblemInstance& instance, const FileAssignment& assignment,
                           const Topology& topology);

// Largest single-link download, normalised by Q * N * T.
Rational measure_download_cost(const DeliveryPlan& plan, const ProblemInstance& instance);

// Bottleneck of the two phases on any single link.
Rational measure_maxlink(const Rational& comm_load, const Rational& download_cost);

}  // namespace madc
