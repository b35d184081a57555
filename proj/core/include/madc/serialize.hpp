#pragma once

#include <string>
#include <vector>

#include "madc/download.hpp"
#include "madc/engine.hpp"
#include "madc/model.hpp"

namespace madc {

struct InstanceDescription {
  ProblemInstance instance;
  std::vector<long long> level_counts;  // empty for single-level instances
};

// Canonical JSON with a fixed field order; output is byte-stable for equal
// inputs.  level_counts appears only for instances that are not single-level.
std::string instance_to_json(const ProblemInstance& instance,
                             const std::vector<long long>& level_counts = {});

// Parses and fully re-validates (ranges, divisibility) before returning.
InstanceDescription instance_from_json(const std::string& text);

// Shuffle transcript: instance echo plus, per message, the sender, served
// label and a 64-bit payload hash per entry.  Stable byte-for-byte across
// runs with equal inputs.
std::string transcript_to_json(const ProblemInstance& instance, const Transcript& transcript);

// Per-link download table: mapper, reducer, bits, share of Q*N*T.
std::string delivery_to_csv(const DeliveryPlan& plan, const ProblemInstance& instance);

}  // namespace madc
