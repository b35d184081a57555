#include "madc/serialize.hpp"

#include <json.hpp>

#include <cstdio>

#include "madc/errors.hpp"

namespace madc {

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t state = 0xcbf29ce484222325ULL) {
  for (std::uint8_t b : bytes) {
    state ^= b;
    state *= 0x100000001b3ULL;
  }
  return state;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

Json instance_json(const ProblemInstance& inst, const std::vector<long long>& level_counts) {
  Json j;
  j["lambda"] = inst.num_mappers;
  j["alpha"] = inst.access_degree;
  j["r"] = inst.computation_load;
  j["n"] = inst.num_files;
  j["q"] = inst.num_functions;
  j["t"] = inst.iv_bits;
  j["seed"] = inst.seed;
  j["k"] = inst.num_reducers;
  j["eta1"] = inst.files_per_batch;
  j["eta2"] = inst.functions_per_reducer;
  if (!level_counts.empty()) {
    j["level_counts"] = level_counts;
  }
  return j;
}

}  // namespace

std::string instance_to_json(const ProblemInstance& instance,
                             const std::vector<long long>& level_counts) {
  return instance_json(instance, level_counts).dump(2) + "\n";
}

InstanceDescription instance_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidParameters(std::string("instance_from_json: ") + e.what());
  }
  for (const char* field : {"lambda", "alpha", "r", "n", "q", "t", "seed"}) {
    if (!j.contains(field)) {
      throw InvalidParameters(std::string("instance_from_json: missing field '") + field + "'");
    }
  }

  InstanceDescription out;
  if (j.contains("level_counts")) {
    out.level_counts = j["level_counts"].get<std::vector<long long>>();
  }
  if (out.level_counts.empty()) {
    out.instance = build_instance(j["lambda"].get<int>(), j["alpha"].get<int>(),
                                  j["r"].get<int>(), j["n"].get<long long>(),
                                  j["q"].get<long long>(), j["t"].get<long long>(),
                                  j["seed"].get<std::uint64_t>());
  } else {
    // Leveled instance: rebuild by hand, then let the placement validators
    // check counts, budget and divisibility.
    ProblemInstance& inst = out.instance;
    inst.num_mappers = j["lambda"].get<int>();
    inst.access_degree = j["alpha"].get<int>();
    inst.computation_load = j["r"].get<int>();
    inst.num_files = j["n"].get<long long>();
    inst.num_functions = j["q"].get<long long>();
    inst.iv_bits = j["t"].get<long long>();
    inst.seed = j["seed"].get<std::uint64_t>();
    if (inst.num_mappers < 1 || inst.access_degree < 1 ||
        inst.access_degree > inst.num_mappers) {
      throw InvalidParameters("instance_from_json: bad mapper/access shape");
    }
    inst.num_reducers = to_int64(binom(inst.num_mappers, inst.access_degree));
    if (inst.num_functions < 1 || inst.num_functions % inst.num_reducers != 0) {
      throw InvalidParameters("instance_from_json: q must be a positive multiple of k");
    }
    inst.functions_per_reducer = inst.num_functions / inst.num_reducers;
    inst.files_per_batch = 0;
    if (inst.iv_bits < 8 || inst.iv_bits % 8 != 0) {
      throw InvalidParameters("instance_from_json: t must be a positive multiple of 8");
    }
    assign_files_multilevel(inst, out.level_counts);  // validates counts
  }

  const Json echo = instance_json(out.instance, out.level_counts);
  for (const char* field : {"k", "eta1", "eta2"}) {
    if (j.contains(field) && j[field] != echo[field]) {
      throw InvalidParameters(std::string("instance_from_json: field '") + field +
                              "' contradicts the derived value");
    }
  }
  return out;
}

std::string transcript_to_json(const ProblemInstance& instance, const Transcript& transcript) {
  Json root;
  root["instance"] = instance_json(instance, {});
  root["total_bits"] = transcript.total_bits;
  root["messages"] = Json::array();
  for (const MulticastMessage& msg : transcript.messages) {
    Json m;
    m["sender"] = msg.sender.members;
    m["level"] = msg.level;
    m["bits"] = message_bits(msg);
    std::uint64_t running = 0xcbf29ce484222325ULL;
    Json entries = Json::array();
    for (const MessageEntry& entry : msg.entries) {
      Json e;
      e["label"] = entry.label;
      e["bits"] = 8 * entry.payload.size();
      e["hash"] = hex64(fnv1a64(entry.payload));
      entries.push_back(std::move(e));
      running = fnv1a64(entry.payload, running);
    }
    m["payload_hash"] = hex64(running);
    m["entries"] = std::move(entries);
    root["messages"].push_back(std::move(m));
  }
  return root.dump(2) + "\n";
}

std::string delivery_to_csv(const DeliveryPlan& plan, const ProblemInstance& instance) {
  const BigInt denom =
      BigInt(instance.num_functions) * instance.num_files * instance.iv_bits;
  std::string out = "mapper,reducer,bits,share\n";
  for (const DeliveryLink& link : plan.links) {
    std::string reducer;
    for (std::size_t i = 0; i < link.reducer.members.size(); ++i) {
      if (i > 0) {
        reducer += "-";
      }
      reducer += std::to_string(link.reducer.members[i]);
    }
    out += std::to_string(link.mapper) + "," + reducer + "," + std::to_string(link.bits) +
           "," + to_fraction_string(Rational(BigInt(link.bits), denom)) + "\n";
  }
  return out;
}

}  // namespace madc
