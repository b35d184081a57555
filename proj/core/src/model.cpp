#include "madc/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "madc/errors.hpp"

namespace madc {

namespace {

void check_shape(int num_mappers, int access_degree, const char* who) {
  if (num_mappers < 1) {
    throw InvalidParameters(std::string(who) + ": need at least one mapper");
  }
  if (access_degree < 1 || access_degree > num_mappers) {
    throw InvalidParameters(std::string(who) + ": access degree " +
                            std::to_string(access_degree) + " outside [1.." +
                            std::to_string(num_mappers) + "]");
  }
}

// One divisibility requirement on t = T / 8: coeff * t must be a multiple of
// modulus.
struct ByteConstraint {
  BigInt coeff;
  long long modulus;
};

// Constraints that make every shuffle segment and every delivery-group share
// at level j split into whole bytes.
void level_constraints(int num_mappers, int access_degree, int level,
                       long long files_per_label, long long num_functions,
                       long long functions_per_reducer,
                       std::vector<ByteConstraint>* out) {
  const int free_mappers = num_mappers - access_degree;
  if (binom(free_mappers, level) > 0) {
    const long long splits = to_int64(binom(level + access_degree, level) - 1);
    out->push_back({BigInt(functions_per_reducer) * files_per_label, splits});
  }
  const int i_lo = std::max(1, level - free_mappers);
  const int i_hi = std::min(access_degree, level);
  for (int i = i_lo; i <= i_hi; ++i) {
    out->push_back({BigInt(files_per_label) * binom(free_mappers, level - i) * num_functions, i});
  }
}

long long min_bytes_for(const std::vector<ByteConstraint>& constraints) {
  BigInt t = 1;
  for (const auto& c : constraints) {
    BigInt need = c.modulus / gcd(BigInt(c.modulus), c.coeff);
    t = lcm(t, need);
  }
  return to_int64(t);
}

void check_bytes(const std::vector<ByteConstraint>& constraints, long long iv_bits,
                 const char* who) {
  if (iv_bits < 8 || iv_bits % 8 != 0) {
    throw InvalidParameters(std::string(who) + ": iv_bits " + std::to_string(iv_bits) +
                            " is not a positive multiple of 8");
  }
  const long long t = iv_bits / 8;
  for (const auto& c : constraints) {
    if ((c.coeff * t) % c.modulus != 0) {
      throw InvalidParameters(std::string(who) + ": iv_bits " + std::to_string(iv_bits) +
                              " does not split segments into whole bytes (needs factor " +
                              std::to_string(c.modulus) + ")");
    }
  }
}

}  // namespace

ProblemInstance build_instance(int num_mappers, int access_degree, int computation_load,
                               std::optional<long long> num_files,
                               std::optional<long long> num_functions,
                               std::optional<long long> iv_bits, std::uint64_t seed) {
  check_shape(num_mappers, access_degree, "build_instance");
  const int max_r = num_mappers - access_degree + 1;
  if (computation_load < 1 || computation_load > max_r) {
    throw InvalidParameters("build_instance: computation load " +
                            std::to_string(computation_load) + " outside [1.." +
                            std::to_string(max_r) + "]");
  }

  ProblemInstance inst;
  inst.num_mappers = num_mappers;
  inst.access_degree = access_degree;
  inst.computation_load = computation_load;
  inst.seed = seed;
  inst.num_reducers = to_int64(binom(num_mappers, access_degree));

  const long long num_batches = to_int64(binom(num_mappers, computation_load));
  if (num_files) {
    if (*num_files < 1 || *num_files % num_batches != 0) {
      throw InvalidParameters("build_instance: num_files " + std::to_string(*num_files) +
                              " is not a positive multiple of " +
                              std::to_string(num_batches) + " batches");
    }
    inst.num_files = *num_files;
  } else {
    inst.num_files = num_batches;
  }
  inst.files_per_batch = inst.num_files / num_batches;

  if (num_functions) {
    if (*num_functions < 1 || *num_functions % inst.num_reducers != 0) {
      throw InvalidParameters("build_instance: num_functions " +
                              std::to_string(*num_functions) +
                              " is not a positive multiple of " +
                              std::to_string(inst.num_reducers) + " reducers");
    }
    inst.num_functions = *num_functions;
  } else {
    inst.num_functions = inst.num_reducers;
  }
  inst.functions_per_reducer = inst.num_functions / inst.num_reducers;

  std::vector<ByteConstraint> constraints;
  level_constraints(num_mappers, access_degree, computation_load, inst.files_per_batch,
                    inst.num_functions, inst.functions_per_reducer, &constraints);
  if (iv_bits) {
    check_bytes(constraints, *iv_bits, "build_instance");
    inst.iv_bits = *iv_bits;
  } else {
    inst.iv_bits = 8 * min_bytes_for(constraints);
  }
  return inst;
}

LeveledInstance build_instance_for_profile(int num_mappers, int access_degree,
                                           int computation_load,
                                           const std::vector<Rational>& level_fractions,
                                           std::uint64_t seed) {
  check_shape(num_mappers, access_degree, "build_instance_for_profile");
  if (computation_load < 1 || computation_load > num_mappers) {
    throw InvalidParameters("build_instance_for_profile: computation load " +
                            std::to_string(computation_load) + " outside [1.." +
                            std::to_string(num_mappers) + "]");
  }
  if (level_fractions.size() > static_cast<std::size_t>(num_mappers)) {
    throw InvalidParameters("build_instance_for_profile: got fractions for " +
                            std::to_string(level_fractions.size()) + " levels but only " +
                            std::to_string(num_mappers) + " exist");
  }
  Rational total = 0;
  Rational budget = 0;
  for (std::size_t idx = 0; idx < level_fractions.size(); ++idx) {
    const Rational& x = level_fractions[idx];
    if (x < 0) {
      throw InvalidParameters("build_instance_for_profile: negative fraction at level " +
                              std::to_string(idx + 1));
    }
    total += x;
    budget += Rational(idx + 1) * x;
  }
  if (total != 1) {
    throw InvalidParameters("build_instance_for_profile: fractions sum to " +
                            to_fraction_string(total) + ", expected 1");
  }
  if (budget > computation_load) {
    throw InvalidParameters("build_instance_for_profile: replication " +
                            to_fraction_string(budget) + " exceeds budget " +
                            std::to_string(computation_load));
  }

  // Smallest N for which every active level holds a whole number of files
  // per label: N * x_j / binom(Lambda, j) must be integral.
  BigInt n_files = 1;
  for (std::size_t idx = 0; idx < level_fractions.size(); ++idx) {
    if (level_fractions[idx] == 0) {
      continue;
    }
    const Rational per_label = level_fractions[idx] / Rational(binom(num_mappers, idx + 1));
    n_files = lcm(n_files, denominator(per_label));
  }

  LeveledInstance out;
  ProblemInstance& inst = out.instance;
  inst.num_mappers = num_mappers;
  inst.access_degree = access_degree;
  inst.computation_load = computation_load;
  inst.seed = seed;
  inst.num_reducers = to_int64(binom(num_mappers, access_degree));
  inst.num_files = to_int64(n_files);
  inst.num_functions = inst.num_reducers;
  inst.functions_per_reducer = 1;
  inst.files_per_batch = 0;  // not a single-level instance

  out.level_counts.assign(num_mappers, 0);
  std::vector<ByteConstraint> constraints;
  for (std::size_t idx = 0; idx < level_fractions.size(); ++idx) {
    if (level_fractions[idx] == 0) {
      continue;
    }
    const int level = static_cast<int>(idx + 1);
    const Rational count = Rational(n_files) * level_fractions[idx];
    out.level_counts[idx] = to_int64(numerator(count));
    const long long per_label =
        out.level_counts[idx] / to_int64(binom(num_mappers, level));
    level_constraints(num_mappers, access_degree, level, per_label, inst.num_functions,
                      inst.functions_per_reducer, &constraints);
  }
  inst.iv_bits = 8 * min_bytes_for(constraints);
  return out;
}

Topology build_topology(const ProblemInstance& instance) {
  Topology topo;
  topo.reducers = k_subsets(instance.num_mappers, instance.access_degree);
  return topo;
}

FileAssignment assign_files_single(const ProblemInstance& instance) {
  if (instance.files_per_batch <= 0) {
    throw InvalidParameters("assign_files_single: instance is not single-level");
  }
  std::vector<long long> counts(instance.num_mappers, 0);
  counts[instance.computation_load - 1] = instance.num_files;
  return assign_files_multilevel(instance, counts);
}

FileAssignment assign_files_multilevel(const ProblemInstance& instance,
                                       const std::vector<long long>& level_counts) {
  if (level_counts.size() > static_cast<std::size_t>(instance.num_mappers)) {
    throw InvalidParameters("assign_files_multilevel: got counts for " +
                            std::to_string(level_counts.size()) + " levels but only " +
                            std::to_string(instance.num_mappers) + " exist");
  }
  long long total = 0;
  BigInt weighted = 0;
  for (std::size_t idx = 0; idx < level_counts.size(); ++idx) {
    if (level_counts[idx] < 0) {
      throw InvalidParameters("assign_files_multilevel: negative count at level " +
                              std::to_string(idx + 1));
    }
    total += level_counts[idx];
    weighted += BigInt(idx + 1) * level_counts[idx];
  }
  if (total != instance.num_files) {
    throw InvalidParameters("assign_files_multilevel: counts sum to " +
                            std::to_string(total) + ", instance has " +
                            std::to_string(instance.num_files) + " files");
  }
  if (weighted > BigInt(instance.computation_load) * instance.num_files) {
    throw InvalidParameters(
        "assign_files_multilevel: placement replicates files " +
        to_fraction_string(Rational(weighted, instance.num_files)) +
        " times on average, over the budget of " +
        std::to_string(instance.computation_load));
  }

  FileAssignment assignment;
  assignment.level_counts.assign(instance.num_mappers, 0);
  std::copy(level_counts.begin(), level_counts.end(), assignment.level_counts.begin());

  long long next_file = 1;
  for (std::size_t idx = 0; idx < level_counts.size(); ++idx) {
    if (level_counts[idx] == 0) {
      continue;
    }
    const int level = static_cast<int>(idx + 1);
    const long long labels = to_int64(binom(instance.num_mappers, level));
    if (level_counts[idx] % labels != 0) {
      throw InvalidParameters("assign_files_multilevel: " +
                              std::to_string(level_counts[idx]) + " files at level " +
                              std::to_string(level) + " do not spread over " +
                              std::to_string(labels) + " labels");
    }
    const long long per_label = level_counts[idx] / labels;
    for (SubsetId& label : k_subsets(instance.num_mappers, level)) {
      Batch batch;
      batch.level = level;
      batch.label = std::move(label);
      batch.files.resize(per_label);
      std::iota(batch.files.begin(), batch.files.end(), next_file);
      next_file += per_label;
      assignment.batches.push_back(std::move(batch));
    }
  }
  return assignment;
}

ReduceAssignment assign_reduce_functions(const ProblemInstance& instance,
                                         const Topology& topology) {
  if (static_cast<long long>(topology.reducers.size()) != instance.num_reducers) {
    throw InvalidParameters("assign_reduce_functions: topology has " +
                            std::to_string(topology.reducers.size()) + " reducers, expected " +
                            std::to_string(instance.num_reducers));
  }
  ReduceAssignment out;
  out.functions_of.resize(topology.reducers.size());
  long long next_function = 1;
  for (std::size_t rank = 0; rank < topology.reducers.size(); ++rank) {
    out.functions_of[rank].resize(instance.functions_per_reducer);
    std::iota(out.functions_of[rank].begin(), out.functions_of[rank].end(), next_function);
    next_function += instance.functions_per_reducer;
  }
  return out;
}

IVStore::IVStore(long long num_functions, long long num_files, long long iv_bytes)
    : num_functions_(num_functions), num_files_(num_files), iv_bytes_(iv_bytes) {
  data_.resize(static_cast<std::size_t>(num_functions * num_files * iv_bytes));
}

std::span<const std::uint8_t> IVStore::block(long long function_id, long long file_id) const {
  if (function_id < 1 || function_id > num_functions_ || file_id < 1 || file_id > num_files_) {
    throw InvalidParameters("IVStore::block: (" + std::to_string(function_id) + "," +
                            std::to_string(file_id) + ") out of range");
  }
  const std::size_t offset = static_cast<std::size_t>(
      ((function_id - 1) * num_files_ + (file_id - 1)) * iv_bytes_);
  return {data_.data() + offset, static_cast<std::size_t>(iv_bytes_)};
}

std::span<std::uint8_t> IVStore::mutable_block(long long function_id, long long file_id) {
  auto view = static_cast<const IVStore*>(this)->block(function_id, file_id);
  return {data_.data() + (view.data() - data_.data()), view.size()};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<std::uint8_t> map_iv(std::uint64_t seed, long long function_id,
                                 long long file_id, long long iv_bits) {
  if (iv_bits < 8 || iv_bits % 8 != 0) {
    throw InvalidParameters("map_iv: iv_bits must be a positive multiple of 8");
  }
  std::uint64_t base = splitmix64(seed ^ 0x6d61646331ULL);
  base = splitmix64(base ^ static_cast<std::uint64_t>(function_id) * 0x100000001b3ULL);
  base = splitmix64(base ^ static_cast<std::uint64_t>(file_id) * 0xc2b2ae3d27d4eb4fULL);

  std::vector<std::uint8_t> block(static_cast<std::size_t>(iv_bits / 8));
  for (std::size_t i = 0; i < block.size(); i += 8) {
    std::uint64_t word = splitmix64(base + i / 8);
    for (std::size_t b = 0; b < 8 && i + b < block.size(); ++b) {
      block[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
    }
  }
  return block;
}

std::vector<std::size_t> mapper_batches(const FileAssignment& assignment, int mapper) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.batches.size(); ++i) {
    if (set_contains(assignment.batches[i].label.members, mapper)) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> reducer_batches(const FileAssignment& assignment,
                                         const std::vector<int>& reducer_members) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.batches.size(); ++i) {
    if (!set_intersection(assignment.batches[i].label.members, reducer_members).empty()) {
      out.push_back(i);
    }
  }
  return out;
}

Rational map_replication(const FileAssignment& assignment, const ProblemInstance& instance) {
  BigInt weighted = 0;
  for (std::size_t idx = 0; idx < assignment.level_counts.size(); ++idx) {
    weighted += BigInt(idx + 1) * assignment.level_counts[idx];
  }
  return Rational(weighted, BigInt(instance.num_files));
}

}  // namespace madc
