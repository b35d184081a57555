#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "madc/combin.hpp"
#include "madc/rational.hpp"

namespace madc {

// One problem instance.  num_mappers (Lambda) mapper nodes hold the files;
// one reducer sits on every access_degree (alpha) subset of mappers and can
// read everything its mappers store.  computation_load (r) caps the average
// number of mappers each file is placed on.
struct ProblemInstance {
  int num_mappers = 0;
  int access_degree = 0;
  int computation_load = 0;
  long long num_files = 0;      // N
  long long num_functions = 0;  // Q
  long long iv_bits = 0;        // T, always a multiple of 8
  std::uint64_t seed = 0;

  // Derived.
  long long num_reducers = 0;           // binom(num_mappers, access_degree)
  long long files_per_batch = 0;        // eta1; 0 for leveled instances
  long long functions_per_reducer = 0;  // eta2

  long long iv_bytes() const { return iv_bits / 8; }
};

// Reducers in lexicographic order of their mapper subsets.  The vector index
// equals the reducer rank used for function assignment and transcripts.
struct Topology {
  std::vector<SubsetId> reducers;
};

// A batch of files replicated on exactly the mappers in label.
struct Batch {
  int level = 0;  // label size
  SubsetId label;
  std::vector<long long> files;  // 1-based ids, consecutive ascending
};

struct FileAssignment {
  // Level-major, then label-lexicographic.  Single-level assignments hold
  // binom(num_mappers, r) batches of files_per_batch files each.
  std::vector<Batch> batches;
  // level_counts[j - 1] = number of files whose batch label has size j.
  std::vector<long long> level_counts;
};

struct ReduceAssignment {
  // functions_of[rank] = sorted function ids reduced by that reducer.
  std::vector<std::vector<long long>> functions_of;
};

// Deterministic intermediate values for every (function, file) pair.  This is
// the global oracle store; mapper and reducer views are filtered subsets.
class IVStore {
 public:
  IVStore(long long num_functions, long long num_files, long long iv_bytes);

  std::span<const std::uint8_t> block(long long function_id, long long file_id) const;
  std::span<std::uint8_t> mutable_block(long long function_id, long long file_id);

  long long num_functions() const { return num_functions_; }
  long long num_files() const { return num_files_; }
  long long iv_bytes() const { return iv_bytes_; }

 private:
  long long num_functions_;
  long long num_files_;
  long long iv_bytes_;
  std::vector<std::uint8_t> data_;
};

// Pseudorandom but reproducible intermediate value of iv_bits bits for
// (function_id, file_id) under the given seed.
std::vector<std::uint8_t> map_iv(std::uint64_t seed, long long function_id,
                                 long long file_id, long long iv_bits);

// Single-level instance factory.  Omitted values are auto-selected: N =
// binom(Lambda, r) (one file per batch), Q = number of reducers, T = the
// smallest multiple of 8 that makes every shuffle segment and every delivery
// group split into whole bytes.  Explicit values are validated against the
// same divisibility rules.
ProblemInstance build_instance(int num_mappers, int access_degree, int computation_load,
                               std::optional<long long> num_files,
                               std::optional<long long> num_functions,
                               std::optional<long long> iv_bits, std::uint64_t seed);

struct LeveledInstance {
  ProblemInstance instance;
  std::vector<long long> level_counts;  // files at level j, index j - 1
};

// Instance whose per-level file counts realise the fractions x_j (share of
// files replicated on all j-subsets of mappers), with N auto-chosen as the
// smallest integer that makes every count a whole number of files per batch.
// computation_load here is a budget: sum(j * x_j) <= computation_load.
LeveledInstance build_instance_for_profile(int num_mappers, int access_degree,
                                           int computation_load,
                                           const std::vector<Rational>& level_fractions,
                                           std::uint64_t seed);

Topology build_topology(const ProblemInstance& instance);

// Files 1..N dealt into the binom(Lambda, r) batches in label order,
// files_per_batch consecutive ids per batch.
FileAssignment assign_files_single(const ProblemInstance& instance);

// General placement: level_counts[j - 1] files at level j, spread evenly over
// the binom(Lambda, j) labels of that level.  Counts must sum to N, divide
// evenly, and respect the computation budget.
FileAssignment assign_files_multilevel(const ProblemInstance& instance,
                                       const std::vector<long long>& level_counts);

// Functions 1..Q dealt contiguously by reducer rank, eta2 per reducer.
ReduceAssignment assign_reduce_functions(const ProblemInstance& instance,
                                         const Topology& topology);

// Indices into assignment.batches.
std::vector<std::size_t> mapper_batches(const FileAssignment& assignment, int mapper);
std::vector<std::size_t> reducer_batches(const FileAssignment& assignment,
                                         const std::vector<int>& reducer_members);

// Average number of mappers per file, sum_j j * level_counts[j-1] / N.
Rational map_replication(const FileAssignment& assignment, const ProblemInstance& instance);

}  // namespace madc
