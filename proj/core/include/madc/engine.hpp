#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "madc/model.hpp"

namespace madc {

// One XOR operand of a multicast entry: the slice, cut for the sender, of
// the symbol that carries owner's wanted values from the batch labelled
// batch_label.
struct SegmentTerm {
  std::vector<int> owner;
  std::vector<int> batch_label;

  bool operator==(const SegmentTerm& other) const {
    return owner == other.owner && batch_label == other.batch_label;
  }
};

struct MessageEntry {
  std::vector<int> label;          // peers outside the sender this entry serves
  std::vector<SegmentTerm> terms;  // operands in lexicographic owner order
  std::vector<std::uint8_t> payload;
};

struct MulticastMessage {
  SubsetId sender;  // broadcast to every other reducer
  int level = 0;    // batch level the entries serve
  std::vector<MessageEntry> entries;  // lexicographic label order
};

struct Transcript {
  std::vector<MulticastMessage> messages;  // level-major, then sender rank
  std::uint64_t total_bits = 0;
};

// Values recovered by one reducer: its wanted functions crossed with every
// file.
struct RecoveredIVs {
  std::vector<long long> functions;  // ascending
  long long num_files = 0;
  long long iv_bytes = 0;
  std::vector<std::uint8_t> data;  // function-major, file-minor

  std::span<const std::uint8_t> block(long long function_id, long long file_id) const;
};

// Read-only bundle of everything a shuffle phase touches.
struct Simulation {
  const ProblemInstance& instance;
  const Topology& topology;
  const FileAssignment& files;
  const ReduceAssignment& reduce;
  const IVStore& store;
};

// Fills the global store with the deterministic value of every
// (function, file) pair.
IVStore run_map(const ProblemInstance& instance, const FileAssignment& assignment);

// The coded broadcast of one reducer for one batch level.  Entries only read
// values visible to the sender; a violation raises MissingIV.
MulticastMessage encode_multicast(const Simulation& sim, std::size_t sender_rank, int level);

// Every reducer's broadcast for every active level, level-major then sender
// rank.  A lone reducer has no peers and produces an empty transcript.
Transcript run_shuffle(const Simulation& sim);

// Reconstructs all wanted values of one reducer from its own view plus the
// transcript, cancelling interference with locally rebuilt slices.  Raises
// DecodeFailure when the transcript does not match the expected structure.
RecoveredIVs decode(const Simulation& sim, std::size_t reducer_rank,
                    const Transcript& transcript);

std::uint64_t message_bits(const MulticastMessage& message);

// Shuffle bits normalised by total intermediate data, bits / (Q * N * T).
Rational measure_comm_load(const Transcript& transcript, const ProblemInstance& instance);

}  // namespace madc
