#include "madc/engine.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "madc/errors.hpp"

namespace madc {

namespace {

// Locates batches by (level, label rank).  Valid because the assignment
// enumerates every label of an active level in lexicographic order.
struct BatchLookup {
  struct LevelInfo {
    std::size_t base = 0;
    long long labels = 0;
    long long files_per_label = 0;
    bool active = false;
  };
  std::vector<LevelInfo> levels;  // index level - 1
  const FileAssignment* files = nullptr;

  explicit BatchLookup(const ProblemInstance& instance, const FileAssignment& assignment)
      : files(&assignment) {
    levels.resize(instance.num_mappers);
    std::size_t i = 0;
    while (i < assignment.batches.size()) {
      const int level = assignment.batches[i].level;
      LevelInfo& info = levels[level - 1];
      info.base = i;
      info.labels = to_int64(binom(instance.num_mappers, level));
      info.files_per_label = static_cast<long long>(assignment.batches[i].files.size());
      info.active = true;
      i += static_cast<std::size_t>(info.labels);
    }
  }

  const Batch& at(int level, std::uint64_t label_rank) const {
    const LevelInfo& info = levels[level - 1];
    if (!info.active || label_rank >= static_cast<std::uint64_t>(info.labels)) {
      throw InvalidParameters("batch lookup: no batch at level " + std::to_string(level) +
                              " rank " + std::to_string(label_rank));
    }
    return files->batches[info.base + label_rank];
  }
};

// A reducer's window onto the store: only files in batches that touch one of
// its mappers.
class ReducerView {
 public:
  ReducerView(const Simulation& sim, const std::vector<int>& members)
      : store_(sim.store), members_(members) {
    accessible_.assign(static_cast<std::size_t>(sim.instance.num_files), false);
    for (const Batch& batch : sim.files.batches) {
      if (set_intersection(batch.label.members, members).empty()) {
        continue;
      }
      for (long long file : batch.files) {
        accessible_[static_cast<std::size_t>(file - 1)] = true;
      }
    }
  }

  std::span<const std::uint8_t> block(long long function_id, long long file_id) const {
    if (file_id < 1 || file_id > static_cast<long long>(accessible_.size()) ||
        !accessible_[static_cast<std::size_t>(file_id - 1)]) {
      throw MissingIV("reducer " + set_to_string(members_) + " cannot read file " +
                      std::to_string(file_id));
    }
    return store_.block(function_id, file_id);
  }

 private:
  const IVStore& store_;
  std::vector<bool> accessible_;
  std::vector<int> members_;
};

long long segment_splits(int level, int access_degree) {
  return to_int64(binom(level + access_degree, level) - 1);
}

// Concatenated wanted values of reducer `owner` over the files of `batch`,
// function-major, read through `view`.
std::vector<std::uint8_t> build_symbol(const Simulation& sim, const ReducerView& view,
                                       const std::vector<int>& owner, const Batch& batch) {
  const std::uint64_t owner_rank = subset_rank(owner, sim.instance.num_mappers);
  const std::vector<long long>& wanted = sim.reduce.functions_of[owner_rank];
  const std::size_t iv_bytes = static_cast<std::size_t>(sim.instance.iv_bytes());
  std::vector<std::uint8_t> symbol(wanted.size() * batch.files.size() * iv_bytes);
  std::size_t offset = 0;
  for (long long q : wanted) {
    for (long long n : batch.files) {
      auto block = view.block(q, n);
      std::copy(block.begin(), block.end(), symbol.begin() + offset);
      offset += iv_bytes;
    }
  }
  return symbol;
}

// Position of `slice` among the alpha-subsets of `pool` excluding `owner`,
// in lexicographic order.  This is the segmentation a symbol owned by
// `owner` uses.
std::size_t slice_position(const std::vector<int>& pool, const std::vector<int>& owner,
                           const std::vector<int>& slice) {
  const std::uint64_t slice_rank = rank_within(pool, slice);
  const std::uint64_t owner_rank = rank_within(pool, owner);
  return static_cast<std::size_t>(slice_rank - (slice_rank > owner_rank ? 1 : 0));
}

void xor_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] ^= src[i];
  }
}

}  // namespace

std::span<const std::uint8_t> RecoveredIVs::block(long long function_id,
                                                  long long file_id) const {
  auto it = std::lower_bound(functions.begin(), functions.end(), function_id);
  if (it == functions.end() || *it != function_id || file_id < 1 || file_id > num_files) {
    throw InvalidParameters("RecoveredIVs::block: (" + std::to_string(function_id) + "," +
                            std::to_string(file_id) + ") not recovered");
  }
  const std::size_t offset = static_cast<std::size_t>(
      ((it - functions.begin()) * num_files + (file_id - 1)) * iv_bytes);
  return {data.data() + offset, static_cast<std::size_t>(iv_bytes)};
}

IVStore run_map(const ProblemInstance& instance, const FileAssignment& assignment) {
  long long covered = 0;
  for (const Batch& batch : assignment.batches) {
    covered += static_cast<long long>(batch.files.size());
  }
  if (covered != instance.num_files) {
    throw InvalidParameters("run_map: assignment covers " + std::to_string(covered) +
                            " files, instance has " + std::to_string(instance.num_files));
  }
  IVStore store(instance.num_functions, instance.num_files, instance.iv_bytes());
  for (long long q = 1; q <= instance.num_functions; ++q) {
    for (long long n = 1; n <= instance.num_files; ++n) {
      const auto value = map_iv(instance.seed, q, n, instance.iv_bits);
      auto dst = store.mutable_block(q, n);
      std::copy(value.begin(), value.end(), dst.begin());
    }
  }
  return store;
}

MulticastMessage encode_multicast(const Simulation& sim, std::size_t sender_rank, int level) {
  const ProblemInstance& inst = sim.instance;
  const SubsetId& sender = sim.topology.reducers.at(sender_rank);
  const BatchLookup lookup(inst, sim.files);
  const ReducerView view(sim, sender.members);

  MulticastMessage msg;
  msg.sender = sender;
  msg.level = level;

  const auto& info = lookup.levels[level - 1];
  if (!info.active) {
    throw InvalidParameters("encode_multicast: level " + std::to_string(level) +
                            " holds no files");
  }
  const long long splits = segment_splits(level, inst.access_degree);
  const std::size_t symbol_bytes = static_cast<std::size_t>(
      inst.functions_per_reducer * info.files_per_label * inst.iv_bytes());
  const std::size_t seg_bytes = symbol_bytes / static_cast<std::size_t>(splits);

  std::vector<int> all(inst.num_mappers);
  for (int i = 0; i < inst.num_mappers; ++i) {
    all[i] = i + 1;
  }
  const std::vector<int> others = set_difference(all, sender.members);

  for_each_k_subset_of(others, level, [&](const std::vector<int>& served) {
    MessageEntry entry;
    entry.label = served;
    entry.payload.assign(seg_bytes, 0);
    const std::vector<int> pool = set_union(sender.members, served);
    for_each_k_subset_of(pool, inst.access_degree, [&](const std::vector<int>& owner) {
      if (owner == sender.members) {
        return;
      }
      const std::vector<int> batch_label = set_difference(pool, owner);
      const Batch& batch = lookup.at(level, rank_within(all, batch_label));
      const auto symbol = build_symbol(sim, view, owner, batch);
      const std::size_t pos = slice_position(pool, owner, sender.members);
      xor_into(entry.payload,
               std::span<const std::uint8_t>(symbol.data() + pos * seg_bytes, seg_bytes));
      entry.terms.push_back({owner, batch_label});
    });
    msg.entries.push_back(std::move(entry));
  });
  return msg;
}

Transcript run_shuffle(const Simulation& sim) {
  Transcript transcript;
  if (sim.instance.num_reducers <= 1) {
    return transcript;  // no peers to serve
  }
  for (int level = 1; level <= sim.instance.num_mappers; ++level) {
    if (sim.files.level_counts[level - 1] == 0) {
      continue;
    }
    for (std::size_t rank = 0; rank < sim.topology.reducers.size(); ++rank) {
      MulticastMessage msg = encode_multicast(sim, rank, level);
      transcript.total_bits += message_bits(msg);
      transcript.messages.push_back(std::move(msg));
    }
  }
  return transcript;
}

RecoveredIVs decode(const Simulation& sim, std::size_t reducer_rank,
                    const Transcript& transcript) {
  const ProblemInstance& inst = sim.instance;
  const SubsetId& me = sim.topology.reducers.at(reducer_rank);
  const BatchLookup lookup(inst, sim.files);
  const ReducerView view(sim, me.members);
  const std::vector<long long>& wanted = sim.reduce.functions_of[reducer_rank];
  const std::size_t iv_bytes = static_cast<std::size_t>(inst.iv_bytes());

  RecoveredIVs out;
  out.functions = wanted;
  out.num_files = inst.num_files;
  out.iv_bytes = static_cast<long long>(iv_bytes);
  out.data.resize(wanted.size() * static_cast<std::size_t>(inst.num_files) * iv_bytes);

  auto write_block = [&](std::size_t q_idx, long long file, std::span<const std::uint8_t> src) {
    const std::size_t offset =
        (q_idx * static_cast<std::size_t>(inst.num_files) +
         static_cast<std::size_t>(file - 1)) *
        iv_bytes;
    std::copy(src.begin(), src.end(), out.data.begin() + offset);
  };

  std::map<std::pair<int, std::uint64_t>, const MulticastMessage*> by_sender;
  for (const MulticastMessage& msg : transcript.messages) {
    by_sender[{msg.level, msg.sender.rank}] = &msg;
  }

  std::vector<int> all(inst.num_mappers);
  for (int i = 0; i < inst.num_mappers; ++i) {
    all[i] = i + 1;
  }

  for (const Batch& batch : sim.files.batches) {
    if (!set_intersection(batch.label.members, me.members).empty()) {
      for (std::size_t q_idx = 0; q_idx < wanted.size(); ++q_idx) {
        for (long long file : batch.files) {
          write_block(q_idx, file, view.block(wanted[q_idx], file));
        }
      }
      continue;
    }

    // Batch invisible to this reducer: rebuild its symbol slice by slice.
    const int level = batch.level;
    const long long splits = segment_splits(level, inst.access_degree);
    const std::size_t symbol_bytes =
        wanted.size() * batch.files.size() * iv_bytes;
    const std::size_t seg_bytes = symbol_bytes / static_cast<std::size_t>(splits);
    std::vector<std::uint8_t> symbol(symbol_bytes);

    const std::vector<int> pool = set_union(me.members, batch.label.members);
    for_each_k_subset_of(pool, inst.access_degree, [&](const std::vector<int>& sender) {
      if (sender == me.members) {
        return;
      }
      const std::vector<int> served = set_difference(pool, sender);
      auto found = by_sender.find({level, subset_rank(sender, inst.num_mappers)});
      if (found == by_sender.end()) {
        throw DecodeFailure("no message from reducer " + set_to_string(sender) +
                            " at level " + std::to_string(level));
      }
      const MulticastMessage& msg = *found->second;
      const std::vector<int> sender_others = set_difference(all, sender);
      const std::uint64_t entry_idx = rank_within(sender_others, served);
      if (entry_idx >= msg.entries.size()) {
        throw DecodeFailure("message from " + set_to_string(sender) + " has " +
                            std::to_string(msg.entries.size()) + " entries, need index " +
                            std::to_string(entry_idx));
      }
      const MessageEntry& entry = msg.entries[entry_idx];
      if (entry.label != served || entry.payload.size() != seg_bytes) {
        throw DecodeFailure("entry " + std::to_string(entry_idx) + " from " +
                            set_to_string(sender) + " does not match its expected label");
      }

      std::vector<std::uint8_t> buffer(entry.payload);
      std::vector<SegmentTerm> expected;
      for_each_k_subset_of(pool, inst.access_degree, [&](const std::vector<int>& owner) {
        if (owner == sender) {
          return;
        }
        const std::vector<int> owner_batch = set_difference(pool, owner);
        expected.push_back({owner, owner_batch});
        if (owner == me.members) {
          return;  // the term being recovered
        }
        const Batch& other = lookup.at(level, rank_within(all, owner_batch));
        const auto interference = build_symbol(sim, view, owner, other);
        const std::size_t pos = slice_position(pool, owner, sender);
        xor_into(buffer, std::span<const std::uint8_t>(
                             interference.data() + pos * seg_bytes, seg_bytes));
      });
      if (entry.terms != expected) {
        throw DecodeFailure("entry " + std::to_string(entry_idx) + " from " +
                            set_to_string(sender) + " fails the structure check");
      }

      const std::size_t pos = slice_position(pool, me.members, sender);
      std::copy(buffer.begin(), buffer.end(), symbol.begin() + pos * seg_bytes);
    });

    // Symbol holds wanted-function-major, file-minor blocks.
    std::size_t offset = 0;
    for (std::size_t q_idx = 0; q_idx < wanted.size(); ++q_idx) {
      for (long long file : batch.files) {
        write_block(q_idx, file,
                    std::span<const std::uint8_t>(symbol.data() + offset, iv_bytes));
        offset += iv_bytes;
      }
    }
  }
  return out;
}

std::uint64_t message_bits(const MulticastMessage& message) {
  std::uint64_t bits = 0;
  for (const MessageEntry& entry : message.entries) {
    bits += 8ULL * entry.payload.size();
  }
  return bits;
}

Rational measure_comm_load(const Transcript& transcript, const ProblemInstance& instance) {
  const BigInt denom =
      BigInt(instance.num_functions) * instance.num_files * instance.iv_bits;
  return Rational(BigInt(transcript.total_bits), denom);
}

}  // namespace madc
