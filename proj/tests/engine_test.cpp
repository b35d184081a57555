#include "madc/engine.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "madc/bounds.hpp"
#include "madc/errors.hpp"
#include "madc/model.hpp"

namespace madc {
namespace {

struct Bundle {
  ProblemInstance instance;
  Topology topology;
  FileAssignment files;
  ReduceAssignment reduce;
  IVStore store;

  Simulation sim() const { return {instance, topology, files, reduce, store}; }
};

Bundle make_bundle(int lambda, int alpha, int r, std::optional<long long> n = {},
                   std::optional<long long> q = {}, std::optional<long long> t = {},
                   std::uint64_t seed = 11) {
  ProblemInstance inst = build_instance(lambda, alpha, r, n, q, t, seed);
  Topology topo = build_topology(inst);
  FileAssignment files = assign_files_single(inst);
  ReduceAssignment reduce = assign_reduce_functions(inst, topo);
  IVStore store = run_map(inst, files);
  return {std::move(inst), std::move(topo), std::move(files), std::move(reduce),
          std::move(store)};
}

// True when the reducer's decode output equals the store on every wanted
// (function, file) pair.
bool decoded_matches_store(const Bundle& b, std::size_t rank, const Transcript& transcript) {
  const RecoveredIVs got = decode(b.sim(), rank, transcript);
  for (long long q : b.reduce.functions_of[rank]) {
    for (long long n = 1; n <= b.instance.num_files; ++n) {
      const auto lhs = got.block(q, n);
      const auto rhs = b.store.block(q, n);
      if (!std::equal(lhs.begin(), lhs.end(), rhs.begin(), rhs.end())) {
        return false;
      }
    }
  }
  return true;
}

TEST(Shuffle, ReferenceInstanceShape) {
  const Bundle b = make_bundle(4, 2, 1, 8, 12, 8);
  const Transcript transcript = run_shuffle(b.sim());
  ASSERT_EQ(transcript.messages.size(), 6u);
  for (const MulticastMessage& msg : transcript.messages) {
    EXPECT_EQ(msg.level, 1);
    ASSERT_EQ(msg.entries.size(), 2u);
    EXPECT_EQ(message_bits(msg), 32u);
    for (const MessageEntry& entry : msg.entries) {
      EXPECT_EQ(entry.terms.size(), 2u);
      EXPECT_EQ(entry.payload.size(), 2u);
    }
  }
  EXPECT_EQ(transcript.total_bits, 192u);
  EXPECT_EQ(measure_comm_load(transcript, b.instance), Rational(1, 4));

  const MulticastMessage& first = transcript.messages[0];
  EXPECT_EQ(first.sender.members, (std::vector<int>{1, 2}));
  EXPECT_EQ(first.entries[0].label, (std::vector<int>{3}));
  EXPECT_EQ(first.entries[0].terms[0], (SegmentTerm{{1, 3}, {2}}));
  EXPECT_EQ(first.entries[0].terms[1], (SegmentTerm{{2, 3}, {1}}));
  EXPECT_EQ(first.entries[1].label, (std::vector<int>{4}));
}

TEST(Shuffle, AutoInstanceLoadMeetsTheFormula) {
  const Bundle b = make_bundle(5, 2, 1);
  const Transcript transcript = run_shuffle(b.sim());
  ASSERT_EQ(transcript.messages.size(), 10u);
  for (const MulticastMessage& msg : transcript.messages) {
    EXPECT_EQ(msg.entries.size(), 3u);
    EXPECT_EQ(message_bits(msg), 24u);
  }
  EXPECT_EQ(transcript.total_bits, 240u);
  EXPECT_EQ(measure_comm_load(transcript, b.instance), l_ub(5, 2, 1));
  EXPECT_EQ(measure_comm_load(transcript, b.instance), Rational(3, 10));
}

TEST(Shuffle, DeterministicTranscript) {
  const Bundle b = make_bundle(5, 2, 2);
  const Transcript first = run_shuffle(b.sim());
  const Transcript second = run_shuffle(b.sim());
  ASSERT_EQ(first.messages.size(), second.messages.size());
  for (std::size_t i = 0; i < first.messages.size(); ++i) {
    EXPECT_EQ(first.messages[i].sender.members, second.messages[i].sender.members);
    ASSERT_EQ(first.messages[i].entries.size(), second.messages[i].entries.size());
    for (std::size_t e = 0; e < first.messages[i].entries.size(); ++e) {
      EXPECT_EQ(first.messages[i].entries[e].payload, second.messages[i].entries[e].payload);
    }
  }
  EXPECT_EQ(first.total_bits, second.total_bits);
}

TEST(Shuffle, CornerLevelSendsEmptyMessages) {
  // r = Lambda - alpha + 1: every batch touches every reducer, nothing to code.
  const Bundle b = make_bundle(4, 3, 2);
  const Transcript transcript = run_shuffle(b.sim());
  ASSERT_EQ(transcript.messages.size(), 4u);
  for (const MulticastMessage& msg : transcript.messages) {
    EXPECT_TRUE(msg.entries.empty());
  }
  EXPECT_EQ(transcript.total_bits, 0u);
  for (std::size_t rank = 0; rank < 4; ++rank) {
    EXPECT_TRUE(decoded_matches_store(b, rank, transcript));
  }
}

TEST(Shuffle, LoneReducerProducesNothing) {
  const Bundle b = make_bundle(3, 3, 1);
  const Transcript transcript = run_shuffle(b.sim());
  EXPECT_TRUE(transcript.messages.empty());
  EXPECT_EQ(transcript.total_bits, 0u);
  EXPECT_TRUE(decoded_matches_store(b, 0, transcript));
}

TEST(Shuffle, RejectsInactiveLevel) {
  const Bundle b = make_bundle(4, 2, 1, 8, 12, 8);
  EXPECT_THROW(encode_multicast(b.sim(), 0, 2), InvalidParameters);
}

TEST(Decode, ExactRecoveryAcrossTheGrid) {
  for (int lambda = 2; lambda <= 5; ++lambda) {
    for (int alpha = 1; alpha <= lambda; ++alpha) {
      for (int r = 1; r <= lambda - alpha + 1; ++r) {
        const Bundle b = make_bundle(lambda, alpha, r);
        const Transcript transcript = run_shuffle(b.sim());
        EXPECT_EQ(measure_comm_load(transcript, b.instance), l_ub(lambda, alpha, r))
            << lambda << "/" << alpha << "/" << r;
        for (std::size_t rank = 0; rank < b.topology.reducers.size(); ++rank) {
          EXPECT_TRUE(decoded_matches_store(b, rank, transcript))
              << lambda << "/" << alpha << "/" << r << " reducer " << rank;
        }
      }
    }
  }
}

TEST(Decode, MissingMessageIsRejected) {
  const Bundle b = make_bundle(4, 2, 1, 8, 12, 8);
  Transcript transcript = run_shuffle(b.sim());
  transcript.messages.pop_back();  // reducer {3,4} goes silent
  // Reducer {1,3} decodes batch {4} from senders {1,4} and {3,4}.
  EXPECT_THROW(decode(b.sim(), 1, transcript), DecodeFailure);
}

TEST(Decode, WrongLevelKeyIsRejected) {
  const Bundle b = make_bundle(4, 2, 1, 8, 12, 8);
  Transcript transcript = run_shuffle(b.sim());
  transcript.messages[0].level = 2;
  EXPECT_THROW(decode(b.sim(), 1, transcript), DecodeFailure);
}

TEST(Decode, ShuffledEntriesAreRejected) {
  const Bundle b = make_bundle(4, 2, 1, 8, 12, 8);
  Transcript transcript = run_shuffle(b.sim());
  std::swap(transcript.messages[0].entries[0], transcript.messages[0].entries[1]);
  EXPECT_THROW(decode(b.sim(), 1, transcript), DecodeFailure);
}

TEST(Decode, TruncatedPayloadIsRejected) {
  const Bundle b = make_bundle(4, 2, 1, 8, 12, 8);
  Transcript transcript = run_shuffle(b.sim());
  transcript.messages[0].entries[0].payload.pop_back();
  EXPECT_THROW(decode(b.sim(), 1, transcript), DecodeFailure);
}

TEST(Decode, MangledTermListIsRejected) {
  const Bundle b = make_bundle(4, 2, 1, 8, 12, 8);
  Transcript transcript = run_shuffle(b.sim());
  transcript.messages[0].entries[0].terms.pop_back();
  EXPECT_THROW(decode(b.sim(), 1, transcript), DecodeFailure);
}

TEST(Decode, BitFlipCorruptsExactlyTheServedSlice) {
  const Bundle b = make_bundle(4, 2, 1, 8, 12, 8);
  Transcript transcript = run_shuffle(b.sim());
  // Sender {1,2}, entry {3} carries slices for reducers {1,3} and {2,3}.
  transcript.messages[0].entries[0].payload[0] ^= 0x40;
  EXPECT_FALSE(decoded_matches_store(b, 1, transcript));  // {1,3}
  EXPECT_FALSE(decoded_matches_store(b, 3, transcript));  // {2,3}
  // Reducers outside that entry decode cleanly.
  EXPECT_TRUE(decoded_matches_store(b, 0, transcript));  // {1,2} sent it
  EXPECT_TRUE(decoded_matches_store(b, 2, transcript));  // {1,4}
  EXPECT_TRUE(decoded_matches_store(b, 5, transcript));  // {3,4}
}

TEST(Decode, RecoveredLookupValidatesKeys) {
  const Bundle b = make_bundle(4, 2, 1, 8, 12, 8);
  const Transcript transcript = run_shuffle(b.sim());
  const RecoveredIVs got = decode(b.sim(), 0, transcript);
  EXPECT_EQ(got.functions, (std::vector<long long>{1, 2}));
  EXPECT_THROW(got.block(3, 1), InvalidParameters);
  EXPECT_THROW(got.block(1, 0), InvalidParameters);
  EXPECT_THROW(got.block(1, 9), InvalidParameters);
}

TEST(Decode, LeveledPlacementRoundTrips) {
  const LeveledInstance leveled =
      build_instance_for_profile(4, 2, 2, {Rational(2, 5), Rational(3, 5)}, 5);
  const Topology topo = build_topology(leveled.instance);
  const FileAssignment files =
      assign_files_multilevel(leveled.instance, leveled.level_counts);
  const ReduceAssignment reduce = assign_reduce_functions(leveled.instance, topo);
  const IVStore store = run_map(leveled.instance, files);
  const Simulation sim{leveled.instance, topo, files, reduce, store};

  const Transcript transcript = run_shuffle(sim);
  // Level-major: six level-1 messages then six level-2 messages.
  ASSERT_EQ(transcript.messages.size(), 12u);
  EXPECT_EQ(transcript.messages[0].level, 1);
  EXPECT_EQ(transcript.messages[6].level, 2);

  for (std::size_t rank = 0; rank < topo.reducers.size(); ++rank) {
    const RecoveredIVs got = decode(sim, rank, transcript);
    for (long long q : reduce.functions_of[rank]) {
      for (long long n = 1; n <= leveled.instance.num_files; ++n) {
        const auto lhs = got.block(q, n);
        const auto rhs = store.block(q, n);
        EXPECT_TRUE(std::equal(lhs.begin(), lhs.end(), rhs.begin(), rhs.end()))
            << "reducer " << rank << " function " << q << " file " << n;
      }
    }
  }
}

}  // namespace
}  // namespace madc
