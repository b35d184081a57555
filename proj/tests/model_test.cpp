#include "madc/model.hpp"

#include <gtest/gtest.h>

#include <optional>
#include <vector>

#include "madc/errors.hpp"

namespace madc {
namespace {

TEST(InstanceFactory, ExplicitShape) {
  const ProblemInstance inst = build_instance(4, 2, 1, 8, 12, 8, 7);
  EXPECT_EQ(inst.num_reducers, 6);
  EXPECT_EQ(inst.files_per_batch, 2);
  EXPECT_EQ(inst.functions_per_reducer, 2);
  EXPECT_EQ(inst.iv_bytes(), 1);
  EXPECT_EQ(inst.seed, 7u);
}

TEST(InstanceFactory, AutoSelection) {
  // Defaults: one file per batch, one function per reducer, smallest
  // byte-splittable value length.
  const ProblemInstance tiny =
      build_instance(4, 2, 1, std::nullopt, std::nullopt, std::nullopt, 0);
  EXPECT_EQ(tiny.num_files, 4);
  EXPECT_EQ(tiny.num_functions, 6);
  EXPECT_EQ(tiny.iv_bits, 16);  // segments split into binom(3,1) - 1 = 2 slices

  const ProblemInstance mid =
      build_instance(5, 2, 2, std::nullopt, std::nullopt, std::nullopt, 0);
  EXPECT_EQ(mid.num_files, 10);
  EXPECT_EQ(mid.num_functions, 10);
  EXPECT_EQ(mid.iv_bits, 40);  // binom(4,2) - 1 = 5 slices

  // Enough files and functions make a single byte splittable.
  const ProblemInstance wide = build_instance(4, 2, 1, 8, 12, std::nullopt, 0);
  EXPECT_EQ(wide.iv_bits, 8);

  // A lone reducer never shuffles, so no split constraint applies.
  const ProblemInstance lone =
      build_instance(3, 3, 1, std::nullopt, std::nullopt, std::nullopt, 0);
  EXPECT_EQ(lone.num_reducers, 1);
  EXPECT_EQ(lone.iv_bits, 8);
}

TEST(InstanceFactory, RejectsBadShapes) {
  EXPECT_THROW(build_instance(0, 1, 1, {}, {}, {}, 0), InvalidParameters);
  EXPECT_THROW(build_instance(4, 5, 1, {}, {}, {}, 0), InvalidParameters);
  EXPECT_THROW(build_instance(4, 2, 0, {}, {}, {}, 0), InvalidParameters);
  EXPECT_THROW(build_instance(4, 2, 4, {}, {}, {}, 0), InvalidParameters);
}

TEST(InstanceFactory, RejectsBadDivisibility) {
  EXPECT_THROW(build_instance(4, 2, 1, 7, {}, {}, 0), InvalidParameters);
  EXPECT_THROW(build_instance(4, 2, 1, 8, 7, {}, 0), InvalidParameters);
  EXPECT_THROW(build_instance(4, 2, 1, 8, 12, 4, 0), InvalidParameters);
  EXPECT_THROW(build_instance(4, 2, 1, 8, 12, 0, 0), InvalidParameters);
  // (5,2,2) needs five slices per segment, so one byte per value is too few.
  EXPECT_THROW(build_instance(5, 2, 2, 10, 10, 8, 0), InvalidParameters);
  EXPECT_NO_THROW(build_instance(5, 2, 2, 10, 10, 40, 0));
}

TEST(InstanceFactory, ProfileAutoSizesFiles) {
  const LeveledInstance leveled =
      build_instance_for_profile(4, 2, 2, {Rational(2, 5), Rational(3, 5)}, 3);
  EXPECT_EQ(leveled.instance.num_files, 10);
  EXPECT_EQ(leveled.instance.num_functions, 6);
  EXPECT_EQ(leveled.instance.files_per_batch, 0);
  EXPECT_EQ(leveled.level_counts, (std::vector<long long>{4, 6, 0, 0}));

  const FileAssignment assignment =
      assign_files_multilevel(leveled.instance, leveled.level_counts);
  EXPECT_EQ(map_replication(assignment, leveled.instance), Rational(8, 5));
}

TEST(InstanceFactory, ProfileRejectsBadFractions) {
  EXPECT_THROW(build_instance_for_profile(4, 2, 2, {Rational(1, 2)}, 0),
               InvalidParameters);
  EXPECT_THROW(
      build_instance_for_profile(4, 2, 2, {Rational(3, 2), Rational(-1, 2)}, 0),
      InvalidParameters);
  EXPECT_THROW(build_instance_for_profile(4, 2, 1, {Rational(0), Rational(1)}, 0),
               InvalidParameters);  // replication 2 over budget 1
  EXPECT_THROW(build_instance_for_profile(
                   4, 2, 2, {Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)}, 0),
               InvalidParameters);
  EXPECT_THROW(build_instance_for_profile(4, 2, 5, {Rational(1)}, 0), InvalidParameters);
}

TEST(FilePlacement, SingleLevelDealsConsecutiveFiles) {
  const ProblemInstance inst = build_instance(4, 2, 1, 8, 12, 8, 0);
  const FileAssignment assignment = assign_files_single(inst);
  ASSERT_EQ(assignment.batches.size(), 4u);
  EXPECT_EQ(assignment.level_counts, (std::vector<long long>{8, 0, 0, 0}));
  for (int m = 1; m <= 4; ++m) {
    const Batch& batch = assignment.batches[m - 1];
    EXPECT_EQ(batch.level, 1);
    EXPECT_EQ(batch.label.members, (std::vector<int>{m}));
    EXPECT_EQ(batch.files, (std::vector<long long>{2 * m - 1, 2 * m}));
  }
  EXPECT_EQ(map_replication(assignment, inst), Rational(1));
}

TEST(FilePlacement, MultilevelOrdersBatchesLevelMajor) {
  const LeveledInstance leveled =
      build_instance_for_profile(4, 2, 2, {Rational(2, 5), Rational(3, 5)}, 0);
  const FileAssignment assignment =
      assign_files_multilevel(leveled.instance, leveled.level_counts);
  ASSERT_EQ(assignment.batches.size(), 10u);
  // Four singleton labels first, then the six pairs, files numbered through.
  EXPECT_EQ(assignment.batches[0].label.members, (std::vector<int>{1}));
  EXPECT_EQ(assignment.batches[0].files, (std::vector<long long>{1}));
  EXPECT_EQ(assignment.batches[3].label.members, (std::vector<int>{4}));
  EXPECT_EQ(assignment.batches[3].files, (std::vector<long long>{4}));
  EXPECT_EQ(assignment.batches[4].label.members, (std::vector<int>{1, 2}));
  EXPECT_EQ(assignment.batches[4].files, (std::vector<long long>{5}));
  EXPECT_EQ(assignment.batches[9].label.members, (std::vector<int>{3, 4}));
  EXPECT_EQ(assignment.batches[9].files, (std::vector<long long>{10}));
}

TEST(FilePlacement, RejectsInconsistentCounts) {
  const ProblemInstance inst = build_instance(4, 2, 1, 8, 12, 8, 0);
  EXPECT_THROW(assign_files_multilevel(inst, {7, 0, 0, 0}), InvalidParameters);
  EXPECT_THROW(assign_files_multilevel(inst, {9, -1, 0, 0}), InvalidParameters);
  EXPECT_THROW(assign_files_multilevel(inst, {2, 6, 0, 0}), InvalidParameters);
  EXPECT_THROW(assign_files_multilevel(inst, {8, 0, 0, 0, 0}), InvalidParameters);

  // Within budget but 3 files cannot spread over 4 singleton labels.
  const ProblemInstance wide = build_instance(4, 2, 2, 6, 6, std::nullopt, 0);
  EXPECT_THROW(assign_files_multilevel(wide, {3, 3, 0, 0}), InvalidParameters);

  const LeveledInstance leveled =
      build_instance_for_profile(4, 2, 2, {Rational(2, 5), Rational(3, 5)}, 0);
  EXPECT_THROW(assign_files_single(leveled.instance), InvalidParameters);
}

TEST(FilePlacement, BatchMembershipQueries) {
  const LeveledInstance leveled =
      build_instance_for_profile(4, 2, 2, {Rational(2, 5), Rational(3, 5)}, 0);
  const FileAssignment assignment =
      assign_files_multilevel(leveled.instance, leveled.level_counts);
  EXPECT_EQ(mapper_batches(assignment, 1), (std::vector<std::size_t>{0, 4, 5, 6}));
  EXPECT_EQ(reducer_batches(assignment, {1, 2}),
            (std::vector<std::size_t>{0, 1, 4, 5, 6, 7, 8}));
  // The pair {3,4} touches neither member of reducer {1,2}.
  EXPECT_EQ(reducer_batches(assignment, {3, 4}),
            (std::vector<std::size_t>{2, 3, 5, 6, 7, 8, 9}));
}

TEST(ReducePlacement, FunctionsDealtByRank) {
  const ProblemInstance inst = build_instance(4, 2, 1, 8, 12, 8, 0);
  const Topology topo = build_topology(inst);
  ASSERT_EQ(topo.reducers.size(), 6u);
  EXPECT_EQ(topo.reducers[0].members, (std::vector<int>{1, 2}));
  EXPECT_EQ(topo.reducers[5].members, (std::vector<int>{3, 4}));

  const ReduceAssignment reduce = assign_reduce_functions(inst, topo);
  EXPECT_EQ(reduce.functions_of[0], (std::vector<long long>{1, 2}));
  EXPECT_EQ(reduce.functions_of[5], (std::vector<long long>{11, 12}));
}

TEST(MapOutputs, DeterministicAndKeyed) {
  const auto a = map_iv(42, 3, 5, 64);
  EXPECT_EQ(a.size(), 8u);
  EXPECT_EQ(a, map_iv(42, 3, 5, 64));
  EXPECT_NE(a, map_iv(42, 3, 6, 64));
  EXPECT_NE(a, map_iv(42, 4, 5, 64));
  EXPECT_NE(a, map_iv(43, 3, 5, 64));
  EXPECT_THROW(map_iv(42, 3, 5, 12), InvalidParameters);
}

TEST(MapOutputs, StoreRoundTrip) {
  IVStore store(3, 4, 2);
  const auto value = map_iv(1, 2, 3, 16);
  auto block = store.mutable_block(2, 3);
  std::copy(value.begin(), value.end(), block.begin());
  const auto back = store.block(2, 3);
  EXPECT_TRUE(std::equal(back.begin(), back.end(), value.begin()));
  EXPECT_THROW(store.block(0, 1), InvalidParameters);
  EXPECT_THROW(store.block(1, 5), InvalidParameters);
  EXPECT_THROW(store.block(4, 1), InvalidParameters);
}

}  // namespace
}  // namespace madc
