#include "madc/sweep.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <tuple>
#include <vector>

#include "madc/bounds.hpp"
#include "madc/errors.hpp"

namespace madc {
namespace {

TEST(Sweep, CommGridCoversTheTriangle) {
  SweepSpec spec;
  spec.lambda_min = 4;
  spec.lambda_max = 5;
  const std::vector<SweepRow> rows = run_sweep(spec);
  // sum over lambda of lambda * (lambda + 1) / 2 valid (alpha, r) pairs.
  ASSERT_EQ(rows.size(), 10u + 15u);
  for (const SweepRow& row : rows) {
    EXPECT_TRUE(row.l_ub && row.l_lb && row.cdc && row.gain && row.gap);
    EXPECT_FALSE(row.maxlink_ub || row.maxlink_lb);
    EXPECT_EQ(*row.l_ub, l_ub(row.num_mappers, row.access_degree, row.computation_load));
    EXPECT_EQ(*row.l_lb, l_lb(row.num_mappers, row.access_degree, row.computation_load));
  }
}

TEST(Sweep, MaxlinkGridRunsToFullReplication) {
  SweepSpec spec;
  spec.lambda_min = 4;
  spec.lambda_max = 4;
  spec.mode = RunMode::Maxlink;
  const std::vector<SweepRow> rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 16u);  // 4 degrees, loads 1..4 each
  for (const SweepRow& row : rows) {
    EXPECT_TRUE(row.maxlink_ub && row.maxlink_lb);
    EXPECT_FALSE(row.l_ub || row.gap);
    EXPECT_LE(*row.maxlink_lb, *row.maxlink_ub);
  }
}

TEST(Sweep, BothModeFillsWhatApplies) {
  SweepSpec spec;
  spec.lambda_min = 4;
  spec.lambda_max = 4;
  spec.alphas = {2};
  spec.mode = RunMode::Both;
  const std::vector<SweepRow> rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 4u);
  for (const SweepRow& row : rows) {
    EXPECT_TRUE(row.maxlink_ub && row.maxlink_lb);
    // Shuffle columns stop at the zero-load corner r = 3.
    EXPECT_EQ(row.l_ub.has_value(), row.computation_load <= 3);
  }
}

TEST(Sweep, ListsFilterTheGrid) {
  SweepSpec spec;
  spec.lambda_min = 5;
  spec.lambda_max = 5;
  spec.alphas = {2, 9};  // 9 exceeds lambda and drops out
  spec.loads = {1, 3};
  const std::vector<SweepRow> rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].computation_load, 1);
  EXPECT_EQ(rows[1].computation_load, 3);
}

TEST(Sweep, EmptyGridsAreRejected) {
  SweepSpec spec;
  spec.lambda_min = 4;
  spec.lambda_max = 3;
  EXPECT_THROW(run_sweep(spec), InvalidParameters);

  spec.lambda_min = 4;
  spec.lambda_max = 4;
  spec.alphas = {9};
  EXPECT_THROW(run_sweep(spec), InvalidParameters);

  spec.alphas = {2};
  spec.loads = {7};
  EXPECT_THROW(run_sweep(spec), InvalidParameters);
}

TEST(Sweep, RowsComeBackSorted) {
  SweepSpec spec;
  spec.lambda_min = 2;
  spec.lambda_max = 8;
  const std::vector<SweepRow> rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 119u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(std::tie(rows[i - 1].num_mappers, rows[i - 1].access_degree,
                       rows[i - 1].computation_load),
              std::tie(rows[i].num_mappers, rows[i].access_degree,
                       rows[i].computation_load));
  }
}

TEST(Sweep, CsvIsExactAndByteStable) {
  SweepSpec spec;
  spec.lambda_min = 4;
  spec.lambda_max = 4;
  spec.alphas = {2};
  spec.loads = {1};
  const std::vector<SweepRow> rows = run_sweep(spec);
  const std::string csv = sweep_to_csv(rows);
  EXPECT_EQ(csv,
            "lambda,alpha,r,l_ub,l_ub_float,l_lb,l_lb_float,cdc,cdc_float,gain,"
            "maxlink_ub,maxlink_ub_float,maxlink_lb,maxlink_lb_float,gap,gap_float\n"
            "4,2,1,1/4,0.25,1/6,0.166666666666667,3/4,0.75,2,,,,,3/2,1.5\n");
  EXPECT_EQ(csv, sweep_to_csv(run_sweep(spec)));
}

TEST(Sweep, JsonRoundTripsThroughAParser) {
  SweepSpec spec;
  spec.lambda_min = 4;
  spec.lambda_max = 4;
  spec.alphas = {2};
  spec.loads = {1};
  spec.mode = RunMode::Both;
  const nlohmann::json root = nlohmann::json::parse(sweep_to_json(run_sweep(spec)));
  ASSERT_EQ(root.size(), 1u);
  EXPECT_EQ(root[0]["lambda"], 4);
  EXPECT_EQ(root[0]["alpha"], 2);
  EXPECT_EQ(root[0]["r"], 1);
  EXPECT_EQ(root[0]["l_ub"], "1/4");
  EXPECT_EQ(root[0]["maxlink_ub"], "1/4");
  EXPECT_EQ(root[0]["maxlink_lb"], "5/24");
  EXPECT_EQ(root[0]["gain"], "2");
  EXPECT_DOUBLE_EQ(root[0]["maxlink_lb_float"], 5.0 / 24.0);
}

}  // namespace
}  // namespace madc
