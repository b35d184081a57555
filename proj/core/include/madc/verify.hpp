#pragma once

#include <string>
#include <vector>

namespace madc {

struct SuiteResult {
  std::string name;
  long long checks = 0;
  bool passed = true;
  std::string detail;  // first counterexample, empty when passed
};

// Counting and coefficient identities the closed forms rely on (Pascal,
// Vandermonde, the subset-splitting product, the per-level gap chain).
SuiteResult verify_identities(int max_lambda);

// The fixed 4-mapper, degree-2, load-1 instance with 8 files and 12
// functions: batch layout, function layout, the exact XOR structure of all
// six broadcasts, their sizes, the 1/4 load and bit-exact decoding.
SuiteResult verify_golden_example();

// Every instance with up to min(max_lambda, 7) mappers: measured shuffle
// load equals the closed form exactly and every reducer decodes every wanted
// value bit for bit.
SuiteResult verify_shuffle_grid(int max_lambda);

// With access degree 1 the scheme collapses to the classic single-access
// one: l_ub(L, 1, r) equals (1 - r/L) / r and the gain is r.
SuiteResult verify_single_access_reduction(int max_lambda);

// l_lb <= l_ub <= 3/2 * l_lb for degree >= 2, the exact per-load ratio, and
// that 3/2 is attained.
SuiteResult verify_comm_gap(int max_lambda);

// l_ub strictly decreases when the access degree grows.
SuiteResult verify_monotonicity(int max_lambda);

// Max-link: simulations at the optimiser's level profile reach maxlink_ub
// exactly (up to min(max_lambda, 6) mappers) and maxlink_ub <= 4 *
// maxlink_lb everywhere.
SuiteResult verify_maxlink_end_to_end(int max_lambda);

// Delivery plans: every link of a reducer carries the same bits, bytes
// travel exactly once, the measured cost matches the per-level closed form,
// and the splitting identity behind it holds exhaustively.
SuiteResult verify_download_split(int max_lambda);

// The two-level vertex optimum is never beaten by any point of the 1/64
// simplex grid, and matches the grid wherever the grid can express an
// optimal vertex.  Capped at 8 mappers.
SuiteResult verify_lp_grid(int max_lambda);

// The sweep rows behind the two headline figures (10 mappers) carry the
// expected exact values.
SuiteResult verify_figure_rows();

// Full battery.  Simulation-backed suites cap their own grids (7 for the
// shuffle grid, 6 for max-link runs, 8 for the LP grid); the formula-only
// suites run all the way to max_lambda.
std::vector<SuiteResult> run_verification(int max_lambda);

}  // namespace madc
