#pragma once

#include <optional>
#include <string>
#include <vector>

#include "madc/rational.hpp"

namespace madc {

enum class RunMode { Comm, Maxlink, Both };

struct SweepSpec {
  int lambda_min = 2;
  int lambda_max = 2;
  std::vector<int> alphas;  // empty: every degree in [1 .. lambda]
  std::vector<int> loads;   // empty: every load the mode accepts
  RunMode mode = RunMode::Comm;
};

// One grid point.  Unset fields were outside the mode or the parameter
// range (the shuffle columns stop at r = lambda - alpha + 1, the max-link
// columns run to r = lambda).
struct SweepRow {
  int num_mappers = 0;
  int access_degree = 0;
  int computation_load = 0;
  std::optional<Rational> l_ub;
  std::optional<Rational> l_lb;
  std::optional<Rational> cdc;
  std::optional<BigInt> gain;
  std::optional<Rational> gap;
  std::optional<Rational> maxlink_ub;
  std::optional<Rational> maxlink_lb;
};

// Expands the grid, evaluates every point on a small worker pool (each point
// is a pure function of its parameters) and returns rows sorted by
// (lambda, alpha, r).  Throws InvalidParameters when the grid is empty.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Rationals as "p/q" with a float twin column; unset cells stay empty.
// Byte-stable for equal rows.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

}  // namespace madc
