#pragma once

#include <vector>

#include "madc/rational.hpp"

namespace madc {

// Closed-form communication load of the coded shuffle with num_mappers (L)
// mappers, access_degree (a) mappers per reducer and computation load r:
//   binom(L - a, r) / (binom(L, r) * (binom(r + a, r) - 1))
Rational l_ub(int num_mappers, int access_degree, int computation_load);

// Lower convex envelope of the integer points of l_ub, evaluated at a
// fractional computation load in [1 .. L - a + 1].
Rational l_ub_fractional(int num_mappers, int access_degree, const Rational& computation_load);

// Information-theoretic lower bound on the communication load:
//   binom(L, r + a) / (binom(L, a) * binom(L, r))
Rational l_lb(int num_mappers, int access_degree, int computation_load);

// Piecewise-linear interpolation of l_lb between adjacent integer loads.
Rational l_lb_fractional(int num_mappers, int access_degree, const Rational& computation_load);

// Load of the classic single-access scheme, (1 - r / L) / r.
Rational cdc_load(int num_mappers, int computation_load);

// Multiplicative load reduction over the classic scheme: binom(r + a, r) - 1.
BigInt coding_gain(int access_degree, int computation_load);

// Per-level coefficients of the max-link objective.  All are defined for
// level in [1 .. L]; the shuffle coefficient is 0 above level L - a.
Rational shuffle_coeff(int num_mappers, int access_degree, int level);
Rational download_coeff(int num_mappers, int access_degree, int level);
Rational converse_coeff(int num_mappers, int access_degree, int level);
// Average of converse and download coefficients; the cost of level j in the
// max-link lower bound program.
Rational lp_coeff(int num_mappers, int access_degree, int level);

struct LpSolution {
  std::vector<Rational> x;  // x[j - 1] = share of files at level j
  Rational objective;
  std::vector<int> active_levels;  // levels with x > 0, ascending
};

// Minimises sum_j lp_coeff(j) * x_j over distributions x with
// sum_j j * x_j <= computation_load.  Solved exactly by vertex enumeration:
// an optimum uses at most two levels.  Ties break toward the
// lexicographically smallest active level set.
LpSolution lp_solve(int num_mappers, int access_degree, const Rational& computation_load);

// Largest of shuffle and download cost at the lp_solve optimum; achievable
// max-link communication rate.
Rational maxlink_ub(int num_mappers, int access_degree, const Rational& computation_load);

// Value of the lower-bound program at its optimum.
Rational maxlink_lb(int num_mappers, int access_degree, const Rational& computation_load);

// l_ub / l_lb.  Equals binom(r+a, r) / (binom(r+a, r) - 1) for
// r <= L - a and is defined as 1 at the zero corner r = L - a + 1.
Rational gap_comm(int num_mappers, int access_degree, int computation_load);

}  // namespace madc
