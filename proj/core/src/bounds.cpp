#include "madc/bounds.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "madc/combin.hpp"
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

void check_load_range(int computation_load, int max_load, const char* who) {
  if (computation_load < 1 || computation_load > max_load) {
    throw InvalidParameters(std::string(who) + ": computation load " +
                            std::to_string(computation_load) + " outside [1.." +
                            std::to_string(max_load) + "]");
  }
}

void check_level(int num_mappers, int level, const char* who) {
  if (level < 1 || level > num_mappers) {
    throw InvalidParameters(std::string(who) + ": level " + std::to_string(level) +
                            " outside [1.." + std::to_string(num_mappers) + "]");
  }
}

struct Point {
  Rational x;
  Rational y;
};

// z-component of (b - a) x (c - a); positive when a->b->c turns
// counterclockwise.
Rational cross(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Lower convex hull of points sorted by strictly increasing x.
std::vector<Point> lower_hull(const std::vector<Point>& points) {
  std::vector<Point> hull;
  for (const Point& p : points) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

Rational eval_piecewise(const std::vector<Point>& chain, const Rational& x) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (x >= chain[i].x && x <= chain[i + 1].x) {
      const Rational t = (x - chain[i].x) / (chain[i + 1].x - chain[i].x);
      return chain[i].y + t * (chain[i + 1].y - chain[i].y);
    }
  }
  return chain.back().y;  // x == right endpoint of a single-point chain
}

void check_fractional_load(int max_load, const Rational& computation_load, const char* who) {
  if (computation_load < 1 || computation_load > max_load) {
    throw InvalidParameters(std::string(who) + ": computation load " +
                            to_fraction_string(computation_load) + " outside [1.." +
                            std::to_string(max_load) + "]");
  }
}

}  // namespace

Rational l_ub(int num_mappers, int access_degree, int computation_load) {
  check_shape(num_mappers, access_degree, "l_ub");
  check_load_range(computation_load, num_mappers - access_degree + 1, "l_ub");
  const BigInt num = binom(num_mappers - access_degree, computation_load);
  const BigInt den = binom(num_mappers, computation_load) *
                     (binom(computation_load + access_degree, computation_load) - 1);
  return Rational(num, den);
}

Rational l_ub_fractional(int num_mappers, int access_degree,
                         const Rational& computation_load) {
  check_shape(num_mappers, access_degree, "l_ub_fractional");
  const int max_load = num_mappers - access_degree + 1;
  check_fractional_load(max_load, computation_load, "l_ub_fractional");
  std::vector<Point> corners;
  corners.reserve(max_load);
  for (int r = 1; r <= max_load; ++r) {
    corners.push_back({Rational(r), l_ub(num_mappers, access_degree, r)});
  }
  return eval_piecewise(lower_hull(corners), computation_load);
}

Rational l_lb(int num_mappers, int access_degree, int computation_load) {
  check_shape(num_mappers, access_degree, "l_lb");
  check_load_range(computation_load, num_mappers - access_degree + 1, "l_lb");
  const BigInt num = binom(num_mappers, computation_load + access_degree);
  const BigInt den = binom(num_mappers, access_degree) * binom(num_mappers, computation_load);
  return Rational(num, den);
}

Rational l_lb_fractional(int num_mappers, int access_degree,
                         const Rational& computation_load) {
  check_shape(num_mappers, access_degree, "l_lb_fractional");
  const int max_load = num_mappers - access_degree + 1;
  check_fractional_load(max_load, computation_load, "l_lb_fractional");
  std::vector<Point> corners;
  corners.reserve(max_load);
  for (int r = 1; r <= max_load; ++r) {
    corners.push_back({Rational(r), l_lb(num_mappers, access_degree, r)});
  }
  return eval_piecewise(corners, computation_load);
}

Rational cdc_load(int num_mappers, int computation_load) {
  if (num_mappers < 1) {
    throw InvalidParameters("cdc_load: need at least one mapper");
  }
  check_load_range(computation_load, num_mappers, "cdc_load");
  return Rational(num_mappers - computation_load,
                  BigInt(num_mappers) * computation_load);
}

BigInt coding_gain(int access_degree, int computation_load) {
  if (access_degree < 1 || computation_load < 1) {
    throw InvalidParameters("coding_gain: access degree and computation load must be >= 1");
  }
  return binom(computation_load + access_degree, computation_load) - 1;
}

Rational shuffle_coeff(int num_mappers, int access_degree, int level) {
  check_shape(num_mappers, access_degree, "shuffle_coeff");
  check_level(num_mappers, level, "shuffle_coeff");
  const BigInt num = binom(num_mappers - access_degree, level);
  if (num == 0) {
    return 0;
  }
  const BigInt den =
      binom(num_mappers, level) * (binom(level + access_degree, level) - 1);
  return Rational(num, den);
}

Rational download_coeff(int num_mappers, int access_degree, int level) {
  check_shape(num_mappers, access_degree, "download_coeff");
  check_level(num_mappers, level, "download_coeff");
  const BigInt reducers = binom(num_mappers, access_degree);
  const BigInt untouched = binom(num_mappers - level, access_degree);
  return Rational(reducers - untouched, BigInt(access_degree) * reducers);
}

Rational converse_coeff(int num_mappers, int access_degree, int level) {
  check_shape(num_mappers, access_degree, "converse_coeff");
  check_level(num_mappers, level, "converse_coeff");
  const BigInt num = binom(num_mappers, access_degree + level);
  const BigInt den = binom(num_mappers, access_degree) * binom(num_mappers, level);
  return Rational(num, den);
}

Rational lp_coeff(int num_mappers, int access_degree, int level) {
  return (converse_coeff(num_mappers, access_degree, level) +
          download_coeff(num_mappers, access_degree, level)) /
         2;
}

LpSolution lp_solve(int num_mappers, int access_degree, const Rational& computation_load) {
  check_shape(num_mappers, access_degree, "lp_solve");
  if (computation_load < 1) {
    throw InfeasibleParameters("lp_solve: computation load " +
                               to_fraction_string(computation_load) +
                               " below 1, no file distribution fits the budget");
  }
  if (computation_load > num_mappers) {
    throw InvalidParameters("lp_solve: computation load " +
                            to_fraction_string(computation_load) + " outside [1.." +
                            std::to_string(num_mappers) + "]");
  }

  std::vector<Rational> costs(num_mappers);
  for (int j = 1; j <= num_mappers; ++j) {
    costs[j - 1] = lp_coeff(num_mappers, access_degree, j);
  }

  // Every vertex of {x >= 0, sum x = 1, sum j x_j <= r} has at most two
  // positive coordinates: either one level j <= r, or a pair j1 < r < j2
  // that meets the budget with equality.
  bool have = false;
  Rational best_obj;
  std::vector<int> best_levels;
  std::vector<Rational> best_weights;

  auto consider = [&](std::vector<int> levels, std::vector<Rational> weights,
                      const Rational& obj) {
    if (!have || obj < best_obj || (obj == best_obj && levels < best_levels)) {
      have = true;
      best_obj = obj;
      best_levels = std::move(levels);
      best_weights = std::move(weights);
    }
  };

  for (int j = 1; j <= num_mappers; ++j) {
    if (computation_load >= j) {
      consider({j}, {Rational(1)}, costs[j - 1]);
    }
  }
  for (int j1 = 1; j1 <= num_mappers; ++j1) {
    if (computation_load <= j1) {
      continue;
    }
    for (int j2 = j1 + 1; j2 <= num_mappers; ++j2) {
      if (computation_load >= j2) {
        continue;
      }
      const Rational w2 = (computation_load - j1) / Rational(j2 - j1);
      const Rational w1 = 1 - w2;
      consider({j1, j2}, {w1, w2}, w1 * costs[j1 - 1] + w2 * costs[j2 - 1]);
    }
  }

  LpSolution sol;
  sol.x.assign(num_mappers, Rational(0));
  for (std::size_t i = 0; i < best_levels.size(); ++i) {
    sol.x[best_levels[i] - 1] = best_weights[i];
  }
  sol.objective = best_obj;
  sol.active_levels = std::move(best_levels);
  return sol;
}

Rational maxlink_ub(int num_mappers, int access_degree, const Rational& computation_load) {
  const LpSolution sol = lp_solve(num_mappers, access_degree, computation_load);
  Rational shuffle = 0;
  Rational download = 0;
  for (int j : sol.active_levels) {
    shuffle += shuffle_coeff(num_mappers, access_degree, j) * sol.x[j - 1];
    download += download_coeff(num_mappers, access_degree, j) * sol.x[j - 1];
  }
  return std::max(shuffle, download);
}

Rational maxlink_lb(int num_mappers, int access_degree, const Rational& computation_load) {
  return lp_solve(num_mappers, access_degree, computation_load).objective;
}

Rational gap_comm(int num_mappers, int access_degree, int computation_load) {
  check_shape(num_mappers, access_degree, "gap_comm");
  if (access_degree < 2) {
    throw InvalidParameters("gap_comm: defined for access degree >= 2");
  }
  const int max_load = num_mappers - access_degree + 1;
  check_load_range(computation_load, max_load, "gap_comm");
  if (computation_load == max_load) {
    return 1;  // both bounds are 0 at the last corner
  }
  return l_ub(num_mappers, access_degree, computation_load) /
         l_lb(num_mappers, access_degree, computation_load);
}

}  // namespace madc
