#include "madc/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <thread>

#include "madc/bounds.hpp"
#include "madc/errors.hpp"

namespace madc {

namespace {

bool wants_comm(RunMode mode) { return mode != RunMode::Maxlink; }
bool wants_maxlink(RunMode mode) { return mode != RunMode::Comm; }

SweepRow evaluate_point(int lambda, int alpha, int r, RunMode mode) {
  SweepRow row;
  row.num_mappers = lambda;
  row.access_degree = alpha;
  row.computation_load = r;
  const int comm_max = lambda - alpha + 1;
  if (wants_comm(mode) && r <= comm_max) {
    row.l_ub = l_ub(lambda, alpha, r);
    row.l_lb = l_lb(lambda, alpha, r);
    row.cdc = cdc_load(lambda, r);
    row.gain = coding_gain(alpha, r);
    // Ratio of the two shuffle bounds; 1 by convention where both reach 0.
    row.gap = (r == comm_max) ? Rational(1) : *row.l_ub / *row.l_lb;
  }
  if (wants_maxlink(mode)) {
    row.maxlink_ub = maxlink_ub(lambda, alpha, Rational(r));
    row.maxlink_lb = maxlink_lb(lambda, alpha, Rational(r));
  }
  return row;
}

std::string float_cell(const Rational& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", to_double(value));
  return buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.lambda_min < 1 || spec.lambda_max < spec.lambda_min) {
    throw InvalidParameters("run_sweep: bad mapper range [" +
                            std::to_string(spec.lambda_min) + ".." +
                            std::to_string(spec.lambda_max) + "]");
  }

  struct Point {
    int lambda, alpha, r;
  };
  std::vector<Point> grid;
  for (int lambda = spec.lambda_min; lambda <= spec.lambda_max; ++lambda) {
    std::vector<int> alphas = spec.alphas;
    if (alphas.empty()) {
      for (int a = 1; a <= lambda; ++a) {
        alphas.push_back(a);
      }
    }
    for (int alpha : alphas) {
      if (alpha < 1 || alpha > lambda) {
        continue;  // degree does not exist at this lambda
      }
      const int max_load = wants_maxlink(spec.mode) ? lambda : lambda - alpha + 1;
      std::vector<int> loads = spec.loads;
      if (loads.empty()) {
        for (int r = 1; r <= max_load; ++r) {
          loads.push_back(r);
        }
      }
      for (int r : loads) {
        if (r >= 1 && r <= max_load) {
          grid.push_back({lambda, alpha, r});
        }
      }
    }
  }
  if (grid.empty()) {
    throw InvalidParameters("run_sweep: the expanded grid is empty");
  }

  std::vector<SweepRow> rows(grid.size());
  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                         static_cast<unsigned>(grid.size()));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < grid.size(); i += workers) {
        rows[i] = evaluate_point(grid[i].lambda, grid[i].alpha, grid[i].r, spec.mode);
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }

  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.num_mappers, a.access_degree, a.computation_load) <
           std::tie(b.num_mappers, b.access_degree, b.computation_load);
  });
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "lambda,alpha,r,l_ub,l_ub_float,l_lb,l_lb_float,cdc,cdc_float,gain,"
      "maxlink_ub,maxlink_ub_float,maxlink_lb,maxlink_lb_float,gap,gap_float\n";
  auto pair_cells = [](const std::optional<Rational>& v) {
    return v ? to_fraction_string(*v) + "," + float_cell(*v) : std::string(",");
  };
  for (const SweepRow& row : rows) {
    out += std::to_string(row.num_mappers) + "," + std::to_string(row.access_degree) +
           "," + std::to_string(row.computation_load) + ",";
    out += pair_cells(row.l_ub) + ",";
    out += pair_cells(row.l_lb) + ",";
    out += pair_cells(row.cdc) + ",";
    out += (row.gain ? row.gain->str() : std::string()) + ",";
    out += pair_cells(row.maxlink_ub) + ",";
    out += pair_cells(row.maxlink_lb) + ",";
    out += pair_cells(row.gap) + "\n";
  }
  return out;
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json root = nlohmann::ordered_json::array();
  for (const SweepRow& row : rows) {
    nlohmann::ordered_json j;
    j["lambda"] = row.num_mappers;
    j["alpha"] = row.access_degree;
    j["r"] = row.computation_load;
    auto put = [&](const char* name, const std::optional<Rational>& v) {
      if (v) {
        j[name] = to_fraction_string(*v);
        j[std::string(name) + "_float"] = to_double(*v);
      }
    };
    put("l_ub", row.l_ub);
    put("l_lb", row.l_lb);
    put("cdc", row.cdc);
    if (row.gain) {
      j["gain"] = row.gain->str();
    }
    put("maxlink_ub", row.maxlink_ub);
    put("maxlink_lb", row.maxlink_lb);
    put("gap", row.gap);
    root.push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

}  // namespace madc
