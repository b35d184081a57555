#include "madc/verify.hpp"

#include <algorithm>
#include <limits>

#include "madc/bounds.hpp"
#include "madc/download.hpp"
#include "madc/engine.hpp"
#include "madc/errors.hpp"
#include "madc/model.hpp"
#include "madc/sweep.hpp"

namespace madc {

namespace {

struct Checker {
  SuiteResult result;

  explicit Checker(std::string name) { result.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    ++result.checks;
    if (!ok && result.passed) {
      result.passed = false;
      result.detail = what;
    }
  }
};

std::string triple(int lambda, int alpha, int r) {
  return "lambda=" + std::to_string(lambda) + " alpha=" + std::to_string(alpha) +
         " r=" + std::to_string(r);
}

// Everything one simulated run produces, owned in one place.
struct SimBundle {
  ProblemInstance instance;
  std::vector<long long> level_counts;
  Topology topology;
  FileAssignment files;
  ReduceAssignment reduce;
  IVStore store;
  Transcript transcript;
};

SimBundle run_single_level(int lambda, int alpha, int r, std::uint64_t seed) {
  ProblemInstance inst = build_instance(lambda, alpha, r, {}, {}, {}, seed);
  Topology topo = build_topology(inst);
  FileAssignment files = assign_files_single(inst);
  ReduceAssignment reduce = assign_reduce_functions(inst, topo);
  IVStore store = run_map(inst, files);
  Simulation sim{inst, topo, files, reduce, store};
  Transcript transcript = run_shuffle(sim);
  std::vector<long long> counts(files.level_counts);
  return {std::move(inst),  std::move(counts), std::move(topo),      std::move(files),
          std::move(reduce), std::move(store),  std::move(transcript)};
}

SimBundle run_at_profile(int lambda, int alpha, int r, const std::vector<Rational>& x,
                         std::uint64_t seed) {
  LeveledInstance li = build_instance_for_profile(lambda, alpha, r, x, seed);
  Topology topo = build_topology(li.instance);
  FileAssignment files = assign_files_multilevel(li.instance, li.level_counts);
  ReduceAssignment reduce = assign_reduce_functions(li.instance, topo);
  IVStore store = run_map(li.instance, files);
  Simulation sim{li.instance, topo, files, reduce, store};
  Transcript transcript = run_shuffle(sim);
  return {std::move(li.instance), std::move(li.level_counts), std::move(topo),
          std::move(files),       std::move(reduce),          std::move(store),
          std::move(transcript)};
}

// True when every reducer recovers every wanted value bit for bit.
bool decode_matches_store(const SimBundle& b, std::string* why) {
  Simulation sim{b.instance, b.topology, b.files, b.reduce, b.store};
  for (std::size_t rank = 0; rank < b.topology.reducers.size(); ++rank) {
    RecoveredIVs got;
    try {
      got = decode(sim, rank, b.transcript);
    } catch (const std::exception& e) {
      *why = "decode threw for reducer " +
             set_to_string(b.topology.reducers[rank].members) + ": " + e.what();
      return false;
    }
    for (long long q : b.reduce.functions_of[rank]) {
      for (long long n = 1; n <= b.instance.num_files; ++n) {
        const auto a = got.block(q, n);
        const auto e = b.store.block(q, n);
        if (!std::equal(a.begin(), a.end(), e.begin(), e.end())) {
          *why = "reducer " + set_to_string(b.topology.reducers[rank].members) +
                 " recovered a wrong value for function " + std::to_string(q) +
                 ", file " + std::to_string(n);
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

SuiteResult verify_identities(int max_lambda) {
  Checker c("counting identities");
  const int n_max = std::max(2, max_lambda);

  for (int n = 1; n <= n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      c.expect(binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k),
               "Pascal fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
      c.expect(binom(n, k) == binom(n, n - k),
               "symmetry fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }

  const int v_max = std::min(n_max, 16);
  for (int n = 1; n <= v_max; ++n) {
    for (int m = 0; m <= n; ++m) {
      for (int p = 0; p <= n; ++p) {
        BigInt sum = 0;
        for (int k = 0; k <= p; ++k) {
          sum += binom(m, k) * binom(n - m, p - k);
        }
        c.expect(sum == binom(n, p), "Vandermonde fails at n=" + std::to_string(n) +
                                         " m=" + std::to_string(m) + " p=" + std::to_string(p));
      }
    }
  }

  for (int lambda = 2; lambda <= n_max; ++lambda) {
    for (int alpha = 1; alpha <= lambda; ++alpha) {
      for (int r = 1; r <= lambda; ++r) {
        c.expect(binom(lambda, alpha) * binom(lambda - alpha, r) ==
                     binom(lambda, r + alpha) * binom(r + alpha, r),
                 "subset-splitting product fails at " + triple(lambda, alpha, r));
      }
      // Ratio chain of the two shuffle bounds: starts at (alpha+1)/alpha and
      // decreases in the load.
      Rational prev = 0;
      for (int r = 1; r <= n_max; ++r) {
        const BigInt g = binom(r + alpha, r);
        const Rational ratio(g, g - 1);
        if (r == 1) {
          c.expect(ratio == Rational(alpha + 1, alpha),
                   "ratio chain start fails at alpha=" + std::to_string(alpha));
        } else {
          c.expect(ratio < prev, "ratio chain not decreasing at alpha=" +
                                     std::to_string(alpha) + " r=" + std::to_string(r));
        }
        prev = ratio;
      }
      // Convexity and decrease of the converse coefficient numerator chain.
      std::vector<Rational> chain;
      for (int j = 0; j <= lambda; ++j) {
        chain.push_back(Rational(binom(lambda, alpha + j), binom(lambda, j)));
      }
      for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
        c.expect(chain[j + 1] <= chain[j],
                 "converse chain increases at lambda=" + std::to_string(lambda) +
                     " alpha=" + std::to_string(alpha) + " j=" + std::to_string(j));
      }
      for (std::size_t j = 0; j + 2 < chain.size(); ++j) {
        c.expect(chain[j] + chain[j + 2] >= 2 * chain[j + 1],
                 "converse chain not convex at lambda=" + std::to_string(lambda) +
                     " alpha=" + std::to_string(alpha) + " j=" + std::to_string(j));
      }
      // Per-level cost domination behind the factor-4 bound.
      for (int j = 1; j <= lambda; ++j) {
        const Rational worst = std::max(shuffle_coeff(lambda, alpha, j),
                                        download_coeff(lambda, alpha, j));
        c.expect(worst <= 4 * lp_coeff(lambda, alpha, j),
                 "per-level factor-4 domination fails at " + triple(lambda, alpha, j));
      }
    }
  }
  return c.result;
}

SuiteResult verify_golden_example() {
  Checker c("golden 4-mapper example");

  // The canonical small instance: 8 files, 12 functions, auto T.
  ProblemInstance inst = build_instance(4, 2, 1, 8, 12, {}, 0);
  c.expect(inst.num_reducers == 6 && inst.files_per_batch == 2 &&
               inst.functions_per_reducer == 2 && inst.iv_bits == 8,
           "instance derivation is off");
  Topology topo = build_topology(inst);
  FileAssignment files = assign_files_single(inst);
  ReduceAssignment reduce = assign_reduce_functions(inst, topo);
  IVStore store = run_map(inst, files);
  Simulation sim{inst, topo, files, reduce, store};
  Transcript transcript = run_shuffle(sim);

  c.expect(files.batches.size() == 4, "expected 4 batches");
  for (int label = 1; label <= 4; ++label) {
    const Batch& batch = files.batches[label - 1];
    c.expect(batch.label.members == std::vector<int>{label} &&
                 batch.files == std::vector<long long>{2 * label - 1, 2 * label},
             "batch " + std::to_string(label) + " holds the wrong files");
  }
  for (std::size_t rank = 0; rank < 6; ++rank) {
    c.expect(reduce.functions_of[rank] ==
                 std::vector<long long>{static_cast<long long>(2 * rank + 1),
                                        static_cast<long long>(2 * rank + 2)},
             "function layout is off at rank " + std::to_string(rank));
  }

  // Expected XOR structure of all six broadcasts: per sender, per served
  // peer label, the (owner, batch label) operands in order.
  struct ExpectedEntry {
    std::vector<int> label;
    std::vector<SegmentTerm> terms;
  };
  struct ExpectedMessage {
    std::vector<int> sender;
    std::vector<ExpectedEntry> entries;
  };
  const std::vector<ExpectedMessage> expected = {
      {{1, 2}, {{{3}, {{{1, 3}, {2}}, {{2, 3}, {1}}}}, {{4}, {{{1, 4}, {2}}, {{2, 4}, {1}}}}}},
      {{1, 3}, {{{2}, {{{1, 2}, {3}}, {{2, 3}, {1}}}}, {{4}, {{{1, 4}, {3}}, {{3, 4}, {1}}}}}},
      {{1, 4}, {{{2}, {{{1, 2}, {4}}, {{2, 4}, {1}}}}, {{3}, {{{1, 3}, {4}}, {{3, 4}, {1}}}}}},
      {{2, 3}, {{{1}, {{{1, 2}, {3}}, {{1, 3}, {2}}}}, {{4}, {{{2, 4}, {3}}, {{3, 4}, {2}}}}}},
      {{2, 4}, {{{1}, {{{1, 2}, {4}}, {{1, 4}, {2}}}}, {{3}, {{{2, 3}, {4}}, {{3, 4}, {2}}}}}},
      {{3, 4}, {{{1}, {{{1, 3}, {4}}, {{1, 4}, {3}}}}, {{2}, {{{2, 3}, {4}}, {{2, 4}, {3}}}}}},
  };

  c.expect(transcript.messages.size() == 6, "expected 6 broadcasts");
  for (std::size_t i = 0; i < std::min<std::size_t>(6, transcript.messages.size()); ++i) {
    const MulticastMessage& msg = transcript.messages[i];
    c.expect(msg.sender.members == expected[i].sender,
             "broadcast " + std::to_string(i) + " has the wrong sender");
    c.expect(message_bits(msg) == 32,
             "broadcast of " + set_to_string(msg.sender.members) + " is not 4T bits");
    c.expect(msg.entries.size() == expected[i].entries.size(),
             "broadcast of " + set_to_string(msg.sender.members) +
                 " has the wrong entry count");
    for (std::size_t e = 0; e < msg.entries.size(); ++e) {
      c.expect(msg.entries[e].label == expected[i].entries[e].label &&
                   msg.entries[e].terms == expected[i].entries[e].terms,
               "broadcast of " + set_to_string(msg.sender.members) + " entry " +
                   std::to_string(e) + " has the wrong XOR structure");
      // Rebuild the payload straight from the store: XOR of the halves the
      // two operands contribute to this sender.
      std::vector<std::uint8_t> manual(msg.entries[e].payload.size(), 0);
      for (const SegmentTerm& term : msg.entries[e].terms) {
        const std::uint64_t owner_rank = subset_rank(term.owner, 4);
        const Batch& batch = files.batches[subset_rank(term.batch_label, 4)];
        std::vector<std::uint8_t> symbol;
        for (long long q : reduce.functions_of[owner_rank]) {
          for (long long n : batch.files) {
            auto block = store.block(q, n);
            symbol.insert(symbol.end(), block.begin(), block.end());
          }
        }
        // Slices follow the lexicographic order of the non-owner degree-2
        // subsets of owner + batch label.
        const std::vector<int> pool = set_union(term.owner, term.batch_label);
        std::size_t pos = 0;
        std::size_t seen = 0;
        for_each_k_subset_of(pool, 2, [&](const std::vector<int>& slice) {
          if (slice == term.owner) {
            return;
          }
          if (slice == msg.sender.members) {
            pos = seen;
          }
          ++seen;
        });
        for (std::size_t byte = 0; byte < manual.size(); ++byte) {
          manual[byte] ^= symbol[pos * manual.size() + byte];
        }
      }
      c.expect(manual == msg.entries[e].payload,
               "broadcast of " + set_to_string(msg.sender.members) + " entry " +
                   std::to_string(e) + " payload mismatch");
    }
  }

  c.expect(transcript.total_bits == 192, "total shuffle bits should be 6 * 4T = 192");
  c.expect(measure_comm_load(transcript, inst) == Rational(1, 4),
           "measured load is not 1/4");
  c.expect(l_ub(4, 2, 1) == Rational(1, 4), "closed form is not 1/4");

  SimBundle bundle{std::move(inst),  {},
                   std::move(topo),  std::move(files),
                   std::move(reduce), std::move(store),
                   std::move(transcript)};
  std::string why;
  c.expect(decode_matches_store(bundle, &why), why);
  return c.result;
}

SuiteResult verify_shuffle_grid(int max_lambda) {
  Checker c("shuffle load and decode grid");
  const int cap = std::min(max_lambda, 7);
  for (int lambda = 2; lambda <= cap; ++lambda) {
    for (int alpha = 1; alpha <= lambda; ++alpha) {
      for (int r = 1; r <= lambda - alpha + 1; ++r) {
        SimBundle b = run_single_level(lambda, alpha, r, 7);
        c.expect(measure_comm_load(b.transcript, b.instance) == l_ub(lambda, alpha, r),
                 "measured load misses the closed form at " + triple(lambda, alpha, r));
        std::string why;
        c.expect(decode_matches_store(b, &why), triple(lambda, alpha, r) + ": " + why);
        // Every reducer misses exactly eta1 * binom(lambda - alpha, r) files.
        const long long missing =
            b.instance.files_per_batch * to_int64(binom(lambda - alpha, r));
        for (const SubsetId& reducer : b.topology.reducers) {
          long long seen = 0;
          for (std::size_t idx : reducer_batches(b.files, reducer.members)) {
            seen += static_cast<long long>(b.files.batches[idx].files.size());
          }
          c.expect(b.instance.num_files - seen == missing,
                   "view size is off for reducer " + set_to_string(reducer.members) +
                       " at " + triple(lambda, alpha, r));
        }
      }
    }
  }
  return c.result;
}

SuiteResult verify_single_access_reduction(int max_lambda) {
  Checker c("single-access reduction");
  for (int lambda = 2; lambda <= max_lambda; ++lambda) {
    for (int r = 1; r <= lambda; ++r) {
      c.expect(l_ub(lambda, 1, r) == cdc_load(lambda, r),
               "l_ub(L,1,r) != cdc at lambda=" + std::to_string(lambda) +
                   " r=" + std::to_string(r));
      c.expect(coding_gain(1, r) == r,
               "gain at degree 1 is not r at r=" + std::to_string(r));
    }
  }
  return c.result;
}

SuiteResult verify_comm_gap(int max_lambda) {
  Checker c("shuffle bound gap");
  Rational best = 0;
  for (int lambda = 2; lambda <= max_lambda; ++lambda) {
    for (int alpha = 2; alpha <= lambda; ++alpha) {
      for (int r = 1; r <= lambda - alpha + 1; ++r) {
        const Rational ub = l_ub(lambda, alpha, r);
        const Rational lb = l_lb(lambda, alpha, r);
        c.expect(lb <= ub, "lower bound exceeds upper at " + triple(lambda, alpha, r));
        const Rational gap = gap_comm(lambda, alpha, r);
        if (r <= lambda - alpha) {
          const BigInt g = binom(r + alpha, r);
          c.expect(gap == Rational(g, g - 1),
                   "gap misses its closed form at " + triple(lambda, alpha, r));
        } else {
          c.expect(gap == 1, "corner gap is not 1 at " + triple(lambda, alpha, r));
        }
        c.expect(gap <= Rational(3, 2), "gap exceeds 3/2 at " + triple(lambda, alpha, r));
        best = std::max(best, gap);
      }
    }
  }
  if (max_lambda >= 3) {
    c.expect(best == Rational(3, 2), "gap 3/2 is never attained");
    c.expect(gap_comm(3, 2, 1) == Rational(3, 2), "gap at (3,2,1) should be 3/2");
  }
  return c.result;
}

SuiteResult verify_monotonicity(int max_lambda) {
  Checker c("monotonicity in the access degree");
  for (int lambda = 2; lambda <= max_lambda; ++lambda) {
    for (int alpha = 1; alpha < lambda; ++alpha) {
      for (int r = 1; r <= lambda - alpha; ++r) {
        c.expect(l_ub(lambda, alpha + 1, r) < l_ub(lambda, alpha, r),
                 "l_ub does not strictly drop from alpha " + std::to_string(alpha) +
                     " to " + std::to_string(alpha + 1) + " at lambda=" +
                     std::to_string(lambda) + " r=" + std::to_string(r));
      }
    }
  }
  return c.result;
}

SuiteResult verify_maxlink_end_to_end(int max_lambda) {
  Checker c("max-link end to end");
  const int sim_cap = std::min(max_lambda, 6);
  for (int lambda = 2; lambda <= sim_cap; ++lambda) {
    for (int alpha = 1; alpha <= lambda; ++alpha) {
      for (int r = 1; r <= lambda; ++r) {
        const LpSolution sol = lp_solve(lambda, alpha, Rational(r));
        SimBundle b = run_at_profile(lambda, alpha, r, sol.x, 11);
        const Rational comm = measure_comm_load(b.transcript, b.instance);
        Simulation sim{b.instance, b.topology, b.files, b.reduce, b.store};
        const DeliveryPlan plan = plan_delivery(b.instance, b.files, b.topology);
        const Rational down = measure_download_cost(plan, b.instance);
        c.expect(measure_maxlink(comm, down) == maxlink_ub(lambda, alpha, Rational(r)),
                 "simulated bottleneck misses maxlink_ub at " + triple(lambda, alpha, r));
        std::string why;
        c.expect(decode_matches_store(b, &why), triple(lambda, alpha, r) + ": " + why);
      }
    }
  }
  for (int lambda = 2; lambda <= max_lambda; ++lambda) {
    for (int alpha = 1; alpha <= lambda; ++alpha) {
      for (int r = 1; r <= lambda; ++r) {
        c.expect(maxlink_ub(lambda, alpha, Rational(r)) <=
                     4 * maxlink_lb(lambda, alpha, Rational(r)),
                 "factor-4 bound fails at " + triple(lambda, alpha, r));
      }
    }
  }
  return c.result;
}

SuiteResult verify_download_split(int max_lambda) {
  Checker c("download split");
  // Splitting identity: sum over group sizes of
  // binom(a-1, i-1) * binom(L-a, j-i) / i == (binom(L,j) - binom(L-a,j)) / a.
  for (int lambda = 1; lambda <= std::max(max_lambda, 20); ++lambda) {
    for (int alpha = 1; alpha <= lambda; ++alpha) {
      for (int j = 1; j <= lambda; ++j) {
        Rational sum = 0;
        for (int i = 1; i <= alpha; ++i) {
          sum += Rational(binom(alpha - 1, i - 1) * binom(lambda - alpha, j - i), i);
        }
        c.expect(sum == Rational(binom(lambda, j) - binom(lambda - alpha, j), alpha),
                 "splitting identity fails at " + triple(lambda, alpha, j));
      }
    }
  }

  const int sim_cap = std::min(max_lambda, 6);
  for (int lambda = 2; lambda <= sim_cap; ++lambda) {
    for (int alpha = 1; alpha <= lambda; ++alpha) {
      for (int r = 1; r <= lambda; ++r) {
        const LpSolution sol = lp_solve(lambda, alpha, Rational(r));
        SimBundle b = run_at_profile(lambda, alpha, r, sol.x, 13);
        const DeliveryPlan plan = plan_delivery(b.instance, b.files, b.topology);

        // Per reducer: equal links that sum to its accessible bytes.
        const BigInt qt = BigInt(b.instance.num_functions) * b.instance.iv_bits;
        for (std::size_t rank = 0; rank < b.topology.reducers.size(); ++rank) {
          const SubsetId& reducer = b.topology.reducers[rank];
          std::uint64_t first = 0;
          bool have_first = false;
          BigInt sum = 0;
          bool equal = true;
          for (const DeliveryLink& link : plan.links) {
            if (!(link.reducer == reducer)) {
              continue;
            }
            if (!have_first) {
              first = link.bits;
              have_first = true;
            }
            equal = equal && link.bits == first;
            sum += link.bits;
          }
          long long accessible = 0;
          for (std::size_t idx : reducer_batches(b.files, reducer.members)) {
            accessible += static_cast<long long>(b.files.batches[idx].files.size());
          }
          c.expect(equal, "links of reducer " + set_to_string(reducer.members) +
                              " are unequal at " + triple(lambda, alpha, r));
          c.expect(sum == qt * accessible,
                   "links of reducer " + set_to_string(reducer.members) +
                       " do not cover its view exactly once at " + triple(lambda, alpha, r));
        }

        // Measured cost against the per-level closed form.
        Rational expected = 0;
        for (int j = 1; j <= lambda; ++j) {
          expected += download_coeff(lambda, alpha, j) *
                      Rational(b.level_counts[j - 1], b.instance.num_files);
        }
        c.expect(measure_download_cost(plan, b.instance) == expected,
                 "download cost misses the closed form at " + triple(lambda, alpha, r));
      }
    }
  }
  return c.result;
}

SuiteResult verify_lp_grid(int max_lambda) {
  Checker c("level optimiser against the 1/64 grid");
  constexpr int kSteps = 64;
  for (int lambda = 2; lambda <= std::min(max_lambda, 8); ++lambda) {
    for (int alpha = 1; alpha <= lambda; ++alpha) {
      // Integer-scaled level costs on a common denominator.
      BigInt denom = 1;
      std::vector<Rational> costs(lambda);
      for (int j = 1; j <= lambda; ++j) {
        costs[j - 1] = lp_coeff(lambda, alpha, j);
        denom = lcm(denom, denominator(costs[j - 1]));
      }
      std::vector<long long> weight(lambda);
      for (int j = 1; j <= lambda; ++j) {
        weight[j - 1] = to_int64(numerator(costs[j - 1] * Rational(denom)));
      }

      for (int r = 1; r <= lambda; ++r) {
        const int budget = kSteps * r;
        constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
        // best[c][b]: cheapest way to place c grid steps using budget b.
        std::vector<std::vector<long long>> best(
            kSteps + 1, std::vector<long long>(budget + 1, kInf));
        best[0][0] = 0;
        for (int j = 1; j <= lambda; ++j) {
          for (int cnt = 1; cnt <= kSteps; ++cnt) {
            for (int b = j; b <= budget; ++b) {
              if (best[cnt - 1][b - j] < kInf) {
                best[cnt][b] =
                    std::min(best[cnt][b], best[cnt - 1][b - j] + weight[j - 1]);
              }
            }
          }
        }
        long long grid_best = kInf;
        for (int b = 0; b <= budget; ++b) {
          grid_best = std::min(grid_best, best[kSteps][b]);
        }
        const Rational grid_min(BigInt(grid_best), BigInt(kSteps) * denom);
        const LpSolution sol = lp_solve(lambda, alpha, Rational(r));
        c.expect(sol.objective <= grid_min,
                 "grid beats the vertex optimum at " + triple(lambda, alpha, r));

        // If an optimal vertex lies on the grid, the two must agree.
        bool on_grid = false;
        for (int j = 1; j <= lambda && !on_grid; ++j) {
          if (j <= r && costs[j - 1] == sol.objective) {
            on_grid = true;
          }
        }
        for (int j1 = 1; j1 <= lambda && !on_grid; ++j1) {
          for (int j2 = j1 + 1; j2 <= lambda && !on_grid; ++j2) {
            if (!(j1 < r && r < j2)) {
              continue;
            }
            const Rational w2 = Rational(r - j1, j2 - j1);
            const Rational w1 = 1 - w2;
            if (w1 * costs[j1 - 1] + w2 * costs[j2 - 1] == sol.objective &&
                kSteps % (j2 - j1) == 0) {
              on_grid = true;
            }
          }
        }
        if (on_grid) {
          c.expect(sol.objective == grid_min,
                   "grid and vertex optimum disagree at " + triple(lambda, alpha, r));
        }
      }
    }
  }
  return c.result;
}

SuiteResult verify_figure_rows() {
  Checker c("figure data rows");
  SweepSpec spec;
  spec.lambda_min = 10;
  spec.lambda_max = 10;
  spec.alphas = {1, 2, 3, 4, 5};
  spec.mode = RunMode::Both;
  const std::vector<SweepRow> rows = run_sweep(spec);

  auto find = [&](int alpha, int r) -> const SweepRow* {
    for (const SweepRow& row : rows) {
      if (row.access_degree == alpha && row.computation_load == r) {
        return &row;
      }
    }
    return nullptr;
  };

  const SweepRow* a2r1 = find(2, 1);
  c.expect(a2r1 && a2r1->l_ub == Rational(2, 5) && a2r1->l_lb == Rational(4, 15) &&
               a2r1->cdc == Rational(9, 10) && a2r1->gain == BigInt(2) &&
               a2r1->gap == Rational(3, 2),
           "replication-figure row (alpha=2, r=1) is off");
  const SweepRow* a2r2 = find(2, 2);
  c.expect(a2r2 && a2r2->l_ub == Rational(28, 225) && a2r2->gain == BigInt(5),
           "replication-figure row (alpha=2, r=2) is off");
  for (int r = 1; r <= 10; ++r) {
    const SweepRow* row = find(1, r);
    c.expect(row && row->l_ub && row->cdc && *row->l_ub == *row->cdc,
             "degree-1 row r=" + std::to_string(r) + " does not collapse to the baseline");
  }
  const SweepRow* m1 = find(1, 1);
  c.expect(m1 && m1->maxlink_ub == Rational(9, 10) && m1->maxlink_lb == Rational(11, 40),
           "max-link figure row (alpha=1, r=1) is off");
  for (int alpha = 1; alpha <= 5; ++alpha) {
    for (int r = 1; r <= 10; ++r) {
      const SweepRow* row = find(alpha, r);
      c.expect(row && row->maxlink_ub && row->maxlink_lb &&
                   *row->maxlink_ub <= 4 * *row->maxlink_lb,
               "max-link columns break the factor-4 bound at alpha=" +
                   std::to_string(alpha) + " r=" + std::to_string(r));
    }
  }
  return c.result;
}

std::vector<SuiteResult> run_verification(int max_lambda) {
  std::vector<SuiteResult> out;
  out.push_back(verify_identities(max_lambda));
  out.push_back(verify_golden_example());
  out.push_back(verify_shuffle_grid(max_lambda));
  out.push_back(verify_single_access_reduction(max_lambda));
  out.push_back(verify_comm_gap(max_lambda));
  out.push_back(verify_monotonicity(max_lambda));
  out.push_back(verify_maxlink_end_to_end(max_lambda));
  out.push_back(verify_download_split(max_lambda));
  out.push_back(verify_lp_grid(max_lambda));
  out.push_back(verify_figure_rows());
  return out;
}

}  // namespace madc
