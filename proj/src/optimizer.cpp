#include "seqwit/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace seqwit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Minimises f from `start` with a simplex of edge `step`. Stops after
// `budget` evaluations or once the simplex has collapsed.
struct SimplexOutcome {
  std::vector<double> point;
  double value;
  std::size_t evaluations;
};

SimplexOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                           std::vector<double> start, double step, std::size_t budget) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  std::vector<double> values(n + 1);
  std::size_t evals = 0;
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) {
    values[i] = f(simplex[i]);
    ++evals;
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto along = [&](double t, std::vector<double>& out) {
    // centroid + t (centroid - worst)
    const auto& worst = simplex[order[n]];
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (centroid[k] - worst[k]);
  };

  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    const double best = values[order[0]];
    const double worst = values[order[n]];
    double extent = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        extent = std::max(extent, std::abs(simplex[order[i]][k] - simplex[order[0]][k]));
      }
    }
    if (std::abs(worst - best) <= 1e-13 * (1.0 + std::abs(best)) && extent < 1e-9) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[order[i]][k];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    along(1.0, trial);
    const double reflected = f(trial);
    ++evals;
    const double second_worst = values[order[n - 1]];

    if (reflected < best) {
      along(2.0, trial2);
      const double expanded = f(trial2);
      ++evals;
      if (expanded < reflected) {
        simplex[order[n]] = trial2;
        values[order[n]] = expanded;
      } else {
        simplex[order[n]] = trial;
        values[order[n]] = reflected;
      }
      continue;
    }
    if (reflected < second_worst) {
      simplex[order[n]] = trial;
      values[order[n]] = reflected;
      continue;
    }

    const bool outside = reflected < worst;
    along(outside ? 0.5 : -0.5, trial2);
    const double contracted = f(trial2);
    ++evals;
    if (contracted < (outside ? reflected : worst)) {
      simplex[order[n]] = trial2;
      values[order[n]] = contracted;
      continue;
    }

    // Shrink towards the best vertex.
    const auto anchor = simplex[order[0]];
    for (std::size_t i = 1; i <= n; ++i) {
      auto& v = simplex[order[i]];
      for (std::size_t k = 0; k < n; ++k) v[k] = anchor[k] + 0.5 * (v[k] - anchor[k]);
      values[order[i]] = f(v);
      ++evals;
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const std::size_t best_index = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[best_index], *best_it, evals};
}

struct RestartOutcome {
  std::vector<double> raw;
  double objective;
  double worst_residual;
  double max_feasible_objective;
  std::size_t evaluations;
};

std::size_t sharpness_slot(std::size_t charlie) { return 8 + 5 * charlie + 4; }

std::vector<double> random_start(const OptimizationProblem& problem, std::mt19937_64& rng,
                                 bool perturb_symmetric) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.5);
  std::vector<double> raw = problem.symmetric_start();
  if (perturb_symmetric) {
    for (double& x : raw) x += noise(rng);
    return raw;
  }
  const std::size_t n = problem.target_stage;
  for (std::size_t block = 0; block < 2 + n; ++block) {
    const std::size_t base = block < 2 ? 4 * block : 8 + 5 * (block - 2);
    for (std::size_t s = 0; s < 2; ++s) {
      raw[base + 2 * s] = std::acos(1.0 - 2.0 * unit(rng));
      raw[base + 2 * s + 1] = 2.0 * kPi * unit(rng);
    }
  }
  for (std::size_t c = 0; c + 1 < n; ++c) {
    raw[sharpness_slot(c)] = unsquash_sharpness(0.5 + 0.49 * unit(rng));
  }
  return raw;
}

RestartOutcome run_restart(const OptimizationProblem& problem, std::vector<double> start,
                           const OptimizerOptions& options) {
  double max_feasible = kNegInf;
  std::size_t evaluations = 0;

  auto residuals_of = [&](const std::vector<double>& values) {
    std::vector<double> r;
    r.reserve(problem.constraints.size());
    for (const auto& c : problem.constraints) r.push_back(values[c.stage - 1] - c.lower_bound);
    return r;
  };

  std::vector<double> current = std::move(start);
  for (double weight : options.penalty_schedule) {
    auto penalised = [&](const std::vector<double>& raw) {
      const std::vector<double> values = evaluate_stages(problem, raw);
      const double objective = values[problem.target_stage - 1];
      double penalty = 0.0;
      bool feasible = true;
      for (double r : residuals_of(values)) {
        if (r < 0.0) {
          penalty += r * r;
          feasible = false;
        }
      }
      if (feasible) max_feasible = std::max(max_feasible, objective);
      return -objective + weight * penalty;
    };
    double step = weight == options.penalty_schedule.front() ? 0.4 : 0.05;
    for (std::size_t pass = 0; pass <= options.simplex_restarts; ++pass) {
      const SimplexOutcome outcome =
          nelder_mead(penalised, current, step, options.evaluations_per_phase);
      evaluations += outcome.evaluations;
      current = outcome.point;
      step *= 0.3;
    }
  }

  const std::vector<double> values = evaluate_stages(problem, current);
  double worst = std::numeric_limits<double>::infinity();
  for (double r : residuals_of(values)) worst = std::min(worst, r);
  return {current, values[problem.target_stage - 1], worst, max_feasible, evaluations};
}

}  // namespace

double squash_sharpness(double raw) {
  const double clamped = std::clamp(raw, -30.0, 40.0);
  return 1.0 / (1.0 + std::exp(-clamped));
}

double unsquash_sharpness(double sharpness) {
  const double s = std::clamp(sharpness, 1e-12, 1.0 - 1e-12);
  return std::log(s / (1.0 - s));
}

void OptimizationProblem::validate() const {
  if (target_stage == 0) throw std::invalid_argument("optimization: target stage must be >= 1");
  for (const auto& c : constraints) {
    if (c.stage < 1 || c.stage >= target_stage) {
      throw std::invalid_argument("optimization: constraint stage " + std::to_string(c.stage) +
                                  " outside [1, target stage)");
    }
  }
}

MeasurementPlan OptimizationProblem::decode(std::span<const double> raw) const {
  if (raw.size() != parameter_count()) {
    throw std::invalid_argument("decode: expected " + std::to_string(parameter_count()) +
                                " parameters, got " + std::to_string(raw.size()));
  }
  auto pair_at = [&](std::size_t base) {
    return std::array<Direction, 2>{Direction::canonical(raw[base], raw[base + 1]),
                                    Direction::canonical(raw[base + 2], raw[base + 3])};
  };
  MeasurementPlan plan{pair_at(0), pair_at(4), {}};
  for (std::size_t c = 0; c < target_stage; ++c) {
    const std::size_t base = 8 + 5 * c;
    const double lambda = c + 1 == target_stage ? 1.0 : squash_sharpness(raw[base + 4]);
    plan.charlies.push_back({pair_at(base), lambda});
  }
  return plan;
}

std::vector<double> OptimizationProblem::symmetric_start() const {
  std::vector<double> raw(parameter_count(), 0.0);
  auto set_pair = [&](std::size_t base) {
    raw[base] = kPi / 2;
    raw[base + 1] = kPi / 2;
    raw[base + 2] = kPi / 2;
    raw[base + 3] = 0.0;
  };
  set_pair(0);
  set_pair(4);
  // At the symmetric settings on GHZ, Charlie m's Mermin value is
  // 4 lambda_m prod_{k<m} (1 + F_k) / 2 and the Uffink value its square.
  double carried = 1.0;
  for (std::size_t c = 0; c < target_stage; ++c) {
    const std::size_t base = 8 + 5 * c;
    set_pair(base);
    if (c + 1 == target_stage) break;
    double lambda = 0.74;
    for (const auto& k : constraints) {
      if (k.stage != c + 1) continue;
      const double target = objective == InequalityKind::Mermin
                                ? k.lower_bound
                                : std::sqrt(std::max(k.lower_bound, 0.0));
      lambda = std::clamp(target / (4.0 * carried), 0.05, 0.999);
    }
    raw[base + 4] = unsquash_sharpness(lambda);
    const double fitted = squash_sharpness(raw[base + 4]);
    carried *= 0.5 * (1.0 + std::sqrt(1.0 - fitted * fitted));
  }
  return raw;
}

std::vector<double> evaluate_stages(const OptimizationProblem& problem,
                                    std::span<const double> raw) {
  const MeasurementPlan plan = problem.decode(raw);
  const std::vector<StageCorrelators> correlators =
      stage_correlators(plan, named_state(problem.initial_state).density);
  std::vector<double> values;
  values.reserve(correlators.size());
  for (const auto& c : correlators) values.push_back(inequality_value(problem.objective, c));
  return values;
}

OptimizationResult maximize(const OptimizationProblem& problem, int restarts, std::uint64_t seed,
                            const OptimizerOptions& options) {
  problem.validate();
  if (restarts < 1) throw std::invalid_argument("maximize: restarts must be >= 1");
  if (options.penalty_schedule.empty()) {
    throw std::invalid_argument("maximize: empty penalty schedule");
  }

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < restarts; r = next++) {
      std::vector<double> start;
      if (r == 0) {
        start = problem.symmetric_start();
      } else {
        std::seed_seq sequence{static_cast<std::uint32_t>(seed & 0xffffffffU),
                               static_cast<std::uint32_t>(seed >> 32),
                               static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(sequence);
        start = random_start(problem, rng, r % 2 == 1);
      }
      outcomes[static_cast<std::size_t>(r)] = run_restart(problem, std::move(start), options);
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1U, static_cast<unsigned>(restarts));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Deterministic reduction in restart order: best feasible objective, else
  // the least-violating outcome.
  std::size_t chosen = 0;
  bool any_feasible = false;
  double max_feasible = kNegInf;
  std::size_t evaluations = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const auto& o = outcomes[r];
    evaluations += o.evaluations;
    max_feasible = std::max(max_feasible, o.max_feasible_objective);
    const bool feasible = o.worst_residual >= -options.feasibility_tolerance;
    if (feasible && (!any_feasible || o.objective > outcomes[chosen].objective)) {
      chosen = r;
      any_feasible = true;
    } else if (!any_feasible && o.worst_residual > outcomes[chosen].worst_residual) {
      chosen = r;
    }
  }

  const RestartOutcome& best = outcomes[chosen];
  const MeasurementPlan plan = problem.decode(best.raw);
  std::vector<double> params;
  params.reserve(problem.parameter_count());
  auto push_pair = [&](const std::array<Direction, 2>& pair) {
    for (const auto& d : pair) {
      params.push_back(d.theta());
      params.push_back(d.phi());
    }
  };
  push_pair(plan.alice);
  push_pair(plan.bob);
  for (std::size_t c = 0; c < plan.charlies.size(); ++c) {
    push_pair(plan.charlies[c].directions);
    if (c + 1 < plan.charlies.size()) params.push_back(plan.charlies[c].sharpness);
  }

  const std::vector<double> values = evaluate_stages(problem, best.raw);
  std::vector<double> residuals;
  for (const auto& c : problem.constraints) residuals.push_back(values[c.stage - 1] - c.lower_bound);

  return {best.objective, std::move(params), plan,        values,
          residuals,      restarts,          any_feasible, max_feasible,
          evaluations};
}

FeasibleScan feasible_scan(const OptimizationProblem& problem, std::size_t samples,
                           std::uint64_t seed) {
  problem.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr std::array<double, 4> kSpreads{0.0, 0.02, 0.1, 0.3};

  FeasibleScan scan{samples, 0, kNegInf};
  const std::vector<double> symmetric = problem.symmetric_start();
  for (std::size_t i = 0; i < samples; ++i) {
    const double spread = kSpreads[i % kSpreads.size()];
    std::vector<double> raw = symmetric;
    if (spread > 0.0) {
      std::normal_distribution<double> noise(0.0, spread);
      for (double& x : raw) x += noise(rng);
    }
    for (std::size_t c = 0; c + 1 < problem.target_stage; ++c) {
      raw[sharpness_slot(c)] = unsquash_sharpness(unit(rng));
    }
    const std::vector<double> values = evaluate_stages(problem, raw);
    bool feasible = true;
    for (const auto& c : problem.constraints) feasible &= values[c.stage - 1] >= c.lower_bound;
    if (!feasible) continue;
    ++scan.feasible;
    scan.max_feasible_objective =
        std::max(scan.max_feasible_objective, values[problem.target_stage - 1]);
  }
  return scan;
}

}  // namespace seqwit
