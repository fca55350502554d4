#include "seqwit/sequential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace seqwit {
namespace {

void check_stage_index(std::size_t m, std::size_t count) {
  if (m < 1 || m > count) {
    throw std::out_of_range("stage index " + std::to_string(m) + " outside [1, " +
                            std::to_string(count) + "]");
  }
}

void check_setting_index(const CharlieStage& stage, std::size_t c_setting) {
  if (c_setting >= stage.settings().size()) {
    throw std::out_of_range("setting index " + std::to_string(c_setting) + " outside stage");
  }
}

}  // namespace

CharlieStage::CharlieStage(std::vector<UnsharpMeasurement> settings, std::vector<double> weights)
    : settings_(std::move(settings)), weights_(std::move(weights)) {
  if (settings_.empty()) throw std::invalid_argument("CharlieStage: no settings");
  if (weights_.size() != settings_.size()) {
    throw std::invalid_argument("CharlieStage: one weight per setting required");
  }
  const double lambda = settings_.front().sharpness();
  double total = 0.0;
  for (std::size_t i = 0; i < settings_.size(); ++i) {
    if (settings_[i].sharpness() != lambda) {
      throw std::invalid_argument("CharlieStage: settings must share one sharpness");
    }
    if (!(weights_[i] >= 0.0)) throw std::invalid_argument("CharlieStage: negative weight");
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("CharlieStage: weights must sum to 1");
  }
}

CharlieStage CharlieStage::uniform(const std::vector<Direction>& directions, double sharpness) {
  std::vector<UnsharpMeasurement> settings;
  settings.reserve(directions.size());
  for (const auto& d : directions) settings.emplace_back(d, sharpness);
  const std::vector<double> weights(directions.size(),
                                    directions.empty() ? 0.0 : 1.0 / directions.size());
  return {std::move(settings), weights};
}

AveragedChannel::AveragedChannel() : liouville_(ComplexMatrix::identity(4)) {}

AveragedChannel::AveragedChannel(const CharlieStage& stage) : liouville_(4, 4) {
  // Row-major vec(K X K^dagger) = (K (x) conj(K)) vec(X).
  for (std::size_t s = 0; s < stage.settings().size(); ++s) {
    for (Outcome o : kOutcomes) {
      const ComplexMatrix k = sqrt_effect(stage.settings()[s], o);
      ComplexMatrix k_conj = k;
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) k_conj(r, c) = std::conj(k(r, c));
      }
      liouville_ += stage.weights()[s] * kron(k, k_conj);
    }
  }
}

AveragedChannel AveragedChannel::after(const AveragedChannel& first) const {
  return AveragedChannel(liouville_ * first.liouville_);
}

ComplexMatrix AveragedChannel::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != 8 || rho.cols() != 8) {
    throw std::invalid_argument("AveragedChannel::apply: expected an 8x8 state");
  }
  ComplexMatrix out(8, 8);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      // 2x2 block on qubit C for A,B row index i and column index j.
      const Complex block[4] = {rho(2 * i, 2 * j), rho(2 * i, 2 * j + 1), rho(2 * i + 1, 2 * j),
                                rho(2 * i + 1, 2 * j + 1)};
      Complex mapped[4] = {};
      for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) mapped[r] += liouville_(r, c) * block[c];
      }
      out(2 * i, 2 * j) = mapped[0];
      out(2 * i, 2 * j + 1) = mapped[1];
      out(2 * i + 1, 2 * j) = mapped[2];
      out(2 * i + 1, 2 * j + 1) = mapped[3];
    }
  }
  return out;
}

ComplexMatrix luders_map(const ComplexMatrix& rho, const UnsharpMeasurement& u, Outcome outcome) {
  const ComplexMatrix kraus = kron(identity2(), identity2(), sqrt_effect(u, outcome));
  return kraus * rho * kraus;
}

ComplexMatrix averaged_channel(const ComplexMatrix& rho, const CharlieStage& stage) {
  return AveragedChannel(stage).apply(rho);
}

double correlation(const ComplexMatrix& rho, const Direction& a, const Direction& b,
                   const UnsharpMeasurement& c) {
  return c.sharpness() *
         local_expectation(rho, observable(a), observable(b), observable(c.direction())).real();
}

ChainPropagator::ChainPropagator(const ComplexMatrix& initial, std::vector<CharlieStage> stages)
    : stages_(std::move(stages)) {
  states_.reserve(stages_.size());
  ComplexMatrix rho = initial;
  for (std::size_t m = 0; m < stages_.size(); ++m) {
    states_.push_back(rho);
    if (m + 1 < stages_.size()) rho = AveragedChannel(stages_[m]).apply(rho);
  }
}

const CharlieStage& ChainPropagator::stage(std::size_t m) const {
  check_stage_index(m, stages_.size());
  return stages_[m - 1];
}

const ComplexMatrix& ChainPropagator::state_before(std::size_t m) const {
  check_stage_index(m, stages_.size());
  return states_[m - 1];
}

double ChainPropagator::correlation(std::size_t m, const Direction& a, const Direction& b,
                                    std::size_t c_setting) const {
  const CharlieStage& s = stage(m);
  check_setting_index(s, c_setting);
  return seqwit::correlation(states_[m - 1], a, b, s.settings()[c_setting]);
}

double chain_correlation(const ComplexMatrix& initial, const std::vector<CharlieStage>& stages,
                         std::size_t m, const Direction& a, const Direction& b,
                         std::size_t c_setting) {
  check_stage_index(m, stages.size());
  check_setting_index(stages[m - 1], c_setting);
  AveragedChannel prefix;
  for (std::size_t k = 0; k + 1 < m; ++k) prefix = AveragedChannel(stages[k]).after(prefix);
  return correlation(prefix.apply(initial), a, b, stages[m - 1].settings()[c_setting]);
}

double chain_correlation(const NamedState& initial, const std::vector<CharlieStage>& stages,
                         std::size_t m, const Direction& a, const Direction& b,
                         std::size_t c_setting) {
  return chain_correlation(initial.density, stages, m, a, b, c_setting);
}

double branch_oracle_correlation(const ComplexMatrix& initial,
                                 const std::vector<CharlieStage>& stages, std::size_t m,
                                 const Direction& a, const Direction& b, std::size_t c_setting) {
  check_stage_index(m, stages.size());
  check_setting_index(stages[m - 1], c_setting);

  std::size_t branches = 1;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    branches *= stages[k].settings().size();
    if (branches > kMaxOracleBranches) {
      throw std::length_error("branch_oracle_correlation: too many setting sequences");
    }
  }

  // Depth-first enumeration of (setting, outcome) histories of Charlies
  // 1..m-1, accumulating weighted unnormalised branch states.
  ComplexMatrix accumulated(8, 8);
  auto descend = [&](auto&& self, std::size_t k, const ComplexMatrix& branch,
                     double weight) -> void {
    if (k + 1 == m) {
      accumulated += weight * branch;
      return;
    }
    const CharlieStage& stage = stages[k];
    for (std::size_t s = 0; s < stage.settings().size(); ++s) {
      for (Outcome o : kOutcomes) {
        self(self, k + 1, luders_map(branch, stage.settings()[s], o),
             weight * stage.weights()[s]);
      }
    }
  };
  descend(descend, 0, initial, 1.0);

  const UnsharpMeasurement& charlie = stages[m - 1].settings()[c_setting];
  double total = 0.0;
  for (Outcome oa : kOutcomes) {
    for (Outcome ob : kOutcomes) {
      for (Outcome oc : kOutcomes) {
        const ComplexMatrix joint =
            kron(projector(a, oa), projector(b, ob), effect(charlie, oc));
        const double probability = trace_of_product(joint, accumulated).real();
        total += sign(oa) * sign(ob) * sign(oc) * probability;
      }
    }
  }
  return total;
}

ComplexMatrix random_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(8, 8);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  }
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

OracleCheck oracle_check(std::size_t instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto direction = [&] {
    return Direction(std::acos(1.0 - 2.0 * unit(rng)), 2.0 * std::numbers::pi * unit(rng));
  };

  OracleCheck check{{}, 0.0};
  check.differences.reserve(instances);
  for (std::size_t i = 0; i < instances; ++i) {
    const ComplexMatrix rho = random_state(rng());
    const std::size_t length = 1 + rng() % 4;
    std::vector<CharlieStage> stages;
    for (std::size_t k = 0; k < length; ++k) {
      const std::size_t count = 2 + rng() % 4;
      std::vector<Direction> dirs;
      for (std::size_t s = 0; s < count; ++s) dirs.push_back(direction());
      // Keep sharpness away from 0, where the stage is excluded.
      stages.push_back(CharlieStage::uniform(dirs, std::max(1e-3, unit(rng))));
    }
    const std::size_t m = 1 + rng() % length;
    const Direction a = direction();
    const Direction b = direction();
    const std::size_t c_setting = rng() % stages[m - 1].settings().size();
    const double fast = chain_correlation(rho, stages, m, a, b, c_setting);
    const double slow = branch_oracle_correlation(rho, stages, m, a, b, c_setting);
    check.differences.push_back(std::abs(fast - slow));
    check.max_difference = std::max(check.max_difference, check.differences.back());
  }
  return check;
}

}  // namespace seqwit
