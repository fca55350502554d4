// Sequential unsharp measurements on qubit C of a shared three-qubit state.
//
// Alice (qubit A) and Bob (qubit B) measure projectively exactly once, so
// their measurements never update the state handed along the chain; they
// only enter through correlation traces. Each Charlie measures qubit C with
// one of several unsharp settings, chosen independently of earlier Charlies,
// and passes the outcome- and setting-averaged state to the next Charlie.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seqwit/linalg.hpp"
#include "seqwit/quantum.hpp"

namespace seqwit {

// One Charlie: a set of unsharp settings sharing a sharpness, with the
// probability of choosing each setting.
class CharlieStage {
 public:
  // Throws std::invalid_argument when the settings are empty, do not share one
  // sharpness, or the weights are negative, mismatched or do not sum to 1.
  CharlieStage(std::vector<UnsharpMeasurement> settings, std::vector<double> weights);

  // Equal weights over `directions`, all measured at `sharpness`.
  static CharlieStage uniform(const std::vector<Direction>& directions, double sharpness);

  const std::vector<UnsharpMeasurement>& settings() const { return settings_; }
  const std::vector<double>& weights() const { return weights_; }
  double sharpness() const { return settings_.front().sharpness(); }

 private:
  std::vector<UnsharpMeasurement> settings_;
  std::vector<double> weights_;
};

// The outcome-summed, setting-averaged Lueders map of one stage, acting on
// qubit C. Stored as a 4x4 Liouville matrix (row-major vectorisation) so it
// can be composed and applied to every A,B block of an 8x8 state.
class AveragedChannel {
 public:
  explicit AveragedChannel(const CharlieStage& stage);

  // Identity channel.
  AveragedChannel();

  // Channel applying `first` and then *this.
  AveragedChannel after(const AveragedChannel& first) const;

  ComplexMatrix apply(const ComplexMatrix& rho) const;

  const ComplexMatrix& liouville() const { return liouville_; }

 private:
  explicit AveragedChannel(ComplexMatrix liouville) : liouville_(std::move(liouville)) {}
  ComplexMatrix liouville_;
};

// (I (x) I (x) sqrt(E)) rho (I (x) I (x) sqrt(E)); its trace is the
// probability of `outcome`.
ComplexMatrix luders_map(const ComplexMatrix& rho, const UnsharpMeasurement& u, Outcome outcome);

// sum_s w_s sum_o luders_map(rho, setting_s, o).
ComplexMatrix averaged_channel(const ComplexMatrix& rho, const CharlieStage& stage);

// sum_{a,b,c} a b c P(a, b, c) = lambda_c Tr[rho (n_a.sigma (x) n_b.sigma (x) n_c.sigma)].
double correlation(const ComplexMatrix& rho, const Direction& a, const Direction& b,
                   const UnsharpMeasurement& c);

// States seen by each Charlie of a fixed chain. All prefix states are
// computed once at construction; the object is immutable afterwards.
class ChainPropagator {
 public:
  ChainPropagator(const ComplexMatrix& initial, std::vector<CharlieStage> stages);

  std::size_t stage_count() const { return stages_.size(); }
  const CharlieStage& stage(std::size_t m) const;
  // State handed to Charlie m (1-based): the initial state evolved through
  // stages 1..m-1.
  const ComplexMatrix& state_before(std::size_t m) const;

  // Setting-averaged correlation between Alice, Bob and Charlie m using
  // Charlie's setting `c_setting` (0-based).
  double correlation(std::size_t m, const Direction& a, const Direction& b,
                     std::size_t c_setting) const;

 private:
  std::vector<CharlieStage> stages_;
  std::vector<ComplexMatrix> states_;
};

// Correlation of Alice, Bob and Charlie m after the state has passed through
// the averaged channels of stages 1..m-1. Throws std::out_of_range when m is
// not in [1, stages.size()] or c_setting is not a setting of stage m.
double chain_correlation(const ComplexMatrix& initial, const std::vector<CharlieStage>& stages,
                         std::size_t m, const Direction& a, const Direction& b,
                         std::size_t c_setting);
double chain_correlation(const NamedState& initial, const std::vector<CharlieStage>& stages,
                         std::size_t m, const Direction& a, const Direction& b,
                         std::size_t c_setting);

// Same quantity computed by enumerating every setting and outcome of the
// earlier Charlies, keeping unnormalised branch states and forming joint
// probabilities P(a, b, c_m) with Alice's and Bob's projectors. Never uses
// AveragedChannel. Throws std::length_error when the number of setting
// sequences exceeds kMaxOracleBranches.
inline constexpr std::size_t kMaxOracleBranches = 1'000'000;
double branch_oracle_correlation(const ComplexMatrix& initial,
                                 const std::vector<CharlieStage>& stages, std::size_t m,
                                 const Direction& a, const Direction& b, std::size_t c_setting);

// Differential check of chain_correlation against branch_oracle_correlation
// on seeded random instances: random mixed states, chains of one to four
// Charlies with two to five settings each, random directions and sharpness.
struct OracleCheck {
  std::vector<double> differences;
  double max_difference;
};

OracleCheck oracle_check(std::size_t instances, std::uint64_t seed);

// Random density operator of dimension 8 (normalised G G^dagger).
ComplexMatrix random_state(std::uint64_t seed);

}  // namespace seqwit
