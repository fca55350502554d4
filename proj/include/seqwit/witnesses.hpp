// Genuine-entanglement witnesses for the W and GHZ states, written as sums of
// local correlations, and their variants with an unsharp third party.
//
// With Charlie measuring at sharpness lambda, every correlation in which
// Charlie's factor is nontrivial is scaled by lambda. The unsharp witness
// therefore splits as W(lambda) = W_free + lambda W_charlie, and its
// expectation on any state is affine in lambda: alpha - beta lambda.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "seqwit/linalg.hpp"
#include "seqwit/quantum.hpp"
#include "seqwit/sequential.hpp"

namespace seqwit {

enum class WitnessKind { W, GHZ };

// coefficient * (a (x) b (x) c); `charlie_trivial` marks c == I.
struct WitnessTerm {
  double coefficient;
  std::array<ComplexMatrix, 3> factors;
  bool charlie_trivial;
};

struct WitnessSpec {
  WitnessKind kind;
  // 2/3 I - |W><W|  or  1/2 I - |GHZ><GHZ|
  ComplexMatrix sharp_operator;
  // Overall factor in front of the term list (1/24 for W, 1/8 for GHZ).
  double prefactor;
  std::vector<WitnessTerm> terms;
  // Directions whose triple correlations the decomposition needs; Charlie
  // picks uniformly among them.
  std::vector<Direction> correlation_settings;
  // Lower bound of the lambda-independent remainder on biseparable states.
  double biseparable_bound_constant;
  // prefactor * sum of terms with trivial / nontrivial Charlie factor.
  ComplexMatrix charlie_free_part;
  ComplexMatrix charlie_part;

  // W_free + lambda W_charlie.
  ComplexMatrix unsharp_operator(double lambda) const;
  // The averaged stage Charlie performs when measuring for this witness.
  CharlieStage stage(double lambda) const;
};

// Builds the witness and checks that its local decomposition resums to the
// sharp operator (throws std::logic_error otherwise).
WitnessSpec build_witness(WitnessKind kind);

// Tr[W(lambda) rho]; throws std::invalid_argument unless lambda is in (0, 1].
double unsharp_expectation(const WitnessSpec& spec, const ComplexMatrix& rho, double lambda);

// Tr[W(lambda) rho] = alpha - beta lambda.
struct AffineWitnessValue {
  double alpha;
  double beta;
  double at(double lambda) const { return alpha - beta * lambda; }
};

AffineWitnessValue affine_coefficients(const WitnessSpec& spec, const ComplexMatrix& rho);

// Closed-form witness expectation seen by the second Charlie when the first
// measured at lambda1 and the second measures at lambda2.
double charlie2_closed_form(WitnessKind kind, double lambda1, double lambda2);

// Which qubit is split off from the other two.
enum class Bipartition { A_BC, B_AC, C_AB };

// Pure product state across `cut`: Haar-random qubit (x) Haar-random
// two-qubit state, reassembled in A (x) B (x) C order. Deterministic in seed.
ComplexMatrix sample_biseparable(Bipartition cut, std::uint64_t seed);

// Witness expectation of each Charlie when Charlie m measures at lambdas[m-1]
// and hands on the averaged state of the witness's setting ensemble.
struct WitnessChainReport {
  std::vector<double> values;
  // verdicts[m] == (values[m] < 0): detection needs a strictly negative value.
  std::vector<bool> verdicts;
};

WitnessChainReport witness_chain(const WitnessSpec& spec, const ComplexMatrix& initial,
                                 const std::vector<double>& lambdas);

// Smallest witness expectations over sampled biseparable states.
struct PositivityCell {
  WitnessKind witness;
  Bipartition cut;
  std::size_t states;
  // min Tr[W(lambda) rho] over states and the lambda grid.
  double min_expectation;
  // min of Tr[W(lambda) rho] - lambda Tr[W rho] - (1 - lambda)/4.
  double min_margin;
};

// For each witness and bipartition: `samples` pure product states plus, for
// every sample, a random mixture with a sample of the next bipartition,
// evaluated on `lambda_grid`.
std::vector<PositivityCell> positivity_fuzz(std::size_t samples, std::uint64_t seed,
                                            const std::vector<double>& lambda_grid);

std::vector<double> default_lambda_grid();  // 0.1, 0.2, ..., 1.0

}  // namespace seqwit
