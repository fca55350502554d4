#include "seqwit/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace seqwit {
namespace {

constexpr double kPi = std::numbers::pi;

WitnessTerm term(double coefficient, const ComplexMatrix& a, const ComplexMatrix& b,
                 const ComplexMatrix& c) {
  return {coefficient, {a, b, c}, c == identity2()};
}

std::vector<WitnessTerm> w_terms() {
  const ComplexMatrix& i = identity2();
  const ComplexMatrix& z = pauli_z();
  std::vector<WitnessTerm> t{
      term(13, i, i, i), term(3, z, i, i), term(3, i, z, i), term(3, i, i, z),
      term(5, z, z, i),  term(5, z, i, z), term(5, i, z, z), term(7, z, z, z),
  };
  for (const ComplexMatrix& s : {pauli_z() + pauli_x(), pauli_z() - pauli_x(),
                                 pauli_z() + pauli_y(), pauli_z() - pauli_y()}) {
    t.push_back(term(-1, i, i, s));
    t.push_back(term(-1, i, s, i));
    t.push_back(term(-1, s, i, i));
    t.push_back(term(-1, i, s, s));
    t.push_back(term(-1, s, i, s));
    t.push_back(term(-1, s, s, i));
    t.push_back(term(-1, s, s, s));
  }
  return t;
}

std::vector<WitnessTerm> ghz_terms() {
  const ComplexMatrix& i = identity2();
  const ComplexMatrix& x = pauli_x();
  const ComplexMatrix& z = pauli_z();
  const ComplexMatrix plus = pauli_x() + pauli_y();
  const ComplexMatrix minus = pauli_x() - pauli_y();
  return {
      term(3, i, i, i),         term(-1, i, z, z),          term(-1, z, i, z),
      term(-1, z, z, i),        term(-2, x, x, x),          term(0.5, plus, plus, plus),
      term(0.5, minus, minus, minus),
  };
}

ComplexMatrix pure_state(StateKind kind) { return named_state(kind).density; }

std::vector<Complex> haar_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> v(dim);
  double norm2 = 0.0;
  for (auto& z : v) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
    norm2 += re * re + im * im;
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& z : v) z *= scale;
  return v;
}

}  // namespace

ComplexMatrix WitnessSpec::unsharp_operator(double lambda) const {
  return charlie_free_part + lambda * charlie_part;
}

CharlieStage WitnessSpec::stage(double lambda) const {
  return CharlieStage::uniform(correlation_settings, lambda);
}

WitnessSpec build_witness(WitnessKind kind) {
  WitnessSpec spec{kind,
                   ComplexMatrix(8, 8),
                   0.0,
                   {},
                   {},
                   0.25,
                   ComplexMatrix(8, 8),
                   ComplexMatrix(8, 8)};
  const ComplexMatrix identity8 = ComplexMatrix::identity(8);
  switch (kind) {
    case WitnessKind::W:
      spec.sharp_operator = (2.0 / 3.0) * identity8 - pure_state(StateKind::W);
      spec.prefactor = 1.0 / 24.0;
      spec.terms = w_terms();
      spec.correlation_settings = {Direction::z(), Direction(kPi / 4, 0.0),
                                   Direction(kPi / 4, kPi), Direction(kPi / 4, kPi / 2),
                                   Direction(kPi / 4, 3 * kPi / 2)};
      break;
    case WitnessKind::GHZ:
      spec.sharp_operator = 0.5 * identity8 - pure_state(StateKind::GHZ);
      spec.prefactor = 1.0 / 8.0;
      spec.terms = ghz_terms();
      spec.correlation_settings = {Direction::z(), Direction::x(), Direction(kPi / 2, kPi / 4),
                                   Direction(kPi / 2, 7 * kPi / 4)};
      break;
  }

  for (const auto& t : spec.terms) {
    const ComplexMatrix op = (spec.prefactor * t.coefficient) *
                             kron(t.factors[0], t.factors[1], t.factors[2]);
    (t.charlie_trivial ? spec.charlie_free_part : spec.charlie_part) += op;
  }
  if (max_abs_diff(spec.charlie_free_part + spec.charlie_part, spec.sharp_operator) > 1e-12) {
    throw std::logic_error("build_witness: local decomposition does not resum to the witness");
  }
  return spec;
}

double unsharp_expectation(const WitnessSpec& spec, const ComplexMatrix& rho, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("unsharp_expectation: lambda must lie in (0, 1]");
  }
  return trace_of_product(spec.charlie_free_part, rho).real() +
         lambda * trace_of_product(spec.charlie_part, rho).real();
}

AffineWitnessValue affine_coefficients(const WitnessSpec& spec, const ComplexMatrix& rho) {
  // The lambda -> 0 limit keeps only the Charlie-free correlations.
  return {trace_of_product(spec.charlie_free_part, rho).real(),
          -trace_of_product(spec.charlie_part, rho).real()};
}

double charlie2_closed_form(WitnessKind kind, double lambda1, double lambda2) {
  if (!(lambda1 > 0.0 && lambda1 <= 1.0) || !(lambda2 > 0.0 && lambda2 <= 1.0)) {
    throw std::invalid_argument("charlie2_closed_form: sharpness must lie in (0, 1]");
  }
  const double f1 = std::sqrt(1.0 - lambda1 * lambda1);
  switch (kind) {
    case WitnessKind::W:
      return (35.0 - (23.0 + 42.0 * f1) * lambda2) / 90.0;
    case WitnessKind::GHZ:
      return 0.25 * (1.0 - (1.0 + 2.0 * f1) * lambda2);
  }
  throw std::invalid_argument("charlie2_closed_form: unknown witness");
}

ComplexMatrix sample_biseparable(Bipartition cut, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<Complex> single = haar_vector(2, rng);
  const std::vector<Complex> pair = haar_vector(4, rng);

  std::vector<Complex> psi(8);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t c = 0; c < 2; ++c) {
        Complex amp;
        switch (cut) {
          case Bipartition::A_BC:
            amp = single[a] * pair[2 * b + c];
            break;
          case Bipartition::B_AC:
            amp = single[b] * pair[2 * a + c];
            break;
          case Bipartition::C_AB:
            amp = single[c] * pair[2 * a + b];
            break;
        }
        psi[4 * a + 2 * b + c] = amp;
      }
    }
  }
  return ComplexMatrix::outer(psi);
}

WitnessChainReport witness_chain(const WitnessSpec& spec, const ComplexMatrix& initial,
                                 const std::vector<double>& lambdas) {
  WitnessChainReport report;
  ComplexMatrix rho = initial;
  for (std::size_t m = 0; m < lambdas.size(); ++m) {
    const double value = unsharp_expectation(spec, rho, lambdas[m]);
    report.values.push_back(value);
    report.verdicts.push_back(value < 0.0);
    if (m + 1 < lambdas.size()) rho = AveragedChannel(spec.stage(lambdas[m])).apply(rho);
  }
  return report;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k) grid.push_back(k / 10.0);
  return grid;
}

std::vector<PositivityCell> positivity_fuzz(std::size_t samples, std::uint64_t seed,
                                            const std::vector<double>& lambda_grid) {
  constexpr std::array<Bipartition, 3> kCuts{Bipartition::A_BC, Bipartition::B_AC,
                                             Bipartition::C_AB};
  // Independent sample seeds per (cut, index) drawn from one seeded stream.
  std::mt19937_64 seeder(seed);
  std::array<std::vector<std::uint64_t>, 3> seeds;
  for (auto& s : seeds) {
    s.resize(samples);
    for (auto& x : s) x = seeder();
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<PositivityCell> cells;
  for (WitnessKind kind : {WitnessKind::W, WitnessKind::GHZ}) {
    const WitnessSpec spec = build_witness(kind);
    for (std::size_t c = 0; c < kCuts.size(); ++c) {
      PositivityCell cell{kind, kCuts[c], 0, std::numeric_limits<double>::infinity(),
                          std::numeric_limits<double>::infinity()};
      auto visit = [&](const ComplexMatrix& rho) {
        ++cell.states;
        const double sharp = trace_of_product(spec.sharp_operator, rho).real();
        const AffineWitnessValue affine = affine_coefficients(spec, rho);
        for (double lambda : lambda_grid) {
          const double value = affine.at(lambda);
          cell.min_expectation = std::min(cell.min_expectation, value);
          cell.min_margin =
              std::min(cell.min_margin, value - lambda * sharp - 0.25 * (1.0 - lambda));
        }
      };
      const std::size_t partner = (c + 1) % kCuts.size();
      for (std::size_t i = 0; i < samples; ++i) {
        const ComplexMatrix own = sample_biseparable(kCuts[c], seeds[c][i]);
        visit(own);
        const double p = unit(seeder);
        visit(p * own + (1.0 - p) * sample_biseparable(kCuts[partner], seeds[partner][i]));
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace seqwit
