// Dense complex matrices for one-, two- and three-qubit operators.
//
// Everything here is sized for Hilbert spaces of dimension 2, 4 or 8, so the
// routines favour clarity over blocking or vectorisation. Three-qubit
// operators use the subsystem ordering A (x) B (x) C with qubit A as the
// slowest-varying index.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace seqwit {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  // Zero matrix. Both dimensions must be one of 1, 2, 4 or 8.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  // |v><v| for a column vector v.
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(double s, ComplexMatrix m);

// Largest elementwise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tolerance = 1e-12);

// Tr[a b] without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c);

// Subsystem labels of the three-qubit register.
enum class Qubit : int { A = 0, B = 1, C = 2 };

// Reduced operator on the kept qubits of an 8x8 three-qubit operator. `keep`
// holds subsystem indices in {0, 1, 2} (A, B, C); order is irrelevant and the
// result keeps the A (x) B (x) C ordering. Throws std::invalid_argument for an
// index outside that range, a repeated index, or a matrix that is not 8x8.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, std::initializer_list<Qubit> keep);

// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi).
// Throws std::invalid_argument when m is not Hermitian to 1e-12 elementwise.
std::vector<double> eig_hermitian(const ComplexMatrix& m);

}  // namespace seqwit
