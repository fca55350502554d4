#include "seqwit/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seqwit {
namespace {

bool valid_dimension(std::size_t n) { return n == 1 || n == 2 || n == 4 || n == 8; }

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (!valid_dimension(rows) || !valid_dimension(cols)) {
    throw std::invalid_argument("ComplexMatrix: dimensions must be 1, 2, 4 or 8");
  }
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  ComplexMatrix m(values.size(), values.size());
  std::size_t i = 0;
  for (double v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: matrix is not square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(double s, ComplexMatrix m) { return m *= Complex(s, 0.0); }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("operator*: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (!m.is_square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = r; c < m.cols(); ++c) {
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tolerance) return false;
    }
  }
  return true;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw std::invalid_argument("trace_of_product: incompatible shapes");
  }
  Complex t = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(r, k) * b(k, r);
  }
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
      }
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
  return kron(kron(a, b), c);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> keep) {
  if (m.rows() != 8 || m.cols() != 8) {
    throw std::invalid_argument("partial_trace: expected an 8x8 three-qubit operator");
  }
  std::array<bool, 3> kept{};
  for (int q : keep) {
    if (q < 0 || q > 2) {
      throw std::invalid_argument("partial_trace: subsystem index " + std::to_string(q) +
                                  " outside {0, 1, 2}");
    }
    if (kept[q]) {
      throw std::invalid_argument("partial_trace: subsystem index " + std::to_string(q) +
                                  " repeated");
    }
    kept[q] = true;
  }

  // Bit positions inside a basis index: A is bit 2, B bit 1, C bit 0.
  std::vector<int> kept_bits;
  std::vector<int> traced_bits;
  for (int q = 0; q < 3; ++q) (kept[q] ? kept_bits : traced_bits).push_back(2 - q);

  const std::size_t out_dim = std::size_t{1} << kept_bits.size();
  const std::size_t traced_dim = std::size_t{1} << traced_bits.size();
  auto compose = [&](std::size_t kept_index, std::size_t traced_index) {
    std::size_t full = 0;
    for (std::size_t i = 0; i < kept_bits.size(); ++i) {
      const std::size_t bit = (kept_index >> (kept_bits.size() - 1 - i)) & 1U;
      full |= bit << kept_bits[i];
    }
    for (std::size_t i = 0; i < traced_bits.size(); ++i) {
      const std::size_t bit = (traced_index >> (traced_bits.size() - 1 - i)) & 1U;
      full |= bit << traced_bits[i];
    }
    return full;
  };

  ComplexMatrix out(out_dim, out_dim);
  for (std::size_t r = 0; r < out_dim; ++r) {
    for (std::size_t c = 0; c < out_dim; ++c) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) sum += m(compose(r, t), compose(c, t));
      out(r, c) = sum;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::initializer_list<Qubit> keep) {
  std::vector<int> indices;
  for (Qubit q : keep) indices.push_back(static_cast<int>(q));
  return partial_trace(m, indices);
}

std::vector<double> eig_hermitian(const ComplexMatrix& m) {
  if (!is_hermitian(m, 1e-12)) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  constexpr double kOffDiagonalTolerance = 1e-13;
  constexpr int kMaxSweeps = 100;

  auto largest_off_diagonal = [&] {
    double worst = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) worst = std::max(worst, std::abs(a(p, q)));
    }
    return worst;
  };

  for (int sweep = 0; sweep < kMaxSweeps && largest_off_diagonal() >= kOffDiagonalTolerance;
       ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double magnitude = std::abs(a(p, q));
        if (magnitude < 1e-300) continue;

        // Rotate the phase of index q so that a(p, q) becomes real and positive.
        const Complex phase = a(p, q) / magnitude;
        for (std::size_t k = 0; k < n; ++k) {
          a(k, q) *= std::conj(phase);
          a(q, k) *= phase;
        }

        // Real Jacobi rotation annihilating the (now real) pair.
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * magnitude);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex kp = a(k, p);
          const Complex kq = a(k, q);
          a(k, p) = c * kp - s * kq;
          a(k, q) = s * kp + c * kq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex pk = a(p, k);
          const Complex qk = a(q, k);
          a(p, k) = c * pk - s * qk;
          a(q, k) = s * pk + c * qk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace seqwit
