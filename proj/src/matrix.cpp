#include "tradecone/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "tradecone/errors.hpp"
#include "tradecone/kernels.hpp"

namespace tradecone {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()), data_() {
  data_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw InvalidInput("matrix literal is not square");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw InvalidInput("matrix is not square: row " + std::to_string(i) + " has " +
                         std::to_string(rows[i].size()) + " entries, expected " + std::to_string(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i) rows[i].assign(row(i).begin(), row(i).end());
  return rows;
}

Matrix operator*(double c, const Matrix& a) {
  Matrix r = a;
  for (double& x : r.data()) x *= c;
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("matrix sizes differ");
  Matrix r = a;
  kernels::axpy(1.0, b.data(), r.data());
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("matrix sizes differ");
  Matrix r = a;
  kernels::axpy(-1.0, b.data(), r.data());
  return r;
}

double frobenius_norm(const Matrix& a) { return std::sqrt(kernels::dot(a.data(), a.data())); }

double max_abs_entry(const Matrix& a) { return kernels::max_abs(a.data()); }

double trace(const Matrix& a) {
  double t = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a(i, i);
  return t;
}

double asymmetry(const Matrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) worst = std::fmax(worst, std::fabs(a(i, j) - a(j, i)));
  return worst;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) throw DimensionMismatch("matrix sizes differ");
  const std::size_t n = a.size();
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) kernels::axpy(a(i, k), b.row(k), r.row(i));
  return r;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  if (a.size() != x.size()) throw DimensionMismatch("matrix/vector sizes differ");
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = kernels::dot(a.row(i), x);
  return r;
}

std::vector<double> lu_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DimensionMismatch("lu_solve: right-hand side has wrong length");
  const double scale = std::fmax(max_abs_entry(a), 1e-300);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
    if (std::fabs(a(piv, k)) <= 1e-14 * scale) throw InvalidInput("lu_solve: matrix is singular to working precision");
    if (piv != k) {
      std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(piv).begin());
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      kernels::axpy(-f, a.row(k).subspan(k), a.row(i).subspan(k));
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    const double s = kernels::dot(a.row(i).subspan(i + 1), std::span<const double>(x).subspan(i + 1));
    x[i] = (b[i] - s) / a(i, i);
  }
  return x;
}

}  // namespace tradecone
