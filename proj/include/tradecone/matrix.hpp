#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tradecone {

/// Dense square matrix of doubles, row-major. Sizes here are country counts,
/// so everything is small and held by value.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  /// Build from nested rows; throws InvalidInput unless square.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  std::vector<std::vector<double>> to_rows() const;

  bool operator==(const Matrix&) const = default;

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

Matrix operator*(double c, const Matrix& a);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);
double max_abs_entry(const Matrix& a);
double trace(const Matrix& a);

/// max |a(i,j) - a(j,i)|.
double asymmetry(const Matrix& a);

Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<double> multiply(const Matrix& a, std::span<const double> x);

/// Solve a x = b by LU with partial pivoting. Throws InvalidInput if singular.
std::vector<double> lu_solve(Matrix a, std::vector<double> b);

}  // namespace tradecone
