#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tradecone {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input could not be interpreted (shape, syntax, missing fields).
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// A value violated a mathematical axiom the caller was required to satisfy.
class ValidationError : public Error {
public:
  using Error::Error;
};

// metric_core

class AsymmetryError : public ValidationError {
public:
  AsymmetryError(std::size_t i, std::size_t j, const std::string& what)
      : ValidationError(what), i(i), j(j) {}
  std::size_t i, j;
};

class NegativeDistanceError : public ValidationError {
public:
  NegativeDistanceError(std::size_t i, std::size_t j, const std::string& what)
      : ValidationError(what), i(i), j(j) {}
  std::size_t i, j;
};

class NonzeroDiagonalError : public ValidationError {
public:
  NonzeroDiagonalError(std::size_t i, const std::string& what) : ValidationError(what), i(i) {}
  std::size_t i;
};

/// d[i][j] > d[i][k] + d[k][j] beyond tolerance.
class TriangleViolation : public ValidationError {
public:
  TriangleViolation(std::array<std::size_t, 3> witness, const std::string& what)
      : ValidationError(what), witness(witness) {}
  std::array<std::size_t, 3> witness;  // (i, j, k)
};

class DimensionMismatch : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class AllZeroCombination : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class EmptyOrFullCut : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class DisconnectedGraph : public ValidationError {
public:
  DisconnectedGraph(std::vector<std::vector<std::size_t>> components, const std::string& what)
      : ValidationError(what), components(std::move(components)) {}
  std::vector<std::vector<std::size_t>> components;
};

// freeness

class TOutOfRange : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class RangeError : public ValidationError {
public:
  RangeError(std::size_t i, std::size_t j, const std::string& what)
      : ValidationError(what), i(i), j(j) {}
  std::size_t i, j;
};

class DiagonalError : public ValidationError {
public:
  DiagonalError(std::size_t i, const std::string& what) : ValidationError(what), i(i) {}
  std::size_t i;
};

/// phi[i][j] * phi[j][k] > phi[i][k] beyond tolerance.
class MultiplicativeTriangleViolation : public ValidationError {
public:
  MultiplicativeTriangleViolation(std::array<std::size_t, 3> witness, const std::string& what)
      : ValidationError(what), witness(witness) {}
  std::array<std::size_t, 3> witness;  // (i, j, k)
};

// spectral

class NotSymmetric : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Double-centred Gram matrix has a negative eigenvalue; the metric is not of negative type.
class NotNegativeType : public Error {
public:
  NotNegativeType(double witness_eigenvalue, const std::string& what)
      : Error(what), witness_eigenvalue(witness_eigenvalue) {}
  double witness_eigenvalue;
};

/// PSD failed somewhere below the bisected index: the stable set in t is not an interval.
class NonIntervalStabilityRegion : public Error {
public:
  NonIntervalStabilityRegion(double index, double failing_t, const std::string& what)
      : Error(what), index(index), failing_t(failing_t) {}
  double index;
  double failing_t;
};

// equilibrium

class NonpositiveV : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class NonpositiveU : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class SigmaOutOfRange : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class SpectralOrderViolation : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class StructureMissing : public Error {
public:
  using Error::Error;
};

class RootNotBracketed : public Error {
public:
  using Error::Error;
};

/// Solver gave up; carries the best iterate it reached.
class NoConvergence : public Error {
public:
  NoConvergence(std::vector<double> best_v, double best_residual, const std::string& what)
      : Error(what), best_v(std::move(best_v)), best_residual(best_residual) {}
  std::vector<double> best_v;
  double best_residual;
};

// io

class ParseError : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

}  // namespace tradecone
