#pragma once

// The N-country wage equation
//
//   F_i(v) = v_i - sum_j L_j phi_ij v_j^{-eps} = 0,   v_i = omega_i^sigma,
//
// its numerical solution from many starts, and the closed-form two-bloc
// construction of non-uniform ("perverse") equilibria.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tradecone/freeness.hpp"
#include "tradecone/matrix.hpp"

namespace tradecone {

class Economy {
public:
  /// labor: positive masses; eps > 1; phi of matching size.
  Economy(std::vector<double> labor, double eps, FreenessMatrix phi);

  std::size_t size() const noexcept { return labor_.size(); }
  const std::vector<double>& labor() const noexcept { return labor_; }
  double eps() const noexcept { return eps_; }
  const FreenessMatrix& phi() const noexcept { return phi_; }

  /// sum(L) == 1 within 1e-12. Both conventions are accepted as given.
  bool normalized() const noexcept { return normalized_; }

  /// Phi * diag(L) has the all-ones vector as an eigenvector, so a uniform v solves F = 0.
  bool admits_uniform_equilibrium() const;

private:
  std::vector<double> labor_;
  double eps_;
  FreenessMatrix phi_;
  bool normalized_;
};

enum class EquilibriumKind { symmetric, perverse, general };

const char* to_string(EquilibriumKind k);

struct Equilibrium {
  std::vector<double> v;
  double residual_inf = 0.0;
  EquilibriumKind kind = EquilibriumKind::general;
};

/// F(v). Throws NonpositiveV.
std::vector<double> residual(const Economy& e, const std::vector<double>& v);

/// dF_i/dv_j = delta_ij + eps L_j phi_ij v_j^{-eps-1}.
Matrix jacobian(const Economy& e, const std::vector<double>& v);

/// The same equation in s = log v:  G_i(s) = s_i - log(sum_j L_j phi_ij e^{-eps s_j}).
/// Roots coincide with those of F; this is the form the solver iterates on.
std::vector<double> log_residual(const Economy& e, const std::vector<double>& s);

/// dG/ds = I + eps P, P_ij = L_j phi_ij e^{-eps s_j} / sum_k L_k phi_ik e^{-eps s_k}.
Matrix log_jacobian(const Economy& e, const std::vector<double>& s);

/// Classify a root of F for this economy.
EquilibriumKind classify(const Economy& e, const std::vector<double>& v);

struct SolverOptions {
  double tol = 1e-10;          // on ||F(v)||_inf
  std::size_t max_iter = 500;
  double damping = 0.5;        // initial fixed-point damping, halved on failure
  double max_log_step = 0.25;  // cap on |delta log v_i| per Newton step
};

/// Newton on G with an Armijo line search and a capped step; falls back to a
/// damped fixed-point step when the line search stalls. Throws NoConvergence
/// (with the best iterate) or NonpositiveV for a bad start.
Equilibrium solve_equilibrium(const Economy& e, const std::vector<double>& v0, const SolverOptions& opts = {});

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct SearchOptions {
  std::size_t starts = 50;
  std::uint64_t seed = kDefaultSeed;
  double dedupe_tol = 1e-6;
  bool include_uniform_start = true;  // start 0 is v = (1, ..., 1)
  double log_lo = -6.907755278982137;  // log(1e-3)
  double log_hi = 6.907755278982137;   // log(1e3)
  SolverOptions solver{};
};

struct SolverFailure {
  std::size_t start;
  std::vector<double> best_v;
  double best_residual;
};

struct EquilibriumSearch {
  std::vector<Equilibrium> equilibria;  // deduplicated, lexicographic in v
  std::size_t attempted = 0;
  std::vector<SolverFailure> failures;
};

/// The k-th start vector of a search (deterministic in seed and k).
std::vector<double> search_start(std::size_t n, std::size_t k, const SearchOptions& opts);

/// Multi-start search. Throws NoConvergence only if every start fails.
EquilibriumSearch find_all_equilibria(const Economy& e, const SearchOptions& opts = {});

/// Drop near-duplicates (relative inf-distance < tol) and sort lexicographically.
std::vector<Equilibrium> dedupe_equilibria(std::vector<Equilibrium> eqs, double tol);

struct BlocStructure {
  double lambda_a;         // eigenvalue of Phi L on the all-ones vector
  double lambda_b;         // eigenvalue on the sign vector
  std::vector<int> signs;  // +1/-1, signs[0] = +1
};

/// Detects whether Phi L has the all-ones vector and some +-1 vector as
/// eigenvectors (within 1e-10). Sign patterns are enumerated for n <= 20;
/// among several, the one with the smallest lambda_b is reported.
std::optional<BlocStructure> bloc_structure(const Economy& e);

struct PerverseCondition {
  bool perverse;
  double tau;  // lambda_b / lambda_a
};

/// tau = lambda_b / lambda_a; perverse iff eps * tau < -1.
/// Throws SpectralOrderViolation unless lambda_a > 0 and |tau| < 1.
PerverseCondition perverse_condition(double lambda_a, double lambda_b, double eps);

/// h(u) = u^eps + 1 + tau (u+1)(u^eps - 1)/(u - 1), continuous at u = 1 where it equals 2 + 2 tau eps.
double scalar_u_equation(double tau, double eps, double u);

/// Roots of h on (1, inf), ascending. Their reciprocals are roots as well.
std::vector<double> perverse_u_roots(double tau, double eps);

struct BlocSolution {
  double u, z, x, y;
  std::vector<double> w;  // w = v^{-eps} = x a + y b
  Equilibrium equilibrium;
};

/// All bloc-symmetric solutions, u = 1 first, then each root u* > 1 followed by 1/u*.
std::vector<BlocSolution> bloc_symmetric_solutions(const Economy& e);

/// Equilibria of bloc_symmetric_solutions, deduplicated and sorted like find_all_equilibria.
std::vector<Equilibrium> bloc_symmetric_equilibria(const Economy& e);

double eps_from_sigma(double sigma);
double sigma_from_eps(double eps);

/// omega = v^{1/sigma}.
double wage_from_v(double v, double sigma);

}  // namespace tradecone
