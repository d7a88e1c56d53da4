#include "tradecone/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "parallel.hpp"
#include "tradecone/errors.hpp"
#include "tradecone/kernels.hpp"

namespace tradecone {

Economy::Economy(std::vector<double> labor, double eps, FreenessMatrix phi)
    : labor_(std::move(labor)), eps_(eps), phi_(std::move(phi)), normalized_(false) {
  if (labor_.empty()) throw InvalidInput("economy needs at least one country");
  if (phi_.size() != labor_.size())
    throw DimensionMismatch("labor has " + std::to_string(labor_.size()) + " entries but phi is " +
                            std::to_string(phi_.size()) + "x" + std::to_string(phi_.size()));
  for (double l : labor_)
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidInput("labor masses must be finite and positive");
  if (!(eps > 1.0) || !std::isfinite(eps)) throw InvalidInput("eps must exceed 1, got " + std::to_string(eps));
  const double total = std::accumulate(labor_.begin(), labor_.end(), 0.0);
  normalized_ = std::fabs(total - 1.0) <= 1e-12;
}

bool Economy::admits_uniform_equilibrium() const {
  const std::size_t n = size();
  std::vector<double> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = kernels::dot(phi_.matrix().row(i), labor_);
  const auto [lo, hi] = std::minmax_element(rows.begin(), rows.end());
  return *hi - *lo <= 1e-10 * *hi;
}

const char* to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::symmetric:
      return "symmetric";
    case EquilibriumKind::perverse:
      return "perverse";
    case EquilibriumKind::general:
      return "general";
  }
  return "general";
}

namespace {

void require_size(const Economy& e, std::size_t got) {
  if (got != e.size())
    throw DimensionMismatch("vector has " + std::to_string(got) + " entries, economy has " + std::to_string(e.size()));
}

void require_positive(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] > 0.0) || !std::isfinite(v[i]))
      throw NonpositiveV("v[" + std::to_string(i) + "] = " + std::to_string(v[i]) + " is not a positive number");
}

/// Shifted weights w_j = L_j e^{-eps s_j - shift} and the shift itself.
double log_weights(const Economy& e, const std::vector<double>& s, std::vector<double>& w) {
  const std::size_t n = e.size();
  w.resize(n);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = -e.eps() * s[j] + std::log(e.labor()[j]);
    shift = std::fmax(shift, w[j]);
  }
  for (double& x : w) x = std::exp(x - shift);
  return shift;
}

struct LogState {
  std::vector<double> g;  // G(s)
  std::vector<double> q;  // shifted row sums sum_j phi_ij w_j
  std::vector<double> w;
  double merit = 0.0;     // 0.5 ||G||^2
};

LogState evaluate_log(const Economy& e, const std::vector<double>& s) {
  LogState st;
  const double shift = log_weights(e, s, st.w);
  const std::size_t n = e.size();
  st.g.resize(n);
  st.q.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    st.q[i] = kernels::dot(e.phi().matrix().row(i), st.w);
    st.g[i] = s[i] - (shift + std::log(st.q[i]));
  }
  st.merit = 0.5 * kernels::dot(st.g, st.g);
  return st;
}

Matrix log_jacobian_from(const Economy& e, const LogState& st) {
  const std::size_t n = e.size();
  Matrix j(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      j(r, c) = (r == c ? 1.0 : 0.0) + e.eps() * e.phi()(r, c) * st.w[c] / st.q[r];
  return j;
}

std::vector<double> exp_all(const std::vector<double>& s) {
  std::vector<double> v(s.size());
  std::transform(s.begin(), s.end(), v.begin(), [](double x) { return std::exp(x); });
  return v;
}

double safe_residual_inf(const Economy& e, const std::vector<double>& v) {
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x)) return std::numeric_limits<double>::infinity();
  const auto f = residual(e, v);
  for (double x : f)
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
  return kernels::max_abs(f);
}

}  // namespace

std::vector<double> residual(const Economy& e, const std::vector<double>& v) {
  require_size(e, v.size());
  require_positive(v);
  const std::size_t n = e.size();
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = e.labor()[j] * std::exp(-e.eps() * std::log(v[j]));
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = v[i] - kernels::dot(e.phi().matrix().row(i), g);
  return f;
}

Matrix jacobian(const Economy& e, const std::vector<double>& v) {
  require_size(e, v.size());
  require_positive(v);
  const std::size_t n = e.size();
  Matrix j(n);
  for (std::size_t c = 0; c < n; ++c) {
    const double col = e.eps() * e.labor()[c] * std::exp((-e.eps() - 1.0) * std::log(v[c]));
    for (std::size_t r = 0; r < n; ++r) j(r, c) = (r == c ? 1.0 : 0.0) + e.phi()(r, c) * col;
  }
  return j;
}

std::vector<double> log_residual(const Economy& e, const std::vector<double>& s) {
  require_size(e, s.size());
  return evaluate_log(e, s).g;
}

Matrix log_jacobian(const Economy& e, const std::vector<double>& s) {
  require_size(e, s.size());
  return log_jacobian_from(e, evaluate_log(e, s));
}

EquilibriumKind classify(const Economy& e, const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (*hi - *lo <= 1e-8 * *hi) return EquilibriumKind::symmetric;
  return e.admits_uniform_equilibrium() ? EquilibriumKind::perverse : EquilibriumKind::general;
}

Equilibrium solve_equilibrium(const Economy& e, const std::vector<double>& v0, const SolverOptions& opts) {
  require_size(e, v0.size());
  require_positive(v0);
  const std::size_t n = e.size();

  std::vector<double> s(n);
  std::transform(v0.begin(), v0.end(), s.begin(), [](double x) { return std::log(x); });
  LogState st = evaluate_log(e, s);

  std::vector<double> best_v = v0;
  double best_r = std::numeric_limits<double>::infinity();
  double alpha = opts.damping;
  std::vector<double> trial(n);

  for (std::size_t it = 0; it <= opts.max_iter; ++it) {
    const auto v = exp_all(s);
    const double r = safe_residual_inf(e, v);
    if (r < best_r) {
      best_r = r;
      best_v = v;
    }
    if (r < opts.tol) return {v, r, classify(e, v)};
    if (it == opts.max_iter) break;

    bool moved = false;
    std::vector<double> step(n);
    try {
      std::vector<double> rhs(n);
      std::transform(st.g.begin(), st.g.end(), rhs.begin(), [](double x) { return -x; });
      step = lu_solve(log_jacobian_from(e, st), std::move(rhs));
    } catch (const InvalidInput&) {
      std::transform(st.g.begin(), st.g.end(), step.begin(), [](double x) { return -x; });
    }
    const double longest = kernels::max_abs(step);
    if (longest > opts.max_log_step)
      for (double& x : step) x *= opts.max_log_step / longest;

    for (double lambda = 1.0; lambda >= 1e-10; lambda *= 0.5) {
      trial = s;
      kernels::axpy(lambda, step, trial);
      LogState next = evaluate_log(e, trial);
      if (next.merit <= (1.0 - 1e-4 * lambda) * st.merit) {
        s.swap(trial);
        st = std::move(next);
        moved = true;
        break;
      }
    }

    if (!moved) {
      // Damped fixed-point step in log coordinates: s <- (1 - a) s + a T(s).
      for (; alpha >= 1e-12; alpha *= 0.5) {
        trial = s;
        kernels::axpy(-alpha, st.g, trial);
        LogState next = evaluate_log(e, trial);
        if (next.merit < st.merit) {
          s.swap(trial);
          st = std::move(next);
          moved = true;
          break;
        }
      }
      if (moved) alpha = opts.damping;
    }
    if (!moved) break;
  }
  throw NoConvergence(best_v, best_r,
                      "equilibrium solver did not converge; best residual " + std::to_string(best_r));
}

std::vector<double> search_start(std::size_t n, std::size_t k, const SearchOptions& opts) {
  if (k == 0 && opts.include_uniform_start) return std::vector<double>(n, 1.0);
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(k)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unif(opts.log_lo, opts.log_hi);
  std::vector<double> v(n);
  for (double& x : v) x = std::exp(unif(rng));
  return v;
}

std::vector<Equilibrium> dedupe_equilibria(std::vector<Equilibrium> eqs, double tol) {
  std::sort(eqs.begin(), eqs.end(), [](const Equilibrium& a, const Equilibrium& b) { return a.v < b.v; });
  std::vector<Equilibrium> out;
  for (auto& eq : eqs) {
    bool dup = false;
    for (const auto& kept : out) {
      double diff = 0.0;
      for (std::size_t i = 0; i < eq.v.size(); ++i) diff = std::fmax(diff, std::fabs(eq.v[i] - kept.v[i]));
      if (diff < tol * kernels::max_abs(kept.v)) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(eq));
  }
  return out;
}

EquilibriumSearch find_all_equilibria(const Economy& e, const SearchOptions& opts) {
  if (opts.starts == 0) throw InvalidInput("starts must be at least 1");
  struct Slot {
    std::optional<Equilibrium> eq;
    std::optional<SolverFailure> failure;
  };
  std::vector<Slot> slots(opts.starts);
  detail::parallel_for(opts.starts, [&](std::size_t k) {
    try {
      slots[k].eq = solve_equilibrium(e, search_start(e.size(), k, opts), opts.solver);
    } catch (const NoConvergence& nc) {
      slots[k].failure = SolverFailure{k, nc.best_v, nc.best_residual};
    }
  });

  EquilibriumSearch out;
  out.attempted = opts.starts;
  std::vector<Equilibrium> found;
  for (auto& slot : slots) {
    if (slot.eq) found.push_back(std::move(*slot.eq));
    if (slot.failure) out.failures.push_back(std::move(*slot.failure));
  }
  if (found.empty()) {
    const auto& f = out.failures.front();
    throw NoConvergence(f.best_v, f.best_residual, "no start converged to an equilibrium");
  }
  out.equilibria = dedupe_equilibria(std::move(found), opts.dedupe_tol);
  return out;
}

std::optional<BlocStructure> bloc_structure(const Economy& e) {
  const std::size_t n = e.size();
  if (n < 2 || n > 20) return std::nullopt;
  const Matrix& phi = e.phi().matrix();
  const auto& labor = e.labor();

  std::vector<double> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = kernels::dot(phi.row(i), labor);
  const double lambda_a = std::accumulate(rows.begin(), rows.end(), 0.0) / static_cast<double>(n);
  for (double r : rows)
    if (std::fabs(r - lambda_a) > 1e-10 * std::fabs(lambda_a)) return std::nullopt;

  std::optional<BlocStructure> best;
  std::vector<double> b(n);
  std::vector<double> lb(n);
  const std::uint32_t patterns = 1u << (n - 1);
  // Pattern bit k set means signs[k+1] = -1; signs[0] is always +1.
  for (std::uint32_t mask = 1; mask < patterns; ++mask) {
    b[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k) b[k] = (mask >> (k - 1)) & 1u ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) lb[j] = labor[j] * b[j];
    const double lambda = kernels::dot(phi.row(0), lb);
    bool ok = true;
    for (std::size_t i = 1; i < n && ok; ++i)
      ok = std::fabs(kernels::dot(phi.row(i), lb) - lambda * b[i]) <= 1e-10 * std::fabs(lambda_a);
    if (!ok) continue;
    if (!best || lambda < best->lambda_b - 1e-12 * std::fabs(lambda_a)) {
      std::vector<int> signs(n);
      std::transform(b.begin(), b.end(), signs.begin(), [](double x) { return x > 0 ? 1 : -1; });
      best = BlocStructure{lambda_a, lambda, std::move(signs)};
    }
  }
  return best;
}

PerverseCondition perverse_condition(double lambda_a, double lambda_b, double eps) {
  if (!(lambda_a > 0.0)) throw SpectralOrderViolation("lambda_a must be positive (Perron root)");
  const double tau = lambda_b / lambda_a;
  if (!(std::fabs(tau) < 1.0))
    throw SpectralOrderViolation("|lambda_b / lambda_a| = " + std::to_string(std::fabs(tau)) + " must be below 1");
  return {eps * tau < -1.0, tau};
}

double scalar_u_equation(double tau, double eps, double u) {
  if (!(u > 0.0)) throw NonpositiveU("u must be positive, got " + std::to_string(u));
  const double du = u - 1.0;
  if (std::fabs(du) < 1e-6) {
    // (u^eps - 1)/(u - 1) ~ eps + eps (eps - 1)(u - 1)/2
    const double ratio = eps + 0.5 * eps * (eps - 1.0) * du;
    return std::pow(u, eps) + 1.0 + tau * (u + 1.0) * ratio;
  }
  const double a = std::pow(u, eps);
  const double r = (u + 1.0) / du;
  // Grouped so that a = inf still yields the correct sign.
  return a * (1.0 + tau * r) + (1.0 - tau * r);
}

std::vector<double> perverse_u_roots(double tau, double eps) {
  std::vector<double> roots;
  if (tau >= 0.0) return roots;  // every term of h is positive for u > 1

  double hi = 2.0;
  while (!(scalar_u_equation(tau, eps, hi) > 0.0)) {
    hi *= 2.0;
    if (hi > 1e300) throw RootNotBracketed("h(u) stays nonpositive as u grows");
  }

  constexpr std::size_t kScan = 4096;
  const double log_hi = std::log(hi);
  double prev_u = 1.0;
  double prev_h = 2.0 + 2.0 * tau * eps;
  for (std::size_t k = 1; k <= kScan; ++k) {
    const double u = std::exp(log_hi * static_cast<double>(k) / kScan);
    const double h = scalar_u_equation(tau, eps, u);
    if ((prev_h < 0.0) != (h < 0.0)) {
      double lo = prev_u;
      double up = u;
      const bool lo_negative = prev_h < 0.0;
      for (int iter = 0; iter < 200 && up - lo > 4 * std::numeric_limits<double>::epsilon() * up; ++iter) {
        const double mid = 0.5 * (lo + up);
        if ((scalar_u_equation(tau, eps, mid) < 0.0) == lo_negative)
          lo = mid;
        else
          up = mid;
      }
      const double root = 0.5 * (lo + up);
      if (root > 1.0 + 1e-12) roots.push_back(root);
    }
    prev_u = u;
    prev_h = h;
  }
  if (eps * tau < -1.0 && roots.empty()) throw RootNotBracketed("no sign change of h found above u = 1");
  return roots;
}

std::vector<BlocSolution> bloc_symmetric_solutions(const Economy& e) {
  const auto structure = bloc_structure(e);
  if (!structure) throw StructureMissing("Phi L does not have the all-ones and a sign vector as eigenvectors");
  const double la = structure->lambda_a;
  const double tau = perverse_condition(la, structure->lambda_b, e.eps()).tau;
  const double eps = e.eps();
  const std::size_t n = e.size();

  std::vector<double> us{1.0};
  for (double u : perverse_u_roots(tau, eps)) {
    us.push_back(u);
    us.push_back(1.0 / u);
  }

  std::vector<BlocSolution> out;
  for (double u : us) {
    BlocSolution sol;
    sol.u = u;
    sol.z = (u == 1.0) ? 0.0 : (u - 1.0) / (tau * (u + 1.0));
    const double log_x = -(std::log1p(sol.z) + eps * std::log(la * (1.0 + tau * sol.z))) / (1.0 + eps);
    sol.x = std::exp(log_x);
    sol.y = sol.z * sol.x;
    sol.w.resize(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      sol.w[i] = sol.x + sol.y * structure->signs[i];
      v[i] = std::exp(-std::log(sol.w[i]) / eps);
    }
    const double r = kernels::max_abs(residual(e, v));
    if (!(r < 1e-8))
      throw Error("bloc-symmetric solution at u = " + std::to_string(u) + " has residual " + std::to_string(r));
    sol.equilibrium = {std::move(v), r, u == 1.0 ? EquilibriumKind::symmetric : EquilibriumKind::perverse};
    out.push_back(std::move(sol));
  }
  return out;
}

std::vector<Equilibrium> bloc_symmetric_equilibria(const Economy& e) {
  std::vector<Equilibrium> eqs;
  for (auto& sol : bloc_symmetric_solutions(e)) eqs.push_back(std::move(sol.equilibrium));
  return dedupe_equilibria(std::move(eqs), 1e-12);
}

double eps_from_sigma(double sigma) {
  if (!(sigma > 1.0) || !std::isfinite(sigma)) throw SigmaOutOfRange("sigma must exceed 1, got " + std::to_string(sigma));
  return sigma / (sigma - 1.0);
}

double sigma_from_eps(double eps) {
  if (!(eps > 1.0) || !std::isfinite(eps)) throw SigmaOutOfRange("eps must exceed 1, got " + std::to_string(eps));
  return eps / (eps - 1.0);
}

double wage_from_v(double v, double sigma) {
  if (!(sigma > 1.0) || !std::isfinite(sigma)) throw SigmaOutOfRange("sigma must exceed 1, got " + std::to_string(sigma));
  if (!(v > 0.0)) throw NonpositiveV("v must be positive, got " + std::to_string(v));
  return std::pow(v, 1.0 / sigma);
}

}  // namespace tradecone
