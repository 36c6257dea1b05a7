#include "indseq/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace indseq {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// ln f(rho) with f(rho) = 1 + (e^rho - 1)/kappa, stable for large rho.
double log_f(double kappa, double rho) {
  if (rho > 700.0) return rho + std::log1p((kappa - 1.0) * std::exp(-rho)) - std::log(kappa);
  return std::log(kappa + std::expm1(rho)) - std::log(kappa);
}

// s(rho) = rho f'(rho) / f(rho) = rho e^rho / (kappa + e^rho - 1).
double saddle_map(double kappa, double rho) {
  if (rho > 700.0) return rho / (1.0 + (kappa - 1.0) * std::exp(-rho));
  return rho * std::exp(rho) / (kappa + std::expm1(rho));
}

// Bisection for the unique positive root of a strictly increasing map.
double solve_increasing(const std::function<double(double)>& fn, double target) {
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (fn(lo) >= target) {
    lo /= 2;
    if (++guard > 2000) throw std::runtime_error("solve_increasing: no lower bracket");
  }
  guard = 0;
  while (fn(hi) <= target) {
    hi *= 2;
    if (++guard > 2000) throw std::runtime_error("solve_increasing: no upper bracket");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (fn(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

void check_domain(double kappa, double tau) {
  if (!(kappa > 0.0) || !(kappa < 1.0) || !(tau >= 0.0) || !(kappa + tau < 1.0))
    throw std::domain_error("need 0 < kappa < 1, tau >= 0, kappa + tau < 1");
}

}  // namespace

double binary_entropy(double x) {
  if (!(x >= 0.0) || !(x <= 1.0)) throw std::domain_error("binary_entropy: x outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -(x * std::log2(x) + (1.0 - x) * std::log2(1.0 - x));
}

SaddlePoint solve_rho(double kappa, double tau) {
  check_domain(kappa, tau);
  const double target = kappa / (1.0 - kappa - tau);
  const double rho =
      solve_increasing([kappa](double r) { return saddle_map(kappa, r); }, target);
  // Non-convergence guard; on moderate targets this is far tighter than
  // the documented 1e-12 residual, which the grid test asserts directly.
  const double residual = std::fabs(saddle_map(kappa, rho) - target);
  if (!(residual <= 1e-12 * std::max(1.0, target)))
    throw std::runtime_error("solve_rho: residual above tolerance");
  // f'' = f' = e^rho / kappa, so
  // sigma^2 = rho e^rho (1 + rho + (e^rho - 1 - rho)/kappa) / (kappa f^2),
  // every factor positive.
  const double f = 1.0 + std::expm1(rho) / kappa;
  const double sigma_sq = rho * std::exp(rho) *
                          (1.0 + rho + (std::expm1(rho) - rho) / kappa) / (kappa * f * f);
  return SaddlePoint{kappa, tau, rho, sigma_sq};
}

double pittel_rho() {
  return solve_increasing([](double r) { return r * std::exp(r); }, 1.0);
}

namespace {

double log2_growth_rate(double kappa, double tau) {
  check_domain(kappa, tau);
  const SaddlePoint sp = solve_rho(kappa, tau);
  return binary_entropy(kappa) + (1.0 - kappa) * binary_entropy(tau / (1.0 - kappa)) +
         tau * std::log2(1.0 - kappa) + (1.0 - tau) * std::log2(kappa) +
         (1.0 - kappa - tau) * log_f(kappa, sp.rho) / kLn2 - kappa / kLn2 -
         kappa * std::log2(sp.rho);
}

}  // namespace

double log2_ratio(double kappa, double tau) {
  // The Wingard denominator needs kappa/(1-kappa) <= 1.
  if (!(kappa < 0.5)) throw std::domain_error("log2_ratio: kappa must be below 1/2");
  return log2_growth_rate(kappa, tau) - (1.0 - kappa) * binary_entropy(kappa / (1.0 - kappa));
}

double growth_rate_C(double kappa, double tau) {
  return std::exp2(log2_growth_rate(kappa, tau));
}

namespace {

double golden_max(const std::function<double(double)>& fn, double a, double b, double tol) {
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    }
  }
  return f1 >= f2 ? x1 : x2;
}

}  // namespace

TauSup sup_ratio(Regime regime, double kappa) {
  double tau_lo = 0.0, tau_hi = 0.0;
  if (regime == Regime::head) {
    tau_lo = 0.0;
    tau_hi = kappa;
  } else {
    tau_lo = kappa;
    tau_hi = 1.0 - kappa - 1e-9;
  }
  if (!(tau_hi > tau_lo)) throw std::domain_error("sup_ratio: empty tau range");
  auto fn = [kappa](double tau) { return log2_ratio(kappa, tau); };

  const double step = 1e-3;
  std::vector<double> taus, vals;
  for (double tau = tau_lo;; tau += step) {
    if (tau > tau_hi) tau = tau_hi;
    taus.push_back(tau);
    vals.push_back(fn(tau));
    if (tau >= tau_hi) break;
  }
  TauSup best{taus[0], vals[0]};
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const bool left_ok = (i == 0) || vals[i] >= vals[i - 1];
    const bool right_ok = (i + 1 == taus.size()) || vals[i] >= vals[i + 1];
    if (!(left_ok && right_ok)) continue;
    const double a = (i == 0) ? taus[0] : taus[i - 1];
    const double b = (i + 1 == taus.size()) ? taus.back() : taus[i + 1];
    const double tau_star = golden_max(fn, a, b, 1e-8);
    const double v = fn(tau_star);
    if (v > best.log2_ratio) best = TauSup{tau_star, v};
  }
  return best;
}

namespace {

ThresholdBracket bisect_threshold(Regime regime, double resolution, double lo, double hi) {
  // Grid-index bisection; `lo` passes and `hi` fails by construction,
  // with head passing below the threshold and tail passing above it.
  auto passes = [&](long idx) {
    return sup_ratio(regime, static_cast<double>(idx) * resolution).log2_ratio < 0.0;
  };
  long ilo = std::lround(lo / resolution);
  long ihi = std::lround(hi / resolution);
  const bool head = regime == Regime::head;
  if (!passes(head ? ilo : ihi) || passes(head ? ihi : ilo))
    throw std::runtime_error("threshold: search interval does not bracket the crossing");
  while (ihi - ilo > 1) {
    const long mid = (ilo + ihi) / 2;
    const bool p = passes(mid);
    if (p == head)
      ilo = mid;
    else
      ihi = mid;
  }
  if (head) return ThresholdBracket{ilo * resolution, ihi * resolution};
  return ThresholdBracket{ihi * resolution, ilo * resolution};
}

}  // namespace

ThresholdBracket heuristic_head_threshold(double resolution) {
  if (!(resolution > 0)) throw std::domain_error("resolution must be positive");
  return bisect_threshold(Regime::head, resolution, 0.25, 0.32);
}

ThresholdBracket heuristic_tail_threshold(double resolution) {
  if (!(resolution > 0)) throw std::domain_error("resolution must be positive");
  return bisect_threshold(Regime::tail, resolution, 0.30, 0.40);
}

}  // namespace indseq
