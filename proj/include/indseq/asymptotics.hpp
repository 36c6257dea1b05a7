#pragma once

namespace indseq {

// H(x) = -x log2 x - (1-x) log2 (1-x), H(0) = H(1) = 0.
double binary_entropy(double x);

// Saddle point of f(z) = 1 + (1/kappa)(e^z - 1): the unique rho > 0 with
// rho f'(rho) / f(rho) = kappa / (1 - kappa - tau).
struct SaddlePoint {
  double kappa = 0;
  double tau = 0;
  double rho = 0;
  double sigma_sq = 0;  // rho^2 (f''/f - (f'/f)^2 + f'/(rho f)) > 0
};

// Requires 0 < kappa < 1, tau >= 0, kappa + tau < 1.  Bisection on the
// strictly increasing map rho -> rho f'(rho)/f(rho); throws on bracket or
// residual failure (residual must reach 1e-12), never clamps.
SaddlePoint solve_rho(double kappa, double tau);

// Root of rho e^rho = 1 (about 0.567143), the kappa -> 1 analogue solved
// by the same bisection kernel.
double pittel_rho();

// Exponential growth rate C(kappa, tau) of the expected number of
// independent k-sets with exactly t extensions, kappa = k/n, tau = t/n.
double growth_rate_C(double kappa, double tau);

// log2 C(kappa,tau) - (1-kappa) H(kappa/(1-kappa)): negative iff the
// comparison inequality holds at this (kappa, tau).
double log2_ratio(double kappa, double tau);

enum class Regime { head, tail };

// sup over tau of the ratio C(kappa,tau) / 2^{(1-kappa)H(kappa/(1-kappa))};
// head takes tau in [0, kappa], tail takes tau in [kappa, 1-kappa).
// Coarse 1e-3 grid, then golden-section refinement to 1e-8 from every
// local-maximum basin.
struct TauSup {
  double tau_star = 0;
  double log2_ratio = 0;  // of the supremum
};
TauSup sup_ratio(Regime regime, double kappa);

// Grid bracket around the threshold: `pass` satisfies the regime's strict
// inequality, `fail` (one grid step beyond) does not.
struct ThresholdBracket {
  double pass = 0;
  double fail = 0;
};

// Largest kappa on the resolution grid with head ratio < 1.
ThresholdBracket heuristic_head_threshold(double resolution);
// Smallest kappa on the resolution grid with tail ratio < 1.
ThresholdBracket heuristic_tail_threshold(double resolution);

}  // namespace indseq
