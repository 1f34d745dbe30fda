#pragma once

namespace ymh {

// Default numerical thresholds. Every run echoes the values it used.
struct Tolerances {
  double algebra = 1e-10;        // antisymmetry, Jacobi, ad-invariance, equivariance
  double orthogonality = 1e-9;   // |R^T R - I|
  double rank = 1e-8;            // singular-value cutoff, relative to sigma_max
  double minimum = 1e-9;         // gradient norm at a certified minimum
  double invariance = 1e-9;      // |V(gz) - V(z)| / (1 + |V(z)|)
  double group = 1e-7;           // eigenvalue grouping, relative: group * (1 + lambda_max)
  double eigen = 1e-8;           // PSD slack and annihilation tests, relative to lambda_max
  double spectrum = 1e-8;        // gauge (in)variance of spectra
  double critical = 1e-9;        // unitary-gauge critical-set residual
  double direction = 1e-7;       // unitary-gauge vacuum against the closed form
  double identity = 1e-12;       // exact algebraic identities, relative to 1 + |lhs|
  double fluctuation = 1e-6;     // quadratic-coefficient extraction, Higgs normal gradient
  double gauge_gradient = 1e-7;  // finite-difference check of the gauge normal gradient
  double zero = 1e-12;           // "vanishing state" threshold
  double conjugacy = 1e-8;       // holonomy conjugator search
  double fd_step = 1e-4;         // h = fd_step * (1 + |z|)
  int max_iter = 100000;
};

}  // namespace ymh
