#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>

#include "sphnys/pointsets.hpp"

namespace sphnys {

/// Marcinkiewicz-Zygmund diagnostics of a rule at degree n.
struct MZReport {
  int n = 0;
  double eta = 0.0;         // max(lambda_max - 1, 1 - lambda_min)
  double lambda_min = 0.0;  // extreme eigenvalues of the discrete Gram matrix
  double lambda_max = 0.0;
  int exact_to = -1;        // largest d <= 2n+1 integrated exactly; -1 if none
  double mesh_norm = 0.0;   // radians, probe estimate
  double degree_bound = 0.0;  // eta / (2 mesh_norm), raw ratio

  bool mz_holds() const { return eta < 1.0; }
  std::string status() const;
};

struct MZOptions {
  double exactness_tolerance = 1e-9;
  /// Probe size for the mesh norm; 0 picks max(100 m, 20000). Negative skips it.
  long long probe_points = 0;
  std::uint64_t probe_seed = 2024;
};

/// G_{ii'} = sum_j w_j Y_i(x_j) Y_{i'}(x_j), (n+1)^2 square.
Eigen::MatrixXd gram_matrix(const QuadratureRule& rule, int n);

/// Smallest eta with (1-eta)|c|^2 <= c^T G c <= (1+eta)|c|^2, from the spectrum of G.
MZReport mz_constant(const QuadratureRule& rule, int n, const MZOptions& opts = {});

/// Only the eta part of mz_constant (no exactness scan, no mesh norm).
double mz_eta(const QuadratureRule& rule, int n);

/// max over l <= d and k of |sum_j w_j Y_{l,k}(x_j) - sqrt(4 pi) [l = 0]|.
double quadrature_error_on_harmonics(const QuadratureRule& rule, int d);

}  // namespace sphnys
