#pragma once

#include <optional>
#include <vector>

#include "cvlqr/system.hpp"

namespace cvlqr {

struct SolverOptions {
  /// Stop once norm(P(k+1) - P(k)) < tol * norm(P(k+1)).
  double tol = 1e-12;
  int max_iter = 100000;
  /// Keep iterating until at least this many steps were taken, even when the
  /// step tolerance is met earlier.
  int min_iter = 0;
  /// Iterates with norm above this bound abort with Diverged. Defaults to
  /// 1e12 times the norm of the initial iterate.
  std::optional<double> divergence_bound;
  bool record_trace = false;
  /// Keep every iterate P(0), P(1), ... in the solution.
  bool record_iterates = false;

  /// Throws Error on tol <= 0, max_iter < 1, min_iter > max_iter or a
  /// nonpositive divergence bound.
  void validate() const;
};

struct TraceRow {
  int iteration = 0;
  /// Norm of the fixed-point defect F(P(k)) - P(k) at the iterate P(k).
  double residual = 0.0;
  /// residual / norm(P(k+1)).
  double step = 0.0;
  /// Structural deviation of the raw P(k+1) before re-symmetrization.
  double structure_deviation = 0.0;
};

struct RiccatiSolution {
  /// {P1, P2}; the single-matrix solvers store their solution in p1 and
  /// leave p2 zero.
  HermitianBimatrix p;
  /// {S1, S2} = {R, 0} + B^H P B (or the analogous inner matrix).
  HermitianBimatrix s;
  /// {R1, R2} = B {R, 0}^-1 B^H (or the analogous input Gramian).
  HermitianBimatrix gramian;
  int iterations = 0;
  /// Residual of the solver's own Riccati equation at p.
  double residual = 0.0;
  std::vector<TraceRow> trace;
  std::vector<HermitianBimatrix> iterates;
};

// Bimatrix Riccati equation -------------------------------------------------

/// {R1, R2} = B {R, 0}^-1 B^H.
HermitianBimatrix input_gramian(const ComplexLinearSystem& sys,
                                const CostWeights& w);

/// One step in the inverse form {Q,0} + A^H (P^-1 + {R1,R2})^-1 A. Returns
/// the raw, un-symmetrized iterate.
Bimatrix riccati_step(const HermitianBimatrix& p, const ComplexLinearSystem& sys,
                      const CostWeights& w, const HermitianBimatrix& gramian);

/// The same step written with the explicit gain term:
/// {Q,0} + A^H P A - A^H P B S^-1 B^H P A with S = {R,0} + B^H P B.
Bimatrix riccati_step_gain_form(const HermitianBimatrix& p,
                                const ComplexLinearSystem& sys,
                                const CostWeights& w);

/// Fixed-point iteration from {Q, 0}. Throws InvalidWeights, Diverged,
/// NotConvergent or DimensionMismatch.
RiccatiSolution solve_bimatrix_riccati(const ComplexLinearSystem& sys,
                                       const CostWeights& w,
                                       const SolverOptions& opts = {});

/// bnorm(A^H (p^-1 + {R1,R2})^-1 A + {Q,0} - p).
double bimatrix_riccati_residual(const HermitianBimatrix& p,
                                 const ComplexLinearSystem& sys,
                                 const CostWeights& w);

// Anti-Riccati equation ------------------------------------------------------

/// Q + A2^H (conj(P)^-1 + B2 R^-1 B2^H)^-1 A2.
CMatrix anti_riccati_step(const CMatrix& p_a, const AntilinearSystem& sys,
                          const CostWeights& w);

RiccatiSolution solve_anti_riccati(const AntilinearSystem& sys,
                                   const CostWeights& w,
                                   const SolverOptions& opts = {});

/// Frobenius norm of
/// A2^H P# A2 - A2^H P# B2 (R + B2^H P# B2)^-1 B2^H P# A2 - P + Q,
/// where P# = conj(p_a).
double anti_riccati_residual(const CMatrix& p_a, const AntilinearSystem& sys,
                             const CostWeights& w);

// Normal Riccati equation ----------------------------------------------------

/// Data of the standard discrete Riccati equation equivalent to the
/// antilinear LQR problem.
struct NormalData {
  CMatrix a_n;  // n x n
  CMatrix b_n;  // n x 2m
  CMatrix q_n;  // n x n
  CMatrix r_n;  // 2m x 2m
};

NormalData build_normal_data(const AntilinearSystem& sys, const CostWeights& w);

CMatrix normal_riccati_step(const CMatrix& p_n, const NormalData& nd);

RiccatiSolution solve_normal_riccati(const NormalData& nd,
                                     const SolverOptions& opts = {});

/// Frobenius norm of
/// A^H P A - P - A^H P B (R + B^H P B)^-1 B^H P A + Q for the normal data.
double normal_riccati_residual(const CMatrix& p_n, const NormalData& nd);

// Nonlinear matrix equation X + A^H conj(X)^-1 A = I -------------------------

struct NmeTransform {
  CMatrix q0;  // Q^-1 + conj(A2 Q^-1 A2^H) + conj(B2 R^-1 B2^H)
  CMatrix a;   // conj(Q0^-1/2) A2 Q^-1 Q0^-1/2
  CMatrix x;
  /// Frobenius norm of X + A^H conj(X)^-1 A - I.
  double residual = 0.0;
};

/// Maps a positive definite anti-Riccati solution to a positive definite
/// solution of the nonlinear matrix equation. Throws NotPositiveDefinite when
/// Q0 or X is not positive definite.
NmeTransform nme_transform(const AntilinearSystem& sys, const CostWeights& w,
                           const CMatrix& p_a);

struct IterationCounts {
  int anti_iters = 0;
  int normal_iters = 0;
};

/// Iteration counts of the anti-Riccati and normal Riccati iterations run to
/// the same tolerance.
IterationCounts compare_iteration_counts(const AntilinearSystem& sys,
                                         const CostWeights& w,
                                         const SolverOptions& opts = {});

}  // namespace cvlqr
