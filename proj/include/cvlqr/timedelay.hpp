#pragma once

#include <vector>

#include "cvlqr/lqr.hpp"

namespace cvlqr {

/// xi(k+1) = A0 xi(k) + Ad xi(k-1) + G v(k) with cost
/// sum_k xi^T Q0 xi + v^T R0 v. All matrices are real.
struct DelaySystem {
  RMatrix a0;  // n x n
  RMatrix ad;  // n x n
  RMatrix g;   // n x p
  RMatrix q0;  // n x n, symmetric positive definite
  RMatrix r0;  // p x p, symmetric positive definite

  Eigen::Index states() const { return a0.rows(); }
  Eigen::Index inputs() const { return g.cols(); }

  /// Throws DimensionMismatch or InvalidWeights.
  void validate() const;
};

/// xi(0) and xi(-1).
struct DelayInitialCondition {
  RVector xi0;
  RVector xim1;
};

/// v(k) = F [xi(k); xi(k-1)], F is p x 2n.
struct RealFeedback {
  RMatrix f;
};

/// Even-input form: a zero column is appended to G and R0 is extended with
/// a unit diagonal entry when p is odd. Returns ds unchanged otherwise.
DelaySystem pad_odd_input(const DelaySystem& ds);

struct WeightNormalization {
  /// Input change v = L0 v_hat.
  RMatrix l0;
  /// R01; L0^T R0 L0 = diag(R01, R01).
  RMatrix r;
};

/// Block-diagonalizes an even-sized SPD input weight. Throws
/// NotPositiveDefinite when r0 (or its Schur complement) is not SPD and
/// DimensionMismatch when r0 is not square of even size.
WeightNormalization normalize_input_weight(const RMatrix& r0);

struct LiftedProblem {
  ComplexLinearSystem sys;
  CostWeights weights;
};

/// Complex-valued form under x(k) = xi(k) + j xi(k-1), u(k) = v1(k) + j v2(k).
/// Requires an even input count and R0 = diag(R, R); the weights become
/// Q = Q0 / 2 and R.
LiftedProblem to_complex_system(const DelaySystem& ds);

/// xi(0) + j xi(-1).
CVector lift_state(const DelayInitialCondition& ic);

/// Real feedback equivalent to u = {K1, K2} x on the lifted system:
/// [[Re(K1+K2), -Im(K1+K2)], [Im(K1-K2), Re(K1-K2)]].
RealFeedback realize_gain(const FeedbackGain& gain);

struct PreparedDelay {
  LiftedProblem lifted;
  /// Input change on the padded input.
  RMatrix l0;
  bool padded = false;
};

/// pad -> normalize -> lift, without solving.
PreparedDelay prepare_delay_problem(const DelaySystem& ds);

struct DelayLqr {
  /// Feedback on the original (unpadded, unnormalized) input v.
  RealFeedback feedback;
  /// Feedback on the padded input before truncation to the original rows.
  RealFeedback padded_feedback;
  ComplexLqr lqr;
  LiftedProblem lifted;
  RMatrix l0;
  bool padded = false;
  /// Weight matrix Q = Q0 / 2 of the lifted problem.
  RMatrix q_half;

  /// Optimal delay-system cost: Re(x0^H P x0) - xi(-1)^T Q xi(-1).
  double jmin(const DelayInitialCondition& ic) const;
  /// Optimal lifted cost Re(x0^H P x0).
  double jmin_lifted(const DelayInitialCondition& ic) const;
};

/// pad -> normalize -> lift -> bimatrix LQR -> realize.
DelayLqr solve_delay_lqr(const DelaySystem& ds, const SolverOptions& opts = {});

struct DelayTrajectory {
  std::vector<RVector> states;  // xi(0) .. xi(horizon)
  std::vector<RVector> inputs;  // v(0) .. v(horizon - 1)
  RVector xim1;
  /// sum over k in [0, horizon) of xi^T Q0 xi + v^T R0 v.
  double cost = 0.0;
};

DelayTrajectory simulate_delay(const DelaySystem& ds, const RealFeedback& f,
                               const DelayInitialCondition& ic, int horizon);

/// The delay recursion driven by a prescribed input sequence.
DelayTrajectory simulate_delay_open_loop(const DelaySystem& ds,
                                         const DelayInitialCondition& ic,
                                         const std::vector<RVector>& inputs);

/// Closed-loop delay cost with the horizon extended as in cost_adaptive.
AdaptiveCost delay_cost_adaptive(const DelaySystem& ds, const RealFeedback& f,
                                 const DelayInitialCondition& ic,
                                 double rel_tol = 1e-9, int max_steps = 100000);

}  // namespace cvlqr
