#pragma once

#include <vector>

#include "cvlqr/bimatrix.hpp"

namespace cvlqr {

/// x(k+1) = A x(k) + B u(k) with bimatrix coefficients A (n x n) and B (n x m).
class ComplexLinearSystem {
 public:
  ComplexLinearSystem(Bimatrix a, Bimatrix b);

  const Bimatrix& a() const { return a_; }
  const Bimatrix& b() const { return b_; }
  Eigen::Index states() const { return a_.rows(); }
  Eigen::Index inputs() const { return b_.cols(); }

 private:
  Bimatrix a_;
  Bimatrix b_;
};

/// x(k+1) = conj(A2) conj(x(k)) + conj(B2) conj(u(k)).
class AntilinearSystem {
 public:
  AntilinearSystem(CMatrix a2, CMatrix b2);

  const CMatrix& a2() const { return a2_; }
  const CMatrix& b2() const { return b2_; }
  Eigen::Index states() const { return a2_.rows(); }
  Eigen::Index inputs() const { return b2_.cols(); }

  /// The same dynamics as a ComplexLinearSystem with A1 = 0, B1 = 0.
  ComplexLinearSystem lift() const;

 private:
  CMatrix a2_;
  CMatrix b2_;
};

/// Hermitian positive definite state and input weights. Construction throws
/// InvalidWeights otherwise.
class CostWeights {
 public:
  CostWeights(CMatrix q, CMatrix r);

  const CMatrix& q() const { return q_; }
  const CMatrix& r() const { return r_; }

 private:
  CMatrix q_;
  CMatrix r_;
};

/// u(k) = {K1, K2} x(k). K2 = 0 is ordinary linear feedback.
struct FeedbackGain {
  Bimatrix k;
};

struct Trajectory {
  std::vector<CVector> states;  // horizon + 1 entries
  std::vector<CVector> inputs;  // horizon entries
  int horizon() const { return static_cast<int>(inputs.size()); }
};

/// Throws DimensionMismatch unless w matches sys.
void check_conformance(const ComplexLinearSystem& sys, const CostWeights& w);

/// A + B K.
Bimatrix closed_loop(const ComplexLinearSystem& sys, const FeedbackGain& gain);

/// Largest eigenvalue modulus of embed(x). The closed loop x(k+1) = X x(k) is
/// asymptotically stable iff this is below one.
double spectral_radius(const Bimatrix& x);

Trajectory simulate(const ComplexLinearSystem& sys, const FeedbackGain& gain,
                    const CVector& x0, int horizon);

/// Sum over k in [0, horizon) of x^H Q x + u^H R u.
double cost_truncated(const Trajectory& traj, const CostWeights& w);

struct AdaptiveCost {
  double value = 0.0;
  int horizon = 0;
  bool converged = false;
};

/// Closed-loop infinite-horizon cost estimated by extending the horizon. The
/// sum is checked at power-of-two horizons and stops once the increment since
/// the previous checkpoint is below rel_tol times the running sum, or after
/// max_steps steps.
AdaptiveCost cost_adaptive(const ComplexLinearSystem& sys,
                           const FeedbackGain& gain, const CostWeights& w,
                           const CVector& x0, double rel_tol = 1e-9,
                           int max_steps = 100000);

}  // namespace cvlqr
