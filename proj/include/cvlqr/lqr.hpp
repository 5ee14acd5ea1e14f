#pragma once

#include <vector>

#include "cvlqr/riccati.hpp"

namespace cvlqr {

/// -S^-1 B^H P A with S = {R, 0} + B^H P B.
FeedbackGain optimal_gain(const ComplexLinearSystem& sys, const CostWeights& w,
                          const HermitianBimatrix& p);

struct ComplexLqr {
  FeedbackGain gain;
  RiccatiSolution sol;

  /// Minimal cost Re(x0^H {P1,P2} x0).
  double jmin(const CVector& x0) const { return quadratic_form(sol.p, x0); }
};

ComplexLqr lqr_complex(const ComplexLinearSystem& sys, const CostWeights& w,
                       const SolverOptions& opts = {});

/// Optimal normal feedback u = K1 x for an antilinear system.
struct AntilinearLqr {
  CMatrix k1;
  RiccatiSolution sol;

  FeedbackGain gain() const { return {Bimatrix::Linear(k1)}; }
  /// x0^H P x0 with P the solver's solution matrix.
  double jmin(const CVector& x0) const;
};

/// -(R + B2^H conj(P_A) B2)^-1 B2^H conj(P_A) A2.
CMatrix anti_riccati_gain(const AntilinearSystem& sys, const CostWeights& w,
                          const CMatrix& p_a);

/// Gain recovered from the normal Riccati solution P_N.
CMatrix normal_riccati_gain(const AntilinearSystem& sys, const CostWeights& w,
                            const NormalData& nd, const CMatrix& p_n);

AntilinearLqr lqr_antilinear_anti(const AntilinearSystem& sys,
                                  const CostWeights& w,
                                  const SolverOptions& opts = {});

AntilinearLqr lqr_antilinear_normal(const AntilinearSystem& sys,
                                    const CostWeights& w,
                                    const SolverOptions& opts = {});

/// Pairwise discrepancies between the bimatrix, anti-Riccati and normal
/// Riccati pipelines on one antilinear system. Matrix differences are
/// Frobenius norms; Jmin differences are maxima over the probe states.
struct CrossValidationReport {
  ComplexLqr bimatrix;
  AntilinearLqr anti;
  AntilinearLqr normal;

  double p_bimatrix_anti = 0.0;
  double p_bimatrix_normal = 0.0;
  double p_anti_normal = 0.0;
  /// Frobenius norm of P2 from the bimatrix route; zero in exact arithmetic.
  double p2_norm = 0.0;
  double gain_bimatrix_anti = 0.0;
  double gain_bimatrix_normal = 0.0;
  double gain_anti_normal = 0.0;
  /// Frobenius norm of K2 from the bimatrix route.
  double k2_norm = 0.0;
  double jmin_bimatrix_anti = 0.0;
  double jmin_bimatrix_normal = 0.0;
  double jmin_anti_normal = 0.0;

  /// Largest P discrepancy (including P2) relative to the norm of P1.
  double max_relative_p_discrepancy() const;
  /// Largest gain discrepancy (including K2) relative to max(1, |K1|).
  double max_relative_gain_discrepancy() const;
};

/// Probe states are the unit vectors, the all-(1+j) vector and any extra
/// states supplied by the caller.
CrossValidationReport cross_validate_antilinear(
    const AntilinearSystem& sys, const CostWeights& w,
    const SolverOptions& opts = {}, const std::vector<CVector>& probes = {});

}  // namespace cvlqr
