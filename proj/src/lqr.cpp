#include "cvlqr/lqr.hpp"

#include <algorithm>
#include <cmath>

#include "cvlqr/errors.hpp"
#include "linalg.hpp"

namespace cvlqr {

using detail::checked_inverse;

FeedbackGain optimal_gain(const ComplexLinearSystem& sys, const CostWeights& w,
                          const HermitianBimatrix& p) {
  check_conformance(sys, w);
  const Bimatrix b_h = conj_transpose(sys.b());
  const Bimatrix s = Bimatrix::Linear(w.r()) + b_h * p.bimatrix() * sys.b();
  return {-(inverse(s) * b_h * p.bimatrix() * sys.a())};
}

ComplexLqr lqr_complex(const ComplexLinearSystem& sys, const CostWeights& w,
                       const SolverOptions& opts) {
  ComplexLqr out;
  out.sol = solve_bimatrix_riccati(sys, w, opts);
  out.gain = optimal_gain(sys, w, out.sol.p);
  return out;
}

double AntilinearLqr::jmin(const CVector& x0) const {
  if (x0.size() != sol.p.dim()) {
    throw DimensionMismatch("jmin: initial state has wrong length");
  }
  return x0.dot(sol.p.p1() * x0).real();
}

CMatrix anti_riccati_gain(const AntilinearSystem& sys, const CostWeights& w,
                          const CMatrix& p_a) {
  const CMatrix& b2 = sys.b2();
  const CMatrix pc = p_a.conjugate();
  const CMatrix s = w.r() + b2.adjoint() * pc * b2;
  return -checked_inverse(s, "R + B2^H conj(P_A) B2") * b2.adjoint() * pc *
         sys.a2();
}

CMatrix normal_riccati_gain(const AntilinearSystem& sys, const CostWeights& w,
                            const NormalData& nd, const CMatrix& p_n) {
  const Eigen::Index m = sys.inputs();
  const CMatrix& b2 = sys.b2();
  const CMatrix qc = w.q().conjugate();
  const CMatrix r_hat = w.r() + b2.adjoint() * qc * b2;
  const CMatrix direct =
      checked_inverse(r_hat, "R + B2^H conj(Q) B2") * b2.adjoint() * qc *
      sys.a2();
  const CMatrix s_n = nd.r_n + nd.b_n.adjoint() * p_n * nd.b_n;
  const CMatrix feedback = checked_inverse(s_n, "R_N + B_N^H P_N B_N") *
                           nd.b_n.adjoint() * p_n * nd.a_n;
  // [0 I_m] selects the lower block row.
  return -(direct + feedback.bottomRows(m));
}

AntilinearLqr lqr_antilinear_anti(const AntilinearSystem& sys,
                                  const CostWeights& w,
                                  const SolverOptions& opts) {
  AntilinearLqr out;
  out.sol = solve_anti_riccati(sys, w, opts);
  out.k1 = anti_riccati_gain(sys, w, out.sol.p.p1());
  return out;
}

AntilinearLqr lqr_antilinear_normal(const AntilinearSystem& sys,
                                    const CostWeights& w,
                                    const SolverOptions& opts) {
  const NormalData nd = build_normal_data(sys, w);
  AntilinearLqr out;
  out.sol = solve_normal_riccati(nd, opts);
  out.k1 = normal_riccati_gain(sys, w, nd, out.sol.p.p1());
  return out;
}

double CrossValidationReport::max_relative_p_discrepancy() const {
  const double scale = bimatrix.sol.p.p1().norm();
  return std::max({p_bimatrix_anti, p_bimatrix_normal, p_anti_normal,
                   p2_norm}) /
         scale;
}

double CrossValidationReport::max_relative_gain_discrepancy() const {
  const double scale = std::max(1.0, bimatrix.gain.k.m1().norm());
  return std::max({gain_bimatrix_anti, gain_bimatrix_normal, gain_anti_normal,
                   k2_norm}) /
         scale;
}

CrossValidationReport cross_validate_antilinear(
    const AntilinearSystem& sys, const CostWeights& w,
    const SolverOptions& opts, const std::vector<CVector>& probes) {
  CrossValidationReport rep;
  rep.bimatrix = lqr_complex(sys.lift(), w, opts);
  rep.anti = lqr_antilinear_anti(sys, w, opts);
  rep.normal = lqr_antilinear_normal(sys, w, opts);

  const CMatrix& p1 = rep.bimatrix.sol.p.p1();
  const CMatrix& pa = rep.anti.sol.p.p1();
  const CMatrix& pn = rep.normal.sol.p.p1();
  rep.p_bimatrix_anti = (p1 - pa).norm();
  rep.p_bimatrix_normal = (p1 - pn).norm();
  rep.p_anti_normal = (pa - pn).norm();
  rep.p2_norm = rep.bimatrix.sol.p.p2().norm();

  const CMatrix& k1 = rep.bimatrix.gain.k.m1();
  rep.gain_bimatrix_anti = (k1 - rep.anti.k1).norm();
  rep.gain_bimatrix_normal = (k1 - rep.normal.k1).norm();
  rep.gain_anti_normal = (rep.anti.k1 - rep.normal.k1).norm();
  rep.k2_norm = rep.bimatrix.gain.k.m2().norm();

  const Eigen::Index n = sys.states();
  std::vector<CVector> states;
  for (Eigen::Index i = 0; i < n; ++i) states.push_back(CVector::Unit(n, i));
  states.push_back(CVector::Constant(n, Complex(1.0, 1.0)));
  for (const CVector& v : probes) {
    if (v.size() != n) throw DimensionMismatch("probe state has wrong length");
    states.push_back(v);
  }
  for (const CVector& v : states) {
    const double jb = rep.bimatrix.jmin(v);
    const double ja = rep.anti.jmin(v);
    const double jn = rep.normal.jmin(v);
    rep.jmin_bimatrix_anti = std::max(rep.jmin_bimatrix_anti, std::abs(jb - ja));
    rep.jmin_bimatrix_normal =
        std::max(rep.jmin_bimatrix_normal, std::abs(jb - jn));
    rep.jmin_anti_normal = std::max(rep.jmin_anti_normal, std::abs(ja - jn));
  }
  return rep;
}

}  // namespace cvlqr
