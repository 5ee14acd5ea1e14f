#include "cvlqr/riccati.hpp"

#include <cmath>
#include <sstream>

#include "cvlqr/errors.hpp"
#include "linalg.hpp"

namespace cvlqr {

using detail::checked_inverse;
using detail::hermitian_part;

void SolverOptions::validate() const {
  if (!(tol > 0.0)) throw Error("solver tolerance must be positive");
  if (max_iter < 1) throw Error("max_iter must be at least 1");
  if (min_iter < 0 || min_iter > max_iter) {
    throw Error("min_iter must lie in [0, max_iter]");
  }
  if (divergence_bound && !(*divergence_bound > 0.0)) {
    throw Error("divergence bound must be positive");
  }
}

namespace {

double frobenius_p1(const Bimatrix& x) { return x.m1().norm(); }

// Runs P(k+1) = step(P(k)) from p0 until the relative step drops below tol.
template <typename Step, typename Norm>
RiccatiSolution fixed_point(const HermitianBimatrix& p0, Step step, Norm norm,
                            const SolverOptions& opts, const char* name) {
  opts.validate();
  const double bound = opts.divergence_bound.value_or(1e12 * norm(p0));

  RiccatiSolution sol;
  HermitianBimatrix p = p0;
  if (opts.record_iterates) sol.iterates.push_back(p);

  for (int k = 0;; ++k) {
    if (k >= opts.max_iter) {
      std::ostringstream os;
      os << name << ": no convergence after " << k << " iterations";
      throw NotConvergent(os.str(), k);
    }
    Bimatrix raw;
    try {
      raw = step(p);
    } catch (const SingularBimatrix& e) {
      // Iterates increase from a positive definite start, so an inverse only
      // becomes numerically singular once P has grown out of double range
      // relative to its smallest eigenvalue.
      if (norm(p) <= 1e6 * norm(p0)) throw;
      std::ostringstream os;
      os << name << ": iterate norm " << norm(p) << " at iteration " << k
         << " is too ill-conditioned to continue (" << e.what()
         << "); the system is not stabilizable";
      throw Diverged(os.str(), k);
    }
    const double next_norm = norm(raw);
    if (!std::isfinite(next_norm) || next_norm > bound) {
      std::ostringstream os;
      os << name << ": iterate norm " << next_norm << " exceeded bound "
         << bound << " at iteration " << k + 1
         << "; the system is not stabilizable";
      throw Diverged(os.str(), k + 1);
    }
    HermitianBimatrix next(raw);
    const double diff = norm(next.bimatrix() - p.bimatrix());
    if (opts.record_trace) {
      sol.trace.push_back({k, diff, next_norm > 0.0 ? diff / next_norm : 0.0,
                           next.structure_correction()});
    }
    p = std::move(next);
    sol.iterations = k + 1;
    if (opts.record_iterates) sol.iterates.push_back(p);
    if (diff <= opts.tol * next_norm && sol.iterations >= opts.min_iter) break;
  }
  sol.p = std::move(p);
  return sol;
}

void check_system_weights(Eigen::Index n, Eigen::Index m, const CostWeights& w) {
  if (w.q().rows() != n || w.r().rows() != m) {
    std::ostringstream os;
    os << "weights Q " << w.q().rows() << "x" << w.q().cols() << ", R "
       << w.r().rows() << "x" << w.r().cols() << " do not match " << n
       << " states and " << m << " inputs";
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

// Bimatrix Riccati -----------------------------------------------------------

HermitianBimatrix input_gramian(const ComplexLinearSystem& sys,
                                const CostWeights& w) {
  check_conformance(sys, w);
  const Bimatrix r_inv = Bimatrix::Linear(checked_inverse(w.r(), "R"));
  return HermitianBimatrix(sys.b() * r_inv * conj_transpose(sys.b()));
}

Bimatrix riccati_step(const HermitianBimatrix& p, const ComplexLinearSystem& sys,
                      const CostWeights& w, const HermitianBimatrix& gramian) {
  const Bimatrix inner = inverse(inverse(p) + gramian.bimatrix());
  return Bimatrix::Linear(w.q()) + conj_transpose(sys.a()) * inner * sys.a();
}

Bimatrix riccati_step_gain_form(const HermitianBimatrix& p,
                                const ComplexLinearSystem& sys,
                                const CostWeights& w) {
  check_conformance(sys, w);
  const Bimatrix a_h = conj_transpose(sys.a());
  const Bimatrix b_h = conj_transpose(sys.b());
  const Bimatrix pa = p.bimatrix() * sys.a();
  const Bimatrix s = Bimatrix::Linear(w.r()) + b_h * p.bimatrix() * sys.b();
  return Bimatrix::Linear(w.q()) + a_h * pa -
         a_h * p.bimatrix() * sys.b() * inverse(s) * b_h * pa;
}

RiccatiSolution solve_bimatrix_riccati(const ComplexLinearSystem& sys,
                                       const CostWeights& w,
                                       const SolverOptions& opts) {
  check_conformance(sys, w);
  const HermitianBimatrix gramian = input_gramian(sys, w);
  const HermitianBimatrix p0 = HermitianBimatrix::Linear(w.q());
  RiccatiSolution sol = fixed_point(
      p0,
      [&](const HermitianBimatrix& p) {
        return riccati_step(p, sys, w, gramian);
      },
      [](const Bimatrix& x) { return bnorm(x); }, opts,
      "bimatrix Riccati iteration");
  sol.gramian = gramian;
  sol.s = HermitianBimatrix(Bimatrix::Linear(w.r()) +
                            conj_transpose(sys.b()) * sol.p.bimatrix() *
                                sys.b());
  sol.residual = bimatrix_riccati_residual(sol.p, sys, w);
  return sol;
}

double bimatrix_riccati_residual(const HermitianBimatrix& p,
                                 const ComplexLinearSystem& sys,
                                 const CostWeights& w) {
  check_conformance(sys, w);
  if (p.dim() != sys.states()) {
    throw DimensionMismatch("residual: P does not match the state dimension");
  }
  const HermitianBimatrix gramian = input_gramian(sys, w);
  return bnorm(riccati_step(p, sys, w, gramian) - p.bimatrix());
}

// Anti-Riccati ---------------------------------------------------------------

CMatrix anti_riccati_step(const CMatrix& p_a, const AntilinearSystem& sys,
                          const CostWeights& w) {
  const CMatrix& a2 = sys.a2();
  const CMatrix& b2 = sys.b2();
  const CMatrix gramian =
      b2 * checked_inverse(w.r(), "R") * b2.adjoint();
  const CMatrix inner = checked_inverse(
      CMatrix(checked_inverse(CMatrix(p_a.conjugate()), "conj(P_A)") + gramian),
      "anti-Riccati inner matrix");
  return w.q() + a2.adjoint() * inner * a2;
}

RiccatiSolution solve_anti_riccati(const AntilinearSystem& sys,
                                   const CostWeights& w,
                                   const SolverOptions& opts) {
  check_system_weights(sys.states(), sys.inputs(), w);
  const HermitianBimatrix p0 = HermitianBimatrix::Linear(w.q());
  RiccatiSolution sol = fixed_point(
      p0,
      [&](const HermitianBimatrix& p) {
        return Bimatrix::Linear(anti_riccati_step(p.p1(), sys, w));
      },
      frobenius_p1, opts, "anti-Riccati iteration");
  const CMatrix& b2 = sys.b2();
  const CMatrix pc = sol.p.p1().conjugate();
  sol.s = HermitianBimatrix::Linear(w.r() + b2.adjoint() * pc * b2);
  sol.gramian = HermitianBimatrix::Linear(
      b2 * checked_inverse(w.r(), "R") * b2.adjoint());
  sol.residual = anti_riccati_residual(sol.p.p1(), sys, w);
  return sol;
}

double anti_riccati_residual(const CMatrix& p_a, const AntilinearSystem& sys,
                             const CostWeights& w) {
  check_system_weights(sys.states(), sys.inputs(), w);
  if (p_a.rows() != sys.states() || p_a.cols() != sys.states()) {
    throw DimensionMismatch("anti-Riccati residual: P_A has wrong shape");
  }
  const CMatrix& a2 = sys.a2();
  const CMatrix& b2 = sys.b2();
  const CMatrix pc = p_a.conjugate();
  const CMatrix inner = checked_inverse(
      CMatrix(w.r() + b2.adjoint() * pc * b2), "R + B2^H conj(P_A) B2");
  const CMatrix defect = a2.adjoint() * pc * a2 -
                         a2.adjoint() * pc * b2 * inner * b2.adjoint() * pc * a2 -
                         p_a + w.q();
  return defect.norm();
}

// Normal Riccati -------------------------------------------------------------

NormalData build_normal_data(const AntilinearSystem& sys, const CostWeights& w) {
  check_system_weights(sys.states(), sys.inputs(), w);
  const Eigen::Index n = sys.states();
  const Eigen::Index m = sys.inputs();
  const CMatrix& a2 = sys.a2();
  const CMatrix& b2 = sys.b2();
  const CMatrix qc = w.q().conjugate();
  const CMatrix r_hat = w.r() + b2.adjoint() * qc * b2;

  NormalData nd;
  nd.a_n = a2.conjugate() *
           (CMatrix::Identity(n, n) -
            b2 * checked_inverse(r_hat, "R + B2^H conj(Q) B2") * b2.adjoint() *
                qc) *
           a2;
  nd.b_n.resize(n, 2 * m);
  nd.b_n << b2.conjugate(), a2.conjugate() * b2;
  const CMatrix inner = checked_inverse(
      CMatrix(checked_inverse(qc, "conj(Q)") +
              b2 * checked_inverse(w.r(), "R") * b2.adjoint()),
      "conj(Q)^-1 + B2 R^-1 B2^H");
  nd.q_n = hermitian_part(CMatrix(w.q() + a2.adjoint() * inner * a2));
  nd.r_n = CMatrix::Zero(2 * m, 2 * m);
  nd.r_n.topLeftCorner(m, m) = w.r().conjugate();
  nd.r_n.bottomRightCorner(m, m) = hermitian_part(r_hat);
  return nd;
}

CMatrix normal_riccati_step(const CMatrix& p_n, const NormalData& nd) {
  const CMatrix gramian =
      nd.b_n * checked_inverse(nd.r_n, "R_N") * nd.b_n.adjoint();
  const CMatrix inner = checked_inverse(
      CMatrix(checked_inverse(p_n, "P_N") + gramian), "normal inner matrix");
  return nd.q_n + nd.a_n.adjoint() * inner * nd.a_n;
}

RiccatiSolution solve_normal_riccati(const NormalData& nd,
                                     const SolverOptions& opts) {
  const Eigen::Index n = nd.a_n.rows();
  if (nd.a_n.cols() != n || nd.b_n.rows() != n || nd.q_n.rows() != n ||
      nd.q_n.cols() != n || nd.r_n.rows() != nd.b_n.cols() ||
      nd.r_n.cols() != nd.b_n.cols()) {
    throw DimensionMismatch("normal Riccati data has inconsistent shapes");
  }
  if (!detail::is_hermitian_pd(nd.q_n) || !detail::is_hermitian_pd(nd.r_n)) {
    throw InvalidWeights("Q_N and R_N must be Hermitian positive definite");
  }
  const HermitianBimatrix p0 = HermitianBimatrix::Linear(nd.q_n);
  RiccatiSolution sol = fixed_point(
      p0,
      [&](const HermitianBimatrix& p) {
        return Bimatrix::Linear(normal_riccati_step(p.p1(), nd));
      },
      frobenius_p1, opts, "normal Riccati iteration");
  const CMatrix& pn = sol.p.p1();
  sol.s = HermitianBimatrix::Linear(nd.r_n + nd.b_n.adjoint() * pn * nd.b_n);
  sol.gramian = HermitianBimatrix::Linear(
      nd.b_n * checked_inverse(nd.r_n, "R_N") * nd.b_n.adjoint());
  sol.residual = normal_riccati_residual(pn, nd);
  return sol;
}

double normal_riccati_residual(const CMatrix& p_n, const NormalData& nd) {
  if (p_n.rows() != nd.a_n.rows() || p_n.cols() != nd.a_n.rows()) {
    throw DimensionMismatch("normal residual: P_N has wrong shape");
  }
  const CMatrix& a = nd.a_n;
  const CMatrix& b = nd.b_n;
  const CMatrix inner =
      checked_inverse(CMatrix(nd.r_n + b.adjoint() * p_n * b), "R_N + B^H P B");
  const CMatrix defect = a.adjoint() * p_n * a - p_n -
                         a.adjoint() * p_n * b * inner * b.adjoint() * p_n * a +
                         nd.q_n;
  return defect.norm();
}

// Nonlinear matrix equation ---------------------------------------------------

NmeTransform nme_transform(const AntilinearSystem& sys, const CostWeights& w,
                           const CMatrix& p_a) {
  check_system_weights(sys.states(), sys.inputs(), w);
  const Eigen::Index n = sys.states();
  if (p_a.rows() != n || p_a.cols() != n) {
    throw DimensionMismatch("nme_transform: P_A has wrong shape");
  }
  if (!detail::is_hermitian_pd(p_a)) {
    throw NotPositiveDefinite("nme_transform: P_A is not positive definite");
  }
  const CMatrix& a2 = sys.a2();
  const CMatrix& b2 = sys.b2();
  const CMatrix q_inv = checked_inverse(w.q(), "Q");
  const CMatrix state_term = (a2 * q_inv * a2.adjoint()).conjugate();
  const CMatrix input_term =
      (b2 * checked_inverse(w.r(), "R") * b2.adjoint()).conjugate();

  NmeTransform out;
  out.q0 = hermitian_part(CMatrix(q_inv + state_term + input_term));
  const CMatrix q0_isqrt = detail::hermitian_power(out.q0, -0.5, "Q0");
  out.a = q0_isqrt.conjugate() * a2 * q_inv * q0_isqrt;
  out.x = hermitian_part(CMatrix(
      q0_isqrt *
      (checked_inverse(p_a, "P_A") + state_term + input_term) * q0_isqrt));
  if (!detail::is_hermitian_pd(out.x)) {
    throw NotPositiveDefinite("nme_transform: X is not positive definite");
  }
  const CMatrix lhs =
      out.x +
      out.a.adjoint() * checked_inverse(CMatrix(out.x.conjugate()), "conj(X)") *
          out.a;
  out.residual = (lhs - CMatrix::Identity(n, n)).norm();
  return out;
}

IterationCounts compare_iteration_counts(const AntilinearSystem& sys,
                                         const CostWeights& w,
                                         const SolverOptions& opts) {
  SolverOptions plain = opts;
  plain.record_trace = false;
  plain.record_iterates = false;
  IterationCounts counts;
  counts.anti_iters = solve_anti_riccati(sys, w, plain).iterations;
  counts.normal_iters =
      solve_normal_riccati(build_normal_data(sys, w), plain).iterations;
  return counts;
}

}  // namespace cvlqr
