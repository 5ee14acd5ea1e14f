#include "cvlqr/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvlqr/errors.hpp"

namespace cvlqr {

namespace {

void require_hermitian_pd(const CMatrix& m, const char* name) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << name << " must be a nonempty square matrix, got " << m.rows() << "x"
       << m.cols();
    throw InvalidWeights(os.str());
  }
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-10 * scale) {
    throw InvalidWeights(std::string(name) + " is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()),
                                            Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues()(0) > 1e-12 * scale)) {
    std::ostringstream os;
    os << name << " is not positive definite (smallest eigenvalue "
       << es.eigenvalues()(0) << ")";
    throw InvalidWeights(os.str());
  }
}

}  // namespace

ComplexLinearSystem::ComplexLinearSystem(Bimatrix a, Bimatrix b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (!a_.is_square() || a_.rows() < 1) {
    throw DimensionMismatch("state bimatrix A must be square and nonempty");
  }
  if (b_.rows() != a_.rows() || b_.cols() < 1) {
    std::ostringstream os;
    os << "input bimatrix B is " << b_.rows() << "x" << b_.cols()
       << ", expected " << a_.rows() << " rows and at least one column";
    throw DimensionMismatch(os.str());
  }
}

AntilinearSystem::AntilinearSystem(CMatrix a2, CMatrix b2)
    : a2_(std::move(a2)), b2_(std::move(b2)) {
  if (a2_.rows() != a2_.cols() || a2_.rows() < 1) {
    throw DimensionMismatch("A2 must be square and nonempty");
  }
  if (b2_.rows() != a2_.rows() || b2_.cols() < 1) {
    std::ostringstream os;
    os << "B2 is " << b2_.rows() << "x" << b2_.cols() << ", expected "
       << a2_.rows() << " rows and at least one column";
    throw DimensionMismatch(os.str());
  }
}

ComplexLinearSystem AntilinearSystem::lift() const {
  return {Bimatrix::Antilinear(a2_), Bimatrix::Antilinear(b2_)};
}

CostWeights::CostWeights(CMatrix q, CMatrix r)
    : q_(std::move(q)), r_(std::move(r)) {
  require_hermitian_pd(q_, "Q");
  require_hermitian_pd(r_, "R");
  q_ = 0.5 * (q_ + q_.adjoint()).eval();
  r_ = 0.5 * (r_ + r_.adjoint()).eval();
}

void check_conformance(const ComplexLinearSystem& sys, const CostWeights& w) {
  if (w.q().rows() != sys.states() || w.r().rows() != sys.inputs()) {
    std::ostringstream os;
    os << "weights Q " << w.q().rows() << "x" << w.q().cols() << ", R "
       << w.r().rows() << "x" << w.r().cols() << " do not match a system with "
       << sys.states() << " states and " << sys.inputs() << " inputs";
    throw DimensionMismatch(os.str());
  }
}

Bimatrix closed_loop(const ComplexLinearSystem& sys, const FeedbackGain& gain) {
  if (gain.k.rows() != sys.inputs() || gain.k.cols() != sys.states()) {
    std::ostringstream os;
    os << "gain is " << gain.k.rows() << "x" << gain.k.cols() << ", expected "
       << sys.inputs() << "x" << sys.states();
    throw DimensionMismatch(os.str());
  }
  return sys.a() + multiply(sys.b(), gain.k);
}

double spectral_radius(const Bimatrix& x) {
  if (!x.is_square()) throw DimensionMismatch("spectral_radius: not square");
  if (x.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<CMatrix> es(embed(x), false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Trajectory simulate(const ComplexLinearSystem& sys, const FeedbackGain& gain,
                    const CVector& x0, int horizon) {
  if (horizon < 0) throw Error("simulate: negative horizon");
  if (x0.size() != sys.states()) {
    throw DimensionMismatch("simulate: initial state has length " +
                            std::to_string(x0.size()) + ", expected " +
                            std::to_string(sys.states()));
  }
  closed_loop(sys, gain);  // dimension check
  Trajectory traj;
  traj.states.reserve(horizon + 1);
  traj.inputs.reserve(horizon);
  traj.states.push_back(x0);
  for (int k = 0; k < horizon; ++k) {
    const CVector& x = traj.states.back();
    CVector u = cvlqr::apply(gain.k, x);
    CVector next = cvlqr::apply(sys.a(), x) + cvlqr::apply(sys.b(), u);
    traj.inputs.push_back(std::move(u));
    traj.states.push_back(std::move(next));
  }
  return traj;
}

double cost_truncated(const Trajectory& traj, const CostWeights& w) {
  double sum = 0.0;
  for (int k = 0; k < traj.horizon(); ++k) {
    const CVector& x = traj.states[k];
    const CVector& u = traj.inputs[k];
    sum += x.dot(w.q() * x).real() + u.dot(w.r() * u).real();
  }
  return sum;
}

AdaptiveCost cost_adaptive(const ComplexLinearSystem& sys,
                           const FeedbackGain& gain, const CostWeights& w,
                           const CVector& x0, double rel_tol, int max_steps) {
  check_conformance(sys, w);
  const Bimatrix acl = closed_loop(sys, gain);
  if (x0.size() != sys.states()) {
    throw DimensionMismatch("cost_adaptive: initial state length mismatch");
  }
  AdaptiveCost out;
  CVector x = x0;
  double checkpoint_sum = 0.0;
  int next_checkpoint = 16;
  for (int k = 0; k < max_steps; ++k) {
    const CVector u = cvlqr::apply(gain.k, x);
    out.value += x.dot(w.q() * x).real() + u.dot(w.r() * u).real();
    x = cvlqr::apply(acl, x);
    out.horizon = k + 1;
    if (out.horizon == next_checkpoint) {
      const double increment = out.value - checkpoint_sum;
      if (increment <= rel_tol * out.value) {
        out.converged = true;
        break;
      }
      checkpoint_sum = out.value;
      next_checkpoint *= 2;
    }
  }
  return out;
}

}  // namespace cvlqr
