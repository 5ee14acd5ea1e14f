#include "cvlqr/timedelay.hpp"

#include <sstream>

#include "cvlqr/errors.hpp"
#include "linalg.hpp"

namespace cvlqr {

namespace {

void require_shape(const RMatrix& m, Eigen::Index rows, Eigen::Index cols,
                   const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << name << " is " << m.rows() << "x" << m.cols() << ", expected "
       << rows << "x" << cols;
    throw DimensionMismatch(os.str());
  }
}

void require_spd(const RMatrix& m, const char* name) {
  if (!detail::is_hermitian_pd(m)) {
    throw InvalidWeights(std::string(name) +
                         " must be symmetric positive definite");
  }
}

void check_initial_condition(const DelaySystem& ds,
                             const DelayInitialCondition& ic) {
  if (ic.xi0.size() != ds.states() || ic.xim1.size() != ds.states()) {
    throw DimensionMismatch("initial condition does not match " +
                            std::to_string(ds.states()) + " states");
  }
}

double stage_cost(const DelaySystem& ds, const RVector& xi, const RVector& v) {
  return xi.dot(ds.q0 * xi) + v.dot(ds.r0 * v);
}

RVector delay_step(const DelaySystem& ds, const RVector& xi,
                   const RVector& xi_prev, const RVector& v) {
  return ds.a0 * xi + ds.ad * xi_prev + ds.g * v;
}

RVector stacked(const RVector& xi, const RVector& xi_prev) {
  RVector z(xi.size() + xi_prev.size());
  z << xi, xi_prev;
  return z;
}

}  // namespace

void DelaySystem::validate() const {
  const Eigen::Index n = a0.rows();
  if (n < 1) throw DimensionMismatch("A0 must be nonempty");
  require_shape(a0, n, n, "A0");
  require_shape(ad, n, n, "Ad");
  if (g.rows() != n || g.cols() < 1) {
    std::ostringstream os;
    os << "G is " << g.rows() << "x" << g.cols() << ", expected " << n
       << " rows and at least one column";
    throw DimensionMismatch(os.str());
  }
  require_shape(q0, n, n, "Q0");
  require_shape(r0, g.cols(), g.cols(), "R0");
  require_spd(q0, "Q0");
  require_spd(r0, "R0");
}

DelaySystem pad_odd_input(const DelaySystem& ds) {
  ds.validate();
  const Eigen::Index p = ds.inputs();
  if (p % 2 == 0) return ds;
  DelaySystem out = ds;
  out.g = RMatrix::Zero(ds.states(), p + 1);
  out.g.leftCols(p) = ds.g;
  out.r0 = RMatrix::Zero(p + 1, p + 1);
  out.r0.topLeftCorner(p, p) = ds.r0;
  out.r0(p, p) = 1.0;
  return out;
}

WeightNormalization normalize_input_weight(const RMatrix& r0) {
  if (r0.rows() != r0.cols() || r0.rows() == 0 || r0.rows() % 2 != 0) {
    std::ostringstream os;
    os << "input weight must be square with even size, got " << r0.rows()
       << "x" << r0.cols();
    throw DimensionMismatch(os.str());
  }
  if (!detail::is_hermitian_pd(r0)) {
    throw NotPositiveDefinite("R0 is not symmetric positive definite");
  }
  const Eigen::Index m = r0.rows() / 2;
  const RMatrix r01 = r0.topLeftCorner(m, m);
  const RMatrix r02 = r0.topRightCorner(m, m);
  const RMatrix r03 = r0.bottomRightCorner(m, m);
  const RMatrix r01_inv = detail::checked_inverse(r01, "R01");
  const RMatrix schur = detail::hermitian_part(
      RMatrix(r03 - r02.transpose() * r01_inv * r02));
  const RMatrix lower = detail::hermitian_power(schur, -0.5, "Schur complement") *
                        detail::hermitian_power(r01, 0.5, "R01");

  WeightNormalization out;
  out.l0 = RMatrix::Identity(2 * m, 2 * m);
  out.l0.topRightCorner(m, m) = -r01_inv * r02 * lower;
  out.l0.bottomRightCorner(m, m) = lower;
  out.r = detail::hermitian_part(r01);
  return out;
}

LiftedProblem to_complex_system(const DelaySystem& ds) {
  ds.validate();
  const Eigen::Index n = ds.states();
  const Eigen::Index p = ds.inputs();
  if (p % 2 != 0) {
    throw DimensionMismatch("lifting needs an even number of inputs, got " +
                            std::to_string(p));
  }
  const Eigen::Index m = p / 2;
  const RMatrix r = ds.r0.topLeftCorner(m, m);
  const double scale = std::max(1.0, ds.r0.norm());
  if (ds.r0.topRightCorner(m, m).norm() > 1e-10 * scale ||
      (ds.r0.bottomRightCorner(m, m) - r).norm() > 1e-10 * scale) {
    throw InvalidWeights(
        "R0 must have the form diag(R, R); normalize the input weight first");
  }

  const CMatrix a0 = ds.a0.cast<Complex>();
  const CMatrix ad = ds.ad.cast<Complex>();
  const CMatrix eye = CMatrix::Identity(n, n);
  const CMatrix a1 = 0.5 * a0 + 0.5 * kJ * (eye - ad);
  const CMatrix a2 = 0.5 * a0 - 0.5 * kJ * (eye + ad);
  const CMatrix b = 0.5 * ds.g.leftCols(m).cast<Complex>() -
                    0.5 * kJ * ds.g.rightCols(m).cast<Complex>();
  return {ComplexLinearSystem(Bimatrix(a1, a2), Bimatrix(b, b)),
          CostWeights(0.5 * ds.q0.cast<Complex>(), r.cast<Complex>())};
}

CVector lift_state(const DelayInitialCondition& ic) {
  if (ic.xi0.size() != ic.xim1.size()) {
    throw DimensionMismatch("xi(0) and xi(-1) differ in length");
  }
  return ic.xi0.cast<Complex>() + kJ * ic.xim1.cast<Complex>();
}

RealFeedback realize_gain(const FeedbackGain& gain) {
  const CMatrix sum = gain.k.m1() + gain.k.m2();
  const CMatrix diff = gain.k.m1() - gain.k.m2();
  const Eigen::Index m = gain.k.rows();
  const Eigen::Index n = gain.k.cols();
  RealFeedback out;
  out.f.resize(2 * m, 2 * n);
  out.f << sum.real(), -sum.imag(), diff.imag(), diff.real();
  return out;
}

double DelayLqr::jmin_lifted(const DelayInitialCondition& ic) const {
  return lqr.jmin(lift_state(ic));
}

double DelayLqr::jmin(const DelayInitialCondition& ic) const {
  return jmin_lifted(ic) - ic.xim1.dot(q_half * ic.xim1);
}

PreparedDelay prepare_delay_problem(const DelaySystem& ds) {
  ds.validate();
  DelaySystem work = pad_odd_input(ds);
  const WeightNormalization norm = normalize_input_weight(work.r0);
  const Eigen::Index m = work.inputs() / 2;
  work.g = work.g * norm.l0;
  work.r0 = RMatrix::Zero(2 * m, 2 * m);
  work.r0.topLeftCorner(m, m) = norm.r;
  work.r0.bottomRightCorner(m, m) = norm.r;
  return {to_complex_system(work), norm.l0, work.inputs() != ds.inputs()};
}

DelayLqr solve_delay_lqr(const DelaySystem& ds, const SolverOptions& opts) {
  PreparedDelay prep = prepare_delay_problem(ds);
  ComplexLqr lqr = lqr_complex(prep.lifted.sys, prep.lifted.weights, opts);
  RealFeedback padded{prep.l0 * realize_gain(lqr.gain).f};
  RealFeedback feedback{padded.f.topRows(ds.inputs())};
  return {std::move(feedback), std::move(padded),     std::move(lqr),
          std::move(prep.lifted), prep.l0,            prep.padded,
          0.5 * ds.q0};
}

DelayTrajectory simulate_delay(const DelaySystem& ds, const RealFeedback& f,
                               const DelayInitialCondition& ic, int horizon) {
  ds.validate();
  check_initial_condition(ds, ic);
  require_shape(f.f, ds.inputs(), 2 * ds.states(), "feedback F");
  if (horizon < 0) throw Error("simulate_delay: negative horizon");
  DelayTrajectory traj;
  traj.xim1 = ic.xim1;
  traj.states.reserve(horizon + 1);
  traj.states.push_back(ic.xi0);
  RVector prev = ic.xim1;
  for (int k = 0; k < horizon; ++k) {
    const RVector& xi = traj.states.back();
    RVector v = f.f * stacked(xi, prev);
    traj.cost += stage_cost(ds, xi, v);
    RVector next = delay_step(ds, xi, prev, v);
    prev = xi;
    traj.inputs.push_back(std::move(v));
    traj.states.push_back(std::move(next));
  }
  return traj;
}

DelayTrajectory simulate_delay_open_loop(const DelaySystem& ds,
                                         const DelayInitialCondition& ic,
                                         const std::vector<RVector>& inputs) {
  ds.validate();
  check_initial_condition(ds, ic);
  DelayTrajectory traj;
  traj.xim1 = ic.xim1;
  traj.states.push_back(ic.xi0);
  RVector prev = ic.xim1;
  for (const RVector& v : inputs) {
    if (v.size() != ds.inputs()) {
      throw DimensionMismatch("input vector does not match G");
    }
    const RVector& xi = traj.states.back();
    traj.cost += stage_cost(ds, xi, v);
    RVector next = delay_step(ds, xi, prev, v);
    prev = xi;
    traj.inputs.push_back(v);
    traj.states.push_back(std::move(next));
  }
  return traj;
}

AdaptiveCost delay_cost_adaptive(const DelaySystem& ds, const RealFeedback& f,
                                 const DelayInitialCondition& ic,
                                 double rel_tol, int max_steps) {
  ds.validate();
  check_initial_condition(ds, ic);
  require_shape(f.f, ds.inputs(), 2 * ds.states(), "feedback F");
  AdaptiveCost out;
  RVector xi = ic.xi0;
  RVector prev = ic.xim1;
  double checkpoint_sum = 0.0;
  int next_checkpoint = 16;
  for (int k = 0; k < max_steps; ++k) {
    const RVector v = f.f * stacked(xi, prev);
    out.value += stage_cost(ds, xi, v);
    RVector next = delay_step(ds, xi, prev, v);
    prev = std::move(xi);
    xi = std::move(next);
    out.horizon = k + 1;
    if (out.horizon == next_checkpoint) {
      if (out.value - checkpoint_sum <= rel_tol * out.value) {
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
