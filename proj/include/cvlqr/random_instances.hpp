#pragma once

#include <random>

#include "cvlqr/timedelay.hpp"

namespace cvlqr {

/// Seeded generators for test and benchmark instances. Output depends only
/// on the engine state.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : engine_(seed) {}

  double normal() { return dist_(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }
  CMatrix complex_matrix(Eigen::Index rows, Eigen::Index cols);
  RMatrix real_matrix(Eigen::Index rows, Eigen::Index cols);
  CVector complex_vector(Eigen::Index n);
  RVector real_vector(Eigen::Index n);
  /// X X^H + I for a random X.
  CMatrix hermitian_pd(Eigen::Index n);
  RMatrix symmetric_pd(Eigen::Index n);

  /// A2 with entries of variance scale^2 / n, so the open loop is unstable
  /// for scale above one roughly half the time.
  AntilinearSystem antilinear_system(Eigen::Index n, Eigen::Index m,
                                     double scale = 1.2);
  ComplexLinearSystem complex_system(Eigen::Index n, Eigen::Index m,
                                     double scale = 1.2);
  CostWeights weights(Eigen::Index n, Eigen::Index m);
  /// A0 and Ad scaled by `scale / sqrt(n)`.
  DelaySystem delay_system(Eigen::Index n, Eigen::Index p, double scale = 0.5);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace cvlqr
