#include "cvlqr/stabilizability.hpp"

namespace cvlqr {

namespace {

Eigen::Index numerical_rank(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double threshold = kRankTol * sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return rank;
}

// PBH test of the pair (a, b): the rank of [lambda I - a, b] can only drop at
// eigenvalues of a, so only those on or outside the unit circle are checked.
StabilizabilityReport pbh(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index n = a.rows();
  Eigen::ComplexEigenSolver<CMatrix> es(a, false);
  StabilizabilityReport report;
  CMatrix pencil(n, n + b.cols());
  pencil.rightCols(b.cols()) = b;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex lambda = es.eigenvalues()(i);
    if (std::abs(lambda) < 1.0 - kBoundaryTol) continue;
    pencil.leftCols(n) = lambda * CMatrix::Identity(n, n) - a;
    if (numerical_rank(pencil) < n) {
      report.stabilizable = false;
      report.offending_eigenvalue = lambda;
      return report;
    }
  }
  return report;
}

}  // namespace

StabilizabilityReport check_stabilizable_complex(
    const ComplexLinearSystem& sys) {
  return pbh(embed(sys.a()), embed(sys.b()));
}

bool is_stabilizable_complex(const ComplexLinearSystem& sys) {
  return check_stabilizable_complex(sys).stabilizable;
}

StabilizabilityReport check_stabilizable_antilinear(
    const AntilinearSystem& sys) {
  const CMatrix& a2 = sys.a2();
  const CMatrix& b2 = sys.b2();
  CMatrix inputs(b2.rows(), 2 * b2.cols());
  inputs << b2, a2 * b2.conjugate();
  return pbh(a2 * a2.conjugate(), inputs);
}

bool is_stabilizable_antilinear(const AntilinearSystem& sys) {
  return check_stabilizable_antilinear(sys).stabilizable;
}

}  // namespace cvlqr
