#include "cvlqr/bimatrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvlqr/errors.hpp"

namespace cvlqr {

namespace {

std::string shape(Eigen::Index r, Eigen::Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

void require_same_shape(const Bimatrix& a, const Bimatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(op) + ": bimatrix shapes " +
                            shape(a.rows(), a.cols()) + " and " +
                            shape(b.rows(), b.cols()) + " differ");
  }
}

}  // namespace

Bimatrix::Bimatrix(CMatrix m1, CMatrix m2)
    : m1_(std::move(m1)), m2_(std::move(m2)) {
  if (m1_.rows() != m2_.rows() || m1_.cols() != m2_.cols()) {
    throw DimensionMismatch("bimatrix blocks have shapes " +
                            shape(m1_.rows(), m1_.cols()) + " and " +
                            shape(m2_.rows(), m2_.cols()));
  }
}

Bimatrix Bimatrix::Zero(Eigen::Index rows, Eigen::Index cols) {
  return {CMatrix::Zero(rows, cols), CMatrix::Zero(rows, cols)};
}

Bimatrix Bimatrix::Identity(Eigen::Index n) {
  return {CMatrix::Identity(n, n), CMatrix::Zero(n, n)};
}

Bimatrix Bimatrix::Linear(const CMatrix& m) {
  return {m, CMatrix::Zero(m.rows(), m.cols())};
}

Bimatrix Bimatrix::Antilinear(const CMatrix& m) {
  return {CMatrix::Zero(m.rows(), m.cols()), m};
}

Bimatrix& Bimatrix::operator+=(const Bimatrix& other) {
  require_same_shape(*this, other, "add");
  m1_ += other.m1_;
  m2_ += other.m2_;
  return *this;
}

Bimatrix& Bimatrix::operator-=(const Bimatrix& other) {
  require_same_shape(*this, other, "subtract");
  m1_ -= other.m1_;
  m2_ -= other.m2_;
  return *this;
}

Bimatrix& Bimatrix::operator*=(double s) {
  m1_ *= s;
  m2_ *= s;
  return *this;
}

Bimatrix operator+(Bimatrix a, const Bimatrix& b) { return a += b; }
Bimatrix operator-(Bimatrix a, const Bimatrix& b) { return a -= b; }
Bimatrix operator-(const Bimatrix& a) { return {-a.m1(), -a.m2()}; }
Bimatrix operator*(double s, Bimatrix a) { return a *= s; }

Bimatrix multiply(const Bimatrix& x, const Bimatrix& y) {
  if (x.cols() != y.rows()) {
    throw DimensionMismatch("multiply: inner dimensions " +
                            shape(x.rows(), x.cols()) + " * " +
                            shape(y.rows(), y.cols()));
  }
  CMatrix c1 = x.m1() * y.m1() + x.m2().conjugate() * y.m2();
  CMatrix c2 = x.m1().conjugate() * y.m2() + x.m2() * y.m1();
  return {std::move(c1), std::move(c2)};
}

Bimatrix operator*(const Bimatrix& x, const Bimatrix& y) {
  return multiply(x, y);
}

CMatrix embed(const Bimatrix& x) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  CMatrix e(2 * n, 2 * p);
  e.topLeftCorner(n, p) = x.m1();
  e.topRightCorner(n, p) = x.m2().conjugate();
  e.bottomLeftCorner(n, p) = x.m2();
  e.bottomRightCorner(n, p) = x.m1().conjugate();
  return e;
}

Bimatrix from_embedding(const CMatrix& e) {
  if (e.rows() % 2 != 0 || e.cols() % 2 != 0) {
    throw DimensionMismatch("from_embedding: odd shape " +
                            shape(e.rows(), e.cols()));
  }
  const Eigen::Index n = e.rows() / 2;
  const Eigen::Index p = e.cols() / 2;
  return {e.topLeftCorner(n, p), e.bottomLeftCorner(n, p)};
}

CVector apply(const Bimatrix& x, const CVector& v) {
  if (x.cols() != v.size()) {
    throw DimensionMismatch("apply: bimatrix " + shape(x.rows(), x.cols()) +
                            " on vector of length " +
                            std::to_string(v.size()));
  }
  return x.m1() * v + x.m2().conjugate() * v.conjugate();
}

Bimatrix conj_transpose(const Bimatrix& x) {
  return {x.m1().adjoint(), x.m2().transpose()};
}

Bimatrix inverse(const Bimatrix& x) {
  if (!x.is_square()) {
    throw DimensionMismatch("inverse: bimatrix is " +
                            shape(x.rows(), x.cols()));
  }
  if (x.rows() == 0) return x;
  const CMatrix e = embed(x);
  Eigen::JacobiSVD<CMatrix> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 1e-12 * smax)) {
    std::ostringstream os;
    os << "inverse: embedding is singular (sigma_min=" << smin
       << ", sigma_max=" << smax << ")";
    throw SingularBimatrix(os.str());
  }
  const CMatrix inv = svd.matrixV() * sv.cwiseInverse().asDiagonal() *
                      svd.matrixU().adjoint();
  return from_embedding(inv);
}

double bnorm(const Bimatrix& x) {
  return std::sqrt(2.0 * (x.m1().squaredNorm() + x.m2().squaredNorm()));
}

double structure_deviation(const Bimatrix& x) {
  if (!x.is_square()) {
    throw DimensionMismatch("structure_deviation: bimatrix is " +
                            shape(x.rows(), x.cols()));
  }
  const CMatrix d1 = 0.5 * (x.m1() - x.m1().adjoint());
  const CMatrix d2 = 0.5 * (x.m2() - x.m2().transpose());
  return bnorm(Bimatrix(d1, d2));
}

HermitianBimatrix HermitianBimatrix::project(const Bimatrix& x) {
  if (!x.is_square()) {
    throw DimensionMismatch("hermitian bimatrix must be square, got " +
                            shape(x.rows(), x.cols()));
  }
  HermitianBimatrix h;
  h.correction_ = structure_deviation(x);
  h.value_ = Bimatrix(0.5 * (x.m1() + x.m1().adjoint()),
                      0.5 * (x.m2() + x.m2().transpose()));
  return h;
}

HermitianBimatrix::HermitianBimatrix(const Bimatrix& x)
    : HermitianBimatrix(project(x)) {
  const double scale = std::max(1.0, bnorm(value_));
  if (correction_ > kStructureTol * scale) {
    std::ostringstream os;
    os << "bimatrix is not Hermitian: structural deviation " << correction_
       << " exceeds " << kStructureTol * scale;
    throw StructureViolation(os.str());
  }
}

HermitianBimatrix::HermitianBimatrix(const CMatrix& p1, const CMatrix& p2)
    : HermitianBimatrix(Bimatrix(p1, p2)) {}

HermitianBimatrix HermitianBimatrix::Linear(const CMatrix& p1) {
  return HermitianBimatrix(Bimatrix::Linear(p1));
}

double min_eigenvalue(const HermitianBimatrix& p) {
  if (p.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(embed(p), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_positive_definite(const HermitianBimatrix& p) {
  if (p.dim() == 0) return false;
  return min_eigenvalue(p) > 1e-10 * bnorm(p);
}

bool is_positive_definite(const Bimatrix& x) {
  return is_positive_definite(HermitianBimatrix(x));
}

bool psd_leq(const HermitianBimatrix& x, const HermitianBimatrix& y,
             double tol) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("psd_leq: dimensions " + std::to_string(x.dim()) +
                            " and " + std::to_string(y.dim()));
  }
  const double scale = std::max({1.0, bnorm(x), bnorm(y)});
  const HermitianBimatrix diff = HermitianBimatrix::project(y.bimatrix() -
                                                            x.bimatrix());
  return min_eigenvalue(diff) >= -tol * scale;
}

double quadratic_form(const HermitianBimatrix& p, const CVector& v) {
  if (p.dim() != v.size()) {
    throw DimensionMismatch("quadratic_form: bimatrix of dimension " +
                            std::to_string(p.dim()) + " on vector of length " +
                            std::to_string(v.size()));
  }
  const Complex linear = v.dot(p.p1() * v);
  const Complex anti = v.dot(p.p2().conjugate() * v.conjugate());
  return (linear + anti).real();
}

}  // namespace cvlqr
