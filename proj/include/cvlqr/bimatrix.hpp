#pragma once

#include "cvlqr/types.hpp"

namespace cvlqr {

/// Ordered pair {M1, M2} of equally sized complex matrices acting on complex
/// vectors as the real-linear map x -> M1 x + conj(M2) conj(x).
///
/// Every algebraic operation is defined so that the canonical embedding
///
///     embed({M1, M2}) = [ M1  conj(M2) ]
///                       [ M2  conj(M1) ]
///
/// is a homomorphism; embed(X) acts on the stacked vector [x; conj(x)].
class Bimatrix {
 public:
  Bimatrix() = default;
  /// Throws DimensionMismatch when the two blocks differ in shape.
  Bimatrix(CMatrix m1, CMatrix m2);

  static Bimatrix Zero(Eigen::Index rows, Eigen::Index cols);
  static Bimatrix Identity(Eigen::Index n);
  /// {M, 0}: the ordinary complex-linear map.
  static Bimatrix Linear(const CMatrix& m);
  /// {0, M}: the map x -> conj(M) conj(x).
  static Bimatrix Antilinear(const CMatrix& m);

  const CMatrix& m1() const { return m1_; }
  const CMatrix& m2() const { return m2_; }
  Eigen::Index rows() const { return m1_.rows(); }
  Eigen::Index cols() const { return m1_.cols(); }
  bool is_square() const { return rows() == cols(); }

  Bimatrix& operator+=(const Bimatrix& other);
  Bimatrix& operator-=(const Bimatrix& other);
  Bimatrix& operator*=(double s);

 private:
  CMatrix m1_;
  CMatrix m2_;
};

Bimatrix operator+(Bimatrix a, const Bimatrix& b);
Bimatrix operator-(Bimatrix a, const Bimatrix& b);
Bimatrix operator-(const Bimatrix& a);
Bimatrix operator*(double s, Bimatrix a);
/// Composition: (X * Y) x = X (Y x).
Bimatrix operator*(const Bimatrix& x, const Bimatrix& y);

/// 2n x 2p complex embedding [[M1, conj(M2)], [M2, conj(M1)]].
CMatrix embed(const Bimatrix& x);

/// Recovers the bimatrix from a matrix of embedding shape. The off-diagonal
/// structure is not checked; the left block column is read.
Bimatrix from_embedding(const CMatrix& e);

/// M1 x + conj(M2) conj(x). Call it qualified: argument-dependent lookup on
/// std::complex also finds std::apply, which wins overload resolution.
CVector apply(const Bimatrix& x, const CVector& v);

Bimatrix multiply(const Bimatrix& x, const Bimatrix& y);

/// {M1^H, M2^T}; its embedding is embed(x)^H.
Bimatrix conj_transpose(const Bimatrix& x);

/// Inverse computed through the embedding. Throws SingularBimatrix when the
/// smallest singular value of embed(x) is below 1e-12 times the largest.
Bimatrix inverse(const Bimatrix& x);

/// Frobenius norm of the embedding, i.e. sqrt(2) times the Frobenius norm of
/// the stacked blocks.
double bnorm(const Bimatrix& x);

/// Bimatrix with {M1, M2} = {M1^H, M2^T}, i.e. a self-adjoint real-linear
/// operator. Instances are always structurally exact: the constructor
/// projects onto the structure and rejects inputs that are too far from it.
class HermitianBimatrix {
 public:
  /// Relative tolerance on the structural correction accepted by the
  /// constructor.
  static constexpr double kStructureTol = 1e-10;

  HermitianBimatrix() = default;
  /// Re-symmetrizes p1 <- (p1 + p1^H)/2 and p2 <- (p2 + p2^T)/2. Throws
  /// StructureViolation when the correction exceeds kStructureTol relative
  /// to max(1, bnorm(x)).
  explicit HermitianBimatrix(const Bimatrix& x);
  HermitianBimatrix(const CMatrix& p1, const CMatrix& p2);

  /// Projects without any tolerance check.
  static HermitianBimatrix project(const Bimatrix& x);
  static HermitianBimatrix Linear(const CMatrix& p1);

  const Bimatrix& bimatrix() const { return value_; }
  operator const Bimatrix&() const { return value_; }
  const CMatrix& p1() const { return value_.m1(); }
  const CMatrix& p2() const { return value_.m2(); }
  Eigen::Index dim() const { return value_.rows(); }

  /// Norm of the correction applied at construction, in bnorm units
  /// (absolute).
  double structure_correction() const { return correction_; }

 private:
  Bimatrix value_;
  double correction_ = 0.0;
};

/// Absolute deviation of x from Hermitian-bimatrix structure:
/// bnorm({(M1 - M1^H)/2, (M2 - M2^T)/2}).
double structure_deviation(const Bimatrix& x);

/// True iff embed(p) is Hermitian positive definite: its smallest eigenvalue
/// exceeds 1e-10 * bnorm(p).
bool is_positive_definite(const HermitianBimatrix& p);

/// Checked variant for a raw bimatrix; throws StructureViolation when x is
/// not a Hermitian bimatrix within tolerance.
bool is_positive_definite(const Bimatrix& x);

/// Smallest eigenvalue of the Hermitian matrix embed(p).
double min_eigenvalue(const HermitianBimatrix& p);

/// Loewner order x <= y: embed(y) - embed(x) is positive semidefinite with
/// smallest eigenvalue >= -tol * max(1, bnorm(x), bnorm(y)).
bool psd_leq(const HermitianBimatrix& x, const HermitianBimatrix& y,
             double tol = 1e-9);

/// Re(v^H P1 v + v^H conj(P2) conj(v)), equal to half of
/// [v; conj(v)]^H embed(p) [v; conj(v)].
double quadratic_form(const HermitianBimatrix& p, const CVector& v);

}  // namespace cvlqr
