#ifndef RMATRIX_FACTORIZATION_HPP
#define RMATRIX_FACTORIZATION_HPP

#include <Eigen/Dense>

#include "rmatrix/liealg.hpp"

namespace rmatrix {

/// exp(t X) by scaling and squaring. Throws Overflow when ||tX|| exceeds
/// the bound (the result would be useless in double precision anyway).
Eigen::MatrixXd expm(const Eigen::MatrixXd& x, double t, double norm_bound = 50.0);

enum class SplitKind { QR, LDU };

/// Factors g = g_plus * g_minus^-1 for one of the two group splits.
struct GroupFactors {
  Eigen::MatrixXd g_plus;
  Eigen::MatrixXd g_minus;
  SplitKind kind = SplitKind::QR;
  double residual = 0.0;  ///< || g - g_plus g_minus^-1 ||_F
};

/// QR split: g = Q R with Q orthogonal and R upper triangular with positive
/// diagonal; returns g_plus = Q, g_minus = R^-1. Throws Singular.
GroupFactors factor_qr(const Eigen::MatrixXd& g);

/// Triangular split close to the identity: the unique g = W+ D W-^-1 with
/// W+ unit upper triangular, D diagonal with positive entries and W- unit
/// lower triangular, returned as g_plus = W+ Y, g_minus = W- Y^-1 with
/// Y = sqrt(D). Throws OutsideFactorisationDomain on a non-positive pivot.
GroupFactors factor_ldu(const Eigen::MatrixXd& g);

struct PropagationResult {
  AlgebraElement state;     ///< g_plus^-1 Lambda g_plus
  double path_gap = 0.0;    ///< difference between the g_plus and g_minus conjugations
  GroupFactors factors;
};

/// Exact propagation of the Lax flow dL/dt = [L, M_plus(L)] generated by a
/// spectral invariant H: factors exp(t grad H(Lambda)) = g_plus g_minus^-1
/// and conjugates Lambda by either factor. The two conjugation paths agree
/// up to factorisation error; their gap is reported.
PropagationResult propagate(const AlgebraElement& lambda, const PolynomialObservable& h,
                            double t, SplitKind kind);

}  // namespace rmatrix

#endif
