#pragma once

#include <vector>

#include "nfpf/common.hpp"

namespace nfpf {

// Ridge regularization constant C. The ridge term added to the normal
// equations is lambda = 1/C, so larger C means weaker regularization and
// the working range [2^-10, 2^10] spans strong to nearly-none.
struct RidgeParam {
  double c = 1.0;
  double lambda() const { return 1.0 / c; }
};

// Regularized Moore-Penrose pseudoinverse of an n x p matrix:
//   n <= p:  H^+ = H^T (lambda I + H H^T)^-1
//   n >  p:  H^+ = (lambda I + H^T H)^-1 H^T
// Always factors the smaller symmetric system; equals the SVD shrinkage
// form V diag(s/(s^2+lambda)) U^T.
Matrix ridge_pseudoinverse(const Matrix& h, RidgeParam c);

// beta = H^+ X without forming H^+ explicitly. Solves the ridge normal
// equations; the stationarity residual H^T(H beta - X) + lambda beta
// vanishes up to solver precision.
Matrix solve_output_weights(const Matrix& h, const Matrix& x, RidgeParam c);

struct RowCorrelation {
  Vector phi;                       // per-row Pearson correlation, in [-1, 1]
  std::vector<char> constant_row;   // 1 where either row had zero variance (phi forced to 0)
  bool any_constant = false;
};

// Row-wise Pearson correlation between corresponding rows of x and xhat,
// population-normalized over the feature dimension. Zero-variance rows
// score 0 and are flagged rather than producing NaN.
RowCorrelation pearson_rowwise(const Matrix& x, const Matrix& xhat);

}  // namespace nfpf
