#include "nfpf/linalg.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace nfpf {

namespace {

void check_ridge_input(const Matrix& h, RidgeParam c) {
  require(h.rows() > 0 && h.cols() > 0, ErrorCode::DimensionMismatch,
          "ridge solve: empty matrix");
  require(c.c > 0.0 && std::isfinite(c.c), ErrorCode::ConfigInvalid,
          "ridge solve: regularization constant must be positive");
  require(h.allFinite(), ErrorCode::NonFinite,
          "ridge solve: input contains NaN/Inf");
}

// Factor lambda*I + G (symmetric positive definite for lambda > 0).
Eigen::LDLT<Matrix> factor_regularized(const Matrix& gram, double lambda) {
  Matrix sys = gram;
  sys.diagonal().array() += lambda;
  Eigen::LDLT<Matrix> ldlt(sys);
  require(ldlt.info() == Eigen::Success && ldlt.isPositive(),
          ErrorCode::SolveFailure,
          "ridge solve: regularized system not positive definite");
  return ldlt;
}

}  // namespace

Matrix ridge_pseudoinverse(const Matrix& h, RidgeParam c) {
  check_ridge_input(h, c);
  const double lambda = c.lambda();
  const Index n = h.rows(), p = h.cols();
  if (n <= p) {
    auto ldlt = factor_regularized(h * h.transpose(), lambda);
    return h.transpose() * ldlt.solve(Matrix::Identity(n, n));
  }
  auto ldlt = factor_regularized(h.transpose() * h, lambda);
  return ldlt.solve(h.transpose());
}

Matrix solve_output_weights(const Matrix& h, const Matrix& x, RidgeParam c) {
  require(h.rows() == x.rows(), ErrorCode::DimensionMismatch,
          "solve_output_weights: row counts differ");
  check_ridge_input(h, c);
  require(x.allFinite(), ErrorCode::NonFinite,
          "solve_output_weights: target contains NaN/Inf");
  const double lambda = c.lambda();
  const Index n = h.rows(), p = h.cols();
  if (n <= p) {
    auto ldlt = factor_regularized(h * h.transpose(), lambda);
    return h.transpose() * ldlt.solve(x);
  }
  auto ldlt = factor_regularized(h.transpose() * h, lambda);
  return ldlt.solve(h.transpose() * x);
}

RowCorrelation pearson_rowwise(const Matrix& x, const Matrix& xhat) {
  require(x.rows() == xhat.rows() && x.cols() == xhat.cols(),
          ErrorCode::DimensionMismatch, "pearson_rowwise: shapes differ");
  require(x.cols() >= 2, ErrorCode::DimensionMismatch,
          "pearson_rowwise: need at least 2 feature columns");

  const Index n = x.rows();
  const double d = static_cast<double>(x.cols());
  RowCorrelation out;
  out.phi = Vector::Zero(n);
  out.constant_row.assign(static_cast<std::size_t>(n), 0);

  Vector mx = x.rowwise().mean();
  Vector my = xhat.rowwise().mean();
  Matrix cx = x.colwise() - mx;
  Matrix cy = xhat.colwise() - my;
  Vector vx = cx.rowwise().squaredNorm() / d;
  Vector vy = cy.rowwise().squaredNorm() / d;
  Vector cov = (cx.array() * cy.array()).rowwise().sum() / d;

  for (Index i = 0; i < n; ++i) {
    const double denom = std::sqrt(vx(i)) * std::sqrt(vy(i));
    if (denom <= 0.0 || !std::isfinite(denom)) {
      out.constant_row[static_cast<std::size_t>(i)] = 1;
      out.any_constant = true;
      continue;
    }
    double r = cov(i) / denom;
    // clamp fp drift just outside [-1, 1]
    out.phi(i) = r > 1.0 ? 1.0 : (r < -1.0 ? -1.0 : r);
  }
  return out;
}

}  // namespace nfpf
