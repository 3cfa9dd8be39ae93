#include "nfpf/sflm.hpp"

#include <cmath>
#include <utility>

#include "nfpf/rng.hpp"

namespace nfpf {

std::string to_string(Activation a) {
  return a == Activation::Sigmoid ? "sigmoid" : "sine";
}

Activation activation_from_string(const std::string& s) {
  if (s == "sigmoid") return Activation::Sigmoid;
  if (s == "sine") return Activation::Sine;
  throw Error(ErrorCode::ConfigInvalid, "unknown activation: " + s);
}

Matrix activation_forward(const Matrix& z, Activation a) {
  if (a == Activation::Sigmoid)
    return (1.0 / (1.0 + (-z.array()).exp())).matrix();
  return z.array().sin().matrix();
}

Matrix activation_inverse(const Matrix& y, Activation a) {
  if (a == Activation::Sigmoid)
    return (-(1.0 / y.array() - 1.0).log()).matrix();
  return y.array().asin().matrix();
}

namespace {

Matrix hidden_output(const Matrix& x, const Matrix& a, const Vector& b,
                     Activation act) {
  Matrix pre = x * a;
  pre.rowwise() += b.transpose();
  return activation_forward(pre, act);
}

// Affine per-column rescale into [lo, hi]; constant columns map to the middle.
Matrix rescale_columns(const Matrix& e, double lo, double hi) {
  Matrix out(e.rows(), e.cols());
  for (Index j = 0; j < e.cols(); ++j) {
    const double mn = e.col(j).minCoeff();
    const double mx = e.col(j).maxCoeff();
    if (mx > mn) {
      out.col(j) = lo + ((e.col(j).array() - mn) / (mx - mn)) * (hi - lo);
    } else {
      out.col(j).setConstant(0.5 * (lo + hi));
    }
  }
  return out;
}

double mean_phi(const Matrix& x, const Matrix& recon) {
  return pearson_rowwise(x, recon).phi.mean();
}

}  // namespace

SflmModel train_sflm(const Matrix& x, Index hidden_size, Activation activation,
                     RidgeParam c, std::uint64_t seed) {
  require(hidden_size >= 1, ErrorCode::InvalidHiddenSize,
          "train_sflm: hidden_size must be >= 1");
  require(x.rows() >= 1 && x.cols() >= 2, ErrorCode::DimensionMismatch,
          "train_sflm: need n >= 1 samples and d >= 2 features");
  require(x.allFinite(), ErrorCode::NonFinite,
          "train_sflm: input contains NaN/Inf");

  const Index d = x.cols();
  SplitRng rng(seed);
  Matrix a(d, hidden_size);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < hidden_size; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  Vector b(hidden_size);
  for (Index j = 0; j < hidden_size; ++j) b(j) = rng.uniform(-1.0, 1.0);

  Matrix h = hidden_output(x, a, b, activation);
  Matrix beta = solve_output_weights(h, x, c);
  const double phi_base = mean_phi(x, h * beta);

  // Input-weight refinement. The reconstruction e = H beta is pulled back
  // through the decoder's ridge pseudoinverse to a desired hidden output,
  // rescaled into the activation's invertible band, inverted, and the input
  // weights re-solved against that pre-activation target. Kept only if the
  // mean training correlation does not degrade.
  Matrix e = h * beta;
  require(e.allFinite(), ErrorCode::ActivationRangeError,
          "train_sflm: degenerate reconstruction during refinement");
  Matrix h_desired =
      solve_output_weights(beta.transpose(), e.transpose(), c).transpose();
  const double lo = activation == Activation::Sigmoid ? 0.1 : -0.9;
  const double hi = 0.9;
  Matrix target = activation_inverse(rescale_columns(h_desired, lo, hi),
                                     activation);
  require(target.allFinite(), ErrorCode::ActivationRangeError,
          "train_sflm: inverse activation target left the invertible domain");
  target.rowwise() -= b.transpose();
  Matrix a_ref = solve_output_weights(x, target, c);
  Matrix h_ref = hidden_output(x, a_ref, b, activation);
  Matrix beta_ref = solve_output_weights(h_ref, x, c);
  const double phi_refined = mean_phi(x, h_ref * beta_ref);

  SflmModel model;
  model.activation = activation;
  model.hidden_size = hidden_size;
  model.c = c;
  model.seed = seed;
  model.bias = std::move(b);
  if (phi_refined >= phi_base) {
    model.input_weights = std::move(a_ref);
    model.output_weights = std::move(beta_ref);
  } else {
    model.input_weights = std::move(a);
    model.output_weights = std::move(beta);
  }
  return model;
}

Matrix reconstruct(const SflmModel& model, const Matrix& x) {
  require(x.cols() == model.input_weights.rows(), ErrorCode::DimensionMismatch,
          "reconstruct: feature dimension differs from model input dimension");
  if (x.rows() == 0) return Matrix(0, x.cols());
  return hidden_output(x, model.input_weights, model.bias, model.activation) *
         model.output_weights;
}

Vector score_phi(const SflmModel& model, const Matrix& x) {
  if (x.rows() == 0) return Vector(0);
  return pearson_rowwise(x, reconstruct(model, x)).phi;
}

namespace {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const Index rows = static_cast<Index>(j.size());
  require(rows > 0, ErrorCode::ParseError, "model matrix: empty");
  const Index cols = static_cast<Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    require(static_cast<Index>(j.at(i).size()) == cols, ErrorCode::RaggedRows,
            "model matrix: ragged rows");
    for (Index jc = 0; jc < cols; ++jc) m(i, jc) = j.at(i).at(jc).get<double>();
  }
  return m;
}

}  // namespace

nlohmann::json sflm_to_json(const SflmModel& model) {
  nlohmann::json j;
  j["dims"] = model.input_weights.rows();
  j["hidden_size"] = model.hidden_size;
  j["activation"] = to_string(model.activation);
  j["c"] = model.c.c;
  j["seed"] = model.seed;
  j["a"] = matrix_to_json(model.input_weights);
  j["b"] = std::vector<double>(model.bias.data(),
                               model.bias.data() + model.bias.size());
  j["beta"] = matrix_to_json(model.output_weights);
  return j;
}

SflmModel sflm_from_json(const nlohmann::json& j) {
  SflmModel m;
  m.hidden_size = j.at("hidden_size").get<Index>();
  m.activation = activation_from_string(j.at("activation").get<std::string>());
  m.c = RidgeParam{j.at("c").get<double>()};
  m.seed = j.at("seed").get<std::uint64_t>();
  m.input_weights = matrix_from_json(j.at("a"));
  auto bv = j.at("b").get<std::vector<double>>();
  m.bias = Eigen::Map<const Vector>(bv.data(), static_cast<Index>(bv.size()));
  m.output_weights = matrix_from_json(j.at("beta"));
  require(m.input_weights.rows() == j.at("dims").get<Index>(),
          ErrorCode::ParseError, "model json: dims mismatch");
  require(m.output_weights.rows() == m.hidden_size &&
              m.input_weights.cols() == m.hidden_size &&
              m.bias.size() == m.hidden_size,
          ErrorCode::ParseError, "model json: hidden size mismatch");
  return m;
}

}  // namespace nfpf
