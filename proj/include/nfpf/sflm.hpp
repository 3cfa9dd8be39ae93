#pragma once

#include <cstdint>
#include <string>

#include "nfpf/common.hpp"
#include "nfpf/linalg.hpp"

#include <json.hpp>

namespace nfpf {

enum class Activation { Sigmoid, Sine };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

// Elementwise forward map: sigmoid or sine.
Matrix activation_forward(const Matrix& z, Activation a);
// Inverse on the invertible range: logit on (0,1), arcsin on [-1,1].
Matrix activation_inverse(const Matrix& y, Activation a);

// Two-layer autoencoder trained in closed form. Immutable once trained.
struct SflmModel {
  Matrix input_weights;   // d x H
  Vector bias;            // H
  Activation activation = Activation::Sigmoid;
  Matrix output_weights;  // H x d
  Index hidden_size = 0;
  RidgeParam c;
  std::uint64_t seed = 0;
};

// Non-iterative training: seeded uniform input weights, ridge-solved decoder,
// then a single guarded input-weight refinement pass. Deterministic per seed.
SflmModel train_sflm(const Matrix& x, Index hidden_size, Activation activation,
                     RidgeParam c, std::uint64_t seed);

// f(x a + b) beta, shape-preserving.
Matrix reconstruct(const SflmModel& model, const Matrix& x);

// Row-wise reconstruction correlation phi; constant rows score 0.
Vector score_phi(const SflmModel& model, const Matrix& x);

// JSON round-trip is value-exact (full-precision decimal floats).
nlohmann::json sflm_to_json(const SflmModel& model);
SflmModel sflm_from_json(const nlohmann::json& j);

}  // namespace nfpf
