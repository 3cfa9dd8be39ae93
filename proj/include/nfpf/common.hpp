#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nfpf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ErrorCode {
  NonFinite,
  SolveFailure,
  DimensionMismatch,
  InvalidHiddenSize,
  ActivationRangeError,
  TooManyClusters,
  NeedTwoClusters,
  BudgetTooLarge,
  BudgetExceeded,
  RankTooLarge,
  EmptyTestSet,
  BadRatio,
  ParseError,
  RaggedRows,
  EmptyFile,
  TooSmall,
  ConfigInvalid,
  HashMismatch,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace nfpf
