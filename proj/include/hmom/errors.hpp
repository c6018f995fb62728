#pragma once

#include <stdexcept>

namespace hmom {

/// Numeric error codes shared with the C API layer.
enum class ErrorCode {
  Ok = 0,
  Domain = 1,
  NotInterior = 2,
  Convergence = 3,
  DimensionMismatch = 4,
  NodeCollision = 5,
  BoundaryOrOutside = 6,
  SolverBudgetExceeded = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::Domain, w) {}
};
struct NotInteriorError : Error {
  explicit NotInteriorError(const std::string& w) : Error(ErrorCode::NotInterior, w) {}
};
struct ConvergenceFailure : Error {
  explicit ConvergenceFailure(const std::string& w) : Error(ErrorCode::Convergence, w) {}
};
struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& w)
      : Error(ErrorCode::DimensionMismatch, w) {}
};
struct NodeCollision : Error {
  explicit NodeCollision(const std::string& w) : Error(ErrorCode::NodeCollision, w) {}
};
struct BoundaryOrOutside : Error {
  explicit BoundaryOrOutside(const std::string& w)
      : Error(ErrorCode::BoundaryOrOutside, w) {}
};
struct SolverBudgetExceeded : Error {
  explicit SolverBudgetExceeded(const std::string& w)
      : Error(ErrorCode::SolverBudgetExceeded, w) {}
};

}  // namespace hmom
