#pragma once

#include <stdexcept>
#include <string>

namespace arcgas {

class NumericError : public std::runtime_error {
public:
  NumericError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

struct DomainError : NumericError { using NumericError::NumericError; };
struct ResolutionError : NumericError { using NumericError::NumericError; };
struct ConvergenceError : NumericError { using NumericError::NumericError; };
struct TopologyError : NumericError { using NumericError::NumericError; };
struct ConditioningError : NumericError { using NumericError::NumericError; };
struct QuadratureError : NumericError { using NumericError::NumericError; };

}  // namespace arcgas
