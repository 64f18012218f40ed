#ifndef VSKX_ERROR_HPP_
#define VSKX_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace vskx {

enum class ErrorKind {
  Domain,
  Shape,
  DegenerateInput,
  SingularSystem,
  ScalingEvaluation,
  Pole,
  FitDegenerate,
  Selection,
  Config,
  Io,
};

constexpr const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::DegenerateInput: return "degenerate_input";
    case ErrorKind::SingularSystem: return "singular_system";
    case ErrorKind::ScalingEvaluation: return "scaling_evaluation";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::FitDegenerate: return "fit_degenerate";
    case ErrorKind::Selection: return "selection";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vskx

#endif  // VSKX_ERROR_HPP_
