#pragma once

#include <stdexcept>
#include <string>

namespace lp {

/// Base error carrying a stable machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

struct AntisymmetryViolation : Error {
  explicit AntisymmetryViolation(const std::string& m) : Error("AntisymmetryViolation", m) {}
};
struct JacobiViolation : Error {
  explicit JacobiViolation(const std::string& m) : Error("JacobiViolation", m) {}
};
struct NotEMAdapted : Error {
  explicit NotEMAdapted(const std::string& m) : Error("NotEMAdapted", m) {}
};
struct UnrecognizedForm : Error {
  explicit UnrecognizedForm(const std::string& m) : Error("UnrecognizedForm", m) {}
};
struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& m) : Error("NumericalFailure", m) {}
};
struct DomainViolation : Error {
  explicit DomainViolation(const std::string& m) : Error("DomainViolation", m) {}
};
struct HypothesisViolation : Error {
  explicit HypothesisViolation(const std::string& m) : Error("HypothesisViolation", m) {}
};
struct NoConvergence : Error {
  explicit NoConvergence(const std::string& m) : Error("NoConvergence", m) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("ParseError", m) {}
};
struct SchemaError : Error {
  explicit SchemaError(const std::string& m) : Error("SchemaError", m) {}
};

} // namespace lp
