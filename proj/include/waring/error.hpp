#ifndef WARING_ERROR_HPP
#define WARING_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace waring {

/// Library error with a stable machine-readable code.
///
/// Codes in use: NotPrime, SizeCapExceeded, DivisionByZero, NotADivisor,
/// NotCoprime, Disconnected, OracleCapExceeded, WorkCapExceeded,
/// DegreeCapExceeded, NotNormalized.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace waring

#endif  // WARING_ERROR_HPP
