#ifndef ADACYCLE_ERROR_HPP_
#define ADACYCLE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace adacycle {

enum class ErrorCode {
  invalid_argument,
  dimension,
  domain,
  insufficient_data,
  weak_learning_failure,
  perfect_classification,
  parse,
  io,
  precondition,
};

const char* error_code_name(ErrorCode code) noexcept;

// All library failures are reported through this exception type; the C API
// maps the code onto adc_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace adacycle

#endif  // ADACYCLE_ERROR_HPP_
