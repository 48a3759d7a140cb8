#pragma once

#include <stdexcept>
#include <string>

namespace rho {

/// Failure categories raised by the library. Every thrown rho::Error carries
/// one of these so callers can branch without parsing messages.
enum class errc {
  non_finite,
  not_hermitian,
  dimension_mismatch,
  convergence_failure,
  index_out_of_range,
  not_normalized,
  weights_invalid,
  invalid_rank,
  negative_variance,
  invalid_dimension,
  not_positive,
  invalid_grid,
  wrong_boundary,
  mode_out_of_range,
  invalid_mode,
  invalid_spin,
  packet_too_wide,
  packet_unresolved,
  invalid_step,
  insufficient_data,
  invalid_argument,
  internal_check_failed,
  config_invalid,
  report_write_failure,
};

constexpr const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::non_finite: return "non_finite";
    case errc::not_hermitian: return "not_hermitian";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::convergence_failure: return "convergence_failure";
    case errc::index_out_of_range: return "index_out_of_range";
    case errc::not_normalized: return "not_normalized";
    case errc::weights_invalid: return "weights_invalid";
    case errc::invalid_rank: return "invalid_rank";
    case errc::negative_variance: return "negative_variance";
    case errc::invalid_dimension: return "invalid_dimension";
    case errc::not_positive: return "not_positive";
    case errc::invalid_grid: return "invalid_grid";
    case errc::wrong_boundary: return "wrong_boundary";
    case errc::mode_out_of_range: return "mode_out_of_range";
    case errc::invalid_mode: return "invalid_mode";
    case errc::invalid_spin: return "invalid_spin";
    case errc::packet_too_wide: return "packet_too_wide";
    case errc::packet_unresolved: return "packet_unresolved";
    case errc::invalid_step: return "invalid_step";
    case errc::insufficient_data: return "insufficient_data";
    case errc::invalid_argument: return "invalid_argument";
    case errc::internal_check_failed: return "internal_check_failed";
    case errc::config_invalid: return "config_invalid";
    case errc::report_write_failure: return "report_write_failure";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace rho
