#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace monoforms {

enum class errc {
  // input / construction errors
  cycle_detected,
  unknown_element,
  duplicate_element,
  arity_out_of_range,
  chain_size_out_of_range,
  level_out_of_range,
  index_out_of_range,
  unknown_name,
  domain_too_large,
  shape_mismatch,
  arity_mismatch,
  table_shape_mismatch,
  not_cover_pair,
  non_constant_dot,
  not_monotone,
  unbound_variable,
  unbound_unary,
  bad_length,
  bad_char,
  parse_error,
  io_error,
  // construction failures discovered mid-run
  no_residual,
  algebra_defect,
  non_monotone_part,
  no_progress,
  iteration_overflow,
  not_representable,
};

const char* errc_name(errc code);

// Single exception type for the whole library. `witness` carries the
// element/level ids that exhibit the failure, when there are any.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message, std::vector<std::string> witness = {})
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  errc code() const { return code_; }
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  errc code_;
  std::vector<std::string> witness_;
};

}  // namespace monoforms
