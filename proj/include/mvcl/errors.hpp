#pragma once

#include <stdexcept>
#include <string>

namespace mvcl {

// Machine-checkable reason attached to every library exception.
enum class Errc {
  dimension_mismatch,
  zero_norm,
  empty_input,
  invalid_value,
  invalid_index,
  empty_pairs,
  missing_view,
  duplicate_view,
  insufficient_labels,
  insufficient_points,
  bad_step,
  non_finite,
  bad_magic,
  bad_version,
  truncated_file,
  bad_record,
  config_key,
  config_value,
  io_failure,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Precondition violations: bad dimensions, empty inputs, out-of-range values.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed files: embedding banks, snapshots, CSV sidecars.
class DataFormatError : public Error {
 public:
  using Error::Error;
};

// Unknown keys or unparseable values in a run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mvcl
