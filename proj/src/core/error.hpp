#pragma once

#include <stdexcept>
#include <string>

namespace svdc {

enum class Errc {
  invalid_argument,
  invalid_rank,
  rank_order,
  dimension_mismatch,
  no_convergence,
  undefined_value,
  unreliable_timing,
  io,
  unsupported_format,
  bad_magic,
  unsupported_version,
  inconsistent_data,
  short_read,
  trailing_data,
};

const char* errc_name(Errc code) noexcept;

// All failures in the core are reported through this exception; the C API
// maps the code onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by the Jacobi solver when the sweep limit is reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(int sweeps, double residual);
  int sweeps() const noexcept { return sweeps_; }
  // Largest |g_ij| / sqrt(g_ii * g_jj) seen in the final sweep.
  double residual() const noexcept { return residual_; }

 private:
  int sweeps_;
  double residual_;
};

}  // namespace svdc
