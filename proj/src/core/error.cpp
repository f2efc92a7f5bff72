#include "core/error.hpp"

#include <cstdio>

namespace svdc {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::invalid_rank: return "invalid rank";
    case Errc::rank_order: return "rank ordering";
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::no_convergence: return "no convergence";
    case Errc::undefined_value: return "undefined value";
    case Errc::unreliable_timing: return "unreliable timing";
    case Errc::io: return "i/o error";
    case Errc::unsupported_format: return "unsupported format";
    case Errc::bad_magic: return "bad magic";
    case Errc::unsupported_version: return "unsupported version";
    case Errc::inconsistent_data: return "inconsistent data";
    case Errc::short_read: return "short read";
    case Errc::trailing_data: return "trailing data";
  }
  return "unknown";
}

namespace {
std::string convergence_message(int sweeps, double residual) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "jacobi svd did not converge after %d sweeps (off-diagonal residual %.3e)",
                sweeps, residual);
  return buf;
}
}  // namespace

ConvergenceError::ConvergenceError(int sweeps, double residual)
    : Error(Errc::no_convergence, convergence_message(sweeps, residual)), sweeps_(sweeps), residual_(residual) {}

}  // namespace svdc
