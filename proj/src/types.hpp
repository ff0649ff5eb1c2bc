#pragma once

#include <stdexcept>
#include <string>

namespace qve {

enum class ErrorCode {
  invalid_argument,
  pole_proximity,
  gapped_frequency,
  invalid_wavevector,
  not_on_branch,
  degenerate_point,
  band_edge,
  divergent_integral,
  non_convergence,
  singular_jacobian,
  empty_trace,
  all_gapped,
  numerical,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// hbar, eps0, c. Reduced units (all ones) are the default working mode;
// SI values are only ever introduced at the I/O boundary.
struct PhysicalConstants {
  double hbar = 1.0;
  double eps0 = 1.0;
  double c = 1.0;

  static PhysicalConstants reduced() { return {1.0, 1.0, 1.0}; }
  static PhysicalConstants si() {
    return {1.054571817e-34, 8.8541878128e-12, 2.99792458e8};
  }
  void validate() const;
};

// Probe geometry of the electro-optic measurement. The conversion constant
// cancels out of every exported observable and the quantization length drops
// out of all continuum results; both are validated but otherwise inert.
struct Geometry {
  double surface = 1.0;     // S, probe transverse area
  double length = 1.0;      // L, paraxial quantization length
  double conversion = 1.0;  // C, electro-optic conversion constant

  double volume() const { return surface * length; }
  void validate() const;
};

}  // namespace qve
