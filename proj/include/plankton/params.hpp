#pragma once

// Model parameters and phase-plane state for the discrete
// phytoplankton-zooplankton maps.

#include <cmath>
#include <stdexcept>
#include <string>

namespace plankton {

// Raised when an operation's parameter regime precondition is not met
// (as opposed to a malformed input).
class regime_error : public std::runtime_error {
 public:
  explicit regime_error(const std::string& what) : std::runtime_error(what) {}
};

// Four positive coefficients plus the functional-response order h.
//   h = 1: saturating intake u/(1+cu)
//   h = 2: sigmoid intake u^2/(1+cu^2)
struct Params {
  int h = 1;          // response order, 1 or 2
  double beta = 1.0;  // conversion coefficient
  double r = 0.5;     // zooplankton death coefficient
  double theta = 0.25;  // toxin-liberation coefficient
  double c = 0.25;    // saturation coefficient

  void validate() const {
    auto positive = [](double x, const char* name) {
      if (!std::isfinite(x) || x <= 0.0)
        throw std::invalid_argument(std::string(name) +
                                    " must be finite and > 0");
    };
    if (h != 1 && h != 2)
      throw std::invalid_argument("h must be 1 or 2");
    positive(beta, "beta");
    positive(r, "r");
    positive(theta, "theta");
    positive(c, "c");
  }
};

// A point (u, v) in the phase plane. Coordinates may leave the positive
// quadrant; trajectory bookkeeping treats non-finite values as divergence.
struct State {
  double u = 0.0;
  double v = 0.0;
};

inline bool is_finite(const State& s) {
  return std::isfinite(s.u) && std::isfinite(s.v);
}

// sup-norm distance, used for residuals and convergence checks
inline double dist_inf(const State& a, const State& b) {
  return std::max(std::abs(a.u - b.u), std::abs(a.v - b.v));
}

}  // namespace plankton
