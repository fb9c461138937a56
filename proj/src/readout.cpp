#include "mqcrb/readout.hpp"

#include <cmath>

#include "mqcrb/errors.hpp"
#include "mqcrb/tolerances.hpp"

namespace mqcrb {

ReadoutSignal gram_schmidt_readout(complex overlap, double mean_photons, double signal_a, double signal_b) {
  if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
    throw PreconditionError("mean photon number must be finite and non-negative");
  }
  const double magnitude = std::abs(overlap);
  if (magnitude > 1.0 + tol::orth) throw PreconditionError("detection-mode overlap exceeds 1 in magnitude");
  const double amplitude = 2.0 * std::sqrt(mean_photons);
  ReadoutSignal out;
  out.q1 = amplitude * (signal_a + overlap.real() * signal_b);
  out.p1 = amplitude * overlap.imag() * signal_b;
  out.degenerate = magnitude >= 1.0 - tol::orth;
  out.q2 = out.degenerate ? 0.0 : amplitude * std::sqrt(1.0 - magnitude * magnitude) * signal_b;
  return out;
}

}  // namespace mqcrb
