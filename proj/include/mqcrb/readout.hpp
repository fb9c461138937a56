#pragma once

#include "mqcrb/grid.hpp"

namespace mqcrb {

struct ReadoutSignal {
  double q1 = 0.0;  // <q_1>, f_1 = -i f~^a
  double p1 = 0.0;  // <p_1>
  double q2 = 0.0;  // <q_2>, orthogonalized f_2; zero when degenerate
  bool degenerate = false;  // |overlap| = 1: f~^b is proportional to f~^a
};

// Mean quadratures of the Gram-Schmidt readout modes for a strong mean field sqrt(N0), given
// the detection-mode overlap (f~^a|f~^b) and the signals theta_a w^a, theta_b w^b.
ReadoutSignal gram_schmidt_readout(complex overlap, double mean_photons, double signal_a, double signal_b);

}  // namespace mqcrb
