#pragma once

// Internal helper shared by the resonance analysis and the figure-data
// generators; not part of the public API.

namespace photon::detail {

// The n-th max-min root pair of dS/dxi, located robustly even just below
// the fold where the two roots are closer than any fixed scan step: the
// positive hump of dS/dxi between them is refined by golden-section search,
// and the pair exists exactly when the hump maximum is positive.
struct PairRoots {
  bool found = false;
  double x_max = 0.0;    // dS/dxi rises through zero: maximum of <tau>
  double x_min = 0.0;    // dS/dxi falls through zero: minimum of <tau>
  double hump_x = 0.0;   // location of the hump maximum of dS/dxi
  double hump_val = 0.0; // its value; <= 0 means the pair has annihilated
};

PairRoots find_pair_roots(double gamma, int n);

}  // namespace photon::detail
