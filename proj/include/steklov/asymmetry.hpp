#pragma once

#include "steklov/domain.hpp"

namespace steklov {

// Fraenkel asymmetry: inf over centers c of |Omega Delta B(c, rho*)| / |Omega|
// with rho* fixed by area equality.  Symmetric differences are measured by
// deterministic counting of cell centers on a fixed grid anchored to the
// domain's bounding box (translation- and scale-invariant by construction);
// the infimum over c is taken by coordinate descent with shrinking steps
// from three deterministic starts near the area centroid.
struct AsymmetryResult {
    double value = 0.0;      // in [0, 2)
    double est_error = 0.0;  // grid-band estimate: (|dOmega| + |dB|) * cell / |Omega|
    Vec2 best_center;
    int resolution = 0;
};

AsymmetryResult fraenkel_asymmetry(const Domain& d, int resolution = 2048);

} // namespace steklov
