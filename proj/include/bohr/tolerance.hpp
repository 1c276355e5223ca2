#pragma once

#include <algorithm>

#include "bohr/errors.hpp"

namespace bohr {

// Scale-aware comparison policy. Every acceptance threshold in the library is
// derived from one pair (atol, rtol):
//
//   tau(s)  = atol + rtol * s          absolute slack at scale s
//   PSD     : lambda_min(M) >= -tau(||M||_2)
//   margins : holds  <=>  margin >= -tau(scale), scale = max(|LHS|, |RHS|, 1)
struct Tolerance {
    double atol = 1e-10;
    double rtol = 1e-8;

    Tolerance() = default;
    Tolerance(double a, double r) : atol(a), rtol(r) {
        if (!(atol > 0.0) || !(rtol > 0.0))
            throw BadParam("Tolerance: atol and rtol must be positive");
    }

    double tau(double scale) const { return atol + rtol * std::max(scale, 0.0); }

    // Floor for "strictly positive" spectra (negative powers, 0 < sum bounds).
    double eps_pos() const { return atol; }
};

} // namespace bohr
