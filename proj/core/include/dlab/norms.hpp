#pragma once

#include <limits>

#include "dlab/field.hpp"

namespace dlab {

// Rectangle-rule L^p norm; p = infinity returns max |f|.
double lp_norm(const SpectralField& f, double p);

inline double l1_norm(const SpectralField& f) { return lp_norm(f, 1.0); }
inline double linf_norm(const SpectralField& f) {
    return lp_norm(f, std::numeric_limits<double>::infinity());
}

// sqrt((2pi)^2 sum_{k!=0} |fhat(k)|^2 / |k|^2); requires a mean-free field.
double h_minus1_norm(const SpectralField& f);

}  // namespace dlab
