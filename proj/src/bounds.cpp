#include "jscc/bounds.hpp"

#include <cmath>

#include "jscc/af.hpp"
#include "jscc/errors.hpp"

namespace jscc::nc {

double nc_threshold(double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams("nc_threshold: rho must lie in [0,1)");
    return rho / (1.0 - rho * rho);
}

double nc_distortion(double snr, double rho, double sigma_sq) {
    if (!(snr >= 0.0)) throw InvalidParams("nc_distortion: SNR must be >= 0");
    if (!(sigma_sq > 0.0)) throw InvalidParams("nc_distortion: sigma^2 must be > 0");
    // At rho = 0 the threshold is 0 and the square-root branch applies for
    // all S > 0; continuity makes the boundary choice immaterial.
    if (snr <= nc_threshold(rho)) return af::af_symmetric(snr, rho, sigma_sq);
    return sigma_sq * std::sqrt((1.0 - rho * rho) / (2.0 * snr * (1.0 + rho) + 1.0));
}

} // namespace jscc::nc
