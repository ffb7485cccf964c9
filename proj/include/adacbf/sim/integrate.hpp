#pragma once

#include <functional>

#include "adacbf/numerics/linalg.hpp"
#include "adacbf/system/augmented_system.hpp"

namespace adacbf {

// Classical RK4 over dt split into substeps, for an autonomous field.
Vector rk4(const std::function<Vector(const Vector&)>& f, Vector z, double dt, int substeps);

// Inputs w and the noise sample are held constant over dt.
Vector integrate_step(const AugmentedSystem& aug, const Vector& z, const Vector& w, const Vector& noise, double dt,
                      int substeps);

}  // namespace adacbf
