#include "adacbf/sim/integrate.hpp"

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

Vector rk4(const std::function<Vector(const Vector&)>& f, Vector z, double dt, int substeps) {
    if (substeps < 1) throw ConfigError("RK4 needs at least one substep");
    const double h = dt / substeps;
    for (int s = 0; s < substeps; ++s) {
        const Vector k1 = f(z);
        const Vector k2 = f(z + (0.5 * h) * k1);
        const Vector k3 = f(z + (0.5 * h) * k2);
        const Vector k4 = f(z + h * k3);
        Vector incr = k1 + k4;
        incr += 2.0 * (k2 + k3);
        z += (h / 6.0) * incr;
    }
    if (!all_finite(z)) throw NonFiniteError("integrator produced a non-finite state");
    return z;
}

Vector integrate_step(const AugmentedSystem& aug, const Vector& z, const Vector& w, const Vector& noise, double dt,
                      int substeps) {
    const Vector* n = noise.empty() ? nullptr : &noise;
    return rk4([&](const Vector& s) { return aug.rhs(s, w, n); }, z, dt, substeps);
}

}  // namespace adacbf
