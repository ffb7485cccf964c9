#include "adacbf/system/noise.hpp"

#include <cmath>
#include <random>

#include "adacbf/numerics/errors.hpp"

namespace adacbf {

NoiseModel::NoiseModel(Vector amplitude, std::uint64_t seed, double hold)
    : amp_(std::move(amplitude)), seed_(seed), hold_(hold) {
    for (double a : amp_)
        if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("noise amplitude must be finite and >= 0");
    if (!(hold_ > 0.0)) throw ConfigError("noise hold interval must be > 0");
}

bool NoiseModel::active() const {
    for (double a : amp_)
        if (a > 0.0) return true;
    return false;
}

Vector NoiseModel::sample_interval(std::uint64_t k) const {
    Vector w(amp_.size(), 0.0);
    if (!active()) return w;
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (std::size_t i = 0; i < amp_.size(); ++i) w[i] = amp_[i] * unit(rng);
    return w;
}

Vector NoiseModel::sample(double t) const {
    if (!(t >= 0.0)) throw ConfigError("noise sample time must be >= 0");
    return sample_interval(static_cast<std::uint64_t>(std::floor(t / hold_)));
}

Vector sample_noise(const NoiseModel& model, double t) { return model.sample(t); }

}  // namespace adacbf
