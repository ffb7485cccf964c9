#pragma once

#include <cstdint>

#include "adacbf/numerics/linalg.hpp"

namespace adacbf {

// Additive uniform noise, one channel per base state, held constant over
// each hold interval. Samples are a pure function of (seed, interval index).
class NoiseModel {
public:
    static constexpr double kDefaultHold = 1e-3;

    NoiseModel() = default;
    NoiseModel(Vector amplitude, std::uint64_t seed, double hold = kDefaultHold);

    const Vector& amplitude() const { return amp_; }
    std::uint64_t seed() const { return seed_; }
    double hold() const { return hold_; }
    bool active() const;

    Vector sample(double t) const;
    Vector sample_interval(std::uint64_t k) const;

private:
    Vector amp_;
    std::uint64_t seed_ = 0;
    double hold_ = kDefaultHold;
};

Vector sample_noise(const NoiseModel& model, double t);

}  // namespace adacbf
