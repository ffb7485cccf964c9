#pragma once

#include <string>
#include <vector>

#include "adacbf/barrier/cascade.hpp"
#include "adacbf/system/affine_system.hpp"

namespace adacbf {

struct HocbfSpec {
    ScalarFunction barrier;  // over the base state
    int m = 1;
    std::vector<ClassK> alphas;
    std::vector<double> penalties;  // empty means all 1
    std::string label = "hocbf";
};

Cascade hocbf_cascade(const HocbfSpec& spec, const AffineControlSystem& sys, DiffOptions options = {});
std::vector<double> psi_cascade(const HocbfSpec& spec, const AffineControlSystem& sys, const Vector& x);
// Row over layout (defaults to u only).
ConstraintRow hocbf_row(const HocbfSpec& spec, const AffineControlSystem& sys, const Vector& x);
ConstraintRow hocbf_row(const HocbfSpec& spec, const AffineControlSystem& sys, const Vector& x,
                        const DecisionLayout& layout);

}  // namespace adacbf
