#pragma once

#include <string>

#include "adacbf/barrier/cascade.hpp"
#include "adacbf/system/affine_system.hpp"

namespace adacbf {

struct ClfSpec {
    ScalarFunction V;
    double rate = 10.0;    // epsilon
    double weight = 1.0;   // cost weight on the relaxation, enters as weight * delta^2
    std::string label = "clf";
};

// L_F V + L_G V w + eps V - delta <= 0 over any affine field; G columns map
// through layout.input_column and delta sits at slack_index.
ConstraintRow clf_row(const ClfSpec& spec, const Vector& z, const Vector& drift, const Matrix& input_matrix,
                      const DecisionLayout& layout, std::size_t slack_index);
ConstraintRow clf_row(const ClfSpec& spec, const AffineControlSystem& sys, const Vector& x,
                      const DecisionLayout& layout, std::size_t slack_index);

}  // namespace adacbf
