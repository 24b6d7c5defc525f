#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace circres::lp::detail {

using FloatRow = std::vector<std::pair<int, double>>;

struct FloatGuide {
    /// False when the floating-point solver gave no usable verdict.
    bool completed = false;
    bool feasible = false;
    /// Structural values of a basic solution when feasible, and its basis.
    std::vector<double> x;
    std::vector<bool> basic_column;
    std::vector<bool> basic_row;
    /// Row multipliers of an infeasibility ray, up to sign and scale.
    std::vector<double> ray;
    std::size_t iterations = 0;
};

/// Solves Ax >= b, x >= 0 in double precision with HiGHS. Only a guide: the
/// caller re-derives every answer in exact arithmetic.
FloatGuide float_guide(int num_columns, const std::vector<FloatRow>& rows, const std::vector<double>& rhs);

}  // namespace circres::lp::detail
