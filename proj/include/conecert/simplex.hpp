#pragma once

#include "conecert/matrix.hpp"

namespace conecert {

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Vector x;            // primal point, size = number of structural variables
    double value = 0.0;  // objective c.x at that point
};

// maximize c.x subject to G x <= h, x >= 0.
// Dense two-phase tableau simplex with Bland's rule, so degenerate bases
// cannot cycle. Intended for the small margin-programs built by certify
// (tens of rows); not a general-purpose scale solver.
LpResult solve_lp(const Vector& c, const Matrix& G, const Vector& h);

}  // namespace conecert
