#include "conecert/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conecert/errors.hpp"

namespace conecert {

namespace {

constexpr double kEps = 1e-9;

// Dense tableau over columns [structural | slack | artificial | rhs].
// Row 0..m-1 are constraints; the objective rows live outside the tableau
// as reduced-cost vectors updated by the same pivots.
struct Tableau {
    std::size_t m, n_total;       // constraint rows, variable columns
    std::vector<double> t;        // (m) x (n_total + 1), row-major
    std::vector<std::size_t> basis;

    double& at(std::size_t i, std::size_t j) { return t[i * (n_total + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return t[i * (n_total + 1) + j]; }
    double& rhs(std::size_t i) { return t[i * (n_total + 1) + n_total]; }
    double rhs(std::size_t i) const { return t[i * (n_total + 1) + n_total]; }

    void pivot(std::size_t row, std::size_t col) {
        const double d = at(row, col);
        for (std::size_t j = 0; j <= n_total; ++j) at(row, j) /= d;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            const double f = at(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n_total; ++j) at(i, j) -= f * at(row, j);
        }
        basis[row] = col;
    }
};

// One simplex phase: minimize the given cost over the current tableau.
// Bland's rule on both the entering and leaving choices.
// Returns false when unbounded.
bool run_phase(Tableau& tb, std::vector<double>& cost, double& objective,
               std::size_t usable_cols) {
    for (;;) {
        std::size_t enter = usable_cols;
        for (std::size_t j = 0; j < usable_cols; ++j) {
            if (cost[j] < -kEps) {
                enter = j;
                break;
            }
        }
        if (enter == usable_cols) return true;  // optimal

        std::size_t leave = tb.m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tb.m; ++i) {
            const double a = tb.at(i, enter);
            if (a > kEps) {
                const double ratio = tb.rhs(i) / a;
                if (ratio < best_ratio - kEps ||
                    (ratio < best_ratio + kEps &&
                     (leave == tb.m || tb.basis[i] < tb.basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == tb.m) return false;  // unbounded direction

        tb.pivot(leave, enter);
        // fold the pivot row into the reduced costs
        const double f = cost[enter];
        if (f != 0.0) {
            for (std::size_t j = 0; j < cost.size(); ++j) cost[j] -= f * tb.at(leave, j);
            objective -= f * tb.rhs(leave);
        }
    }
}

}  // namespace

LpResult solve_lp(const Vector& c, const Matrix& G, const Vector& h) {
    const std::size_t n = c.size();
    const std::size_t m = G.rows();
    if (m != h.size() || (m > 0 && G.cols() != n))
        throw DimensionMismatch("solve_lp: shape mismatch");

    if (m == 0) {
        // feasible region is the nonnegative orthant
        for (double cj : c)
            if (cj > kEps) return {LpResult::Status::Unbounded, Vector(n, 0.0), 0.0};
        return {LpResult::Status::Optimal, Vector(n, 0.0), 0.0};
    }

    // Row i with h_i >= 0 gets a slack basis column; negative rows are negated
    // and get an artificial column for phase 1.
    std::vector<bool> negated(m);
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        negated[i] = h[i] < 0.0;
        if (negated[i]) ++n_art;
    }

    Tableau tb;
    tb.m = m;
    tb.n_total = n + m + n_art;
    tb.t.assign(m * (tb.n_total + 1), 0.0);
    tb.basis.assign(m, 0);

    std::size_t art = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        const double sgn = negated[i] ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) tb.at(i, j) = sgn * G(i, j);
        tb.at(i, n + i) = sgn;  // slack
        tb.rhs(i) = sgn * h[i];
        if (negated[i]) {
            tb.at(i, art) = 1.0;
            tb.basis[i] = art;
            ++art;
        } else {
            tb.basis[i] = n + i;
        }
    }

    if (n_art > 0) {
        // phase 1: minimize the sum of artificials
        std::vector<double> cost1(tb.n_total, 0.0);
        for (std::size_t j = n + m; j < tb.n_total; ++j) cost1[j] = 1.0;
        double obj1 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (tb.basis[i] >= n + m) {
                for (std::size_t j = 0; j < tb.n_total; ++j) cost1[j] -= tb.at(i, j);
                obj1 -= tb.rhs(i);
            }
        }
        if (!run_phase(tb, cost1, obj1, tb.n_total))
            throw Error("solve_lp: phase 1 reported unbounded");
        if (-obj1 > 1e-7) return {LpResult::Status::Infeasible, Vector(n, 0.0), 0.0};
        // drive any residual artificial out of the basis
        for (std::size_t i = 0; i < m; ++i) {
            if (tb.basis[i] < n + m) continue;
            std::size_t col = n + m;
            for (std::size_t j = 0; j < n + m; ++j)
                if (std::abs(tb.at(i, j)) > kEps) {
                    col = j;
                    break;
                }
            if (col < n + m) tb.pivot(i, col);
            // else the row is all zeros: redundant constraint, harmless
        }
    }

    // phase 2: minimize -c.x; artificial columns are excluded from entering
    // by capping the usable column count at n + m.
    std::vector<double> cost2(tb.n_total, 0.0);
    for (std::size_t j = 0; j < n; ++j) cost2[j] = -c[j];
    double obj2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double f = cost2[tb.basis[i]];
        if (f != 0.0) {
            for (std::size_t j = 0; j < tb.n_total; ++j) cost2[j] -= f * tb.at(i, j);
            obj2 -= f * tb.rhs(i);
        }
    }

    if (!run_phase(tb, cost2, obj2, n + m))
        return {LpResult::Status::Unbounded, Vector(n, 0.0), 0.0};

    Vector x(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] < n) x[tb.basis[i]] = tb.rhs(i);
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += c[j] * x[j];
    return {LpResult::Status::Optimal, x, value};
}

}  // namespace conecert
