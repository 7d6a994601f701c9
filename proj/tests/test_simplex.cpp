#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "conecert/linalg.hpp"
#include "conecert/rng.hpp"
#include "conecert/simplex.hpp"

using namespace conecert;
using Status = LpResult::Status;

namespace {

// Exhaustive vertex enumeration oracle for max c.x, G x <= h, x >= 0.
// Treats {Gx <= h, x >= 0} as an intersection of halfspaces, visits every
// n-subset of tight constraints, and keeps the best feasible solution.
struct OracleResult {
    bool feasible = false;
    bool bounded_hit = false;
    double value = -1e300;
};

OracleResult brute_force_lp(const Vector& c, const Matrix& G, const Vector& h) {
    const std::size_t n = c.size();
    const std::size_t m = G.rows();
    // rows of the full system: [G | h] and [-I | 0]
    std::vector<Vector> rows;
    Vector rhs;
    for (std::size_t i = 0; i < m; ++i) {
        rows.push_back(G.row(i));
        rhs.push_back(h[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
        Vector r(n, 0.0);
        r[j] = -1.0;
        rows.push_back(r);
        rhs.push_back(0.0);
    }
    OracleResult out;
    std::vector<std::size_t> idx(rows.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<bool> select(rows.size(), false);
    std::fill(select.end() - static_cast<long>(n), select.end(), true);
    do {
        Matrix B(n, n);
        Vector d(n);
        std::size_t k = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!select[i]) continue;
            B.set_row(k, rows[i]);
            d[k] = rhs[i];
            ++k;
        }
        Vector x;
        try {
            x = solve_linear(B, d);
        } catch (const SingularMatrix&) {
            continue;
        }
        bool ok = true;
        for (std::size_t i = 0; i < rows.size() && ok; ++i)
            if (dot(rows[i], x) > rhs[i] + 1e-7) ok = false;
        if (!ok) continue;
        out.feasible = true;
        const double v = dot(c, x);
        if (v > out.value) {
            out.value = v;
            out.bounded_hit = true;
        }
    } while (std::next_permutation(select.begin(), select.end()));
    // origin is always a candidate when feasible
    bool origin_ok = true;
    for (std::size_t i = 0; i < m; ++i)
        if (h[i] < -1e-12) origin_ok = false;
    if (origin_ok) {
        out.feasible = true;
        out.value = std::max(out.value, 0.0);
    }
    return out;
}

}  // namespace

TEST_CASE("simple bounded maximum") {
    const auto r = solve_lp({1.0, 1.0}, Matrix{{1.0, 0.0}, {0.0, 1.0}}, {1.0, 2.0});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == doctest::Approx(3.0));
    CHECK(r.x[0] == doctest::Approx(1.0));
    CHECK(r.x[1] == doctest::Approx(2.0));
}

TEST_CASE("infeasible system detected") {
    // x <= -1 conflicts with x >= 0
    const auto r = solve_lp({1.0}, Matrix{{1.0}}, {-1.0});
    CHECK(r.status == Status::Infeasible);
}

TEST_CASE("unbounded ray detected") {
    // max x with x - y <= 1: push y up forever
    const auto r = solve_lp({1.0, 0.0}, Matrix{{1.0, -1.0}}, {1.0});
    CHECK(r.status == Status::Unbounded);

    const auto r0 = solve_lp({1.0}, Matrix(0, 1), {});
    CHECK(r0.status == Status::Unbounded);

    const auto r1 = solve_lp({-1.0}, Matrix(0, 1), {});
    REQUIRE(r1.status == Status::Optimal);
    CHECK(r1.value == doctest::Approx(0.0));
}

TEST_CASE("negative right-hand sides go through phase 1") {
    // x1 + x2 >= 2 written as -x1 - x2 <= -2; minimize x1+x2 => value 2
    const auto r = solve_lp({-1.0, -1.0}, Matrix{{-1.0, -1.0}}, {-2.0});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == doctest::Approx(-2.0));
}

TEST_CASE("classic cycling-prone program terminates at its optimum") {
    // Beale's example, stated as a maximization
    const Vector c{0.75, -150.0, 0.02, -6.0};
    const Matrix G{{0.25, -60.0, -1.0 / 25.0, 9.0},
                   {0.5, -90.0, -1.0 / 50.0, 3.0},
                   {0.0, 0.0, 1.0, 0.0}};
    const auto r = solve_lp(c, G, {0.0, 0.0, 1.0});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == doctest::Approx(0.05));
}

TEST_CASE("equality-shaped pair of inequalities") {
    // x1 + x2 <= 1 and x1 + x2 >= 1, maximize x1
    const Matrix G{{1.0, 1.0}, {-1.0, -1.0}};
    const auto r = solve_lp({1.0, 0.0}, G, {1.0, -1.0});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(r.x[1] == doctest::Approx(0.0));
}

TEST_CASE("redundant constraints keep a clean optimum") {
    const Matrix G{{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    const auto r = solve_lp({2.0, 1.0}, G, {1.0, 1.0, 5.0, 4.0});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == doctest::Approx(2.0 + 3.0));
    CHECK(r.x[0] == doctest::Approx(1.0));
    CHECK(r.x[1] == doctest::Approx(3.0));
}

TEST_CASE("random programs agree with the vertex-enumeration oracle") {
    Rng rng(424242);
    int bounded_checked = 0, infeasible_checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 + rng.below(2);  // 2..3 variables
        const std::size_t m = 2 + rng.below(4);  // 2..5 constraints
        Matrix G(m, n);
        Vector h(m), c(n);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) G(i, j) = std::round(4.0 * rng.normal());
            h[i] = std::round(4.0 * rng.normal());
        }
        for (std::size_t j = 0; j < n; ++j) c[j] = std::round(4.0 * rng.normal());

        const auto mine = solve_lp(c, G, h);
        const auto oracle = brute_force_lp(c, G, h);

        if (mine.status == Status::Infeasible) {
            CHECK_FALSE(oracle.feasible);
            ++infeasible_checked;
        } else if (mine.status == Status::Optimal) {
            REQUIRE(oracle.feasible);
            CHECK(mine.value == doctest::Approx(oracle.value).epsilon(1e-7));
            // returned point must itself be feasible
            for (std::size_t i = 0; i < m; ++i)
                CHECK(dot(G.row(i), mine.x) <= h[i] + 1e-7);
            for (double xj : mine.x) CHECK(xj >= -1e-9);
            ++bounded_checked;
        } else {
            // unbounded: oracle's best vertex must not exceed what some ray improves;
            // feasibility at least must agree
            CHECK(oracle.feasible);
        }
    }
    CHECK(bounded_checked >= 100);
    CHECK(infeasible_checked >= 20);
}
