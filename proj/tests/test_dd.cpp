#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "conecert/dd.hpp"
#include "conecert/linalg.hpp"
#include "conecert/matrix.hpp"
#include "conecert/rng.hpp"

using namespace conecert;
using dd::HalfspaceCone;

namespace {

Vector unit(Vector v) {
    const double n = norm2(v);
    for (double& x : v) x /= n;
    return v;
}

bool close_dir(const Vector& a, const Vector& b, double tol = 1e-7) {
    Vector d = unit(a) - unit(b);
    return norm_inf(d) <= tol;
}

// Set equality of ray lists up to order and positive scaling.
bool same_ray_set(std::vector<Vector> a, std::vector<Vector> b, double tol = 1e-7) {
    if (a.size() != b.size()) return false;
    dd::canonicalize(a);
    dd::canonicalize(b);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!close_dir(a[i], b[i], tol)) return false;
    return true;
}

// Independent extreme-ray enumerator for n <= 3: a ray of a pointed cone
// {x : Fx >= 0} is tight on n-1 independent facets, so every candidate is a
// kernel vector of an (n-1)-subset of rows, signed to be feasible.
std::vector<Vector> oracle_extreme_rays(const std::vector<Vector>& facets, std::size_t n) {
    std::vector<Vector> cand;
    const std::size_t m = facets.size();
    std::vector<std::size_t> pick(n - 1);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                            std::size_t depth) {
        if (depth == n - 1) {
            Matrix S(n - 1, n);
            for (std::size_t i = 0; i + 1 < n; ++i) S.set_row(i, facets[pick[i]]);
            if (rank(S) + 1 != n) return;
            const auto ker = nullspace(S);
            if (ker.size() != 1) return;
            for (const double s : {1.0, -1.0}) {
                Vector v = s * ker[0];
                bool feasible = true;
                for (const Vector& f : facets)
                    if (dot(f, v) < -1e-7 * norm2(f)) {
                        feasible = false;
                        break;
                    }
                if (!feasible) continue;
                if (std::none_of(cand.begin(), cand.end(),
                                 [&](const Vector& c) { return close_dir(c, v, 1e-9); }))
                    cand.push_back(std::move(v));
            }
            return;
        }
        for (std::size_t i = start; i + (n - 2 - depth) < m; ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return dd::minimal_rays(std::move(cand));
}

std::vector<Vector> random_integer_facets(Rng& rng, std::size_t n, std::size_t m) {
    std::vector<Vector> facets;
    while (facets.size() < m) {
        Vector f(n);
        for (double& x : f) x = static_cast<double>(rng.below(7)) - 3.0;
        if (norm2(f) > 0.0) facets.push_back(std::move(f));
    }
    return facets;
}

}  // namespace

TEST_CASE("orthant facets convert to the standard basis rays") {
    for (std::size_t n : {1u, 2u, 3u, 5u}) {
        std::vector<Vector> facets;
        for (std::size_t i = 0; i < n; ++i) {
            Vector e(n, 0.0);
            e[i] = 1.0;
            facets.push_back(e);
        }
        const HalfspaceCone cone = dd::rays_from_facets(facets, n);
        CHECK(cone.lineality.empty());
        CHECK(same_ray_set(cone.rays, facets));
    }
}

TEST_CASE("wedge facets and generators pin each other down") {
    // {x : x2 >= 0, x1 - x2 >= 0} has extreme rays (1,0) and (1,1).
    const std::vector<Vector> facets = {{0.0, 1.0}, {1.0, -1.0}};
    const HalfspaceCone cone = dd::rays_from_facets(facets, 2);
    CHECK(cone.lineality.empty());
    CHECK(same_ray_set(cone.rays, {{1.0, 0.0}, {1.0, 1.0}}));

    // Dual direction: the rays, read as halfspace normals, describe the dual
    // cone, whose rays are the original facet normals.
    const HalfspaceCone dual = dd::rays_from_facets(cone.rays, 2);
    CHECK(dual.lineality.empty());
    CHECK(same_ray_set(dual.rays, facets));
}

TEST_CASE("lineality is reported for halfspaces and slabs") {
    SUBCASE("no facets leaves the whole space") {
        const HalfspaceCone cone = dd::rays_from_facets({}, 3);
        CHECK(cone.rays.empty());
        CHECK(cone.lineality.size() == 3);
    }
    SUBCASE("single halfspace in the plane") {
        const HalfspaceCone cone = dd::rays_from_facets({{1.0, 0.0}}, 2);
        REQUIRE(cone.lineality.size() == 1);
        CHECK(std::abs(cone.lineality[0][0]) < 1e-12);
        CHECK(same_ray_set(cone.rays, {{1.0, 0.0}}));
    }
    SUBCASE("opposing facets collapse to a line") {
        const HalfspaceCone cone = dd::rays_from_facets({{1.0, 0.0}, {-1.0, 0.0}}, 2);
        CHECK(cone.rays.empty());
        REQUIRE(cone.lineality.size() == 1);
        CHECK(std::abs(cone.lineality[0][0]) < 1e-12);
    }
    SUBCASE("four opposing facets collapse to the origin") {
        const HalfspaceCone cone = dd::rays_from_facets(
            {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}, 2);
        CHECK(cone.rays.empty());
        CHECK(cone.lineality.empty());
    }
}

TEST_CASE("flat cone inside a plane keeps a single ray") {
    // {x1 = 0, x2 >= 0} in the plane: one ray, no lineality, not solid.
    const HalfspaceCone cone =
        dd::rays_from_facets({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}}, 2);
    CHECK(cone.lineality.empty());
    CHECK(same_ray_set(cone.rays, {{0.0, 1.0}}));
}

TEST_CASE("conic hull membership and minimality") {
    const std::vector<Vector> rays = {{1.0, 0.0}, {0.0, 1.0}};
    CHECK(dd::in_conic_hull({1.0, 1.0}, rays));
    CHECK(dd::in_conic_hull({0.0, 0.0}, rays));
    CHECK(dd::in_conic_hull({3.0, 0.5}, rays));
    CHECK_FALSE(dd::in_conic_hull({-1.0, 0.0}, rays));
    CHECK_FALSE(dd::in_conic_hull({1.0, -0.2}, rays));

    const auto kept = dd::minimal_rays({{1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    CHECK(same_ray_set(kept, rays));
}

TEST_CASE("polygonal cross-section keeps every tangent ray") {
    // Sixteen halfspaces tangent to a circular cross-section give a pointed
    // cone whose rays sit on exactly two tight facets each.
    const std::size_t m = 16;
    std::vector<Vector> facets;
    for (std::size_t i = 0; i < m; ++i) {
        const double t = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(m);
        facets.push_back({std::cos(t), std::sin(t), 1.0});
    }
    const HalfspaceCone cone = dd::rays_from_facets(facets, 3);
    CHECK(cone.lineality.empty());
    CHECK(cone.rays.size() == m);
    for (const Vector& r : cone.rays) {
        std::size_t tight = 0;
        for (const Vector& f : facets) {
            const double d = dot(f, r);
            CHECK(d >= -1e-9);
            if (std::abs(d) <= 1e-7) ++tight;
        }
        CHECK(tight == 2);
    }
}

TEST_CASE("random low-dimensional cones agree with subset enumeration") {
    Rng rng(20240518);
    std::size_t pointed_checked = 0;
    std::size_t lineal_checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 + rng.below(2);
        const std::size_t m = 2 + rng.below(4);
        const auto facets = random_integer_facets(rng, n, m);

        Matrix F(m, n);
        for (std::size_t i = 0; i < m; ++i) F.set_row(i, facets[i]);
        const std::size_t full_rank = rank(F);

        const HalfspaceCone cone = dd::rays_from_facets(facets, n);
        CHECK(cone.lineality.size() == n - full_rank);
        for (const Vector& l : cone.lineality)
            for (const Vector& f : facets) CHECK(std::abs(dot(f, l)) < 1e-9);
        for (const Vector& r : cone.rays)
            for (const Vector& f : facets) CHECK(dot(f, r) >= -1e-8);

        if (!cone.lineality.empty()) {
            ++lineal_checked;
            continue;
        }
        ++pointed_checked;
        const auto expect = oracle_extreme_rays(facets, n);
        CHECK(same_ray_set(cone.rays, expect));
        if (!same_ray_set(cone.rays, expect)) {
            CAPTURE(trial);
            CAPTURE(n);
            CAPTURE(m);
            break;
        }
    }
    CHECK(pointed_checked >= 150);
    CHECK(lineal_checked >= 20);
}

TEST_CASE("round trip through the dual recovers the minimal generators") {
    Rng rng(77001);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng.below(3);
        const std::size_t k = n + (n + 1) / 2;
        std::vector<Vector> rays;
        for (std::size_t j = 0; j < k; ++j) {
            Vector r(n);
            for (std::size_t i = 0; i + 1 < n; ++i) r[i] = rng.uniform(-0.6, 0.6);
            r[n - 1] = 1.0;
            rays.push_back(unit(std::move(r)));
        }

        const HalfspaceCone dual = dd::rays_from_facets(rays, n);
        REQUIRE(dual.lineality.empty());  // primal cone is solid
        REQUIRE(!dual.rays.empty());

        const HalfspaceCone back = dd::rays_from_facets(dual.rays, n);
        CHECK(back.lineality.empty());
        CHECK(same_ray_set(back.rays, dd::minimal_rays(rays)));
    }
}

TEST_CASE("conversion output is bitwise deterministic") {
    Rng rng(9090);
    const auto facets = random_integer_facets(rng, 3, 5);
    const HalfspaceCone a = dd::rays_from_facets(facets, 3);
    const HalfspaceCone b = dd::rays_from_facets(facets, 3);
    REQUIRE(a.rays.size() == b.rays.size());
    for (std::size_t i = 0; i < a.rays.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(a.rays[i][j] == b.rays[i][j]);
}
