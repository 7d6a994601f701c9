#include "conecert/dd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "conecert/errors.hpp"
#include "conecert/simplex.hpp"

namespace conecert::dd {

namespace {

constexpr double kZeroTol = 1e-9;

Vector unit(Vector v) {
    const double n = norm2(v);
    if (n > 0.0)
        for (double& x : v) x /= n;
    return v;
}

bool same_direction(const Vector& a, const Vector& b) {
    return dot(a, b) >= 1.0 - 1e-9;  // both unit
}

// Tight-set mask of a unit ray against the already-processed facets.
std::uint64_t tight_mask(const Vector& ray, const std::vector<Vector>& facets,
                         std::size_t processed) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < processed; ++i)
        if (std::abs(dot(facets[i], ray)) <= kZeroTol) mask |= (1ULL << i);
    return mask;
}

}  // namespace

HalfspaceCone rays_from_facets(const std::vector<Vector>& raw_facets, std::size_t n) {
    if (raw_facets.size() > 64)
        throw Error("rays_from_facets: more than 64 facets unsupported");
    std::vector<Vector> facets;
    facets.reserve(raw_facets.size());
    for (const Vector& f : raw_facets) {
        if (f.size() != n) throw DimensionMismatch("rays_from_facets: facet dimension");
        Vector u = unit(f);
        if (norm2(u) > 0.5) facets.push_back(std::move(u));
    }

    HalfspaceCone cone;
    cone.lineality.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, 0.0);
        e[i] = 1.0;
        cone.lineality.push_back(std::move(e));
    }

    for (std::size_t step = 0; step < facets.size(); ++step) {
        const Vector& f = facets[step];

        // Lineality first: if the new hyperplane cuts the lineality space,
        // one basis vector becomes the ray spanning the positive side.
        std::size_t pivot = cone.lineality.size();
        double pivot_d = 0.0;
        for (std::size_t i = 0; i < cone.lineality.size(); ++i) {
            const double d = dot(f, cone.lineality[i]);
            if (std::abs(d) > std::abs(pivot_d)) {
                pivot_d = d;
                pivot = i;
            }
        }
        if (pivot < cone.lineality.size() && std::abs(pivot_d) > kZeroTol) {
            Vector l0 = cone.lineality[pivot];
            if (pivot_d < 0.0) {
                for (double& x : l0) x = -x;
                pivot_d = -pivot_d;
            }
            std::vector<Vector> new_lin;
            for (std::size_t i = 0; i < cone.lineality.size(); ++i) {
                if (i == pivot) continue;
                Vector l = cone.lineality[i] - (dot(f, cone.lineality[i]) / pivot_d) * l0;
                // re-orthonormalize for stability
                for (const Vector& u : new_lin) l -= dot(u, l) * u;
                const double nl = norm2(l);
                if (nl > 1e-12) {
                    l *= 1.0 / nl;
                    new_lin.push_back(std::move(l));
                }
            }
            std::vector<Vector> new_rays;
            for (const Vector& r : cone.rays) {
                Vector rr = r - (dot(f, r) / pivot_d) * l0;
                rr = unit(std::move(rr));
                if (norm2(rr) > 0.5 &&
                    std::none_of(new_rays.begin(), new_rays.end(),
                                 [&](const Vector& q) { return same_direction(q, rr); }))
                    new_rays.push_back(std::move(rr));
            }
            new_rays.push_back(unit(std::move(l0)));
            cone.lineality = std::move(new_lin);
            cone.rays = std::move(new_rays);
            continue;
        }

        // Pure ray split.
        std::vector<double> d(cone.rays.size());
        std::vector<int> sign(cone.rays.size());
        for (std::size_t i = 0; i < cone.rays.size(); ++i) {
            d[i] = dot(f, cone.rays[i]);
            sign[i] = d[i] > kZeroTol ? 1 : (d[i] < -kZeroTol ? -1 : 0);
        }
        const bool any_negative =
            std::any_of(sign.begin(), sign.end(), [](int s) { return s < 0; });
        if (!any_negative) continue;  // facet inactive on current cone

        std::vector<std::uint64_t> masks(cone.rays.size());
        for (std::size_t i = 0; i < cone.rays.size(); ++i)
            masks[i] = tight_mask(cone.rays[i], facets, step);

        std::vector<Vector> new_rays;
        for (std::size_t i = 0; i < cone.rays.size(); ++i)
            if (sign[i] >= 0) new_rays.push_back(cone.rays[i]);

        for (std::size_t p = 0; p < cone.rays.size(); ++p) {
            if (sign[p] != 1) continue;
            for (std::size_t q = 0; q < cone.rays.size(); ++q) {
                if (sign[q] != -1) continue;
                const std::uint64_t common = masks[p] & masks[q];
                bool adjacent = true;
                for (std::size_t w = 0; w < cone.rays.size() && adjacent; ++w) {
                    if (w == p || w == q) continue;
                    if ((common & ~masks[w]) == 0) adjacent = false;
                }
                if (!adjacent) continue;
                Vector combo = d[p] * cone.rays[q] - d[q] * cone.rays[p];
                combo = unit(std::move(combo));
                if (norm2(combo) < 0.5) continue;
                if (std::none_of(new_rays.begin(), new_rays.end(), [&](const Vector& r) {
                        return same_direction(r, combo);
                    }))
                    new_rays.push_back(std::move(combo));
            }
        }
        cone.rays = std::move(new_rays);
    }

    // Final hygiene: the combinatorial test can keep a ray that became
    // redundant through numerically tight sets; one LP pass settles it.
    cone.rays = minimal_rays(std::move(cone.rays));
    canonicalize(cone.rays);
    return cone;
}

bool in_conic_hull(const Vector& r, const std::vector<Vector>& rays) {
    if (rays.empty()) return norm2(r) <= kZeroTol;
    const std::size_t n = r.size();
    const std::size_t k = rays.size();
    // feasibility of sum lambda_j rays_j = r, lambda >= 0, via paired rows
    Matrix G(2 * n, k);
    Vector h(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            G(i, j) = rays[j][i];
            G(n + i, j) = -rays[j][i];
        }
        h[i] = r[i] + 1e-9;
        h[n + i] = -r[i] + 1e-9;
    }
    return solve_lp(Vector(k, 0.0), G, h).status == LpResult::Status::Optimal;
}

std::vector<Vector> minimal_rays(std::vector<Vector> rays) {
    for (std::size_t i = 0; i < rays.size();) {
        std::vector<Vector> others;
        for (std::size_t j = 0; j < rays.size(); ++j)
            if (j != i) others.push_back(rays[j]);
        if (in_conic_hull(rays[i], others))
            rays.erase(rays.begin() + static_cast<long>(i));
        else
            ++i;
    }
    return rays;
}

void canonicalize(std::vector<Vector>& rays) {
    for (Vector& r : rays) r = unit(std::move(r));
    std::sort(rays.begin(), rays.end(), [](const Vector& a, const Vector& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i] - 1e-12) return true;
            if (a[i] > b[i] + 1e-12) return false;
        }
        return false;
    });
}

}  // namespace conecert::dd
