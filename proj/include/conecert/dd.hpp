#pragma once

#include <vector>

#include "conecert/matrix.hpp"

namespace conecert::dd {

// Generator view of {x : <f, x> >= 0 for every f in facets}.
struct HalfspaceCone {
    std::vector<Vector> rays;       // unit extreme rays of the pointed part
    std::vector<Vector> lineality;  // orthonormal basis; empty iff pointed
};

// Motzkin double description: halfspaces inserted one at a time into the
// full space, rays combined across the new hyperplane under a combinatorial
// adjacency test. At most 64 facets (tight sets are kept in one word).
HalfspaceCone rays_from_facets(const std::vector<Vector>& facets, std::size_t n);

// Drops rays that are nonnegative combinations of the others (LP test).
std::vector<Vector> minimal_rays(std::vector<Vector> rays);

// True when r is a nonnegative combination of the given rays.
bool in_conic_hull(const Vector& r, const std::vector<Vector>& rays);

// Deterministic canonical order: unit-normalize then sort lexicographically.
void canonicalize(std::vector<Vector>& rays);

}  // namespace conecert::dd
