#pragma once

#include <cstdint>
#include <vector>

#include "conecert/cone.hpp"
#include "conecert/matrix.hpp"

namespace conecert {

// One objective term margin(M x, C); a null M stands for the identity map.
struct MarginTerm {
    const Matrix* M = nullptr;
    const Cone* C = nullptr;
};

double margin_term_value(const MarginTerm& t, const Vector& x);
double min_margin(const std::vector<MarginTerm>& terms, const Vector& x);

// Supergradient of the concave, positively homogeneous map x -> margin(x, K).
Vector margin_supergradient(const Vector& x, const Cone& K);

struct MarginSearchResult {
    double value;
    Vector arg;
};

// Maximize min_i margin(M_i x, C_i) over a normalized x. When every cone is
// facet-representable this is an exact LP over the unit box (an optional
// slice <slice, x> = 1 pins the scale and cuts off x = 0); otherwise
// projected supergradient ascent over the unit sphere with restarts, followed
// by deterministic snapping candidates. Deterministic in (terms, seed).
MarginSearchResult max_min_margin(const std::vector<MarginTerm>& terms, std::size_t n,
                                  std::uint64_t seed, const Vector* slice = nullptr,
                                  int restarts = 32, int iters = 2000);

}  // namespace conecert
