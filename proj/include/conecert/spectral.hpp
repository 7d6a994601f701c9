#pragma once

#include <cstdint>
#include <optional>

#include "conecert/cone.hpp"
#include "conecert/matrix.hpp"
#include "conecert/policy.hpp"
#include "conecert/semicone.hpp"

namespace conecert {

// Perron-Frobenius diagnostics of a matrix relative to a cone: is the
// spectral radius an eigenvalue carrying an eigenvector inside the cone, and
// is it strictly dominant with interior right and left vectors?
struct PFReport {
    double rho = 0.0;
    bool has_pf = false;
    bool has_strong_pf = false;
    std::optional<Vector> right_vector;  // unit; sign fixed by the better cone margin
    std::optional<Vector> left_vector;   // unit; tested against the dual cone
    double right_margin = 0.0;           // meaningful only when right_vector is set
    double left_margin = 0.0;            // meaningful only when left_vector is set
    double dominance_gap = 0.0;          // rho minus the second eigenvalue modulus
    bool simple = false;                 // gap clears the eigen tolerance
};

// has_pf: rho > 0, rho is an eigenvalue, and some eigenvector for rho lies in
// K (both signs tried, better margin kept). has_strong_pf additionally needs
// a simple dominant modulus, the right vector interior to K, and, when
// with_left is set, the left vector interior to K*.
PFReport pf_properties(const Matrix& A, const Cone& K,
                       const NumericPolicy& policy = default_policy(), bool with_left = true);

// Same diagnostics with membership relative to a semipositive cone; dual
// margins come from the sampled semicone_dual_margin oracle, so interiority
// of the left vector is a sampled claim for non-polyhedral parents.
PFReport pf_properties(const Matrix& A, const SemipositiveCone& SC,
                       const NumericPolicy& policy = default_policy(), bool with_left = true,
                       std::uint64_t seed = 0);

// Smallest k0 <= k_max such that A^k pushes the cone boundary strictly
// inside for four consecutive powers starting at k0 (window clipped at
// k_max); nullopt when no such run exists. Polyhedral cones sweep their
// generators, other kinds probe 200 seeded boundary samples; images are
// unit-normalized before the margin test, so the probe is scale-free per
// sample. Throws Overflow once the accumulated power outgrows 1e12; rescale
// A by 1/rho and retry.
std::optional<std::size_t> eventual_positivity(const Matrix& A, const Cone& K,
                                               std::size_t k_max,
                                               const NumericPolicy& policy = default_policy(),
                                               std::uint64_t seed = 0);

}  // namespace conecert
