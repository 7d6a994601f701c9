#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "conecert/cone.hpp"
#include "conecert/matrix.hpp"
#include "conecert/policy.hpp"

namespace conecert {

// The cone of vectors that A keeps inside K: K_A = K intersect A^{-1}(K).
// Membership is always the two-margin test; the caches only accelerate and
// cross-check it. K_A inherits pointedness from K, and it is solid exactly
// when A is semipositive.
struct SemipositiveCone {
    Cone parent;
    Matrix A;
    bool polyhedral = false;            // exact caches below are populated
    std::vector<Vector> facet_cache;    // unit facets of K stacked with A-pullbacks
    std::vector<Vector> generators;     // extreme rays of K_A via double description
    std::vector<Vector> lineality;      // nonempty would mean K_A is not pointed
    std::optional<Matrix> quadric;      // Lorentz parent: pullback A' J A of the boundary form
};

SemipositiveCone build_semipositive_cone(const Matrix& A, const Cone& K);

MarginReport semicone_membership(const Vector& x, const SemipositiveCone& SC,
                                 const NumericPolicy& policy = default_policy());

struct ProperReport {
    bool solid = false;
    Vector interior_point;  // strict member of K_A when solid
    bool pointed = false;
    Vector counter_line;    // nonzero direction with both signs inside when !pointed
    bool proper() const { return solid && pointed; }
};

ProperReport is_proper(const SemipositiveCone& SC, const NumericPolicy& policy = default_policy(),
                       std::uint64_t seed = 0);

struct InvarianceReport {
    bool invariant = false;
    bool exact = false;       // generator sweep vs sampled boundary scan
    std::size_t checked = 0;  // members probed
    Vector violator;          // u in K_A with Au outside K_A, when !invariant
    double violation = 0.0;   // semicone margin of A * violator
};

InvarianceReport invariance_check(const SemipositiveCone& SC,
                                  const NumericPolicy& policy = default_policy(),
                                  std::uint64_t seed = 0);

// Unit members of K_A for sampled scans: normalized generators when the
// caches are exact, otherwise grid members, bisected boundary hits, and
// seeded interior points. Empty when no interior point can be certified and
// the cone has no generator list.
std::vector<Vector> member_sample(const SemipositiveCone& SC,
                                  const NumericPolicy& policy = default_policy(),
                                  std::uint64_t seed = 0);

// min over unit members x of <y, x>: nonnegative exactly when y lies in the
// dual cone (K_A)^*. Exact sign for polyhedral parents via the generator
// list; sampled scan plus descent refinement otherwise. Returns +infinity
// when K_A = {0} (every y is vacuously dual-interior).
double semicone_dual_margin(const Vector& y, const SemipositiveCone& SC,
                            const NumericPolicy& policy = default_policy(),
                            std::uint64_t seed = 0);

struct PowerProbe {
    enum class Status { Holds, Fails, Skipped };
    Status status = Status::Holds;
    Vector witness;  // interior point whose image escapes, when Fails
};

// Does A^k map the interior of K_A into (hence, with the inverse direction,
// onto) itself for k in {j, j+1}? Sampled probe: boundary members pushed
// inward plus seeded random interior points. For singular A the backward
// probes are skipped: onto-ness is impossible and reported as such.
struct PowerAutoReport {
    std::size_t j = 0;
    PowerProbe forward_j, forward_j1, backward_j, backward_j1;
    bool backward_skipped = false;
    bool interior_found = false;  // probes are vacuous without an interior point
    std::size_t samples = 0;
};

PowerAutoReport power_auto_hypothesis(const SemipositiveCone& SC, std::size_t j,
                                      const NumericPolicy& policy = default_policy(),
                                      std::uint64_t seed = 0);

// Over a self-dual cone, nonnegativity of A^2 forces A(K_A) inside K_A; this
// runs both checks and reports them side by side (the converse direction is
// false and deliberately not asserted).
struct SelfDualSquareReport {
    bool square_nonnegative = false;
    bool invariant = false;
    Vector violator;  // from the invariance check, when it failed
};

SelfDualSquareReport self_dual_square_test(const Matrix& A, const Cone& K,
                                           const NumericPolicy& policy = default_policy(),
                                           std::uint64_t seed = 0);

}  // namespace conecert
