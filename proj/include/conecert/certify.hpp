#pragma once

#include <cstdint>
#include <vector>

#include "conecert/cone.hpp"
#include "conecert/matrix.hpp"
#include "conecert/policy.hpp"

namespace conecert {

enum class CertificateOutcome { SemipositiveWitness, DualCertificate, Inconclusive };

// Outcome of the two-sided semipositivity search. Exactly one side can
// genuinely succeed; the margins are always re-evaluated from the returned
// vector, never taken from solver state.
struct Certificate {
    CertificateOutcome outcome = CertificateOutcome::Inconclusive;
    Vector vector;           // witness x, or unit-norm dual certificate y
    double margin1 = 0.0;    // witness: margin(x, K1); dual: margin(y, K2*)
    double margin2 = 0.0;    // witness: margin(Ax, K2); dual: margin(-A'y, K1*)
    double best_margin = 0.0;  // best primal min-margin seen (Inconclusive detail)
};

struct NonnegativityReport {
    bool nonnegative = false;
    bool exact = false;  // generator enumeration vs grid/descent sampling
    std::size_t checked_rays = 0;
    Vector counterexample;   // x in K1 with Ax outside K2, when !nonnegative
    double worst_margin = 0.0;  // smallest margin(Ax, K2) observed
};

// Constructive refutation of nonnegativity: x catches A leaving K2, y
// separates, and B = v z' / <y,v> is a semipositive matrix whose addition
// to A kills semipositivity (y'(A+B) = 0).
struct RefutationBundle {
    Vector x;  // interior of K1 with Ax outside K2
    Vector y;  // interior of K2* with <Ax, y> < 0
    Vector z;  // -A'y
    Vector v;  // interior of K2
    Matrix B;  // v z' / <y, v>
};

struct LorentzRefuter {
    Matrix B;        // single nonzero last row
    Vector x;        // Lorentz vector with A'x outside the cone, x_n = 1
    Vector y;        // -A'x
    bool case_one = false;  // y inside the cone (halved last entry) vs outside
};

struct SumStabilityReport {
    std::size_t trials = 0;
    std::size_t passes = 0;
    std::vector<Matrix> failed_perturbations;  // nonempty would falsify the sum rule
};

// Decides between a strict witness (x in K1 interior, Ax in K2 interior) and
// a dual certificate (0 != y in K2* with -A'y in K1*). Polyhedral/orthant
// pairs go through an exact margin LP; other cones use projected
// supergradient ascent with restarts. Raises InternalContradiction if both
// sides pass their thresholds.
Certificate semipositivity_certificate(const Matrix& A, const Cone& K1, const Cone& K2,
                                       const NumericPolicy& policy = default_policy(),
                                       std::uint64_t seed = 0);

// Does A map K1 into K2? Exact over generator-described cones; grid plus
// descent over the Lorentz boundary sphere (transported for ellipsoidal
// cones); sampled rank-one probes on the PSD cone.
NonnegativityReport nonnegativity_check(const Matrix& A, const Cone& K1, const Cone& K2,
                                        const NumericPolicy& policy = default_policy(),
                                        std::uint64_t seed = 0);

// From a nonnegativity counterexample, builds the rank-one spoiler B. The
// returned bundle satisfies: margin(x,K1) > 0, margin(Ax,K2) < 0,
// margin(y,K2*) > 0, <Ax,y> < 0, <y,v> > 0, and y'(A+B) = 0 to 1e-9 scale,
// so A+B has y as a dual certificate while B itself is semipositive at x.
RefutationBundle refute_nonnegativity(const Matrix& A, const Cone& K1, const Cone& K2,
                                      const NumericPolicy& policy = default_policy(),
                                      std::uint64_t seed = 0);

// Lorentz-specific spoiler with a single nonzero row, driven by a transpose
// certificate x (A'x outside the cone). Case one: -A'x back inside, tweak
// only the last entry scale; case two: the full last row is -(A'x)'/x_n.
LorentzRefuter lorentz_transpose_refuter(const Matrix& A,
                                         const NumericPolicy& policy = default_policy(),
                                         std::uint64_t seed = 0);

// Conjugation T A T^{-1}; membership in pi/S transports along T(K).
Matrix transport_conjugate(const Matrix& A, const Matrix& T, const Cone& K);

// The image cone T(K) in a computable representation.
Cone transport_cone(const Matrix& T, const Cone& K);

// Samples random semipositive perturbations B and asserts A + B stays
// semipositive (requires A nonnegative). Failures are returned, not hidden.
SumStabilityReport verify_sum_stability(const Matrix& A, const Cone& K1, const Cone& K2,
                                        std::size_t trials, std::uint64_t seed,
                                        const NumericPolicy& policy = default_policy());

}  // namespace conecert
