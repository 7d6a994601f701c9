#include "conecert/harness.hpp"

#include <chrono>
#include <cmath>
#include <initializer_list>
#include <sstream>
#include <string>

#include "conecert/certify.hpp"
#include "conecert/cone.hpp"
#include "conecert/errors.hpp"
#include "conecert/json_io.hpp"
#include "conecert/linalg.hpp"
#include "conecert/preserve.hpp"
#include "conecert/rng.hpp"
#include "conecert/semicone.hpp"
#include "conecert/spectral.hpp"

namespace conecert {
namespace {

using nlohmann::json;
using Verdict = TrialOutcome::Verdict;

TrialOutcome pass() { return {Verdict::Pass, json()}; }
TrialOutcome inconclusive() { return {Verdict::Inconclusive, json()}; }
TrialOutcome fail(json instance) { return {Verdict::Fail, std::move(instance)}; }

Vector random_unit(Rng& rng, std::size_t n) {
    Vector v(n);
    double len = 0.0;
    while (len < 1e-9) {
        for (double& e : v) e = rng.normal();
        len = norm2(v);
    }
    v *= 1.0 / len;
    return v;
}

// n + ceil(n/2) rays in a cap around a random axis; the cone factory's
// double-description validation rejects anything improper.
Cone random_polyhedral(std::size_t n, std::uint64_t seed) {
    for (std::uint64_t attempt = 0; attempt < 200; ++attempt) {
        Rng rng(Rng::derive(seed, attempt));
        Vector center = random_unit(rng, n);
        std::vector<Vector> rays;
        for (std::size_t i = 0; i < n + (n + 1) / 2; ++i) {
            Vector r = center + 0.7 * random_unit(rng, n);
            double len = norm2(r);
            if (len < 1e-6) {
                r = center;
                len = 1.0;
            }
            rays.push_back((1.0 / len) * r);
        }
        try {
            return Cone::polyhedral_from_rays(rays);
        } catch (const Error&) {
            continue;
        }
    }
    throw InternalContradiction("random polyhedral cone generator starved");
}

std::vector<ConeTemplate> filter_pool(const std::vector<ConeTemplate>& pool,
                                      std::initializer_list<ConeTemplate> keep) {
    std::vector<ConeTemplate> out;
    for (ConeTemplate t : pool)
        for (ConeTemplate k : keep)
            if (t == k) {
                out.push_back(t);
                break;
            }
    return out;
}

Cone draw_cone(const std::vector<ConeTemplate>& pool, const SuiteConfig& cfg,
               std::uint64_t seed) {
    Rng rng(seed);
    ConeTemplate t = pool[rng.below(pool.size())];
    std::size_t n = cfg.dim_min + rng.below(cfg.dim_max - cfg.dim_min + 1);
    switch (t) {
        case ConeTemplate::Orthant:
            return Cone::orthant(n);
        case ConeTemplate::Lorentz:
            return Cone::lorentz(n);
        case ConeTemplate::RandomPolyhedral:
            return random_polyhedral(n, Rng::derive(seed, 71));
    }
    throw InternalContradiction("unhandled cone template");
}

double margin_of(const Vector& x, const Cone& K, const NumericPolicy& pol) {
    return K.membership_margin(x, pol).margin;
}

// interior point nudged off axis, shrunk until the margin stays comfortable
Vector jittered_member(const Cone& K, Rng& rng, const NumericPolicy& pol) {
    Vector base = canonical_interior_point(K);
    double mb = margin_of(base, K, pol);
    Vector dir = random_unit(rng, K.dim());
    double s = 1.5 * mb;
    while (s > 1e-9) {
        Vector cand = base + s * dir;
        if (margin_of(cand, K, pol) >= 0.25 * mb) {
            cand *= 1.0 / norm2(cand);
            return cand;
        }
        s *= 0.5;
    }
    base *= 1.0 / norm2(base);
    return base;
}

// sum of rank-one (member of K2) x (member of K1*)' products: maps K1 into
// K2 by construction
Matrix built_nonnegative(const Cone& K1, const Cone& K2, Rng& rng, const NumericPolicy& pol) {
    Cone D1 = K1.dual();
    Matrix A(K2.dim(), K1.dim());
    std::size_t terms = std::max(K1.dim(), K2.dim());
    for (std::size_t i = 0; i < terms; ++i) {
        Vector u = jittered_member(K2, rng, pol);
        Vector f = jittered_member(D1, rng, pol);
        A = A + rng.uniform(0.2, 1.5) * Matrix::outer(u, f);
    }
    return A;
}

Matrix generic_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix A(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) A(i, j) = rng.normal();
    return A;
}

Matrix draw_mixed(const Cone& K1, const Cone& K2, Rng& rng, const NumericPolicy& pol,
                  double nonneg_share) {
    if (rng.uniform() < nonneg_share) return built_nonnegative(K1, K2, rng, pol);
    return generic_matrix(K2.dim(), K1.dim(), rng);
}

json problem_json(const Matrix& A, const Cone& K1, const Cone& K2, std::uint64_t seed) {
    json pj;
    pj["matrix"] = matrix_to_json(A);
    pj["cone1"] = cone_to_json(K1);
    pj["cone2"] = cone_to_json(K2);
    pj["options"] = {{"seed", seed}};
    return pj;
}

// (a) the certificate search returns exactly one validated side
TrialOutcome prop_exclusivity(const SuiteConfig& cfg, std::uint64_t ts) {
    const NumericPolicy pol = cfg.policy();
    Cone K1 = draw_cone(cfg.cone_pool, cfg, Rng::derive(ts, 2));
    Cone K2 = draw_cone(cfg.cone_pool, cfg, Rng::derive(ts, 3));
    Rng rng(Rng::derive(ts, 1));
    Matrix A = draw_mixed(K1, K2, rng, pol, 0.4);
    json pj = problem_json(A, K1, K2, ts);
    try {
        Certificate cert = semipositivity_certificate(A, K1, K2, pol, Rng::derive(ts, 4));
        if (cert.outcome == CertificateOutcome::Inconclusive) return inconclusive();
        bool ok = false;
        if (cert.outcome == CertificateOutcome::SemipositiveWitness) {
            const Vector& x = cert.vector;
            ok = margin_of(x, K1, pol) > pol.interior &&
                 margin_of(A * x, K2, pol) > pol.interior;
        } else {
            const Vector& y = cert.vector;
            ok = std::abs(norm2(y) - 1.0) <= 1e-6 &&
                 margin_of(y, K2.dual(), pol) >= -pol.membership &&
                 margin_of(-(A.transpose() * y), K1.dual(), pol) >= -pol.membership;
        }
        return ok ? pass() : fail(pj);
    } catch (const InternalContradiction&) {
        // both sides validated: the alternatives failed to exclude
        return fail(pj);
    }
}

// (b) nonnegativity agrees with the transposed problem between the duals,
// on the exact (generator-enumerating) cone kinds
TrialOutcome prop_transpose_duality(const SuiteConfig& cfg, std::uint64_t ts) {
    const NumericPolicy pol = cfg.policy();
    auto pool = filter_pool(cfg.cone_pool,
                            {ConeTemplate::Orthant, ConeTemplate::RandomPolyhedral});
    if (pool.empty()) return inconclusive();
    Cone K1 = draw_cone(pool, cfg, Rng::derive(ts, 2));
    Cone K2 = draw_cone(pool, cfg, Rng::derive(ts, 3));
    Rng rng(Rng::derive(ts, 1));
    Matrix A = draw_mixed(K1, K2, rng, pol, 0.5);
    bool direct = nonnegativity_check(A, K1, K2, pol, Rng::derive(ts, 4)).nonnegative;
    bool dualed = nonnegativity_check(A.transpose(), K2.dual(), K1.dual(), pol,
                                      Rng::derive(ts, 5))
                      .nonnegative;
    if (direct == dualed) return pass();
    return fail(problem_json(A, K1, K2, ts));
}

// (c) a constructed nonnegative A plus a random semipositive B stays
// semipositive
TrialOutcome prop_sum_stability(const SuiteConfig& cfg, std::uint64_t ts) {
    const NumericPolicy pol = cfg.policy();
    Cone K1 = draw_cone(cfg.cone_pool, cfg, Rng::derive(ts, 2));
    Cone K2 = draw_cone(cfg.cone_pool, cfg, Rng::derive(ts, 3));
    Rng rng(Rng::derive(ts, 1));
    Matrix A = built_nonnegative(K1, K2, rng, pol);
    json pj = problem_json(A, K1, K2, ts);
    try {
        SumStabilityReport rep = verify_sum_stability(A, K1, K2, 1, Rng::derive(ts, 5), pol);
        if (rep.passes == rep.trials && rep.failed_perturbations.empty()) return pass();
        return fail(pj);
    } catch (const PreconditionViolated&) {
        // the sampled A grazed the nonnegativity tolerance; not this
        // property's subject
        return inconclusive();
    }
}

// (d) a non-nonnegative A yields a spoiler bundle whose five invariants and
// terminal dual certificate all re-verify
TrialOutcome prop_refuter_round_trip(const SuiteConfig& cfg, std::uint64_t ts) {
    const NumericPolicy pol = cfg.policy();
    Cone K1 = draw_cone(cfg.cone_pool, cfg, Rng::derive(ts, 2));
    Cone K2 = draw_cone(cfg.cone_pool, cfg, Rng::derive(ts, 3));
    Rng rng(Rng::derive(ts, 1));
    Matrix A;
    bool found = false;
    for (int k = 0; k < 8 && !found; ++k) {
        A = generic_matrix(K2.dim(), K1.dim(), rng);
        found = !nonnegativity_check(A, K1, K2, pol, Rng::derive(ts, 20 + k)).nonnegative;
    }
    if (!found) return inconclusive();
    json pj = problem_json(A, K1, K2, ts);
    try {
        RefutationBundle b = refute_nonnegativity(A, K1, K2, pol, Rng::derive(ts, 6));
        Matrix sum = A + b.B;
        Vector residual = sum.transpose() * b.y;
        bool ok = margin_of(b.x, K1, pol) > 0.0 && margin_of(A * b.x, K2, pol) < 0.0 &&
                  margin_of(b.y, K2.dual(), pol) > 0.0 && dot(A * b.x, b.y) < 0.0 &&
                  dot(b.y, b.v) > 0.0 &&
                  norm_inf(residual) <= 1e-9 * (A.max_abs() + b.B.max_abs());
        if (!ok) return fail(pj);
        Certificate cert = semipositivity_certificate(sum, K1, K2, pol, Rng::derive(ts, 7));
        if (cert.outcome == CertificateOutcome::Inconclusive) return inconclusive();
        if (cert.outcome != CertificateOutcome::DualCertificate) return fail(pj);
        return pass();
    } catch (const Error&) {
        return fail(pj);
    }
}

// (e) semipositivity verdicts transport along T A T^{-1} over T(K)
TrialOutcome prop_conjugation_transport(const SuiteConfig& cfg, std::uint64_t ts) {
    const NumericPolicy pol = cfg.policy();
    Cone K = draw_cone(cfg.cone_pool, cfg, Rng::derive(ts, 2));
    Rng rng(Rng::derive(ts, 1));
    Matrix A = draw_mixed(K, K, rng, pol, 0.4);
    const std::size_t n = K.dim();
    Matrix T;
    bool usable = false;
    for (int k = 0; k < 20 && !usable; ++k) {
        T = Matrix::identity(n) + 0.4 * generic_matrix(n, n, rng);
        usable = std::abs(determinant(T)) >= 0.2;
    }
    if (!usable) return inconclusive();
    json pj = problem_json(A, K, K, ts);
    try {
        Cone KT = transport_cone(T, K);
        Matrix A2 = transport_conjugate(A, T, K);
        auto c1 = semipositivity_certificate(A, K, K, pol, Rng::derive(ts, 8)).outcome;
        auto c2 = semipositivity_certificate(A2, KT, KT, pol, Rng::derive(ts, 9)).outcome;
        if (c1 == CertificateOutcome::Inconclusive || c2 == CertificateOutcome::Inconclusive)
            return inconclusive();
        return c1 == c2 ? pass() : fail(pj);
    } catch (const Error&) {
        // ill-conditioned transported cone; instance unusable, not a failure
        return inconclusive();
    }
}

// (f) over a self-dual cone, A^2 nonnegative forces the semipositive cone
// invariant under A (one-directional; the converse is false)
TrialOutcome prop_self_dual_square(const SuiteConfig& cfg, std::uint64_t ts) {
    const NumericPolicy pol = cfg.policy();
    auto pool = filter_pool(cfg.cone_pool, {ConeTemplate::Orthant, ConeTemplate::Lorentz});
    if (pool.empty()) return inconclusive();
    Cone K = draw_cone(pool, cfg, Rng::derive(ts, 2));
    Rng rng(Rng::derive(ts, 1));
    const std::size_t n = K.dim();
    // mix keeps the premise non-vacuous: nonnegative A and negated
    // nonnegative A both have nonnegative squares
    Matrix A;
    switch (rng.below(3)) {
        case 0:
            A = built_nonnegative(K, K, rng, pol) + 0.05 * Matrix::identity(n);
            break;
        case 1:
            A = -1.0 * (built_nonnegative(K, K, rng, pol) + 0.05 * Matrix::identity(n));
            break;
        default: {
            A = generic_matrix(n, n, rng);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) A(i, j) = std::round(A(i, j) * 10.0) / 10.0;
            break;
        }
    }
    if (std::abs(determinant(A)) < 1e-10) return inconclusive();
    json pj = problem_json(A, K, K, ts);
    SelfDualSquareReport rep = self_dual_square_test(A, K, pol, Rng::derive(ts, 5));
    if (!rep.square_nonnegative || rep.invariant) return pass();
    return fail(pj);
}

TrialOutcome dispatch(SuiteProperty p, const SuiteConfig& cfg, std::uint64_t ts) {
    switch (p) {
        case SuiteProperty::Exclusivity:
            return prop_exclusivity(cfg, ts);
        case SuiteProperty::TransposeDuality:
            return prop_transpose_duality(cfg, ts);
        case SuiteProperty::SumStability:
            return prop_sum_stability(cfg, ts);
        case SuiteProperty::RefuterRoundTrip:
            return prop_refuter_round_trip(cfg, ts);
        case SuiteProperty::ConjugationTransport:
            return prop_conjugation_transport(cfg, ts);
        case SuiteProperty::SelfDualSquare:
            return prop_self_dual_square(cfg, ts);
    }
    throw InternalContradiction("unhandled suite property");
}

void validate(const SuiteConfig& cfg) {
    if (cfg.trials == 0) throw PreconditionViolated("suite needs at least one trial");
    if (cfg.cone_pool.empty()) throw PreconditionViolated("empty cone pool");
    if (cfg.dim_min < 1 || cfg.dim_min > cfg.dim_max)
        throw PreconditionViolated("dimension range is empty");
    if (cfg.dim_max > 8) throw PreconditionViolated("suite dimensions cap at n = 8");
    for (ConeTemplate t : cfg.cone_pool)
        if (t == ConeTemplate::Lorentz && (cfg.dim_max > 4 || cfg.dim_min < 2))
            throw PreconditionViolated(
                "grid-backed circular-cone decisions need 2 <= n <= 4");
}

void tally(PropertyResult& r, const TrialOutcome& out) {
    switch (out.verdict) {
        case Verdict::Pass:
            ++r.pass;
            break;
        case Verdict::Fail:
            ++r.fail;
            r.counterexamples.push_back(out.counterexample);
            break;
        case Verdict::Inconclusive:
            ++r.inconclusive;
            break;
    }
}

}  // namespace

const char* suite_property_name(SuiteProperty p) {
    switch (p) {
        case SuiteProperty::Exclusivity:
            return "exclusivity";
        case SuiteProperty::TransposeDuality:
            return "transpose-duality";
        case SuiteProperty::SumStability:
            return "sum-stability";
        case SuiteProperty::RefuterRoundTrip:
            return "refuter-round-trip";
        case SuiteProperty::ConjugationTransport:
            return "conjugation-transport";
        case SuiteProperty::SelfDualSquare:
            return "self-dual-square";
    }
    return "unknown";
}

TrialOutcome run_property_trial(SuiteProperty p, const SuiteConfig& cfg, std::size_t trial) {
    validate(cfg);
    std::uint64_t stream = Rng::derive(cfg.seed, 101 + static_cast<std::uint64_t>(p));
    return dispatch(p, cfg, Rng::derive(stream, trial));
}

bool SuiteReport::all_pass() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
    std::size_t total = 0;
    for (const PropertyResult& r : properties) total += r.fail;
    return total;
}

SuiteReport run_theorem_suite(const SuiteConfig& cfg) {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();

    SuiteReport rep;
    rep.suite = "theorems";
    rep.seed = cfg.seed;
    const SuiteProperty props[kSuitePropertyCount] = {
        SuiteProperty::Exclusivity,          SuiteProperty::TransposeDuality,
        SuiteProperty::SumStability,         SuiteProperty::RefuterRoundTrip,
        SuiteProperty::ConjugationTransport, SuiteProperty::SelfDualSquare,
    };
    for (SuiteProperty p : props) {
        PropertyResult r;
        r.name = suite_property_name(p);
        rep.properties.push_back(r);
    }
    // trials are independent given their derived seeds; the sequential order
    // here is for reproducibility of nothing but the wall clock
    for (std::size_t t = 0; t < cfg.trials; ++t)
        for (std::size_t p = 0; p < kSuitePropertyCount; ++p)
            tally(rep.properties[p], run_property_trial(props[p], cfg, t));

    rep.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace {

// fixtures shared by the golden assertions
const Matrix kRotScale{{1.0, -1.0}, {1.0, 1.0}};
const Matrix kSpiral{{1.0, 1.0, -1.0}, {-1.0, 1.0, 1.0}, {0.0, 2.0, 2.0}};
const Matrix kShearDown{{1.0, 0.0}, {1.0, -1.0}};
const Matrix kShearUp{{1.0, 0.0}, {-1.0, 1.0}};

double quad_value(const Matrix& Q, const Vector& x) { return dot(x, Q * x); }

}  // namespace

SuiteReport run_golden_examples() {
    const NumericPolicy pol = default_policy();
    SuiteReport rep;
    rep.suite = "examples";
    rep.seed = 0;

    auto golden = [&rep](const std::string& name, json instance, auto&& body) {
        PropertyResult r;
        r.name = name;
        bool ok = false;
        try {
            ok = body();
        } catch (const Error&) {
            ok = false;
        }
        if (ok) {
            r.pass = 1;
        } else {
            r.fail = 1;
            r.counterexamples.push_back(std::move(instance));
        }
        rep.properties.push_back(std::move(r));
    };

    const Cone L2 = Cone::lorentz(2);
    const Cone L3 = Cone::lorentz(3);
    const Cone O2 = Cone::orthant(2);
    const json ex1_pj = problem_json(kRotScale, L2, L2, 0);
    const json ex2_pj = problem_json(kSpiral, L3, L3, 0);

    // --- 2x2 rotation-scale block ---
    golden("ex1.semipositive-witness", ex1_pj, [&] {
        Certificate c = semipositivity_certificate(kRotScale, L2, L2, pol, 0);
        return c.outcome == CertificateOutcome::SemipositiveWitness &&
               margin_of(c.vector, L2, pol) > pol.interior &&
               margin_of(kRotScale * c.vector, L2, pol) > pol.interior;
    });
    golden("ex1.square-dual-certificate", problem_json(kRotScale * kRotScale, L2, L2, 0), [&] {
        Matrix sq = kRotScale * kRotScale;
        Certificate c = semipositivity_certificate(sq, L2, L2, pol, 0);
        if (c.outcome != CertificateOutcome::DualCertificate) return false;
        // the stated certificate direction (1,1) is itself valid
        Vector y{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
        return margin_of(y, L2, pol) >= -pol.membership &&
               margin_of(-(sq.transpose() * y), L2, pol) >= -pol.membership;
    });
    golden("ex1.image-on-boundary", ex1_pj, [&] {
        Vector u{-1.0, 1.0};
        MarginReport m = L2.membership_margin(u, pol);
        return m.classification == PointClass::Boundary && std::abs(m.margin) <= 1e-12;
    });
    golden("ex1.semicone-shape", ex1_pj, [&] {
        // K_A is the wedge {x1 >= 0, x2 >= x1}: extreme rays (0,1) and (1,1)
        SemipositiveCone sc = build_semipositive_cone(kRotScale, L2);
        if (!sc.quadric) return false;
        const Matrix want{{0.0, 2.0}, {2.0, 0.0}};
        if ((*sc.quadric - want).max_abs() != 0.0) return false;
        auto cls = [&](double a, double b) {
            return semicone_membership(Vector{a, b}, sc, pol).classification;
        };
        return cls(0.0, 1.0) == PointClass::Boundary && cls(1.0, 1.0) == PointClass::Boundary &&
               cls(1.0, 2.0) == PointClass::Interior && cls(1.0, 0.0) == PointClass::Outside &&
               cls(-1.0, 1.0) == PointClass::Outside;
    });
    golden("ex1.invariance-violated", ex1_pj, [&] {
        SemipositiveCone sc = build_semipositive_cone(kRotScale, L2);
        InvarianceReport inv = invariance_check(sc, pol, 0);
        if (inv.invariant) return false;
        Vector u{0.0, 1.0};
        return semicone_membership(u, sc, pol).classification != PointClass::Outside &&
               semicone_membership(kRotScale * u, sc, pol).margin < -pol.interior;
    });
    golden("ex1.square-rule-premise-fails", ex1_pj, [&] {
        SelfDualSquareReport r = self_dual_square_test(kRotScale, L2, pol, 0);
        // the converse direction is false: here neither side holds
        return !r.square_nonnegative && !r.invariant;
    });

    // --- 3x3 spiral block ---
    golden("ex2.spectral-radius", ex2_pj, [&] {
        return std::abs(pf_properties(kSpiral, L3, pol, false).rho - 3.13040) <= 1e-4;
    });
    golden("ex2.right-eigenvector", ex2_pj, [&] {
        PFReport pf = pf_properties(kSpiral, build_semipositive_cone(kSpiral, L3), pol, false, 0);
        if (!pf.right_vector) return false;
        Vector v = *pf.right_vector;
        if (std::abs(v[2]) < 1e-9) return false;
        v *= 1.0 / v[2];
        return std::abs(v[0] + 0.204) <= 1e-3 && std::abs(v[1] - 0.565) <= 1e-3 &&
               norm_inf(kSpiral * v - pf.rho * v) <= 1e-6;
    });
    golden("ex2.left-eigenvector", ex2_pj, [&] {
        PFReport pf = pf_properties(kSpiral, build_semipositive_cone(kSpiral, L3), pol, true, 0);
        if (!pf.left_vector) return false;
        const Vector& w = *pf.left_vector;
        return std::abs(w[0] + 0.275) <= 1e-3 && std::abs(w[1] - 0.586) <= 1e-3 &&
               std::abs(w[2] - 0.762) <= 1e-3;
    });
    golden("ex2.quadric-form", ex2_pj, [&] {
        SemipositiveCone sc = build_semipositive_cone(kSpiral, L3);
        if (!sc.quadric) return false;
        const Matrix want{{-2.0, 0.0, 2.0}, {0.0, 2.0, 4.0}, {2.0, 4.0, 2.0}};
        if ((*sc.quadric - want).max_abs() != 0.0) return false;
        Rng rng(11);
        for (int t = 0; t < 25; ++t) {
            Vector x{rng.normal(), rng.normal(), rng.normal()};
            double by_formula = 2.0 * (x[1] * x[1] + x[2] * x[2] - x[0] * x[0]) +
                                8.0 * x[1] * x[2] + 4.0 * x[0] * x[2];
            if (std::abs(quad_value(*sc.quadric, x) - by_formula) > 1e-9) return false;
        }
        return true;
    });
    golden("ex2.interior-point", ex2_pj, [&] {
        SemipositiveCone sc = build_semipositive_cone(kSpiral, L3);
        Vector x0{0.0, 0.0, 1.0};
        Vector img = kSpiral * x0;  // (-1, 1, 2)
        return semicone_membership(x0, sc, pol).classification == PointClass::Interior &&
               img[0] == -1.0 && img[1] == 1.0 && img[2] == 2.0 &&
               margin_of(img, L3, pol) > pol.interior;
    });
    golden("ex2.boundary-chain", ex2_pj, [&] {
        SemipositiveCone sc = build_semipositive_cone(kSpiral, L3);
        Vector xb{1.0, -1.0, 2.0};
        if (quad_value(*sc.quadric, xb) != 0.0) return false;
        if (semicone_membership(xb, sc, pol).classification != PointClass::Boundary)
            return false;
        Vector ax = kSpiral * xb;  // exactly (-2, 0, 2)
        if (ax[0] != -2.0 || ax[1] != 0.0 || ax[2] != 2.0) return false;
        // the pulled-back quadric value at the image is exactly -16
        if (quad_value(*sc.quadric, ax) != -16.0) return false;
        if (semicone_membership(ax, sc, pol).margin >= -pol.membership) return false;
        Vector axx = kSpiral * ax;  // exactly (-4, 4, 4)
        double margin = margin_of(axx, L3, pol);
        return std::abs(margin - (4.0 - std::sqrt(32.0))) <= 1e-9 && margin < 0.0;
    });
    golden("ex2.semicone-proper", ex2_pj, [&] {
        SemipositiveCone sc = build_semipositive_cone(kSpiral, L3);
        return is_proper(sc, pol, 0).proper();
    });
    golden("ex2.power-hypothesis-fails", ex2_pj, [&] {
        SemipositiveCone sc = build_semipositive_cone(kSpiral, L3);
        for (std::size_t j = 2; j <= 6; ++j) {
            PowerAutoReport r = power_auto_hypothesis(sc, j, pol, 77);
            bool any_fail = r.forward_j.status == PowerProbe::Status::Fails ||
                            r.forward_j1.status == PowerProbe::Status::Fails ||
                            r.backward_j.status == PowerProbe::Status::Fails ||
                            r.backward_j1.status == PowerProbe::Status::Fails;
            if (!any_fail) return false;
        }
        return true;
    });
    golden("ex2.eventually-positive", ex2_pj, [&] {
        auto k0 = eventual_positivity(kSpiral, L3, 16, pol, 0);
        return k0.has_value() && *k0 == 4;
    });
    golden("ex2.strong-pf", ex2_pj, [&] {
        PFReport pf = pf_properties(kSpiral, build_semipositive_cone(kSpiral, L3), pol, true, 0);
        return pf.has_strong_pf && std::abs(pf.rho - 3.13040) <= 1e-4 &&
               pf.right_margin > pol.interior && pf.left_margin > pol.interior;
    });

    // --- 2x2 shear block over the orthant ---
    const json ex3_pj = problem_json(kShearDown, O2, O2, 0);
    golden("ex3.not-nonnegative", ex3_pj, [&] {
        NonnegativityReport r1 = nonnegativity_check(kShearDown, O2, O2, pol, 0);
        NonnegativityReport r2 = nonnegativity_check(kShearUp, O2, O2, pol, 0);
        return !r1.nonnegative && !r1.counterexample.empty() && !r2.nonnegative;
    });
    golden("ex3.diagonal-shift", ex3_pj, [&] {
        for (double alpha : {0.1, 1.0, 10.0}) {
            Matrix shifted = kShearDown + alpha * Matrix::identity(2);
            // the stated witness direction (1, 0) maps to ((1+alpha), 1)
            Vector img = shifted * Vector{1.0, 0.0};
            if (!(img[0] == 1.0 + alpha && img[1] == 1.0)) return false;
            if (margin_of(img, O2, pol) <= pol.interior) return false;
            Certificate c = semipositivity_certificate(shifted, O2, O2, pol, 0);
            if (c.outcome != CertificateOutcome::SemipositiveWitness) return false;
        }
        return true;
    });
    golden("ex3.m-matrix-low-witness", ex3_pj, [&] {
        // B's witness (1,1) has x1 <= x2, which forces the up-shear pick
        Matrix B{{1.0, -0.5}, {-0.3, 1.0}};
        Vector x{1.0, 1.0};
        if (margin_of(B * x, O2, pol) <= pol.interior) return false;
        Matrix sum = kShearUp + B;
        return margin_of(sum * x, O2, pol) > pol.interior &&
               semipositivity_certificate(sum, O2, O2, pol, 0).outcome ==
                   CertificateOutcome::SemipositiveWitness;
    });
    golden("ex3.m-matrix-high-witness", ex3_pj, [&] {
        // B's witness (1, 0.05) has x1 > x2, which forces the down-shear pick
        Matrix B{{1.0, -10.0}, {0.0, 1.0}};
        Vector x{1.0, 0.05};
        if (margin_of(B * x, O2, pol) <= pol.interior) return false;
        Matrix sum = kShearDown + B;
        return margin_of(sum * x, O2, pol) > pol.interior &&
               semipositivity_certificate(sum, O2, O2, pol, 0).outcome ==
                   CertificateOutcome::SemipositiveWitness;
    });
    golden("ex3.m-matrix-branch-matters", ex3_pj, [&] {
        // every witness of this B has x1 < x2; the up-shear pick works and
        // the down-shear pick provably cannot
        Matrix B{{1.0, 0.0}, {-10.0, 1.0}};
        Certificate up = semipositivity_certificate(kShearUp + B, O2, O2, pol, 0);
        Certificate down = semipositivity_certificate(kShearDown + B, O2, O2, pol, 0);
        return up.outcome == CertificateOutcome::SemipositiveWitness &&
               down.outcome == CertificateOutcome::DualCertificate;
    });

    // --- canonical quadric cone ---
    golden("quadric.canonical-is-circular",
           problem_json(Matrix::identity(3), L3, L3, 0), [&] {
               Matrix Q = Matrix::diagonal({1.0, 1.0, -1.0});
               Cone K = ellipsoidal_from_quadric(Q, Vector{0.0, 0.0, 1.0});
               if ((K.transform() - Matrix::identity(3)).max_abs() > 1e-9) return false;
               Rng rng(13);
               for (int t = 0; t < 20; ++t) {
                   Vector x{rng.normal(), rng.normal(), rng.normal()};
                   if (K.membership_margin(x, pol).classification !=
                       L3.membership_margin(x, pol).classification)
                       return false;
               }
               return true;
           });

    // --- ones-plus-spike basis over the plane orthant ---
    golden("basis.orthant-ones-plus-spike",
           problem_json(Matrix::identity(2), O2, O2, 0), [&] {
               BasisBundle b = semipositive_basis(O2, pol);
               if (b.independence_rank != 4 || b.elements.size() != 4) return false;
               for (std::size_t j = 0; j < 2; ++j)
                   for (std::size_t k = 0; k < 2; ++k) {
                       const Matrix& E = b.elements[j * 2 + k];
                       for (std::size_t r = 0; r < 2; ++r)
                           for (std::size_t c = 0; c < 2; ++c)
                               if (E(r, c) != ((r == j && c == k) ? 2.0 : 1.0)) return false;
                   }
               return true;
           });

    return rep;
}

json suite_report_to_json(const SuiteReport& rep) {
    json out;
    out["suite"] = rep.suite;
    out["seed"] = rep.seed;
    json props = json::array();
    for (const PropertyResult& r : rep.properties) {
        json p;
        p["name"] = r.name;
        p["pass"] = r.pass;
        p["fail"] = r.fail;
        p["inconclusive"] = r.inconclusive;
        p["counterexamples"] = json(r.counterexamples);
        props.push_back(p);
    }
    out["properties"] = props;
    return out;
}

std::string format_suite_table(const SuiteReport& rep) {
    std::ostringstream os;
    os << "suite: " << rep.suite << "  seed: " << rep.seed << "\n";
    std::size_t width = 0;
    for (const PropertyResult& r : rep.properties) width = std::max(width, r.name.size());
    for (const PropertyResult& r : rep.properties) {
        os << (r.fail == 0 ? "PASS " : "FAIL ") << r.name;
        for (std::size_t i = r.name.size(); i < width + 2; ++i) os << ' ';
        os << "pass " << r.pass << "  fail " << r.fail << "  inconclusive "
           << r.inconclusive << "\n";
    }
    os << (rep.all_pass() ? "all properties pass" : "FAILURES PRESENT") << "\n";
    return os.str();
}

}  // namespace conecert
