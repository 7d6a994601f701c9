#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "conecert/certify.hpp"
#include "conecert/cone.hpp"
#include "conecert/errors.hpp"
#include "conecert/linalg.hpp"
#include "conecert/matrix.hpp"
#include "conecert/rng.hpp"

using namespace conecert;

namespace {

double margin(const Vector& x, const Cone& K) { return K.membership_margin(x).margin; }

// Independent re-check of a certificate against the instance it claims to decide.
void check_certificate(const Certificate& c, const Matrix& A, const Cone& K1, const Cone& K2) {
    const NumericPolicy pol;
    if (c.outcome == CertificateOutcome::SemipositiveWitness) {
        REQUIRE(c.vector.size() == K1.dim());
        CHECK(margin(c.vector, K1) > pol.interior);
        CHECK(margin(A * c.vector, K2) > pol.interior);
        CHECK(c.margin1 == doctest::Approx(margin(c.vector, K1)).epsilon(1e-12));
        CHECK(c.margin2 == doctest::Approx(margin(A * c.vector, K2)).epsilon(1e-12));
    } else if (c.outcome == CertificateOutcome::DualCertificate) {
        REQUIRE(c.vector.size() == K2.dim());
        CHECK(norm2(c.vector) == doctest::Approx(1.0).epsilon(1e-12));
        Cone D1 = K2.dual(), D2 = K1.dual();
        Vector z = -1.0 * (A.transpose() * c.vector);
        CHECK(margin(c.vector, D1) >= -pol.membership);
        CHECK(margin(z, D2) >= -pol.membership);
    }
}

Matrix spiral_seed() { return Matrix{{1.0, -1.0}, {1.0, 1.0}}; }

}  // namespace

TEST_CASE("rotation-by-pi/4 matrix is strictly semipositive on the circular cone") {
    Matrix A = spiral_seed();
    Cone L = Cone::lorentz(2);
    Certificate c = semipositivity_certificate(A, L, L);
    REQUIRE(c.outcome == CertificateOutcome::SemipositiveWitness);
    check_certificate(c, A, L, L);

    // The hand witness: x = (0.2, 1) sits inside, Ax = (-0.8, 1.2) does too.
    Vector x{0.2, 1.0};
    CHECK(margin(x, L) == doctest::Approx(0.8));
    Vector ax = A * x;
    CHECK(ax[0] == doctest::Approx(-0.8));
    CHECK(ax[1] == doctest::Approx(1.2));
    CHECK(margin(ax, L) == doctest::Approx(0.4));
}

TEST_CASE("the squared rotation admits only a boundary dual certificate") {
    Matrix A = spiral_seed();
    Matrix A2 = A * A;  // [[0,-2],[2,0]]
    CHECK(A2(0, 1) == doctest::Approx(-2.0));
    Cone L = Cone::lorentz(2);
    Certificate c = semipositivity_certificate(A2, L, L);
    REQUIRE(c.outcome == CertificateOutcome::DualCertificate);
    check_certificate(c, A2, L, L);
    // y is pinned (up to scale) to the diagonal direction (1,1).
    CHECK(c.vector[1] > 0.0);
    CHECK(c.vector[0] == doctest::Approx(c.vector[1]).epsilon(1e-9));
    CHECK(c.margin1 == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(c.margin2 == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("identity is semipositive over every supported cone kind") {
    for (const Cone& K :
         {Cone::orthant(3), Cone::lorentz(3), Cone::psd(2),
          Cone::polyhedral_from_rays({{1.0, 0.0}, {1.0, 1.0}}),
          Cone::ellipsoidal(Matrix{{2.0, 1.0}, {0.0, 1.0}})}) {
        Matrix I = Matrix::identity(K.dim());
        Certificate c = semipositivity_certificate(I, K, K);
        REQUIRE(c.outcome == CertificateOutcome::SemipositiveWitness);
        check_certificate(c, I, K, K);
    }
}

TEST_CASE("negated identity over the orthant yields a dual certificate") {
    Cone O = Cone::orthant(3);
    Matrix A = -1.0 * Matrix::identity(3);
    Certificate c = semipositivity_certificate(A, O, O);
    REQUIRE(c.outcome == CertificateOutcome::DualCertificate);
    check_certificate(c, A, O, O);
}

TEST_CASE("certificates hold across mixed polyhedral / orthant pairs") {
    // Wide map: strictly inside.
    Matrix A{{1.0, 0.5, 0.0}, {0.0, 0.5, 1.0}};
    Cone O3 = Cone::orthant(3), O2 = Cone::orthant(2);
    Certificate c = semipositivity_certificate(A, O3, O2);
    REQUIRE(c.outcome == CertificateOutcome::SemipositiveWitness);
    check_certificate(c, A, O3, O2);

    // Tall map into a wedge that the image cannot pierce.
    Cone wedge = Cone::polyhedral_from_facets({{1.0, -3.0}, {-1.0, 1.0}});
    Matrix B{{1.0}, {0.5}};
    // Image ray (1, 0.5): facet <(-1,1),(1,.5)> = -0.5 < 0, so B K1 leaves the wedge
    // and no interior witness exists; the dual side must certify.
    Certificate cb = semipositivity_certificate(B, Cone::orthant(1), wedge);
    check_certificate(cb, B, Cone::orthant(1), wedge);
    REQUIRE(cb.outcome == CertificateOutcome::DualCertificate);
}

TEST_CASE("nonnegativity: rotation leaks, identity stays, squared spiral is caught on a boundary ray") {
    Cone L2 = Cone::lorentz(2);
    Matrix A = spiral_seed();
    NonnegativityReport r = nonnegativity_check(A, L2, L2);
    REQUIRE_FALSE(r.nonnegative);
    // Boundary scan of the 2d cone is exhaustive and lands on x = (-1, 1).
    CHECK(r.exact);
    CHECK(r.counterexample[0] == doctest::Approx(-1.0));
    CHECK(r.counterexample[1] == doctest::Approx(1.0));
    CHECK(r.worst_margin == doctest::Approx(-2.0));
    Vector ax = A * r.counterexample;
    CHECK(ax[0] == doctest::Approx(-2.0));
    CHECK(ax[1] == doctest::Approx(0.0).epsilon(1e-15));

    NonnegativityReport ri = nonnegativity_check(Matrix::identity(2), L2, L2);
    CHECK(ri.nonnegative);

    // The 3d spiral is semipositive but not nonnegative: boundary rays near
    // (1,-1,sqrt(2)) leak out, while e3 itself maps strictly inside.
    Matrix S{{1.0, 1.0, -1.0}, {-1.0, 1.0, 1.0}, {0.0, 2.0, 2.0}};
    Cone L3 = Cone::lorentz(3);
    NonnegativityReport rs = nonnegativity_check(S, L3, L3);
    CHECK_FALSE(rs.nonnegative);
    CHECK(margin(rs.counterexample, L3) >= -1e-9);
    CHECK(margin(S * rs.counterexample, L3) < -1e-9);
    Certificate cs = semipositivity_certificate(S, L3, L3);
    CHECK(cs.outcome == CertificateOutcome::SemipositiveWitness);
    Vector e3{0.0, 0.0, 1.0};
    CHECK(margin(S * e3, L3) == doctest::Approx(2.0 - std::sqrt(2.0)));

    NonnegativityReport rs2 = nonnegativity_check(S * S, L3, L3);
    REQUIRE_FALSE(rs2.nonnegative);
    // The known escape ray (1,-1,2) (scaled to tail 1) leaves under S^2.
    Vector esc{0.5, -0.5, 1.0};
    CHECK(margin(S * S * esc, L3) < -1e-6);
    CHECK(rs2.worst_margin < -1e-6);
}

TEST_CASE("nonnegativity over generator cones is an exact ray sweep") {
    Cone O2 = Cone::orthant(2);
    Matrix A{{1.0, 0.0}, {1.0, -1.0}};
    NonnegativityReport r = nonnegativity_check(A, O2, O2);
    REQUIRE_FALSE(r.nonnegative);
    CHECK(r.exact);
    CHECK(r.checked_rays == 2);
    // e2 maps to (0,-1).
    CHECK(r.counterexample[0] == doctest::Approx(0.0));
    CHECK(r.counterexample[1] == doctest::Approx(1.0));
    CHECK(r.worst_margin == doctest::Approx(-1.0));

    NonnegativityReport rp = nonnegativity_check(Matrix{{2.0, 1.0}, {0.0, 1.0}}, O2, O2);
    CHECK(rp.nonnegative);
    CHECK(rp.exact);
}

TEST_CASE("nonnegativity transports through ellipsoidal domains") {
    Matrix T{{2.0, 0.0}, {0.0, 1.0}};
    Cone E = Cone::ellipsoidal(T);  // T(L^2), generated by (+-2, 1)
    Cone O2 = Cone::orthant(2);
    // Columns chosen so T-rays map to (1,0) and (0,1): nonnegative.
    Matrix A{{0.25, 0.5}, {-0.25, 0.5}};
    CHECK(nonnegativity_check(A, E, O2).nonnegative);
    // Flip one output: ray (-2,1) maps to (-1,0)... caught.
    Matrix Abad{{0.25, -0.5}, {-0.25, 0.5}};
    NonnegativityReport r = nonnegativity_check(Abad, E, O2);
    REQUIRE_FALSE(r.nonnegative);
    CHECK(margin(r.counterexample, E) >= -1e-9);
    CHECK(margin(Abad * r.counterexample, O2) < -1e-9);
}

TEST_CASE("psd domain probing finds a rank-one escape") {
    // Map svec(X) -> (tr X, <diag(1,-3), X>): the second output goes negative
    // on X = e2 e2', so the map is not nonnegative into the orthant.
    const std::size_t d = svec_dim(2);
    Matrix A(2, d);
    A.set_row(0, svec(Matrix::identity(2)));
    A.set_row(1, svec(Matrix{{1.0, 0.0}, {0.0, -3.0}}));
    Cone P = Cone::psd(2), O2 = Cone::orthant(2);
    NonnegativityReport r = nonnegativity_check(A, P, O2);
    REQUIRE_FALSE(r.nonnegative);
    CHECK_FALSE(r.exact);
    CHECK(margin(r.counterexample, P) >= -1e-9);
    CHECK(margin(A * r.counterexample, O2) < -1e-9);

    Matrix Aok(2, d);
    Aok.set_row(0, svec(Matrix::identity(2)));
    Aok.set_row(1, svec(Matrix{{2.0, 0.0}, {0.0, 1.0}}));
    CHECK(nonnegativity_check(Aok, P, O2).nonnegative);
}

namespace {

void check_bundle(const RefutationBundle& b, const Matrix& A, const Cone& K1, const Cone& K2) {
    CHECK(margin(b.x, K1) > 0.0);
    CHECK(margin(A * b.x, K2) < 0.0);
    Cone D = K2.dual();
    CHECK(margin(b.y, D) > 0.0);
    CHECK(dot(A * b.x, b.y) < 0.0);
    CHECK(dot(b.y, b.v) > 0.0);
    Vector res = (A + b.B).transpose() * b.y;
    CHECK(norm_inf(res) <= 1e-9 * (A.norm_fro() + b.B.norm_fro()));
    // z is the advertised -A'y, and B x points interior (B is semipositive at x).
    CHECK(norm2(b.z - (-1.0 * (A.transpose() * b.y))) <= 1e-12);
    CHECK(margin(b.B * b.x, K2) > 0.0);
    // The spoiled sum has y as its dual certificate.
    Certificate c = semipositivity_certificate(A + b.B, K1, K2);
    CHECK(c.outcome == CertificateOutcome::DualCertificate);
    CHECK(margin(b.y, D) >= -1e-9);
    CHECK(margin(-1.0 * ((A + b.B).transpose() * b.y), K1.dual()) >= -1e-9);
}

}  // namespace

TEST_CASE("refutation bundle for the circular-cone rotation") {
    Matrix A = spiral_seed();
    Cone L = Cone::lorentz(2);
    RefutationBundle b = refute_nonnegativity(A, L, L);
    check_bundle(b, A, L, L);

    // The documented interior pushed point: x = (-0.9, 1) has margin 0.1 and
    // Ax = (-1.9, 0.1) has margin -1.8; ours may differ but must match in kind.
    Vector x{-0.9, 1.0};
    CHECK(margin(x, L) == doctest::Approx(0.1));
    Vector ax = A * x;
    CHECK(ax[0] == doctest::Approx(-1.9));
    CHECK(margin(ax, L) == doctest::Approx(-1.8));
}

TEST_CASE("refutation bundle over the orthant") {
    Matrix A{{1.0, 0.0}, {1.0, -1.0}};
    Cone O = Cone::orthant(2);
    RefutationBundle b = refute_nonnegativity(A, O, O);
    check_bundle(b, A, O, O);

    Vector x{0.1, 1.0};
    Vector ax = A * x;
    CHECK(ax[0] == doctest::Approx(0.1));
    CHECK(ax[1] == doctest::Approx(-0.9));
}

TEST_CASE("refutation refuses a nonnegative matrix") {
    Cone O = Cone::orthant(2);
    CHECK_THROWS_AS(refute_nonnegativity(Matrix::identity(2), O, O), PreconditionViolated);
    Cone L = Cone::lorentz(2);
    CHECK_THROWS_AS(refute_nonnegativity(Matrix::identity(2), L, L), PreconditionViolated);
}

TEST_CASE("refutation bundles across mixed cone pairs") {
    Rng rng(0xfeedbeefULL);
    std::size_t built = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Cone K1 = trial % 2 ? Cone::lorentz(3) : Cone::orthant(3);
        Cone K2 = trial % 3 ? Cone::orthant(3) : Cone::lorentz(3);
        Matrix A(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
        NonnegativityReport r = nonnegativity_check(A, K1, K2, default_policy(), 11 + trial);
        if (r.nonnegative) continue;
        RefutationBundle b = refute_nonnegativity(A, K1, K2, default_policy(), 11 + trial);
        check_bundle(b, A, K1, K2);
        ++built;
    }
    CHECK(built >= 25);  // random pulls are overwhelmingly not nonnegative
}

TEST_CASE("lorentz transpose refuter: contained image tweaks only the last entry") {
    // A'(1,1) = -e2 while A'(-1,1) stays inside: the worst ray is x=(1,1),
    // y = e2 lands back in the cone, and B gets the halved last entry.
    Matrix A{{0.0, -1.0}, {0.0, 0.0}};
    LorentzRefuter r = lorentz_transpose_refuter(A);
    CHECK(r.case_one);
    CHECK(r.x[0] == doctest::Approx(1.0));
    CHECK(r.x[1] == doctest::Approx(1.0));
    CHECK(r.y[0] == doctest::Approx(0.0));
    CHECK(r.y[1] == doctest::Approx(1.0));
    CHECK(r.B(0, 0) == 0.0);
    CHECK(r.B(0, 1) == 0.0);
    CHECK(r.B(1, 0) == doctest::Approx(0.0));
    CHECK(r.B(1, 1) == doctest::Approx(0.5));
    Cone L = Cone::lorentz(2);
    Vector back = -1.0 * ((A + r.B).transpose() * r.x);
    CHECK(back[0] == doctest::Approx(0.0));
    CHECK(back[1] == doctest::Approx(0.5));
    CHECK(margin(back, L) >= 0.0);
}

TEST_CASE("lorentz transpose refuter: escaping image copies the scaled row") {
    // Reflected rotation: both boundary rays escape under A', y leaves the
    // cone, so the whole last row is y' (x_n = 1) and (A+B)'x vanishes.
    Matrix A{{1.0, 1.0}, {1.0, -1.0}};
    LorentzRefuter r = lorentz_transpose_refuter(A);
    CHECK_FALSE(r.case_one);
    Cone L = Cone::lorentz(2);
    CHECK(margin(r.y, L) < 0.0);
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(r.B(0, j) == 0.0);
        CHECK(r.B(1, j) == doctest::Approx(r.y[j]));
    }
    Vector back = -1.0 * ((A + r.B).transpose() * r.x);
    CHECK(norm2(back) <= 1e-12);
    CHECK(margin(back, L) >= -1e-12);
}

TEST_CASE("lorentz transpose refuter rejects nonnegative input and verifies its spoiler") {
    CHECK_THROWS_AS(lorentz_transpose_refuter(Matrix::identity(3)), PreconditionViolated);

    Rng rng(0x5151ULL);
    Cone L = Cone::lorentz(3);
    std::size_t built = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Matrix A(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
        if (nonnegativity_check(A.transpose(), L, L, default_policy(), 3 + trial).nonnegative)
            continue;
        LorentzRefuter r = lorentz_transpose_refuter(A, default_policy(), 3 + trial);
        // B acts only through its last row.
        for (std::size_t i = 0; i + 1 < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(r.B(i, j) == 0.0);
        Vector back = -1.0 * ((A + r.B).transpose() * r.x);
        CHECK(margin(back, L) >= -1e-9);
        CHECK(margin(r.x, L) >= -1e-9);
        CHECK(norm2(r.x) > 1e-9);
        ++built;
    }
    CHECK(built >= 15);
}

TEST_CASE("conjugation transports the matrix and the cone together") {
    Matrix A{{1.0, 2.0}, {0.0, 1.0}};
    CHECK((transport_conjugate(A, Matrix::identity(2), Cone::orthant(2)) - A).max_abs() <= 1e-14);

    Matrix T{{1.0, 0.0}, {0.0, 2.0}};
    Matrix I = Matrix::identity(2);
    CHECK((transport_conjugate(I, T, Cone::orthant(2)) - I).max_abs() <= 1e-14);

    CHECK_THROWS_AS(transport_conjugate(A, Matrix{{1.0, 1.0}, {1.0, 1.0}}, Cone::orthant(2)),
                    SingularMatrix);

    // Rotation by 0.3: semipositivity of A over L transports to T A T^{-1} over T(L).
    double c = std::cos(0.3), s = std::sin(0.3);
    Matrix R{{c, -s}, {s, c}};
    Cone L = Cone::lorentz(2);
    Cone RL = transport_cone(R, L);
    CHECK(RL.kind() == ConeKind::Ellipsoidal);
    Matrix A1 = spiral_seed();
    Matrix A1t = transport_conjugate(A1, R, L);
    Certificate base = semipositivity_certificate(A1, L, L);
    Certificate moved = semipositivity_certificate(A1t, RL, RL);
    CHECK(base.outcome == CertificateOutcome::SemipositiveWitness);
    CHECK(moved.outcome == CertificateOutcome::SemipositiveWitness);
    check_certificate(moved, A1t, RL, RL);

    // The transported witness itself works: x -> Rx.
    Vector xw = R * base.vector;
    CHECK(margin(xw, RL) > 1e-8);
    CHECK(margin(A1t * xw, RL) > 1e-8);

    // Polyhedral images stay polyhedral.
    Cone W = Cone::polyhedral_from_rays({{1.0, 0.0}, {1.0, 1.0}});
    Cone RW = transport_cone(Matrix{{0.0, 1.0}, {1.0, 0.0}}, W);
    CHECK(RW.rays().size() == 2);
}

TEST_CASE("sum stability holds for nonnegative bases") {
    Cone O = Cone::orthant(2);
    SumStabilityReport r1 = verify_sum_stability(Matrix::identity(2), O, O, 100, 0);
    CHECK(r1.trials == 100);
    CHECK(r1.passes == 100);
    CHECK(r1.failed_perturbations.empty());

    SumStabilityReport r0 = verify_sum_stability(Matrix(2, 2), O, O, 60, 5);
    CHECK(r0.passes == 60);

    SumStabilityReport r2 = verify_sum_stability(Matrix{{1.0, 1.0}, {0.0, 1.0}}, O, O, 120, 7);
    CHECK(r2.passes == 120);

    Cone L = Cone::lorentz(3);
    SumStabilityReport r3 = verify_sum_stability(Matrix::identity(3), L, L, 40, 3);
    CHECK(r3.passes == 40);

    CHECK_THROWS_AS(verify_sum_stability(Matrix{{1.0, 0.0}, {1.0, -1.0}}, O, O, 10, 1),
                    PreconditionViolated);
}

TEST_CASE("witness and dual certificate are mutually exclusive on random pairs") {
    Rng rng(0x77aa11ULL);
    std::size_t inconclusive = 0;
    const int trials = 120;
    for (int t = 0; t < trials; ++t) {
        std::size_t n = 2 + rng.below(3);
        Cone K = [&]() -> Cone {
            switch (rng.below(3)) {
                case 0: return Cone::orthant(n);
                case 1: return Cone::lorentz(n);
                default: {
                    std::vector<Vector> rays;
                    std::size_t k = n + 1 + rng.below(2);
                    for (std::size_t i = 0; i < k; ++i) {
                        Vector r(n);
                        for (std::size_t j = 0; j + 1 < n; ++j) r[j] = rng.uniform(-1.0, 1.0);
                        r[n - 1] = 1.5;
                        rays.push_back(r);
                    }
                    return Cone::polyhedral_from_rays(rays);
                }
            }
        }();
        Matrix A(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
        Certificate c = semipositivity_certificate(A, K, K, default_policy(), 100 + t);
        check_certificate(c, A, K, K);
        if (c.outcome == CertificateOutcome::Inconclusive) ++inconclusive;
    }
    CHECK(inconclusive <= 2);  // < 2% target at scale; tiny slack at this sample size
}

TEST_CASE("transpose duality: A nonnegative iff A' nonnegative on the dual pair") {
    Rng rng(0x2468ULL);
    int agreements = 0;
    for (int t = 0; t < 60; ++t) {
        std::size_t n = 2 + rng.below(2);
        std::vector<Vector> rays;
        for (std::size_t i = 0; i < n + 1; ++i) {
            Vector r(n);
            for (std::size_t j = 0; j + 1 < n; ++j) r[j] = rng.uniform(-1.0, 1.0);
            r[n - 1] = 1.25;
            rays.push_back(r);
        }
        Cone K1 = Cone::polyhedral_from_rays(rays);
        Cone K2 = t % 2 ? Cone::orthant(n) : K1.dual();
        Matrix A(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
        if (t % 5 == 0) A = A + 3.0 * Matrix::identity(n);  // mix in some nonnegative cases
        bool forward = nonnegativity_check(A, K1, K2).nonnegative;
        bool backward = nonnegativity_check(A.transpose(), K2.dual(), K1.dual()).nonnegative;
        CHECK(forward == backward);
        agreements += forward == backward;
    }
    CHECK(agreements == 60);
}

TEST_CASE("boundary sums: shifted nilpotent map stays semipositive for every shift") {
    // A = [[1,0],[1,-1]] is not nonnegative on the orthant, yet A + aI keeps
    // a witness near (1, 0) for all positive shifts.
    Matrix A{{1.0, 0.0}, {1.0, -1.0}};
    Cone O = Cone::orthant(2);
    REQUIRE_FALSE(nonnegativity_check(A, O, O).nonnegative);
    for (double alpha : {0.1, 1.0, 10.0}) {
        Matrix M = A + alpha * Matrix::identity(2);
        Certificate c = semipositivity_certificate(M, O, O);
        REQUIRE(c.outcome == CertificateOutcome::SemipositiveWitness);
        check_certificate(c, M, O, O);
        // Direction (1, eps) works by hand: M(1,eps) = (1+a+0, 1+eps(a-1)) > 0.
        Vector probe{1.0, 0.05};
        CHECK(margin(M * probe, O) > 0.0);
    }
}

TEST_CASE("round trip: refuted sums are decided against, spoiler-free sums pass") {
    Rng rng(0x31337ULL);
    int done = 0;
    for (int t = 0; t < 25 && done < 12; ++t) {
        Cone K = t % 2 ? Cone::orthant(3) : Cone::lorentz(3);
        Matrix A(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
        NonnegativityReport r = nonnegativity_check(A, K, K, default_policy(), 50 + t);
        if (r.nonnegative) continue;
        RefutationBundle b = refute_nonnegativity(A, K, K, default_policy(), 50 + t);
        Certificate c = semipositivity_certificate(A + b.B, K, K, default_policy(), 50 + t);
        CHECK(c.outcome == CertificateOutcome::DualCertificate);
        ++done;
    }
    CHECK(done >= 12);
}
