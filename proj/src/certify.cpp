#include "conecert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "conecert/errors.hpp"
#include "conecert/linalg.hpp"
#include "conecert/margin_search.hpp"
#include "conecert/rng.hpp"

namespace conecert {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Vector normalized(Vector v) {
    double n = norm2(v);
    if (n <= 1e-300) throw InternalContradiction("cannot normalize a zero vector");
    v *= 1.0 / n;
    return v;
}

double margin_of(const Vector& x, const Cone& K) { return K.membership_margin(x).margin; }

void round_to_digits(Vector& v, int digits) {
    double scale = std::pow(10.0, digits);
    for (double& e : v) e = std::round(e * scale) / scale;
}

// Interior point of K at a prescribed safety level: canonical point plus a
// random direction, shrunk until the margin keeps a fixed fraction.
Vector interior_sample(const Cone& K, Rng& rng) {
    Vector base = canonical_interior_point(K);
    double mb = margin_of(base, K);
    Vector p(K.dim());
    for (double& e : p) e = rng.normal();
    if (norm2(p) < 1e-12) return base;
    p = normalized(p);
    double s = 0.5 * mb;
    while (s > 1e-12) {
        Vector cand = base + s * p;
        if (margin_of(cand, K) >= 0.25 * mb) return cand;
        s *= 0.5;
    }
    return base;
}

struct LorentzScan {
    double worst = std::numeric_limits<double>::infinity();
    Vector worst_x;         // (u, 1) boundary ray attaining the worst margin
    std::size_t samples = 0;
};

void scan_point(LorentzScan& scan, const Matrix& M, const Cone& K2, const Vector& u) {
    Vector x(u.size() + 1);
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = u[i];
    x[u.size()] = 1.0;
    double m = margin_of(M * x, K2);
    ++scan.samples;
    if (m < scan.worst) {
        scan.worst = m;
        scan.worst_x = x;
    }
}

// Minimize margin(M (u,1), K2) over unit u: deterministic grid for low head
// dimension, then multi-start projected descent refined from the grid best.
LorentzScan lorentz_boundary_scan(const Matrix& M, const Cone& K2, std::size_t n,
                                  std::uint64_t seed) {
    LorentzScan scan;
    const std::size_t d = n - 1;
    if (d == 1) {
        scan_point(scan, M, K2, Vector{1.0});
        scan_point(scan, M, K2, Vector{-1.0});
        return scan;  // both boundary rays enumerated: exhaustive already
    }
    if (d == 2) {
        for (int j = 0; j < 64; ++j) {
            double th = 2.0 * M_PI * j / 64.0;
            scan_point(scan, M, K2, Vector{std::cos(th), std::sin(th)});
        }
    } else if (d == 3) {
        for (int i = 0; i < 64; ++i) {
            double th = M_PI * (i + 0.5) / 64.0;
            for (int j = 0; j < 64; ++j) {
                double ph = 2.0 * M_PI * j / 64.0;
                scan_point(scan, M, K2,
                           Vector{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                  std::cos(th)});
            }
        }
    }

    const int restarts = 8, iters = 400;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(Rng::derive(seed, 500 + static_cast<std::uint64_t>(r)));
        Vector u(d);
        if (r == 0 && !scan.worst_x.empty()) {
            for (std::size_t i = 0; i < d; ++i) u[i] = scan.worst_x[i];
        } else {
            for (double& e : u) e = rng.normal();
        }
        if (norm2(u) < 1e-12) u[0] = 1.0;
        u = normalized(u);
        for (int k = 1; k <= iters; ++k) {
            Vector x(d + 1);
            for (std::size_t i = 0; i < d; ++i) x[i] = u[i];
            x[d] = 1.0;
            Vector gx = M.transpose() * margin_supergradient(M * x, K2);
            Vector gu(d);
            for (std::size_t i = 0; i < d; ++i) gu[i] = gx[i];
            if (norm2(gu) < 1e-14) break;
            Vector step = u - (1.0 / std::sqrt(static_cast<double>(k))) * gu;
            if (norm2(step) < 1e-12) break;
            u = normalized(step);
            scan_point(scan, M, K2, u);
        }
    }
    // Snap the worst head direction to cleaner coordinates when that digs deeper.
    if (!scan.worst_x.empty()) {
        Vector u0(d);
        for (std::size_t i = 0; i < d; ++i) u0[i] = scan.worst_x[i];
        for (int digits : {0, 1, 2, 3, 4, 6}) {
            Vector u = u0;
            round_to_digits(u, digits);
            if (norm2(u) > 1e-12) scan_point(scan, M, K2, normalized(u));
        }
    }
    return scan;
}

}  // namespace

Certificate semipositivity_certificate(const Matrix& A, const Cone& K1, const Cone& K2,
                                       const NumericPolicy& policy, std::uint64_t seed) {
    if (A.cols() != K1.dim() || A.rows() != K2.dim())
        throw DimensionMismatch("matrix shape does not match the cone pair");
    const std::size_t n = K1.dim(), m = K2.dim();

    std::vector<MarginTerm> primal_terms{{nullptr, &K1}, {&A, &K2}};
    MarginSearchResult primal = max_min_margin(primal_terms, n, Rng::derive(seed, 1), nullptr);

    Cone D1 = K2.dual();
    Cone D2 = K1.dual();
    Matrix negAt = -1.0 * A.transpose();
    std::vector<MarginTerm> dual_terms{{nullptr, &D1}, {&negAt, &D2}};
    // Pin the dual scale with <p0, y> = 1 against an interior point of K2:
    // every nonzero y in K2* pairs strictly positively with p0, so y = 0 is
    // cut off, and scaling p0 up keeps the slice well inside the unit box.
    Vector slice = canonical_interior_point(K2);
    double mslice = margin_of(slice, K2);
    slice *= 4.0 / std::max(mslice, 1e-6);
    MarginSearchResult dual = max_min_margin(dual_terms, m, Rng::derive(seed, 2), &slice);

    // Decide on re-evaluated margins of the final normalized vectors, not on
    // raw solver values: emitted certificates must survive independent checks.
    double p1 = kNegInf, p2 = kNegInf;
    if (!primal.arg.empty() && norm2(primal.arg) > 1e-12) {
        p1 = margin_of(primal.arg, K1);
        p2 = margin_of(A * primal.arg, K2);
    }
    bool primal_ok = std::min(p1, p2) > policy.interior;

    double d1m = kNegInf, d2m = kNegInf;
    Vector y;
    if (!dual.arg.empty() && norm2(dual.arg) > 1e-12) {
        y = normalized(dual.arg);
        d1m = margin_of(y, D1);
        d2m = margin_of(negAt * y, D2);
    }
    bool dual_ok = !y.empty() && std::min(d1m, d2m) >= -policy.membership;

    if (primal_ok && dual_ok)
        throw InternalContradiction(
            "both a strict witness and a dual certificate passed; tolerances are inconsistent");

    Certificate cert;
    cert.best_margin = std::isfinite(p1) && std::isfinite(p2) ? std::min(p1, p2) : primal.value;
    if (primal_ok) {
        cert.outcome = CertificateOutcome::SemipositiveWitness;
        cert.vector = primal.arg;
        cert.margin1 = p1;
        cert.margin2 = p2;
    } else if (dual_ok) {
        cert.outcome = CertificateOutcome::DualCertificate;
        cert.vector = y;
        cert.margin1 = d1m;
        cert.margin2 = d2m;
    } else {
        cert.outcome = CertificateOutcome::Inconclusive;
    }
    return cert;
}

NonnegativityReport nonnegativity_check(const Matrix& A, const Cone& K1, const Cone& K2,
                                        const NumericPolicy& policy, std::uint64_t seed) {
    if (A.cols() != K1.dim() || A.rows() != K2.dim())
        throw DimensionMismatch("matrix shape does not match the cone pair");
    NonnegativityReport rep;

    if (auto gens = generator_list(K1)) {
        // A(K1) lies in K2 iff every generator maps inside: exact.
        rep.exact = true;
        rep.checked_rays = gens->size();
        rep.worst_margin = std::numeric_limits<double>::infinity();
        for (const Vector& r : *gens) {
            double mg = margin_of(A * r, K2);
            if (mg < rep.worst_margin) {
                rep.worst_margin = mg;
                rep.counterexample = r;
            }
        }
        rep.nonnegative = rep.worst_margin >= -policy.membership;
        if (rep.nonnegative) rep.counterexample.clear();
        return rep;
    }

    if (K1.kind() == ConeKind::Lorentz || K1.kind() == ConeKind::Ellipsoidal) {
        const bool transported = K1.kind() == ConeKind::Ellipsoidal;
        Matrix M = transported ? A * K1.transform() : A;
        const std::size_t n = K1.dim();
        if (n == 1) {  // one-dimensional cone: single generator
            rep.exact = true;
            rep.checked_rays = 1;
            Vector e{1.0};
            rep.worst_margin = margin_of(M * e, K2);
            rep.nonnegative = rep.worst_margin >= -policy.membership;
            if (!rep.nonnegative) rep.counterexample = transported ? K1.transform() * e : e;
            return rep;
        }
        LorentzScan scan = lorentz_boundary_scan(M, K2, n, seed);
        rep.exact = n == 2;  // both boundary rays enumerated exactly
        rep.checked_rays = scan.samples;
        rep.worst_margin = scan.worst;
        rep.nonnegative = scan.worst >= -policy.membership;
        if (!rep.nonnegative)
            rep.counterexample = transported ? K1.transform() * scan.worst_x : scan.worst_x;
        return rep;
    }

    // PSD domain: extreme rays are rank-one matrices; sample and descend.
    const std::size_t order = K1.psd_order();
    auto probe = [&](const Vector& v) {
        Vector r = svec(Matrix::outer(v, v));
        double mg = margin_of(A * r, K2);
        ++rep.checked_rays;
        if (mg < rep.worst_margin) {
            rep.worst_margin = mg;
            rep.counterexample = r;
        }
    };
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < order; ++i) {
        Vector e(order, 0.0);
        e[i] = 1.0;
        probe(e);
    }
    for (int s = 0; s < 256; ++s) {
        Rng rng(Rng::derive(seed, 9000 + static_cast<std::uint64_t>(s)));
        Vector v(order);
        for (double& e : v) e = rng.normal();
        if (norm2(v) < 1e-12) continue;
        probe(normalized(v));
    }
    for (int r = 0; r < 8; ++r) {
        Rng rng(Rng::derive(seed, 9500 + static_cast<std::uint64_t>(r)));
        Vector v(order);
        for (double& e : v) e = rng.normal();
        if (norm2(v) < 1e-12) v[0] = 1.0;
        v = normalized(v);
        for (int k = 1; k <= 300; ++k) {
            Vector g = A.transpose() * margin_supergradient(A * svec(Matrix::outer(v, v)), K2);
            Vector gv = 2.0 * (smat(g) * v);
            if (norm2(gv) < 1e-14) break;
            Vector step = v - (1.0 / std::sqrt(static_cast<double>(k))) * gv;
            if (norm2(step) < 1e-12) break;
            v = normalized(step);
            probe(v);
        }
    }
    rep.nonnegative = rep.worst_margin >= -policy.membership;
    if (rep.nonnegative) rep.counterexample.clear();
    return rep;
}

RefutationBundle refute_nonnegativity(const Matrix& A, const Cone& K1, const Cone& K2,
                                      const NumericPolicy& policy, std::uint64_t seed) {
    NonnegativityReport check = nonnegativity_check(A, K1, K2, policy, seed);
    if (check.nonnegative)
        throw PreconditionViolated("matrix maps the cone into the codomain cone; nothing to refute");

    Vector x = normalized(check.counterexample);
    double m2 = margin_of(A * x, K2);

    // Pull the counterexample off the boundary: blend with the canonical
    // interior direction, halving the blend until the K1 margin is strictly
    // interior while A x keeps a definite share of its violation.
    if (margin_of(x, K1) <= policy.interior) {
        Vector d = normalized(canonical_interior_point(K1));
        double s = 0.5;
        for (;;) {
            if (s < 1e-12) throw EpsilonUnderflow("interior blend underflow while keeping Ax outside");
            Vector cand = normalized(x + s * d);
            if (margin_of(cand, K1) > policy.interior && margin_of(A * cand, K2) <= 0.25 * m2) {
                x = cand;
                break;
            }
            s *= 0.5;
        }
    }
    Vector ax = A * x;

    // Separating functional via the projection residual; for ellipsoidal
    // codomains project in transported coordinates, which preserves both the
    // dual membership and the strict negativity of <Ax, y0>.
    Vector y0;
    if (K2.kind() == ConeKind::Ellipsoidal) {
        const Matrix& Tinv = K2.transform_inverse();
        Cone L = Cone::lorentz(K2.dim());
        Vector z = Tinv * ax;
        y0 = Tinv.transpose() * (L.project(z) - z);
    } else {
        y0 = K2.project(ax) - ax;
    }

    Cone D = K2.dual();
    Vector w = canonical_interior_point(D);
    double eps = 1.0;
    Vector y;
    for (;;) {
        if (eps < 1e-12) throw EpsilonUnderflow("interior regularization of the separator underflowed");
        y = y0 + eps * w;
        if (dot(ax, y) < 0.0 && margin_of(y, D) > 0.0) break;
        eps *= 0.5;
    }

    RefutationBundle bundle;
    bundle.x = x;
    bundle.y = y;
    bundle.z = -1.0 * (A.transpose() * y);
    bundle.v = canonical_interior_point(K2);
    double c = dot(y, bundle.v);
    if (c <= 0.0) throw InternalContradiction("interior pairing <y, v> must be positive");
    bundle.B = (1.0 / c) * Matrix::outer(bundle.v, bundle.z);

    Vector residual = (A + bundle.B).transpose() * y;
    if (norm_inf(residual) > 1e-9 * (A.norm_fro() + bundle.B.norm_fro()))
        throw InternalContradiction("spoiler failed to annihilate y");
    return bundle;
}

LorentzRefuter lorentz_transpose_refuter(const Matrix& A, const NumericPolicy& policy,
                                         std::uint64_t seed) {
    if (A.rows() != A.cols()) throw DimensionMismatch("Lorentz refuter needs a square matrix");
    const std::size_t n = A.rows();
    if (n < 2) throw DimensionMismatch("Lorentz refuter needs dimension at least 2");
    Cone L = Cone::lorentz(n);
    Matrix At = A.transpose();

    // A fails Lorentz nonnegativity iff A' does, and the transpose side hands
    // us the certificate x directly.
    NonnegativityReport check = nonnegativity_check(At, L, L, policy, seed);
    if (check.nonnegative)
        throw PreconditionViolated("matrix is Lorentz-nonnegative; no transpose certificate exists");

    Vector x = check.counterexample;
    if (x[n - 1] <= 1e-12)
        throw InternalContradiction("nonzero Lorentz vector must have a positive last entry");
    x *= 1.0 / x[n - 1];
    Vector y = -1.0 * (At * x);

    LorentzRefuter out;
    out.x = x;
    out.y = y;
    out.case_one = margin_of(y, L) >= -policy.membership;
    Matrix B(n, n);
    if (out.case_one) {
        // y back inside the cone: halving the last entry leaves room so that
        // y - alpha is still a Lorentz vector while B e_n lands interior.
        for (std::size_t i = 0; i + 1 < n; ++i) B(n - 1, i) = y[i];
        B(n - 1, n - 1) = 0.5 * y[n - 1];
    } else {
        for (std::size_t i = 0; i < n; ++i) B(n - 1, i) = y[i];  // x_n = 1 absorbed
    }
    out.B = B;

    // Semipositivity is scale-free; verify on the normalized spoiler so a
    // tiny transpose image cannot shrink the witness under the strict band.
    Matrix Bn = (1.0 / std::max(B.norm_fro(), 1e-300)) * B;
    Certificate cert = semipositivity_certificate(Bn, L, L, policy, Rng::derive(seed, 31));
    if (cert.outcome != CertificateOutcome::SemipositiveWitness)
        throw InternalContradiction("constructed spoiler must itself be semipositive");
    Vector back = -1.0 * ((A + B).transpose() * x);
    if (margin_of(back, L) < -policy.membership)
        throw InternalContradiction("transpose certificate for A + B left the cone");
    return out;
}

Matrix transport_conjugate(const Matrix& A, const Matrix& T, const Cone& K) {
    if (A.rows() != A.cols()) throw DimensionMismatch("conjugation needs a square matrix");
    if (T.rows() != T.cols() || T.rows() != A.rows())
        throw DimensionMismatch("transform shape does not match the matrix");
    if (K.dim() != A.cols()) throw DimensionMismatch("cone dimension does not match the matrix");
    return T * A * inverse(T);
}

Cone transport_cone(const Matrix& T, const Cone& K) {
    if (T.rows() != T.cols() || T.cols() != K.dim())
        throw DimensionMismatch("transform shape does not match the cone");
    switch (K.kind()) {
        case ConeKind::Orthant: {
            std::vector<Vector> rays;
            for (std::size_t i = 0; i < K.dim(); ++i) rays.push_back(T.col(i));
            return Cone::polyhedral_from_rays(rays);
        }
        case ConeKind::PolyhedralGen:
        case ConeKind::PolyhedralFacet: {
            std::vector<Vector> rays;
            for (const Vector& r : K.rays()) rays.push_back(T * r);
            return Cone::polyhedral_from_rays(rays);
        }
        case ConeKind::Lorentz:
            return Cone::ellipsoidal(T);
        case ConeKind::Ellipsoidal:
            return Cone::ellipsoidal(T * K.transform());
        case ConeKind::Psd:
            throw PreconditionViolated("linear images of the PSD cone are not representable here");
    }
    throw InternalContradiction("unreachable cone kind");
}

SumStabilityReport verify_sum_stability(const Matrix& A, const Cone& K1, const Cone& K2,
                                        std::size_t trials, std::uint64_t seed,
                                        const NumericPolicy& policy) {
    NonnegativityReport pre = nonnegativity_check(A, K1, K2, policy, Rng::derive(seed, 999));
    if (!pre.nonnegative)
        throw PreconditionViolated("sum stability requires a nonnegative base matrix");

    SumStabilityReport rep;
    rep.trials = trials;
    Vector xbar = normalized(canonical_interior_point(K1));
    Vector ubar = normalized(canonical_interior_point(K2));

    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(Rng::derive(seed, t));
        Matrix B(K2.dim(), K1.dim());
        bool have = false;
        if (t % 3 == 2) {
            // Dense perturbation, screened: only matrices the certificate
            // itself accepts as semipositive are admitted.
            for (int attempt = 0; attempt < 20 && !have; ++attempt) {
                Matrix cand(K2.dim(), K1.dim());
                for (std::size_t i = 0; i < cand.rows(); ++i)
                    for (std::size_t j = 0; j < cand.cols(); ++j)
                        cand(i, j) = 0.35 * rng.normal();
                cand = cand + Matrix::outer(ubar, xbar);
                Certificate sc = semipositivity_certificate(cand, K1, K2, policy,
                                                            Rng::derive(seed, 4000 + t));
                if (sc.outcome == CertificateOutcome::SemipositiveWitness) {
                    B = cand;
                    have = true;
                }
            }
        }
        if (!have) {
            // Rank-one u w': u interior in K2 and <w, xbar> > 0 make xbar a witness.
            Vector u = interior_sample(K2, rng);
            Vector w(K1.dim());
            for (double& e : w) e = rng.normal();
            double t0 = dot(w, xbar);
            if (t0 < 0) {
                w = -1.0 * w;
                t0 = -t0;
            }
            if (t0 < 0.1) w += xbar;
            B = Matrix::outer(u, w);
        }
        Certificate cert = semipositivity_certificate(A + B, K1, K2, policy,
                                                      Rng::derive(seed, 7777 + t));
        if (cert.outcome == CertificateOutcome::SemipositiveWitness)
            ++rep.passes;
        else
            rep.failed_perturbations.push_back(B);
    }
    return rep;
}

}  // namespace conecert
