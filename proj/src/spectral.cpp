#include "conecert/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "conecert/errors.hpp"
#include "conecert/linalg.hpp"
#include "conecert/rng.hpp"

namespace conecert {
namespace {

Vector normalized(Vector v) {
    double n = norm2(v);
    if (n <= 1e-300) throw InternalContradiction("cannot normalize a zero vector");
    v *= 1.0 / n;
    return v;
}

Vector random_unit(Rng& rng, std::size_t n) {
    Vector v(n);
    for (double& e : v) e = rng.normal();
    if (norm2(v) < 1e-12) v[0] = 1.0;
    return normalized(v);
}

using MarginFn = std::function<double(const Vector&)>;

// Candidate eigenvectors for the eigenvalue rho of M: the dominant-eigenpair
// iterate when it lands on +rho, the nullspace basis of M - rho I (which
// also covers a dominant modulus shared with -rho, where power iteration
// oscillates), and the eigenspace projection of a cone interior point.
std::vector<Vector> rho_eigenvector_candidates(const Matrix& M, double rho,
                                               const Vector& interior_hint) {
    std::vector<Vector> cands;
    if (auto pair = dominant_eigenpair(M, Side::Right, true)) {
        if (pair->value > 0.0) cands.push_back(pair->vector);
    }
    const std::size_t n = M.rows();
    Matrix shifted = M - rho * Matrix::identity(n);
    std::vector<Vector> basis = nullspace(shifted, 1e-8);
    for (const Vector& b : basis) cands.push_back(b);
    if (!basis.empty() && interior_hint.size() == n) {
        Vector proj(n, 0.0);
        for (const Vector& b : basis) proj += dot(b, interior_hint) * b;
        if (norm2(proj) > 1e-9) cands.push_back(normalized(proj));
    }
    return cands;
}

PFReport pf_core(const Matrix& A, const MarginFn& primal_margin, const MarginFn& dual_margin,
                 const Vector& primal_hint, const Vector& dual_hint,
                 const NumericPolicy& policy, bool with_left) {
    if (A.rows() != A.cols()) throw DimensionMismatch("pf_properties needs a square matrix");
    PFReport rep;
    SpectralInfo info = eigen_general(A);
    rep.rho = info.spectral_radius;

    std::vector<double> moduli;
    for (const auto& ev : info.eigenvalues) moduli.push_back(std::abs(ev));
    std::sort(moduli.begin(), moduli.end(), std::greater<double>());
    rep.dominance_gap = moduli.size() >= 2 ? moduli[0] - moduli[1] : rep.rho;
    rep.simple = rep.dominance_gap > policy.eigen * std::max(1.0, rep.rho);

    auto pick_best = [&](const Matrix& M, const MarginFn& margin, const Vector& hint,
                         std::optional<Vector>& out_vec, double& out_margin) {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vector& cand : rho_eigenvector_candidates(M, rep.rho, hint)) {
            Vector v = normalized(cand);
            for (double sign : {1.0, -1.0}) {
                Vector sv = sign * v;
                double m = margin(sv);
                if (m > best) {
                    best = m;
                    out_vec = sv;
                }
            }
        }
        if (out_vec) out_margin = best;
    };

    pick_best(A, primal_margin, primal_hint, rep.right_vector, rep.right_margin);
    rep.has_pf = rep.rho > policy.eigen && rep.right_vector.has_value() &&
                 rep.right_margin >= -policy.membership;

    if (with_left) {
        pick_best(A.transpose(), dual_margin, dual_hint, rep.left_vector, rep.left_margin);
    }
    rep.has_strong_pf =
        rep.has_pf && rep.simple && rep.right_margin > policy.interior &&
        (!with_left || (rep.left_vector.has_value() && rep.left_margin > policy.interior));
    return rep;
}

}  // namespace

PFReport pf_properties(const Matrix& A, const Cone& K, const NumericPolicy& policy,
                       bool with_left) {
    if (A.rows() != K.dim()) throw DimensionMismatch("matrix and cone dimensions differ");
    Cone dual = K.dual();
    MarginFn primal = [&](const Vector& v) { return K.membership_margin(v, policy).margin; };
    MarginFn dual_m = [&](const Vector& v) { return dual.membership_margin(v, policy).margin; };
    return pf_core(A, primal, dual_m, canonical_interior_point(K),
                   canonical_interior_point(dual), policy, with_left);
}

PFReport pf_properties(const Matrix& A, const SemipositiveCone& SC, const NumericPolicy& policy,
                       bool with_left, std::uint64_t seed) {
    if (A.rows() != SC.parent.dim()) throw DimensionMismatch("matrix and cone dimensions differ");
    MarginFn primal = [&](const Vector& v) { return semicone_membership(v, SC, policy).margin; };
    MarginFn dual_m = [&](const Vector& v) {
        return semicone_dual_margin(v, SC, policy, Rng::derive(seed, 17));
    };
    // any interior point of the parent dual is interior to the semicone dual
    Cone parent_dual = SC.parent.dual();
    Vector primal_hint;
    {
        // a certified interior point of K_A when one exists
        ProperReport pr = is_proper(SC, policy, Rng::derive(seed, 18));
        primal_hint = pr.solid ? pr.interior_point : canonical_interior_point(SC.parent);
    }
    return pf_core(A, primal, dual_m, primal_hint, canonical_interior_point(parent_dual),
                   policy, with_left);
}

std::optional<std::size_t> eventual_positivity(const Matrix& A, const Cone& K,
                                               std::size_t k_max, const NumericPolicy& policy,
                                               std::uint64_t seed) {
    if (A.rows() != A.cols()) throw DimensionMismatch("eventual positivity needs a square matrix");
    if (A.rows() != K.dim()) throw DimensionMismatch("matrix and cone dimensions differ");
    if (k_max < 1 || k_max > 64)
        throw PreconditionViolated("power cap must lie in [1, 64]");
    const std::size_t n = K.dim();

    std::vector<Vector> samples;
    if (auto gl = generator_list(K)) {
        for (const Vector& g : *gl) samples.push_back(normalized(g));
    } else {
        Rng rng(Rng::derive(seed, 1));
        for (int t = 0; t < 200; ++t) {
            switch (K.kind()) {
                case ConeKind::Lorentz: {
                    Vector u = random_unit(rng, n - 1);
                    Vector x(n);
                    for (std::size_t i = 0; i + 1 < n; ++i) x[i] = u[i];
                    x[n - 1] = 1.0;
                    samples.push_back(normalized(x));
                    break;
                }
                case ConeKind::Ellipsoidal: {
                    Vector u = random_unit(rng, n - 1);
                    Vector x(n);
                    for (std::size_t i = 0; i + 1 < n; ++i) x[i] = u[i];
                    x[n - 1] = 1.0;
                    samples.push_back(normalized(K.transform() * x));
                    break;
                }
                case ConeKind::Psd: {
                    Vector v = random_unit(rng, K.psd_order());
                    samples.push_back(svec(Matrix::outer(v, v)));
                    break;
                }
                default:
                    throw InternalContradiction("generator-free cone kind without a sampler");
            }
        }
    }

    std::vector<bool> pass(k_max + 1, false);
    Matrix P = Matrix::identity(n);
    for (std::size_t k = 1; k <= k_max; ++k) {
        P = P * A;
        if (P.max_abs() > 1e12)
            throw Overflow("matrix powers outgrew 1e12; rescale by 1/rho and retry");
        bool ok = true;
        for (const Vector& s : samples) {
            Vector img = P * s;
            double nn = norm2(img);
            if (nn < 1e-300) {
                ok = false;
                break;
            }
            img *= 1.0 / nn;
            if (K.membership_margin(img, policy).margin <= policy.interior) {
                ok = false;
                break;
            }
        }
        pass[k] = ok;
    }
    for (std::size_t k0 = 1; k0 <= k_max; ++k0) {
        bool run = true;
        for (std::size_t k = k0; k <= std::min(k0 + 3, k_max); ++k) run = run && pass[k];
        if (run) return k0;
    }
    return std::nullopt;
}

}  // namespace conecert
