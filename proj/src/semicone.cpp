#include "conecert/semicone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "conecert/certify.hpp"
#include "conecert/dd.hpp"
#include "conecert/errors.hpp"
#include "conecert/linalg.hpp"
#include "conecert/margin_search.hpp"
#include "conecert/rng.hpp"

namespace conecert {
namespace {

Vector normalized(Vector v) {
    double n = norm2(v);
    if (n <= 1e-300) throw InternalContradiction("cannot normalize a zero vector");
    v *= 1.0 / n;
    return v;
}

double msc(const SemipositiveCone& SC, const Vector& x, const NumericPolicy& pol) {
    return semicone_membership(x, SC, pol).margin;
}

Matrix mpow(const Matrix& A, std::size_t k) {
    Matrix P = Matrix::identity(A.rows());
    for (std::size_t i = 0; i < k; ++i) P = P * A;
    return P;
}

// Deterministic unit directions; the angular resolution shrinks with the
// dimension and disappears past n = 4, where random probing takes over.
std::vector<Vector> sphere_grid(std::size_t n) {
    std::vector<Vector> out;
    if (n == 1) {
        out.push_back(Vector{1.0});
        out.push_back(Vector{-1.0});
    } else if (n == 2) {
        for (int j = 0; j < 256; ++j) {
            double th = 2.0 * M_PI * j / 256.0;
            out.push_back(Vector{std::cos(th), std::sin(th)});
        }
    } else if (n == 3) {
        for (int i = 0; i < 64; ++i) {
            double th = M_PI * (i + 0.5) / 64.0;
            for (int j = 0; j < 64; ++j) {
                double ph = 2.0 * M_PI * j / 64.0;
                out.push_back(Vector{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                     std::cos(th)});
            }
        }
    } else if (n == 4) {
        for (int i = 0; i < 24; ++i) {
            double a = M_PI * (i + 0.5) / 24.0;
            for (int j = 0; j < 24; ++j) {
                double b = M_PI * (j + 0.5) / 24.0;
                for (int k = 0; k < 24; ++k) {
                    double c = 2.0 * M_PI * k / 24.0;
                    out.push_back(Vector{std::sin(a) * std::sin(b) * std::cos(c),
                                         std::sin(a) * std::sin(b) * std::sin(c),
                                         std::sin(a) * std::cos(b), std::cos(a)});
                }
            }
        }
    }
    return out;
}

// Walk the chord from a strict member toward an outside direction until the
// membership margin crosses zero; returns the member-side endpoint.
std::optional<Vector> boundary_between(const SemipositiveCone& SC, const Vector& inside,
                                       const Vector& outside, const NumericPolicy& pol) {
    Vector lo = inside, hi = outside;
    if (msc(SC, lo, pol) < 0.0) return std::nullopt;
    for (int it = 0; it < 60; ++it) {
        Vector mid = lo + hi;
        if (norm2(mid) < 1e-9) {
            hi = normalized(hi + 0.05 * lo);
            continue;
        }
        mid = normalized(mid);
        if (msc(SC, mid, pol) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Vector random_unit(Rng& rng, std::size_t n) {
    Vector v(n);
    for (double& e : v) e = rng.normal();
    if (norm2(v) < 1e-12) v[0] = 1.0;
    return normalized(v);
}

std::optional<Vector> interior_witness(const SemipositiveCone& SC, const NumericPolicy& pol,
                                       std::uint64_t seed) {
    Certificate cert = semipositivity_certificate(SC.A, SC.parent, SC.parent, pol, seed);
    if (cert.outcome != CertificateOutcome::SemipositiveWitness) return std::nullopt;
    return normalized(cert.vector);
}

}  // namespace

SemipositiveCone build_semipositive_cone(const Matrix& A, const Cone& K) {
    if (A.rows() != A.cols()) throw DimensionMismatch("semipositive cone needs a square matrix");
    if (A.rows() != K.dim()) throw DimensionMismatch("matrix and cone dimensions differ");
    SemipositiveCone sc{K, A, false, {}, {}, {}, std::nullopt};
    if (auto fl = facet_list(K)) {
        sc.polyhedral = true;
        std::vector<Vector> stack;
        auto add = [&](Vector f) {
            double n2 = norm2(f);
            if (n2 < 1e-12) return;  // pullback of a left-kernel facet is vacuous
            f *= 1.0 / n2;
            for (const Vector& g : stack)
                if (dot(g, f) > 1.0 - 1e-12) return;
            stack.push_back(std::move(f));
        };
        for (const Vector& f : *fl) add(f);
        for (const Vector& f : *fl) add(A.transpose() * f);
        sc.facet_cache = stack;
        dd::HalfspaceCone hc = dd::rays_from_facets(stack, K.dim());
        sc.generators = hc.rays;
        sc.lineality = hc.lineality;
    }
    if (K.kind() == ConeKind::Lorentz) {
        const std::size_t n = K.dim();
        Matrix J(n, n);
        for (std::size_t i = 0; i + 1 < n; ++i) J(i, i) = -1.0;
        J(n - 1, n - 1) = 1.0;
        sc.quadric = A.transpose() * (J * A);
    }
    return sc;
}

MarginReport semicone_membership(const Vector& x, const SemipositiveCone& SC,
                                 const NumericPolicy& policy) {
    if (x.size() != SC.parent.dim())
        throw DimensionMismatch("vector dimension does not match the semipositive cone");
    double m = std::min(SC.parent.membership_margin(x, policy).margin,
                        SC.parent.membership_margin(SC.A * x, policy).margin);
    MarginReport rep;
    rep.margin = m;
    rep.classification = m > policy.interior    ? PointClass::Interior
                         : m >= -policy.membership ? PointClass::Boundary
                                                   : PointClass::Outside;
    return rep;
}

ProperReport is_proper(const SemipositiveCone& SC, const NumericPolicy& policy,
                       std::uint64_t seed) {
    ProperReport rep;
    Certificate cert =
        semipositivity_certificate(SC.A, SC.parent, SC.parent, policy, Rng::derive(seed, 11));
    if (cert.outcome == CertificateOutcome::SemipositiveWitness) {
        rep.solid = true;
        rep.interior_point = cert.vector;
    }
    if (SC.polyhedral) {
        rep.pointed = SC.lineality.empty();
        if (!rep.pointed) rep.counter_line = SC.lineality.front();
        return rep;
    }
    // A full line inside K_A needs min over both signs of both margins to
    // stay nonnegative somewhere on the sphere; search for it directly.
    const std::size_t n = SC.parent.dim();
    Matrix negI = -1.0 * Matrix::identity(n);
    Matrix negA = -1.0 * SC.A;
    std::vector<MarginTerm> terms{{nullptr, &SC.parent},
                                  {&SC.A, &SC.parent},
                                  {&negI, &SC.parent},
                                  {&negA, &SC.parent}};
    MarginSearchResult line = max_min_margin(terms, n, Rng::derive(seed, 12));
    if (line.value >= -policy.membership) {
        rep.pointed = false;
        rep.counter_line = line.arg;
    } else {
        rep.pointed = true;
    }
    return rep;
}

InvarianceReport invariance_check(const SemipositiveCone& SC, const NumericPolicy& policy,
                                  std::uint64_t seed) {
    InvarianceReport rep;
    if (SC.polyhedral) {
        // K_A is the conic hull of its extreme rays and margins are concave,
        // so invariance holds iff every generator stays inside: exact.
        rep.exact = true;
        double worst = std::numeric_limits<double>::infinity();
        for (const Vector& g : SC.generators) {
            ++rep.checked;
            double m = msc(SC, SC.A * g, policy);
            if (m < worst) {
                worst = m;
                rep.violator = g;
                rep.violation = m;
            }
        }
        rep.invariant = worst >= -policy.membership;
        if (rep.invariant) {
            rep.violator.clear();
            rep.violation = 0.0;
        }
        return rep;
    }

    const std::size_t n = SC.parent.dim();
    std::optional<Vector> xint = interior_witness(SC, policy, Rng::derive(seed, 100));
    double worst = std::numeric_limits<double>::infinity();
    Vector worst_u;
    auto probe = [&](const Vector& u) {
        if (msc(SC, u, policy) < -policy.membership) return;
        ++rep.checked;
        double m = msc(SC, SC.A * u, policy);
        if (m < worst) {
            worst = m;
            worst_u = u;
        }
    };
    auto handle_direction = [&](const Vector& d) {
        if (msc(SC, d, policy) >= -policy.membership) {
            probe(d);
            return;
        }
        if (!xint) return;
        if (auto b = boundary_between(SC, *xint, d, policy)) probe(*b);
    };
    for (const Vector& d : sphere_grid(n)) handle_direction(d);
    for (int t = 0; t < 200; ++t) {
        Rng rng(Rng::derive(seed, 2000 + static_cast<std::uint64_t>(t)));
        handle_direction(random_unit(rng, n));
    }

    // Descent refinement: minimize the membership margin of A x over members,
    // pulled back toward K_A whenever the iterate drifts out.
    Matrix A2 = SC.A * SC.A;
    const Cone& K = SC.parent;
    for (int r = 0; r < 8; ++r) {
        Rng rng(Rng::derive(seed, 2500 + static_cast<std::uint64_t>(r)));
        Vector x = (r == 0 && !worst_u.empty()) ? worst_u : random_unit(rng, n);
        for (int k = 1; k <= 300; ++k) {
            Vector ax = SC.A * x;
            double mA = K.membership_margin(ax, policy).margin;
            double mA2 = K.membership_margin(A2 * x, policy).margin;
            Vector g = mA <= mA2 ? SC.A.transpose() * margin_supergradient(ax, K)
                                 : A2.transpose() * margin_supergradient(A2 * x, K);
            Vector dir = -1.0 * g;
            if (msc(SC, x, policy) < 0.0) {
                double m1 = K.membership_margin(x, policy).margin;
                Vector gm = m1 <= mA ? margin_supergradient(x, K)
                                     : SC.A.transpose() * margin_supergradient(ax, K);
                dir += 8.0 * gm;
            }
            if (norm2(dir) < 1e-14) break;
            Vector step = x + (1.0 / std::sqrt(static_cast<double>(k))) * normalized(dir);
            if (norm2(step) < 1e-12) break;
            x = normalized(step);
            probe(x);
        }
    }

    rep.invariant = worst >= -policy.membership;
    if (!rep.invariant) {
        rep.violator = worst_u;
        rep.violation = worst;
    }
    return rep;
}

std::vector<Vector> member_sample(const SemipositiveCone& SC, const NumericPolicy& policy,
                                  std::uint64_t seed) {
    std::vector<Vector> out;
    if (SC.polyhedral) {
        for (const Vector& g : SC.generators) out.push_back(normalized(g));
        for (std::size_t i = 0; i < SC.generators.size(); ++i)
            for (std::size_t k = i + 1; k < SC.generators.size(); ++k)
                out.push_back(normalized(normalized(SC.generators[i]) +
                                         normalized(SC.generators[k])));
        return out;
    }
    const std::size_t n = SC.parent.dim();
    std::optional<Vector> xint = interior_witness(SC, policy, Rng::derive(seed, 41));
    std::vector<Vector> grid = sphere_grid(n);
    std::size_t stride = std::max<std::size_t>(1, grid.size() / 512);
    for (std::size_t i = 0; i < grid.size(); i += stride) {
        const Vector& d = grid[i];
        if (msc(SC, d, policy) >= -policy.membership) {
            out.push_back(d);
        } else if (xint) {
            if (auto b = boundary_between(SC, *xint, d, policy)) out.push_back(*b);
        }
    }
    if (xint) {
        out.push_back(*xint);
        double m0 = msc(SC, *xint, policy);
        for (int t = 0; t < 200; ++t) {
            Rng rng(Rng::derive(seed, 4200 + static_cast<std::uint64_t>(t)));
            Vector p = random_unit(rng, n);
            double s = 0.5 * m0;
            while (s > 1e-12) {
                Vector cand = normalized(*xint + s * p);
                if (msc(SC, cand, policy) >= 0.0) {
                    out.push_back(cand);
                    break;
                }
                s *= 0.5;
            }
        }
    }
    return out;
}

double semicone_dual_margin(const Vector& y, const SemipositiveCone& SC,
                            const NumericPolicy& policy, std::uint64_t seed) {
    if (y.size() != SC.parent.dim())
        throw DimensionMismatch("vector dimension does not match the semipositive cone");
    if (SC.polyhedral) {
        if (SC.generators.empty()) return std::numeric_limits<double>::infinity();
        double worst = std::numeric_limits<double>::infinity();
        for (const Vector& g : SC.generators) worst = std::min(worst, dot(y, normalized(g)));
        return worst;
    }
    std::vector<Vector> members = member_sample(SC, policy, seed);
    if (members.empty()) return std::numeric_limits<double>::infinity();
    double worst = std::numeric_limits<double>::infinity();
    Vector worst_x;
    for (const Vector& x : members) {
        double v = dot(y, x);
        if (v < worst) {
            worst = v;
            worst_x = x;
        }
    }
    // Descent refinement: <y, x> is linear, so push x against y while staying
    // a member of K_A.
    const Cone& K = SC.parent;
    for (int r = 0; r < 6; ++r) {
        Rng rng(Rng::derive(seed, 4600 + static_cast<std::uint64_t>(r)));
        Vector x = (r == 0) ? worst_x : members[rng.below(members.size())];
        for (int k = 1; k <= 200; ++k) {
            Vector dir = -1.0 * y;
            if (msc(SC, x, policy) < 0.0) {
                Vector ax = SC.A * x;
                double m1 = K.membership_margin(x, policy).margin;
                double m2 = K.membership_margin(ax, policy).margin;
                Vector gm = m1 <= m2 ? margin_supergradient(x, K)
                                     : SC.A.transpose() * margin_supergradient(ax, K);
                dir += 8.0 * norm2(y) * gm;
            }
            if (norm2(dir) < 1e-14) break;
            Vector step = x + (1.0 / std::sqrt(static_cast<double>(k))) * normalized(dir);
            if (norm2(step) < 1e-12) break;
            x = normalized(step);
            if (msc(SC, x, policy) >= -policy.membership)
                worst = std::min(worst, dot(y, x));
        }
    }
    return worst;
}

PowerAutoReport power_auto_hypothesis(const SemipositiveCone& SC, std::size_t j,
                                      const NumericPolicy& policy, std::uint64_t seed) {
    if (j < 2) throw PreconditionViolated("power hypothesis probe needs j >= 2");
    PowerAutoReport rep;
    rep.j = j;

    std::optional<Vector> xint = interior_witness(SC, policy, Rng::derive(seed, 1));
    if (!xint) return rep;  // no interior point: every inclusion is vacuous
    rep.interior_found = true;
    const std::size_t n = SC.parent.dim();
    const double m0 = msc(SC, *xint, policy);

    std::vector<Vector> samples;
    auto push_sample = [&](const Vector& s) {
        if (msc(SC, s, policy) > policy.interior) samples.push_back(s);
    };
    if (SC.polyhedral) {
        for (const Vector& g : SC.generators) push_sample(normalized(g) + 1e-3 * (*xint));
    } else {
        std::vector<Vector> grid = sphere_grid(n);
        std::size_t stride = std::max<std::size_t>(1, grid.size() / 256);
        for (std::size_t i = 0; i < grid.size(); i += stride) {
            const Vector& d = grid[i];
            if (msc(SC, d, policy) >= -policy.membership) {
                push_sample(normalized(d) + 1e-3 * (*xint));
            } else if (auto b = boundary_between(SC, *xint, d, policy)) {
                push_sample(*b + 1e-3 * (*xint));
            }
        }
    }
    for (int t = 0; t < 200; ++t) {
        Rng rng(Rng::derive(seed, 3000 + static_cast<std::uint64_t>(t)));
        Vector p = random_unit(rng, n);
        double s = 0.5 * m0;
        while (s > 1e-12) {
            Vector cand = normalized(*xint + s * p);
            if (msc(SC, cand, policy) > std::max(policy.interior, 0.2 * m0)) {
                samples.push_back(cand);
                break;
            }
            s *= 0.5;
        }
    }
    rep.samples = samples.size();

    auto probe_power = [&](const Matrix& P) {
        PowerProbe probe;
        for (const Vector& s : samples) {
            if (msc(SC, P * s, policy) < -policy.membership) {
                probe.status = PowerProbe::Status::Fails;
                probe.witness = s;
                break;
            }
        }
        return probe;
    };

    Matrix Pj = mpow(SC.A, j);
    rep.forward_j = probe_power(Pj);
    rep.forward_j1 = probe_power(Pj * SC.A);
    try {
        Matrix Ainv = inverse(SC.A);
        Matrix Qj = mpow(Ainv, j);
        rep.backward_j = probe_power(Qj);
        rep.backward_j1 = probe_power(Qj * Ainv);
    } catch (const SingularMatrix&) {
        rep.backward_skipped = true;
        rep.backward_j.status = PowerProbe::Status::Skipped;
        rep.backward_j1.status = PowerProbe::Status::Skipped;
    }
    return rep;
}

SelfDualSquareReport self_dual_square_test(const Matrix& A, const Cone& K,
                                           const NumericPolicy& policy, std::uint64_t seed) {
    if (K.kind() != ConeKind::Orthant && K.kind() != ConeKind::Lorentz &&
        K.kind() != ConeKind::Psd)
        throw PreconditionViolated("the square rule needs a self-dual cone");
    inverse(A);  // SingularMatrix for non-invertible input

    SelfDualSquareReport rep;
    rep.square_nonnegative =
        nonnegativity_check(A * A, K, K, policy, Rng::derive(seed, 5)).nonnegative;
    SemipositiveCone SC = build_semipositive_cone(A, K);
    InvarianceReport inv = invariance_check(SC, policy, Rng::derive(seed, 6));
    rep.invariant = inv.invariant;
    rep.violator = inv.violator;
    return rep;
}

}  // namespace conecert
