#include "conecert/preserve.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>

#include "conecert/certify.hpp"
#include "conecert/errors.hpp"
#include "conecert/linalg.hpp"
#include "conecert/rng.hpp"

namespace conecert {
namespace {

Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            for (std::size_t k = 0; k < B.rows(); ++k)
                for (std::size_t l = 0; l < B.cols(); ++l)
                    out(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
    return out;
}

Matrix ones_matrix(std::size_t n) {
    Matrix O(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) O(i, j) = 1.0;
    return O;
}

Vector normalized(Vector v) {
    double n = norm2(v);
    if (n <= 1e-300) throw InternalContradiction("cannot normalize a zero vector");
    v *= 1.0 / n;
    return v;
}

double margin_of(const Vector& x, const Cone& K, const NumericPolicy& pol) {
    return K.membership_margin(x, pol).margin;
}

// A unit member of K near its central axis: the canonical interior point
// nudged by a random direction, shrunk until the margin is comfortable.
Vector jittered_member(const Cone& K, Rng& rng, const NumericPolicy& pol) {
    Vector base = canonical_interior_point(K);
    double mb = margin_of(base, K, pol);
    Vector dir(K.dim());
    for (double& e : dir) e = rng.normal();
    if (norm2(dir) < 1e-12) return normalized(base);
    dir = normalized(dir);
    double s = 1.5 * mb;
    while (s > 1e-9) {
        Vector cand = base + s * dir;
        if (margin_of(cand, K, pol) >= 0.25 * mb) return normalized(cand);
        s *= 0.5;
    }
    return normalized(base);
}

// Semipositive by construction: A maps the stored witness onto an interior
// point exactly, and the added noise vanishes on the witness.
Matrix sampled_semipositive(const Cone& K, Rng& rng, const NumericPolicy& pol,
                            Vector& witness) {
    const std::size_t n = K.dim();
    Vector x0 = jittered_member(K, rng, pol);
    Vector y0 = jittered_member(K, rng, pol);
    Matrix A = (1.0 / dot(x0, x0)) * Matrix::outer(y0, x0);
    Matrix R(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) R(i, j) = 0.25 * rng.normal();
    Matrix proj = Matrix::identity(n) - (1.0 / dot(x0, x0)) * Matrix::outer(x0, x0);
    A = A + R * proj;
    witness = x0;
    return A;
}

// Nonnegative by construction: a sum of rank-one products (member of K)
// times (member of K*)'.
Matrix sampled_nonnegative(const Cone& K, const Cone& D, Rng& rng, const NumericPolicy& pol) {
    const std::size_t n = K.dim();
    Matrix A(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vector g = jittered_member(K, rng, pol);
        Vector f = jittered_member(D, rng, pol);
        A = A + rng.uniform(0.1, 2.0) * Matrix::outer(g, f);
    }
    return A;
}

// Greedily pick n linearly independent columns from a finite generator list.
std::optional<Matrix> independent_generator_columns(const Cone& K) {
    auto gl = generator_list(K);
    if (!gl) return std::nullopt;
    const std::size_t n = K.dim();
    std::vector<Vector> chosen;
    for (const Vector& g : *gl) {
        std::vector<Vector> trial = chosen;
        trial.push_back(g);
        Matrix stack(trial.size(), n);
        for (std::size_t r = 0; r < trial.size(); ++r) stack.set_row(r, trial[r]);
        if (rank(stack) == trial.size()) chosen = std::move(trial);
        if (chosen.size() == n) return Matrix::from_columns(chosen);
    }
    return std::nullopt;
}

constexpr double kScales[8] = {0.5, 0.25, 0.75, 0.4, 0.6, 0.3, 0.8, 0.55};

}  // namespace

MatrixOperator MatrixOperator::sandwich(Matrix P, Matrix Q) {
    if (P.rows() != P.cols() || Q.rows() != Q.cols() || P.rows() != Q.rows())
        throw DimensionMismatch("sandwich factors must be square and equal-sized");
    MatrixOperator op;
    op.form = Form::Sandwich;
    op.n = P.rows();
    op.P = std::move(P);
    op.Q = std::move(Q);
    return op;
}

MatrixOperator MatrixOperator::dense(Matrix M) {
    if (M.rows() != M.cols()) throw DimensionMismatch("dense operator must be square");
    std::size_t n = static_cast<std::size_t>(std::lround(std::sqrt(double(M.rows()))));
    if (n * n != M.rows())
        throw DimensionMismatch("dense operator size must be a perfect square");
    MatrixOperator op;
    op.form = Form::Dense;
    op.n = n;
    op.M = std::move(M);
    return op;
}

MatrixOperator MatrixOperator::lyapunov(const Matrix& A) {
    if (A.rows() != A.cols()) throw DimensionMismatch("lyapunov seed must be square");
    Matrix I = Matrix::identity(A.rows());
    return dense(kron(A, I) + kron(I, A));
}

Matrix MatrixOperator::apply(const Matrix& X) const {
    if (X.rows() != n || X.cols() != n)
        throw DimensionMismatch("operator argument has the wrong size");
    if (form == Form::Sandwich) return P * (X * Q);
    return unvec_rowmajor(M * vec_rowmajor(X), n);
}

MatrixOperator MatrixOperator::inverted() const {
    try {
        if (form == Form::Sandwich) return sandwich(inverse(P), inverse(Q));
        return dense(inverse(M));
    } catch (const SingularMatrix&) {
        throw NotInvertible("operator is singular");
    }
}

Matrix MatrixOperator::dense_matrix() const {
    if (form == Form::Dense) return M;
    return kron(P, Q.transpose());
}

Vector vec_rowmajor(const Matrix& X) {
    Vector v(X.rows() * X.cols());
    for (std::size_t i = 0; i < X.rows(); ++i)
        for (std::size_t j = 0; j < X.cols(); ++j) v[i * X.cols() + j] = X(i, j);
    return v;
}

Matrix unvec_rowmajor(const Vector& v, std::size_t n) {
    if (v.size() != n * n) throw DimensionMismatch("vectorization length is not n^2");
    Matrix X(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) X(i, j) = v[i * n + j];
    return X;
}

Matrix interior_column_matrix(const Cone& K, double scale) {
    const std::size_t n = K.dim();
    std::vector<Vector> cols;
    switch (K.kind()) {
        case ConeKind::Orthant: {
            for (std::size_t i = 0; i < n; ++i) {
                Vector c(n, 1.0);
                c[i] += scale * n;
                cols.push_back(c);
            }
            break;
        }
        case ConeKind::Lorentz: {
            Vector axis(n);
            axis[n - 1] = 1.0;
            cols.push_back(axis);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                Vector c = axis;
                c[i] += scale;
                cols.push_back(c);
            }
            break;
        }
        case ConeKind::Ellipsoidal: {
            Matrix inner = interior_column_matrix(Cone::lorentz(n), scale);
            return K.transform() * inner;
        }
        case ConeKind::Psd: {
            Vector center = svec(Matrix::identity(K.psd_order()));
            cols.push_back(center);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                Vector c = center;
                c[i] += scale;
                cols.push_back(c);
            }
            break;
        }
        case ConeKind::PolyhedralGen:
        case ConeKind::PolyhedralFacet: {
            Vector base = canonical_interior_point(K);
            double mb = K.membership_margin(base, default_policy()).margin;
            auto gl = generator_list(K);
            if (!gl || gl->empty())
                throw InternalContradiction("polyhedral cone without generators");
            cols.push_back(base);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                Vector c = base + (scale * mb) * normalized((*gl)[i % gl->size()]);
                cols.push_back(c);
            }
            break;
        }
    }
    return Matrix::from_columns(cols);
}

BasisBundle semipositive_basis(const Cone& K, const NumericPolicy& policy) {
    const std::size_t n = K.dim();
    if (n > 8) throw PreconditionViolated("basis construction capped at n = 8");
    const Matrix ones = ones_matrix(n);
    const Vector one_vec(n, 1.0);

    for (double scale : kScales) {
        Matrix S = K.kind() == ConeKind::Orthant ? Matrix::identity(n)
                                                 : interior_column_matrix(K, scale);
        Matrix Sinv;
        try {
            Sinv = inverse(S);
        } catch (const SingularMatrix&) {
            continue;
        }
        Vector y = normalized(S * one_vec);
        if (margin_of(y, K, policy) <= policy.interior) continue;

        BasisBundle bundle;
        bool margins_ok = true;
        for (std::size_t j = 0; j < n && margins_ok; ++j)
            for (std::size_t k = 0; k < n && margins_ok; ++k) {
                Matrix B = ones;
                B(j, k) += 1.0;
                Matrix A = S * (B * Sinv);
                if (margin_of(A * y, K, policy) <= policy.interior) {
                    margins_ok = false;
                    break;
                }
                bundle.elements.push_back(std::move(A));
                bundle.witnesses.push_back(y);
            }
        if (!margins_ok) continue;

        Matrix stacked(n * n, n * n);
        for (std::size_t r = 0; r < bundle.elements.size(); ++r)
            stacked.set_row(r, vec_rowmajor(bundle.elements[r]));
        bundle.independence_rank = rank(stacked);
        if (bundle.independence_rank == n * n) return bundle;
    }
    throw BasisDegenerate("no interior-column perturbation reached full rank");
}

BasisBundle nonnegative_basis(const Cone& K, const NumericPolicy& policy) {
    const std::size_t n = K.dim();
    if (n > 8) throw PreconditionViolated("basis construction capped at n = 8");
    Cone D = K.dual();
    Vector x_int = normalized(canonical_interior_point(K));

    for (double scale : kScales) {
        Matrix G = independent_generator_columns(K).value_or(interior_column_matrix(K, scale));
        Matrix F = independent_generator_columns(D).value_or(interior_column_matrix(D, scale));
        if (rank(G) != n || rank(F) != n) continue;

        BasisBundle bundle;
        bool margins_ok = true;
        for (std::size_t i = 0; i < n && margins_ok; ++i)
            for (std::size_t j = 0; j < n && margins_ok; ++j) {
                Matrix E = Matrix::outer(G.col(i), F.col(j));
                // E maps x_int to <f_j, x_int> g_i, a positive multiple of a
                // member; generators are boundary rays, so membership is the
                // right bar here, not interiority
                if (margin_of(E * x_int, K, policy) < -policy.membership) {
                    margins_ok = false;
                    break;
                }
                bundle.elements.push_back(std::move(E));
                bundle.witnesses.push_back(x_int);
            }
        if (!margins_ok) continue;

        Matrix stacked(n * n, n * n);
        for (std::size_t r = 0; r < bundle.elements.size(); ++r)
            stacked.set_row(r, vec_rowmajor(bundle.elements[r]));
        bundle.independence_rank = rank(stacked);
        if (bundle.independence_rank == n * n) return bundle;
    }
    throw BasisDegenerate("no rank-one family reached full rank");
}

PreserverReport preserver_images_nonnegative(const MatrixOperator& L, const Cone& K,
                                             std::size_t samples, std::uint64_t seed,
                                             const NumericPolicy& policy) {
    const std::size_t n = K.dim();
    if (L.n != n) throw DimensionMismatch("operator and cone dimensions differ");
    MatrixOperator Linv = L.inverted();

    PreserverReport rep;
    for (int t = 0; t < 50; ++t) {
        Rng rng(Rng::derive(seed, 100 + static_cast<std::uint64_t>(t)));
        Vector witness;
        Matrix A = sampled_semipositive(K, rng, policy, witness);
        int leg = 0;
        for (const Matrix& img : {L.apply(A), Linv.apply(A)}) {
            Certificate cert = semipositivity_certificate(
                img, K, K, policy, Rng::derive(seed, 7000 + 2 * t + leg));
            if (cert.outcome != CertificateOutcome::SemipositiveWitness)
                throw AssertionFailed(
                    "spot check: a semipositive sample lost its witness under the operator; "
                    "the strong-preserver claim does not hold at this tolerance");
            ++leg;
        }
        ++rep.spot_checked;
    }

    Cone D = K.dual();
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng(Rng::derive(seed, 9000 + t));
        Matrix A = sampled_nonnegative(K, D, rng, policy);
        bool fwd = nonnegativity_check(L.apply(A), K, K, policy, Rng::derive(seed, 500 + t))
                       .nonnegative;
        bool bwd = nonnegativity_check(Linv.apply(A), K, K, policy, Rng::derive(seed, 600 + t))
                       .nonnegative;
        if (!fwd || !bwd)
            throw AssertionFailed("a cone-nonnegative sample escaped under the operator "
                                  "or its inverse");
        ++rep.samples;
        ++rep.passes;
    }
    rep.note = "consistent with strong preservation on " +
               std::to_string(rep.spot_checked + rep.samples) + " samples";
    return rep;
}

}  // namespace conecert
