#include "conecert/cone.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "conecert/dd.hpp"
#include "conecert/errors.hpp"
#include "conecert/linalg.hpp"
#include "conecert/rng.hpp"

namespace conecert {

namespace {

constexpr double kTightTol = 1e-7;

double lorentz_margin(const Vector& x) {
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) head += x[i] * x[i];
    return x.back() - std::sqrt(head);
}

Vector lorentz_project(const Vector& x) {
    const std::size_t n = x.size();
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) head += x[i] * x[i];
    head = std::sqrt(head);
    const double t = x[n - 1];
    if (head <= t) return x;
    if (head <= -t) return Vector(n, 0.0);
    const double a = 0.5 * (1.0 + t / head);  // head > |t| >= 0 here
    Vector p(n);
    for (std::size_t i = 0; i + 1 < n; ++i) p[i] = a * x[i];
    p[n - 1] = a * head;
    return p;
}

// Cyclic Dykstra over the halfspaces {<f,v> >= 0}, unit normals. The
// correction vectors are what make the limit the true projection rather
// than just a feasible point.
Vector dykstra_project(const Vector& x, const std::vector<Vector>& facets) {
    const std::size_t m = facets.size();
    Vector v = x;
    std::vector<Vector> corr(m, Vector(x.size(), 0.0));
    for (int sweep = 0; sweep < 10000; ++sweep) {
        const Vector before = v;
        for (std::size_t i = 0; i < m; ++i) {
            Vector w = v + corr[i];
            const double d = dot(facets[i], w);
            if (d < 0.0) {
                corr[i] = d * facets[i];  // w - P(w)
                w -= corr[i];
            } else {
                corr[i] = Vector(x.size(), 0.0);
            }
            v = std::move(w);
        }
        if (norm_inf(v - before) <= 1e-12) return v;
    }
    throw DykstraNoConvergence("polyhedral projection stalled after 10000 sweeps");
}

struct DdPair {
    std::vector<Vector> rays;
    std::vector<Vector> facets;
};

void cross_validate(const DdPair& pair, std::size_t n) {
    for (const Vector& r : pair.rays)
        for (const Vector& f : pair.facets)
            if (dot(f, r) < -1e-9)
                throw InternalContradiction("polyhedral conversion: generator escapes a facet");
    for (const Vector& f : pair.facets) {
        std::vector<Vector> tight;
        for (const Vector& r : pair.rays)
            if (std::abs(dot(f, r)) <= kTightTol) tight.push_back(r);
        Matrix T(tight.size(), n);
        for (std::size_t i = 0; i < tight.size(); ++i) T.set_row(i, tight[i]);
        if (rank(T) + 1 < n)
            throw InternalContradiction("polyhedral conversion: facet not supported by a ridge");
    }
}

std::size_t span_rank(const std::vector<Vector>& vs, std::size_t n) {
    Matrix M(vs.size(), n);
    for (std::size_t i = 0; i < vs.size(); ++i) M.set_row(i, vs[i]);
    return rank(M);
}

// Both conversions share one pipeline: run the double description on the
// input list, read the output rays as the other representation, then run it
// again to minimalize the input side. Which degeneracy maps to which error
// depends on the direction.
DdPair convert_polyhedral(const std::vector<Vector>& input, std::size_t n, bool from_facets) {
    if (n == 0 || n > 8)
        throw PreconditionViolated("polyhedral conversion supports dimensions 1 through 8");
    if (input.empty()) throw MalformedInput("polyhedral cone needs at least one vector");
    for (const Vector& v : input)
        if (v.size() != n) throw DimensionMismatch("polyhedral cone: inconsistent dimensions");

    const dd::HalfspaceCone first = dd::rays_from_facets(input, n);
    if (!first.lineality.empty()) {
        if (from_facets) throw NotPointed("facet description admits a line");
        throw NotSolid("generators do not span the space");
    }
    if (span_rank(first.rays, n) < n) {
        if (from_facets) throw NotSolid("facet description has no interior point");
        throw NotPointed("generators contain a line");
    }
    const dd::HalfspaceCone second = dd::rays_from_facets(first.rays, n);

    DdPair pair;
    if (from_facets) {
        pair.rays = first.rays;
        pair.facets = second.rays;
    } else {
        pair.rays = second.rays;
        pair.facets = first.rays;
    }
    cross_validate(pair, n);
    return pair;
}

}  // namespace

Cone Cone::orthant(std::size_t n) {
    if (n == 0) throw MalformedInput("orthant: dimension must be positive");
    Cone c;
    c.kind_ = ConeKind::Orthant;
    c.n_ = n;
    return c;
}

Cone Cone::lorentz(std::size_t n) {
    if (n == 0) throw MalformedInput("lorentz: dimension must be positive");
    Cone c;
    c.kind_ = ConeKind::Lorentz;
    c.n_ = n;
    return c;
}

Cone Cone::psd(std::size_t order) {
    if (order == 0) throw MalformedInput("psd: order must be positive");
    Cone c;
    c.kind_ = ConeKind::Psd;
    c.n_ = svec_dim(order);
    c.order_ = order;
    return c;
}

Cone Cone::polyhedral_from_rays(const std::vector<Vector>& rays) {
    if (rays.empty()) throw MalformedInput("polyhedral cone needs at least one ray");
    DdPair pair = convert_polyhedral(rays, rays.front().size(), false);
    Cone c;
    c.kind_ = ConeKind::PolyhedralGen;
    c.n_ = rays.front().size();
    c.rays_ = std::move(pair.rays);
    c.facets_ = std::move(pair.facets);
    return c;
}

Cone Cone::polyhedral_from_facets(const std::vector<Vector>& facets) {
    if (facets.empty()) throw MalformedInput("polyhedral cone needs at least one facet");
    DdPair pair = convert_polyhedral(facets, facets.front().size(), true);
    Cone c;
    c.kind_ = ConeKind::PolyhedralFacet;
    c.n_ = facets.front().size();
    c.rays_ = std::move(pair.rays);
    c.facets_ = std::move(pair.facets);
    return c;
}

Cone Cone::ellipsoidal(const Matrix& T) {
    if (T.rows() != T.cols() || T.rows() == 0)
        throw MalformedInput("ellipsoidal cone: T must be square");
    if (std::abs(determinant(T)) <= 1e-10)
        throw MalformedInput("ellipsoidal cone: T must be invertible");
    Cone c;
    c.kind_ = ConeKind::Ellipsoidal;
    c.n_ = T.rows();
    c.T_ = T;
    c.Tinv_ = inverse(T);
    return c;
}

std::size_t Cone::psd_order() const {
    if (kind_ != ConeKind::Psd) throw PreconditionViolated("psd_order: not a PSD cone");
    return order_;
}

const std::vector<Vector>& Cone::rays() const {
    if (kind_ != ConeKind::PolyhedralGen && kind_ != ConeKind::PolyhedralFacet)
        throw PreconditionViolated("rays: not a polyhedral cone");
    return rays_;
}

const std::vector<Vector>& Cone::facets() const {
    if (kind_ != ConeKind::PolyhedralGen && kind_ != ConeKind::PolyhedralFacet)
        throw PreconditionViolated("facets: not a polyhedral cone");
    return facets_;
}

const Matrix& Cone::transform() const {
    if (kind_ != ConeKind::Ellipsoidal) throw PreconditionViolated("transform: not ellipsoidal");
    return T_;
}

const Matrix& Cone::transform_inverse() const {
    if (kind_ != ConeKind::Ellipsoidal)
        throw PreconditionViolated("transform_inverse: not ellipsoidal");
    return Tinv_;
}

MarginReport Cone::membership_margin(const Vector& x, const NumericPolicy& policy) const {
    if (x.size() != n_) throw DimensionMismatch("membership_margin: point dimension");
    double margin = 0.0;
    switch (kind_) {
        case ConeKind::Orthant:
            margin = *std::min_element(x.begin(), x.end());
            break;
        case ConeKind::Lorentz:
            margin = lorentz_margin(x);
            break;
        case ConeKind::PolyhedralGen:
        case ConeKind::PolyhedralFacet: {
            margin = dot(facets_.front(), x);
            for (const Vector& f : facets_) margin = std::min(margin, dot(f, x));
            break;
        }
        case ConeKind::Ellipsoidal:
            margin = lorentz_margin(Tinv_ * x);
            break;
        case ConeKind::Psd:
            margin = eigen_symmetric(smat(x)).values.back();
            break;
    }
    MarginReport report;
    report.margin = margin;
    report.classification = margin > policy.interior
                                ? PointClass::Interior
                                : (margin >= -policy.membership ? PointClass::Boundary
                                                                : PointClass::Outside);
    return report;
}

Vector Cone::project(const Vector& x) const {
    if (x.size() != n_) throw DimensionMismatch("project: point dimension");
    switch (kind_) {
        case ConeKind::Orthant: {
            Vector p = x;
            for (double& v : p) v = std::max(v, 0.0);
            return p;
        }
        case ConeKind::Lorentz:
            return lorentz_project(x);
        case ConeKind::PolyhedralGen:
        case ConeKind::PolyhedralFacet:
            return dykstra_project(x, facets_);
        case ConeKind::Psd: {
            const SymmetricEigen eig = eigen_symmetric(smat(x));
            Matrix P(order_, order_);
            for (std::size_t k = 0; k < order_; ++k) {
                if (eig.values[k] <= 0.0) continue;
                P = P + eig.values[k] * Matrix::outer(eig.vectors[k], eig.vectors[k]);
            }
            return svec(P);
        }
        case ConeKind::Ellipsoidal:
            throw UnsupportedForEllipsoidal(
                "project: transport through transform_inverse() and project onto Lorentz");
    }
    throw InternalContradiction("project: unhandled cone kind");
}

Cone Cone::dual() const {
    switch (kind_) {
        case ConeKind::Orthant:
        case ConeKind::Lorentz:
        case ConeKind::Psd:
            return *this;
        case ConeKind::Ellipsoidal: {
            Cone c;
            c.kind_ = ConeKind::Ellipsoidal;
            c.n_ = n_;
            c.T_ = Tinv_.transpose();
            c.Tinv_ = T_.transpose();
            return c;
        }
        case ConeKind::PolyhedralGen:
        case ConeKind::PolyhedralFacet: {
            // <r, y> >= 0 for the primal rays defines the dual, so the two
            // stored lists swap roles.
            Cone c;
            c.kind_ = kind_ == ConeKind::PolyhedralGen ? ConeKind::PolyhedralFacet
                                                       : ConeKind::PolyhedralGen;
            c.n_ = n_;
            c.rays_ = facets_;
            c.facets_ = rays_;
            return c;
        }
    }
    throw InternalContradiction("dual: unhandled cone kind");
}

Cone dd_convert(const Cone& K) {
    if (K.kind() != ConeKind::PolyhedralGen && K.kind() != ConeKind::PolyhedralFacet)
        throw PreconditionViolated("dd_convert: expects a polyhedral cone");
    Cone c = K;
    c.kind_ = K.kind() == ConeKind::PolyhedralGen ? ConeKind::PolyhedralFacet
                                                  : ConeKind::PolyhedralGen;
    return c;
}

Cone ellipsoidal_from_quadric(const Matrix& Q, const Vector& u) {
    const std::size_t n = Q.rows();
    if (Q.cols() != n || n == 0) throw MalformedInput("quadric cone: Q must be square");
    if (u.size() != n) throw DimensionMismatch("quadric cone: u dimension");

    const SymmetricEigen eig = eigen_symmetric(Q);
    const double scale = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    const double tol = 1e-10 * std::max(scale, 1.0);
    std::size_t positive = 0, negative = 0;
    for (const double v : eig.values) {
        if (v > tol) ++positive;
        if (v < -tol) ++negative;
    }
    if (positive + 1 != n || negative != 1)
        throw WrongInertia("quadric cone: Q must have n-1 positive and 1 negative eigenvalue");

    const double un = norm2(u);
    if (un < 1e-12) throw EigenvectorMismatch("quadric cone: u is numerically zero");
    Vector uhat = (1.0 / un) * u;
    Vector vneg = eig.vectors[n - 1];  // values sorted nonincreasing
    const double align = dot(vneg, uhat);
    Vector residual = uhat - align * vneg;
    if (norm2(residual) > 1e-6)
        throw EigenvectorMismatch("quadric cone: u is not the negative-eigenvalue direction");
    if (align < 0.0) vneg *= -1.0;

    Matrix T(n, n);
    for (std::size_t k = 0; k + 1 < n; ++k)
        T.set_col(k, std::pow(eig.values[k], -0.5) * eig.vectors[k]);
    T.set_col(n - 1, std::pow(std::abs(eig.values[n - 1]), -0.5) * vneg);

    // Spot check: images of Lorentz points must land on the Q-nonpositive,
    // u-nonnegative side.
    Rng rng(0x9e3779b97f4a7c15ULL);
    for (int sample = 0; sample < 64; ++sample) {
        Vector z(n, 0.0);
        z[n - 1] = 1.0;
        if (n > 1) {
            Vector dir(n - 1);
            for (double& d : dir) d = rng.normal();
            const double dn = norm2(dir);
            const double r = (sample % 4 == 0) ? 1.0 : rng.uniform();  // boundary every 4th
            if (dn > 1e-12)
                for (std::size_t i = 0; i + 1 < n; ++i) z[i] = r * dir[i] / dn;
        }
        const Vector x = T * z;
        const double qval = dot(x, Q * x);
        const double xn2 = dot(x, x);
        if (qval > 1e-8 * std::max(scale * xn2, 1.0))
            throw InternalContradiction("quadric cone: image violates x'Qx <= 0");
        if (dot(x, uhat) < -1e-8 * std::sqrt(std::max(xn2, 1.0)))
            throw InternalContradiction("quadric cone: image violates x'u >= 0");
    }
    return Cone::ellipsoidal(T);
}

std::size_t svec_dim(std::size_t order) { return order * (order + 1) / 2; }

std::size_t svec_order(std::size_t dim) {
    std::size_t order = 0;
    while (svec_dim(order) < dim) ++order;
    if (svec_dim(order) != dim)
        throw MalformedInput("svec_order: length is not a triangular number");
    return order;
}

Vector svec(const Matrix& S) {
    const std::size_t m = S.rows();
    if (S.cols() != m) throw DimensionMismatch("svec: matrix must be square");
    const double scale = std::max(S.max_abs(), 1.0);
    Vector v(svec_dim(m));
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            if (std::abs(S(i, j) - S(j, i)) > 1e-10 * scale)
                throw NotSymmetric("svec: matrix is not symmetric");
            v[k++] = i == j ? S(i, i) : M_SQRT2 * 0.5 * (S(i, j) + S(j, i));
        }
    return v;
}

Matrix smat(const Vector& v) {
    const std::size_t m = svec_order(v.size());
    Matrix S(m, m);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double value = i == j ? v[k] : v[k] * M_SQRT1_2;
            S(i, j) = value;
            S(j, i) = value;
            ++k;
        }
    return S;
}

Vector canonical_interior_point(const Cone& K) {
    switch (K.kind()) {
        case ConeKind::Orthant:
            return Vector(K.dim(), 1.0);
        case ConeKind::Lorentz: {
            Vector v(K.dim(), 0.0);
            v.back() = 1.0;
            return v;
        }
        case ConeKind::PolyhedralGen:
        case ConeKind::PolyhedralFacet: {
            Vector s(K.dim(), 0.0);
            for (const Vector& r : K.rays()) s += r;
            return s;
        }
        case ConeKind::Ellipsoidal: {
            Vector v(K.dim(), 0.0);
            v.back() = 1.0;
            return K.transform() * v;
        }
        case ConeKind::Psd:
            return svec(Matrix::identity(K.psd_order()));
    }
    throw InternalContradiction("canonical_interior_point: unhandled cone kind");
}

std::optional<std::vector<Vector>> facet_list(const Cone& K) {
    switch (K.kind()) {
        case ConeKind::Orthant: {
            std::vector<Vector> fs;
            for (std::size_t i = 0; i < K.dim(); ++i) {
                Vector e(K.dim(), 0.0);
                e[i] = 1.0;
                fs.push_back(std::move(e));
            }
            return fs;
        }
        case ConeKind::PolyhedralGen:
        case ConeKind::PolyhedralFacet:
            return K.facets();
        default:
            return std::nullopt;
    }
}

std::optional<std::vector<Vector>> generator_list(const Cone& K) {
    switch (K.kind()) {
        case ConeKind::Orthant:
            return facet_list(K);  // self-dual
        case ConeKind::PolyhedralGen:
        case ConeKind::PolyhedralFacet:
            return K.rays();
        default:
            return std::nullopt;
    }
}

}  // namespace conecert
