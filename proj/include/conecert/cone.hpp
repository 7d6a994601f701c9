#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conecert/matrix.hpp"
#include "conecert/policy.hpp"

namespace conecert {

enum class ConeKind { Orthant, Lorentz, Ellipsoidal, PolyhedralGen, PolyhedralFacet, Psd };

enum class PointClass { Interior, Boundary, Outside };

struct MarginReport {
    double margin = 0.0;
    PointClass classification = PointClass::Outside;
};

// Proper-cone descriptor: closed, pointed, solid. Polyhedral cones carry both
// generator and facet representations; construction runs the double
// description conversion eagerly, so improper inputs are rejected up front
// and the stored lists are minimal, unit-normalized, and canonically ordered.
// Immutable after construction.
class Cone {
public:
    static Cone orthant(std::size_t n);
    static Cone lorentz(std::size_t n);
    static Cone psd(std::size_t order);
    static Cone polyhedral_from_rays(const std::vector<Vector>& rays);
    static Cone polyhedral_from_facets(const std::vector<Vector>& facets);
    static Cone ellipsoidal(const Matrix& T);

    ConeKind kind() const { return kind_; }
    std::size_t dim() const { return n_; }
    std::size_t psd_order() const;

    const std::vector<Vector>& rays() const;    // polyhedral kinds only
    const std::vector<Vector>& facets() const;  // polyhedral kinds only
    const Matrix& transform() const;            // ellipsoidal only
    const Matrix& transform_inverse() const;

    // Signed distance proxy: positive inside, negative outside, zero on the
    // boundary. Exact for orthant/Lorentz/polyhedral/PSD; for ellipsoidal
    // cones the sign is meaningful but the magnitude is coordinate-dependent
    // (it is the Lorentz margin of the pulled-back point).
    MarginReport membership_margin(const Vector& x,
                                   const NumericPolicy& policy = default_policy()) const;

    // Euclidean projection. Not available for ellipsoidal cones; transport
    // the point through transform_inverse() and project in Lorentz
    // coordinates instead.
    Vector project(const Vector& x) const;

    Cone dual() const;

private:
    Cone() = default;
    friend Cone dd_convert(const Cone& K);

    ConeKind kind_ = ConeKind::Orthant;
    std::size_t n_ = 0;
    std::size_t order_ = 0;  // PSD matrix order
    std::vector<Vector> rays_;
    std::vector<Vector> facets_;
    Matrix T_{0, 0};
    Matrix Tinv_{0, 0};
};

// Swaps a polyhedral cone between generator-primary and facet-primary form.
// Both lists are computed and cross-validated at construction, so this is a
// relabeling; dimension <= 8 is enforced where the lists are first built.
Cone dd_convert(const Cone& K);

// The cone {x : x'Qx <= 0, x'u >= 0} realized as T(L^n) for an invertible T
// built from the eigendecomposition of Q. Requires inertia (n-1, 0, 1) and u
// along the negative eigenvector.
Cone ellipsoidal_from_quadric(const Matrix& Q, const Vector& u);

// Symmetric-matrix vectorization with sqrt(2)-scaled off-diagonals, so the
// Euclidean inner product of images equals the trace inner product.
std::size_t svec_dim(std::size_t order);
std::size_t svec_order(std::size_t dim);
Vector svec(const Matrix& S);
Matrix smat(const Vector& v);

// A deterministic strictly interior point: all-ones for the orthant, the
// axis point for Lorentz, the ray sum for polyhedral cones, svec(I) for PSD.
Vector canonical_interior_point(const Cone& K);

// Finite halfspace / generator descriptions where one exists.
std::optional<std::vector<Vector>> facet_list(const Cone& K);
std::optional<std::vector<Vector>> generator_list(const Cone& K);

}  // namespace conecert
