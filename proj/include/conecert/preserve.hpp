#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conecert/cone.hpp"
#include "conecert/matrix.hpp"
#include "conecert/policy.hpp"

namespace conecert {

// Linear map on n x n matrices, either a two-sided product X -> P X Q or a
// dense n^2 x n^2 action on the row-major vectorization.
struct MatrixOperator {
    enum class Form { Sandwich, Dense };
    Form form = Form::Dense;
    Matrix P, Q;  // sandwich factors
    Matrix M;     // dense action
    std::size_t n = 0;

    static MatrixOperator sandwich(Matrix P, Matrix Q);
    static MatrixOperator dense(Matrix M);
    // X -> A X + X A', assembled as a dense operator
    static MatrixOperator lyapunov(const Matrix& A);

    Matrix apply(const Matrix& X) const;
    // Inverse operator; NotInvertible when a factor (or the dense action) is
    // singular. A sandwich inverts factorwise and stays a sandwich.
    MatrixOperator inverted() const;
    // The n^2 x n^2 matrix of the action on row-major vectorizations
    // (P kron Q' for sandwiches), used for rank and io purposes.
    Matrix dense_matrix() const;
};

Vector vec_rowmajor(const Matrix& X);
Matrix unvec_rowmajor(const Vector& v, std::size_t n);

// n linearly independent interior points of K, stacked as columns. The scale
// controls how far the perturbed columns lean away from the central axis.
Matrix interior_column_matrix(const Cone& K, double scale = 0.5);

// A basis of n x n matrix space drawn from a matrix cone, with per-element
// semipositivity witnesses.
struct BasisBundle {
    std::vector<Matrix> elements;
    std::vector<Vector> witnesses;  // unit; witnesses[i] certifies elements[i]
    std::size_t independence_rank = 0;
};

// Conjugates the ones-plus-spike orthant family B_jk = ones + e_j e_k' into
// S B_jk S^{-1}, S an interior-column matrix (the identity over the orthant,
// where the family is semipositive as it stands). Witnesses are S * ones.
// Throws BasisDegenerate when eight re-perturbations of S never reach full
// rank, and PreconditionViolated past n = 8.
BasisBundle semipositive_basis(const Cone& K, const NumericPolicy& policy = default_policy());

// A basis of rank-one products g f' with g a member of K and f a member of
// K*: every element maps K into the ray through g, so the basis sits inside
// the nonnegative matrices. The stored witness (an interior point of K) has
// its image on that ray, so it certifies membership, not interiority.
BasisBundle nonnegative_basis(const Cone& K, const NumericPolicy& policy = default_policy());

struct PreserverReport {
    std::size_t samples = 0;
    std::size_t spot_checked = 0;  // semipositive images re-certified both ways
    std::size_t passes = 0;
    std::string note;
};

// Samples cone-nonnegative matrices and asserts that L and L^{-1} keep them
// cone-nonnegative. The caller vouches that L strongly preserves the
// semipositive matrices; a 50-sample spot check guards that claim first.
// Throws NotInvertible for singular L and AssertionFailed (naming the failing
// sample) when any image escapes.
PreserverReport preserver_images_nonnegative(const MatrixOperator& L, const Cone& K,
                                             std::size_t samples, std::uint64_t seed = 0,
                                             const NumericPolicy& policy = default_policy());

}  // namespace conecert
