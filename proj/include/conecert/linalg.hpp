#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "conecert/matrix.hpp"

namespace conecert {

// Solves A x = b by Gaussian elimination with partial pivoting.
// Throws SingularMatrix when a pivot falls below 1e-12 * max|A|.
Vector solve_linear(const Matrix& A, const Vector& b);

Matrix inverse(const Matrix& A);
double determinant(const Matrix& A);

// Numerical rank via row echelon; pivots below tol * max|entry| count as zero.
std::size_t rank(const Matrix& A, double tol = 1e-10);

// Orthonormal basis of the null space (unit vectors, |A v| <= tol-scaled).
// Empty when A has full column rank.
std::vector<Vector> nullspace(const Matrix& A, double tol = 1e-10);

struct SymmetricEigen {
    Vector values;                // nonincreasing
    std::vector<Vector> vectors;  // vectors[k] pairs with values[k]; orthonormal
};

// Cyclic Jacobi. Requires |S - S^t|_F <= 1e-10 * |S|_F, else NotSymmetric.
// Sweeps until the off-diagonal mass is below 1e-12 * |S|_F.
SymmetricEigen eigen_symmetric(const Matrix& S);

struct SpectralInfo {
    std::vector<std::complex<double>> eigenvalues;
    double spectral_radius = 0.0;
    // Index of a real eigenvalue attaining the spectral radius, present only
    // when every max-modulus eigenvalue is real and of one sign.
    std::optional<std::size_t> dominant_index;
};

// All eigenvalues of a general real matrix, n <= 16: balancing, reduction to
// Hessenberg form, then Francis double-shift QR. Throws NoConvergence past
// the iteration cap.
SpectralInfo eigen_general(const Matrix& A);

enum class Side { Right, Left };

struct DominantEigenpair {
    double value = 0.0;  // signed; |value| is the spectral radius
    Vector vector;
};

// Power iteration with periodic Rayleigh-shifted inverse steps. Returns the
// dominant real eigenpair, scaled so the largest-magnitude entry is +1
// (or unit 2-norm with positive leading entry when unit_norm is set).
// Returns nullopt when the dominant modulus belongs to a complex pair or is
// shared by real eigenvalues of both signs (the iteration oscillates).
// Throws NoConvergence after 10000 rounds.
std::optional<DominantEigenpair> dominant_eigenpair(const Matrix& A,
                                                    Side side = Side::Right,
                                                    bool unit_norm = false,
                                                    double tol = 1e-10);

double spectral_radius(const Matrix& A);

}  // namespace conecert
