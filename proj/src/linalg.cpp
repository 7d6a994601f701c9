#include "conecert/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "conecert/errors.hpp"

namespace conecert {

namespace {

void require_square(const Matrix& A, const char* who) {
    if (!A.square() || A.rows() == 0)
        throw DimensionMismatch(std::string(who) + ": nonempty square matrix required");
}

struct LuFactors {
    Matrix lu;
    std::vector<std::size_t> perm;  // perm[k] = source row of pivot k
    double sign = 1.0;
    bool singular = false;
};

// Doolittle LU with partial pivoting. Pivot threshold is relative to the
// largest input entry so prescaled systems behave uniformly.
LuFactors lu_factor(const Matrix& A) {
    const std::size_t n = A.rows();
    LuFactors f{A, std::vector<std::size_t>(n), 1.0, false};
    const double threshold = 1e-12 * std::max(A.max_abs(), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(f.lu(i, k)) > std::abs(f.lu(piv, k))) piv = i;
        if (std::abs(f.lu(piv, k)) < threshold) {
            f.singular = true;
            f.perm[k] = k;
            continue;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(piv, j), f.lu(k, j));
            f.sign = -f.sign;
        }
        f.perm[k] = piv;
        const double d = f.lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = f.lu(i, k) / d;
            f.lu(i, k) = m;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
        }
    }
    return f;
}

Vector lu_solve(const LuFactors& f, Vector b) {
    const std::size_t n = f.lu.rows();
    for (std::size_t k = 0; k < n; ++k)
        if (f.perm[k] != k) std::swap(b[k], b[f.perm[k]]);
    for (std::size_t i = 1; i < n; ++i) {
        double s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * b[j];
        b[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * b[j];
        b[ii] = s / f.lu(ii, ii);
    }
    return b;
}

// NR-style diagonal balancing; similarity transform, eigenvalues unchanged.
void balance_in_place(Matrix& a) {
    const std::size_t n = a.rows();
    const double radix = 2.0, sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            if (c != 0.0 && r != 0.0) {
                double g = r / radix, f = 1.0;
                const double s = c + r;
                while (c < g) {
                    f *= radix;
                    c *= sqrdx;
                }
                g = r * radix;
                while (c > g) {
                    f /= radix;
                    c /= sqrdx;
                }
                if ((c + r) / f < 0.95 * s) {
                    done = false;
                    g = 1.0 / f;
                    for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
                    for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
                }
            }
        }
    }
}

// Reduction to upper Hessenberg by pivoted elimination; junk below the
// subdiagonal is zeroed afterwards.
void hessenberg_in_place(Matrix& a) {
    const std::size_t n = a.rows();
    for (std::size_t m = 1; m + 1 < n; ++m) {
        double x = 0.0;
        std::size_t piv = m;
        for (std::size_t j = m; j < n; ++j)
            if (std::abs(a(j, m - 1)) > std::abs(x)) {
                x = a(j, m - 1);
                piv = j;
            }
        if (piv != m) {
            for (std::size_t j = m - 1; j < n; ++j) std::swap(a(piv, j), a(m, j));
            for (std::size_t j = 0; j < n; ++j) std::swap(a(j, piv), a(j, m));
        }
        if (x != 0.0) {
            for (std::size_t i = m + 1; i < n; ++i) {
                double y = a(i, m - 1);
                if (y != 0.0) {
                    y /= x;
                    a(i, m - 1) = y;
                    for (std::size_t j = m; j < n; ++j) a(i, j) -= y * a(m, j);
                    for (std::size_t j = 0; j < n; ++j) a(j, m) += y * a(j, i);
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = 0.0;
}

double sign_with(double magnitude, double carrier) {
    return carrier >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
std::vector<std::complex<double>> hqr_in_place(Matrix& a, std::size_t iteration_cap) {
    const int n = static_cast<int>(a.rows());
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
    if (anorm == 0.0) return out;  // zero matrix

    std::size_t total_steps = 0;
    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= DBL_EPSILON * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            double x = a(nn, nn);
            if (l == nn) {
                out[static_cast<std::size_t>(nn)] = {x + t, 0.0};
                --nn;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_with(z, p);
                        double r1 = x + z;
                        double r2 = (z != 0.0) ? x - w / z : x + z;
                        out[static_cast<std::size_t>(nn - 1)] = {r1, 0.0};
                        out[static_cast<std::size_t>(nn)] = {r2, 0.0};
                    } else {
                        out[static_cast<std::size_t>(nn - 1)] = {x + p, -z};
                        out[static_cast<std::size_t>(nn)] = {x + p, z};
                    }
                    nn -= 2;
                } else {
                    if (its == 30 || ++total_steps > iteration_cap)
                        throw NoConvergence("eigen_general: QR iteration did not settle");
                    if (its == 10 || its == 20) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m = 0;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        double s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v =
                            std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                           std::abs(a(m + 1, m + 1)));
                        if (u <= DBL_EPSILON * v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k != nn - 1) r = a(k + 2, k - 1);
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = sign_with(std::sqrt(p * p + q * q + r * r), p);
                        if (s != 0.0) {
                            if (k == m) {
                                if (l != m) a(k, k - 1) = -a(k, k - 1);
                            } else {
                                a(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; ++j) {
                                p = a(k, j) + q * a(k + 1, j);
                                if (k != nn - 1) {
                                    p += r * a(k + 2, j);
                                    a(k + 2, j) -= p * z;
                                }
                                a(k + 1, j) -= p * y;
                                a(k, j) -= p * x;
                            }
                            const int mmin = nn < k + 3 ? nn : k + 3;
                            for (int i = l; i <= mmin; ++i) {
                                p = x * a(i, k) + y * a(i, k + 1);
                                if (k != nn - 1) {
                                    p += z * a(i, k + 2);
                                    a(i, k + 2) -= p * r;
                                }
                                a(i, k + 1) -= p * q;
                                a(i, k) -= p;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
    return out;
}

// Deterministic symmetry-breaking start vector for power iteration.
Vector power_start(std::size_t n, int variant) {
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = 1.0 + 0.37 * std::sin(1.7 + 2.9 * static_cast<double>(i) +
                                     1.3 * static_cast<double>(variant));
    double nx = norm2(x);
    for (double& v : x) v /= nx;
    return x;
}

void scale_eigenvector(Vector& v, bool unit_norm) {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (unit_norm) {
        double s = norm2(v);
        if (v[imax] < 0.0) s = -s;
        for (double& x : v) x /= s;
    } else {
        const double s = v[imax];
        for (double& x : v) x /= s;
    }
}

}  // namespace

Vector solve_linear(const Matrix& A, const Vector& b) {
    require_square(A, "solve_linear");
    if (b.size() != A.rows()) throw DimensionMismatch("solve_linear: rhs size");
    LuFactors f = lu_factor(A);
    if (f.singular) throw SingularMatrix("solve_linear: pivot below threshold");
    return lu_solve(f, b);
}

Matrix inverse(const Matrix& A) {
    require_square(A, "inverse");
    const std::size_t n = A.rows();
    LuFactors f = lu_factor(A);
    if (f.singular) throw SingularMatrix("inverse: pivot below threshold");
    Matrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector e(n, 0.0);
        e[j] = 1.0;
        inv.set_col(j, lu_solve(f, e));
    }
    return inv;
}

double determinant(const Matrix& A) {
    require_square(A, "determinant");
    LuFactors f = lu_factor(A);
    if (f.singular) return 0.0;
    double d = f.sign;
    for (std::size_t k = 0; k < A.rows(); ++k) d *= f.lu(k, k);
    return d;
}

std::size_t rank(const Matrix& A, double tol) {
    Matrix m = A;
    const std::size_t rows = m.rows(), cols = m.cols();
    const double threshold = tol * std::max(m.max_abs(), 1e-300);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        for (std::size_t i = r + 1; i < rows; ++i)
            if (std::abs(m(i, c)) > std::abs(m(piv, c))) piv = i;
        if (std::abs(m(piv, c)) <= threshold) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            const double f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

std::vector<Vector> nullspace(const Matrix& A, double tol) {
    Matrix m = A;
    const std::size_t rows = m.rows(), cols = m.cols();
    const double threshold = tol * std::max(m.max_abs(), 1e-300);
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        for (std::size_t i = r + 1; i < rows; ++i)
            if (std::abs(m(i, c)) > std::abs(m(piv, c))) piv = i;
        if (std::abs(m(piv, c)) <= threshold) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
        const double d = m(r, c);
        for (std::size_t j = 0; j < cols; ++j) m(r, j) /= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double f = m(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    std::vector<Vector> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        Vector v(cols, 0.0);
        v[c] = 1.0;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m(i, c);
        // modified Gram-Schmidt against earlier basis vectors
        for (const Vector& u : basis) v -= dot(u, v) * u;
        const double nv = norm2(v);
        if (nv > 1e-14) {
            v *= 1.0 / nv;
            basis.push_back(v);
        }
    }
    return basis;
}

SymmetricEigen eigen_symmetric(const Matrix& S) {
    require_square(S, "eigen_symmetric");
    const std::size_t n = S.rows();
    const double fro = S.norm_fro();
    {
        double asym = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double d = S(i, j) - S(j, i);
                asym += d * d;
            }
        if (std::sqrt(asym) > 1e-10 * std::max(fro, 1e-300) && asym > 0.0)
            throw NotSymmetric("eigen_symmetric: input asymmetry above tolerance");
    }
    Matrix a = S;
    Matrix V = Matrix::identity(n);
    const double stop = 1e-12 * std::max(fro, 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
        if (std::sqrt(off) <= stop) break;
        if (sweep == 99) throw NoConvergence("eigen_symmetric: Jacobi did not settle");
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= stop / (static_cast<double>(n) * n)) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double tt =
                    sign_with(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(tt * tt + 1.0);
                const double s = tt * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        Vector v = V.col(order[k]);
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
        if (v[imax] < 0.0)
            for (double& x : v) x = -x;
        out.vectors[k] = std::move(v);
    }
    return out;
}

SpectralInfo eigen_general(const Matrix& A) {
    require_square(A, "eigen_general");
    const std::size_t n = A.rows();
    if (n > 16) throw DimensionMismatch("eigen_general: n <= 16 required");
    SpectralInfo info;
    if (n == 1) {
        info.eigenvalues = {{A(0, 0), 0.0}};
    } else {
        Matrix a = A;
        balance_in_place(a);
        hessenberg_in_place(a);
        info.eigenvalues = hqr_in_place(a, 500 * n);
    }
    double rho = 0.0;
    for (const auto& ev : info.eigenvalues) rho = std::max(rho, std::abs(ev));
    info.spectral_radius = rho;

    const double band = 1e-8 * std::max(rho, 1e-300);
    bool all_real = true, has_pos = false, has_neg = false;
    std::optional<std::size_t> candidate;
    for (std::size_t i = 0; i < info.eigenvalues.size(); ++i) {
        const auto& ev = info.eigenvalues[i];
        if (std::abs(ev) < rho - band) continue;
        if (std::abs(ev.imag()) > band) {
            all_real = false;
            break;
        }
        (ev.real() >= 0.0 ? has_pos : has_neg) = true;
        if (!candidate || std::abs(ev.real()) > std::abs(info.eigenvalues[*candidate].real()))
            candidate = i;
    }
    if (all_real && candidate && !(has_pos && has_neg)) info.dominant_index = candidate;
    return info;
}

std::optional<DominantEigenpair> dominant_eigenpair(const Matrix& A, Side side,
                                                    bool unit_norm, double tol) {
    require_square(A, "dominant_eigenpair");
    const std::size_t n = A.rows();
    const Matrix B = (side == Side::Left) ? A.transpose() : A;
    const double scale = std::max(B.norm_inf(), 1e-300);
    const double res_tol = std::max(tol, 1e-13) * std::max(scale, 1.0);

    // Classify the dominant modulus from the full spectrum first: power
    // iteration alone cannot distinguish slow convergence from oscillation.
    double target = 0.0;
    bool have_target = false;
    if (n <= 16) {
        const SpectralInfo info = eigen_general(B);
        if (info.spectral_radius <= 1e-13 * scale) {
            auto kernel = nullspace(B);
            if (!kernel.empty()) {
                Vector v = kernel.front();
                scale_eigenvector(v, unit_norm);
                return DominantEigenpair{0.0, std::move(v)};
            }
            return std::nullopt;
        }
        if (!info.dominant_index) return std::nullopt;
        target = info.eigenvalues[*info.dominant_index].real();
        have_target = true;
    }

    Vector x = power_start(n, 0);
    int restarts = 0;
    double shift_bump = 1.0;
    for (int iter = 1; iter <= 10000; ++iter) {
        Vector y = B * x;
        double ny = norm2(y);
        if (ny < 1e-300 * std::max(scale, 1.0)) {
            if (++restarts > 3) break;
            x = power_start(n, restarts);
            continue;
        }
        for (double& v : y) v /= ny;
        x = std::move(y);

        const Vector Bx = B * x;
        const double rayleigh = dot(x, Bx);
        const double lambda = have_target ? target : rayleigh;
        if (norm2(Bx - lambda * x) <= res_tol) {
            Vector v = x;
            scale_eigenvector(v, unit_norm);
            return DominantEigenpair{lambda, std::move(v)};
        }

        if (iter % 10 == 0) {
            // Rayleigh-shifted inverse step; the shift is kept slightly off
            // the eigenvalue so the solve stays nonsingular.
            double sigma = have_target ? target : rayleigh;
            const double off = shift_bump * 1e-9 * std::max(std::abs(sigma), scale);
            if (!have_target && std::abs(sigma) > 2.0 * scale) continue;
            try {
                Matrix shifted = B;
                for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= sigma + off;
                Vector w = solve_linear(shifted, x);
                const double nw = norm2(w);
                if (nw > 1e-300) {
                    for (double& v : w) v /= nw;
                    x = std::move(w);
                    shift_bump = 1.0;
                }
            } catch (const SingularMatrix&) {
                shift_bump *= 10.0;
            }
        }

        if (!have_target && iter % 30 == 0) {
            // Fit x_{k+2} + a x_{k+1} + b x_k = 0; complex or sign-tied roots
            // mean the dominant modulus is not a single real eigenvalue.
            const Vector w1 = B * x;
            const Vector w2 = B * w1;
            const double g11 = dot(w1, w1), g12 = dot(w1, x), g22 = dot(x, x);
            const double r1 = dot(w1, w2), r2 = dot(x, w2);
            const double det = g11 * g22 - g12 * g12;
            if (std::abs(det) > 1e-14 * std::max(g11 * g22, 1e-300)) {
                const double a = -(r1 * g22 - r2 * g12) / det;
                const double b = -(g11 * r2 - g12 * r1) / det;
                const double fit = norm2(w2 + a * w1 + b * x);
                if (fit <= 1e-8 * std::max(norm2(w2), 1e-300)) {
                    const double disc = a * a - 4.0 * b;
                    if (disc < 0.0) return std::nullopt;
                    const double root1 = 0.5 * (-a + std::sqrt(disc));
                    const double root2 = 0.5 * (-a - std::sqrt(disc));
                    const double m1 = std::abs(root1), m2 = std::abs(root2);
                    if (std::abs(m1 - m2) <= 1e-8 * std::max({m1, m2, 1e-300}))
                        return std::nullopt;
                }
            }
        }
    }
    throw NoConvergence("dominant_eigenpair: iteration cap reached");
}

double spectral_radius(const Matrix& A) {
    require_square(A, "spectral_radius");
    if (A.rows() <= 16) return eigen_general(A).spectral_radius;
    // Large-n fallback: norm-growth estimate over a long power run.
    Vector x = power_start(A.rows(), 0);
    double logsum = 0.0;
    int counted = 0;
    for (int k = 0; k < 512; ++k) {
        Vector y = A * x;
        const double ny = norm2(y);
        if (ny < 1e-300) return 0.0;
        if (k >= 256) {
            logsum += std::log(ny);
            ++counted;
        }
        for (double& v : y) v /= ny;
        x = std::move(y);
    }
    return std::exp(logsum / counted);
}

}  // namespace conecert
