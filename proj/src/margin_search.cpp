#include "conecert/margin_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "conecert/errors.hpp"
#include "conecert/linalg.hpp"
#include "conecert/rng.hpp"
#include "conecert/simplex.hpp"

namespace conecert {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Vector normalized(Vector v) {
    double n = norm2(v);
    if (n <= 1e-300) throw InternalContradiction("cannot normalize a zero vector");
    v *= 1.0 / n;
    return v;
}

void consider(MarginSearchResult& best, const std::vector<MarginTerm>& terms, const Vector& x) {
    double v = min_margin(terms, x);
    if (v > best.value) {
        best.value = v;
        best.arg = x;
    }
}

Vector min_margin_supergradient(const std::vector<MarginTerm>& terms, const Vector& x) {
    std::size_t arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        double v = margin_term_value(terms[i], x);
        if (v < best) {
            best = v;
            arg = i;
        }
    }
    const MarginTerm& t = terms[arg];
    if (!t.M) return margin_supergradient(x, *t.C);
    return t.M->transpose() * margin_supergradient((*t.M) * x, *t.C);
}

// Exact path: maximize t subject to <f, M_i x> >= t over all stored unit
// facets f of each C_i, with |x|_inf <= box. Shift w = x + box*1 >= 0 and
// split t = tp - tm to fit the standard-form solver.
std::optional<MarginSearchResult> max_min_margin_lp(const std::vector<MarginTerm>& terms,
                                                    std::size_t n, double box,
                                                    const Vector* slice) {
    std::vector<std::vector<Vector>> facet_sets;
    for (const auto& t : terms) {
        auto fl = facet_list(*t.C);
        if (!fl) return std::nullopt;
        facet_sets.push_back(std::move(*fl));
    }

    const std::size_t cols = n + 2;  // w, tp, tm
    std::vector<Vector> G;
    Vector h;
    Vector ones(n, box);

    for (std::size_t ti = 0; ti < terms.size(); ++ti) {
        const Matrix* M = terms[ti].M;
        for (const Vector& f : facet_sets[ti]) {
            Vector a = M ? M->transpose() * f : f;
            Vector row(cols, 0.0);
            for (std::size_t j = 0; j < n; ++j) row[j] = -a[j];
            row[n] = 1.0;
            row[n + 1] = -1.0;
            G.push_back(std::move(row));
            h.push_back(-dot(a, ones));
        }
    }
    for (std::size_t j = 0; j < n; ++j) {  // w_j <= 2 box
        Vector row(cols, 0.0);
        row[j] = 1.0;
        G.push_back(std::move(row));
        h.push_back(2.0 * box);
    }
    if (slice) {  // <slice, w - box*1> = 1 as paired inequalities
        double shift = 1.0 + dot(*slice, ones);
        Vector row(cols, 0.0);
        for (std::size_t j = 0; j < n; ++j) row[j] = (*slice)[j];
        Vector neg = -1.0 * row;
        G.push_back(std::move(row));
        h.push_back(shift);
        G.push_back(std::move(neg));
        h.push_back(-shift);
    }

    Vector c(cols, 0.0);
    c[n] = 1.0;
    c[n + 1] = -1.0;

    Matrix Gm(G.size(), cols);
    for (std::size_t i = 0; i < G.size(); ++i) Gm.set_row(i, G[i]);
    LpResult lp = solve_lp(c, Gm, h);
    if (lp.status != LpResult::Status::Optimal) {
        if (!slice) throw InternalContradiction("margin program must be solvable");
        return MarginSearchResult{kNegInf, Vector(n, 0.0)};  // empty slice: no valid vector
    }
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = lp.x[j] - box;
    return MarginSearchResult{lp.value, std::move(x)};
}

void round_to_digits(Vector& v, int digits) {
    double scale = std::pow(10.0, digits);
    for (double& e : v) e = std::round(e * scale) / scale;
}

// Deterministic cleanup candidates around the incumbent: optima of boundary
// instances tend to sit at vectors with few distinct entry magnitudes, and
// snapping there turns a 1e-7-negative ascent value into an exact zero.
std::vector<Vector> polish_candidates(const Vector& raw, const std::vector<MarginTerm>& terms,
                                      std::size_t n) {
    std::vector<Vector> out;
    auto push = [&](const Vector& v) {
        if (norm2(v) > 1e-12) out.push_back(normalized(v));
    };
    push(raw);
    for (int digits : {0, 1, 2, 3, 4, 6}) {
        Vector v = raw;
        round_to_digits(v, digits);
        push(v);
    }
    {
        double m = norm_inf(raw);
        Vector v = raw;
        for (double& e : v) e = std::abs(e) < 0.05 * m ? 0.0 : (e < 0 ? -m : m);
        push(v);
    }
    push(Vector(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, 0.0);
        e[i] = 1.0;
        push(e);
        e[i] = -1.0;
        push(e);
    }
    for (const auto& t : terms) {
        if (t.M) {
            for (const Vector& k : nullspace(*t.M)) {
                push(k);
                push(-1.0 * k);
            }
        } else if (t.C->kind() != ConeKind::Ellipsoidal) {
            Vector p = t.C->project(raw);
            if (norm2(p) > 1e-12) push(p);
        }
    }
    return out;
}

// Projected supergradient ascent over the unit sphere, diminishing step
// 1/sqrt(k). Restarts stop early once the value is decisively positive; the
// remaining restarts could only confirm what is already established.
MarginSearchResult ascend_min_margin(const std::vector<MarginTerm>& terms, std::size_t n,
                                     std::uint64_t seed, int restarts, int iters) {
    MarginSearchResult best{kNegInf, {}};
    for (int r = 0; r < restarts; ++r) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(r)));
        Vector x(n);
        for (double& e : x) e = rng.normal();
        if (norm2(x) < 1e-12) x[0] = 1.0;
        x = normalized(x);
        consider(best, terms, x);
        for (int k = 1; k <= iters; ++k) {
            Vector g = min_margin_supergradient(terms, x);
            if (norm2(g) < 1e-14) break;
            Vector step = x + (1.0 / std::sqrt(static_cast<double>(k))) * g;
            if (norm2(step) < 1e-12) break;  // update cancelled the iterate exactly
            x = normalized(step);
            consider(best, terms, x);
        }
        if (best.value > 0.05) break;
    }
    for (const Vector& cand : polish_candidates(best.arg, terms, n)) consider(best, terms, cand);
    return best;
}

}  // namespace

double margin_term_value(const MarginTerm& t, const Vector& x) {
    if (t.M) return t.C->membership_margin((*t.M) * x).margin;
    return t.C->membership_margin(x).margin;
}

double min_margin(const std::vector<MarginTerm>& terms, const Vector& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : terms) best = std::min(best, margin_term_value(t, x));
    return best;
}

Vector margin_supergradient(const Vector& x, const Cone& K) {
    const std::size_t n = K.dim();
    switch (K.kind()) {
        case ConeKind::Orthant: {
            std::size_t arg = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (x[i] < x[arg]) arg = i;
            Vector g(n, 0.0);
            g[arg] = 1.0;
            return g;
        }
        case ConeKind::Lorentz: {
            Vector g(n, 0.0);
            double head = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) head += x[i] * x[i];
            head = std::sqrt(head);
            if (head > 1e-14) {
                for (std::size_t i = 0; i + 1 < n; ++i) g[i] = -x[i] / head;
            }
            g[n - 1] = 1.0;
            return g;
        }
        case ConeKind::PolyhedralGen:
        case ConeKind::PolyhedralFacet: {
            const auto& fs = K.facets();
            std::size_t arg = 0;
            double best = dot(fs[0], x);
            for (std::size_t i = 1; i < fs.size(); ++i) {
                double d = dot(fs[i], x);
                if (d < best) {
                    best = d;
                    arg = i;
                }
            }
            return fs[arg];
        }
        case ConeKind::Ellipsoidal: {
            const Matrix& Tinv = K.transform_inverse();
            Vector z = Tinv * x;
            Cone L = Cone::lorentz(n);
            return Tinv.transpose() * margin_supergradient(z, L);
        }
        case ConeKind::Psd: {
            SymmetricEigen eig = eigen_symmetric(smat(x));
            const Vector& v = eig.vectors.back();  // eigenvector of the smallest eigenvalue
            return svec(Matrix::outer(v, v));
        }
    }
    throw InternalContradiction("unreachable cone kind");
}

MarginSearchResult max_min_margin(const std::vector<MarginTerm>& terms, std::size_t n,
                                  std::uint64_t seed, const Vector* slice, int restarts,
                                  int iters) {
    if (auto exact = max_min_margin_lp(terms, n, 1.0, slice)) {
        MarginSearchResult r = *exact;
        if (norm2(r.arg) > 1e-12) {  // polish is free and can only improve
            MarginSearchResult best = r;
            for (const Vector& cand : polish_candidates(r.arg, terms, n)) consider(best, terms, cand);
            if (best.value > r.value) return best;
        }
        return r;
    }
    return ascend_min_margin(terms, n, seed, restarts, iters);
}

}  // namespace conecert
