#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "conecert/certify.hpp"
#include "conecert/cone.hpp"
#include "conecert/matrix.hpp"
#include "conecert/policy.hpp"
#include "conecert/preserve.hpp"

namespace conecert {

// Parsing is strict throughout: every object is checked against its allowed
// key set, and any unknown key raises MalformedInput. This keeps a typo like
// "rayss" from silently configuring a different cone.

struct ProblemOptions {
    std::optional<double> tol_membership;
    std::optional<double> tol_interior;
    std::optional<std::uint64_t> seed;

    // default policy with the stated overrides applied
    NumericPolicy policy() const;
};

// One self-contained problem instance: a matrix, the cone(s) it acts
// between, an optional operator on matrix space, and option overrides.
struct ProblemFile {
    Matrix matrix{0, 0};
    Cone cone1 = Cone::orthant(1);
    std::optional<Cone> cone2;  // defaults to cone1
    std::optional<MatrixOperator> op;
    ProblemOptions options;

    const Cone& second_cone() const { return cone2 ? *cone2 : cone1; }
};

Vector vector_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json vector_to_json(const Vector& v);

Matrix matrix_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json matrix_to_json(const Matrix& A);

Cone cone_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json cone_to_json(const Cone& K);

MatrixOperator operator_from_json(const nlohmann::json& j, const std::string& where);
// Lyapunov inputs are stored (and re-emitted) in their dense form.
nlohmann::json operator_to_json(const MatrixOperator& L);

ProblemFile problem_from_json(const nlohmann::json& j);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile load_problem_file(const std::string& path);

nlohmann::json certificate_to_json(const Certificate& cert, std::uint64_t seed,
                                   const NumericPolicy& policy);
// Only the outcome and the vector are trusted on the way back in; margins
// are re-derived by the caller against the problem's cones.
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace conecert
