#include "conecert/json_io.hpp"

#include <fstream>
#include <sstream>

#include "conecert/errors.hpp"

namespace conecert {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw MalformedInput(where + ": " + what);
}

void require_object(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed,
                    std::initializer_list<const char*> required) {
    if (!j.is_object()) bad(where, "expected a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) bad(where, "unknown key \"" + item.key() + "\"");
    }
    for (const char* key : required)
        if (!j.contains(key)) bad(where, std::string("missing key \"") + key + "\"");
}

double number_from(const json& j, const std::string& where) {
    if (!j.is_number()) bad(where, "expected a number");
    return j.get<double>();
}

std::size_t count_from(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
        bad(where, "expected a positive integer");
    return j.get<std::size_t>();
}

std::vector<Vector> vector_list_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) bad(where, "expected a nonempty array of vectors");
    std::vector<Vector> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(vector_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

NumericPolicy ProblemOptions::policy() const {
    NumericPolicy pol = default_policy();
    if (tol_membership) pol.membership = *tol_membership;
    if (tol_interior) pol.interior = *tol_interior;
    return pol;
}

Vector vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) bad(where, "expected a nonempty array of numbers");
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v[i] = number_from(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (double e : v) out.push_back(e);
    return out;
}

Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) bad(where, "expected a nonempty array of rows");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(vector_from_json(j[i], where + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows.front().size())
            bad(where, "rows have inconsistent lengths");
    }
    Matrix A(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) A.set_row(i, rows[i]);
    return A;
}

json matrix_to_json(const Matrix& A) {
    json out = json::array();
    for (std::size_t i = 0; i < A.rows(); ++i) {
        json row = json::array();
        for (std::size_t jx = 0; jx < A.cols(); ++jx) row.push_back(A(i, jx));
        out.push_back(row);
    }
    return out;
}

Cone cone_from_json(const json& j, const std::string& where) {
    require_object(j, where, {"type", "n", "rays", "facets", "T", "Q", "u"}, {"type"});
    if (!j["type"].is_string()) bad(where, "\"type\" must be a string");
    const std::string type = j["type"].get<std::string>();

    auto only = [&](std::initializer_list<const char*> allowed,
                    std::initializer_list<const char*> required) {
        require_object(j, where + " (" + type + ")", allowed, required);
    };

    try {
        if (type == "orthant" || type == "lorentz" || type == "psd") {
            only({"type", "n"}, {"type", "n"});
            std::size_t n = count_from(j["n"], where + ".n");
            if (type == "orthant") return Cone::orthant(n);
            if (type == "lorentz") return Cone::lorentz(n);
            return Cone::psd(n);  // n is the matrix order
        }
        if (type == "polyhedral") {
            only({"type", "rays"}, {"type", "rays"});
            return Cone::polyhedral_from_rays(vector_list_from(j["rays"], where + ".rays"));
        }
        if (type == "polyhedral_facets") {
            only({"type", "facets"}, {"type", "facets"});
            return Cone::polyhedral_from_facets(
                vector_list_from(j["facets"], where + ".facets"));
        }
        if (type == "ellipsoidal") {
            only({"type", "T"}, {"type", "T"});
            return Cone::ellipsoidal(matrix_from_json(j["T"], where + ".T"));
        }
        if (type == "ellipsoidal_quadric") {
            only({"type", "Q", "u"}, {"type", "Q", "u"});
            return ellipsoidal_from_quadric(matrix_from_json(j["Q"], where + ".Q"),
                                            vector_from_json(j["u"], where + ".u"));
        }
    } catch (const MalformedInput&) {
        throw;
    } catch (const Error& e) {
        bad(where, std::string("cone rejected: ") + e.what());
    }
    bad(where, "unknown cone type \"" + type + "\"");
}

json cone_to_json(const Cone& K) {
    json out;
    switch (K.kind()) {
        case ConeKind::Orthant:
            out["type"] = "orthant";
            out["n"] = K.dim();
            break;
        case ConeKind::Lorentz:
            out["type"] = "lorentz";
            out["n"] = K.dim();
            break;
        case ConeKind::Psd:
            out["type"] = "psd";
            out["n"] = K.psd_order();
            break;
        case ConeKind::PolyhedralGen: {
            out["type"] = "polyhedral";
            json rays = json::array();
            for (const Vector& r : K.rays()) rays.push_back(vector_to_json(r));
            out["rays"] = rays;
            break;
        }
        case ConeKind::PolyhedralFacet: {
            out["type"] = "polyhedral_facets";
            json facets = json::array();
            for (const Vector& f : K.facets()) facets.push_back(vector_to_json(f));
            out["facets"] = facets;
            break;
        }
        case ConeKind::Ellipsoidal:
            out["type"] = "ellipsoidal";
            out["T"] = matrix_to_json(K.transform());
            break;
    }
    return out;
}

MatrixOperator operator_from_json(const json& j, const std::string& where) {
    require_object(j, where, {"form", "P", "Q", "M", "A"}, {"form"});
    if (!j["form"].is_string()) bad(where, "\"form\" must be a string");
    const std::string form = j["form"].get<std::string>();
    try {
        if (form == "sandwich") {
            require_object(j, where, {"form", "P", "Q"}, {"form", "P", "Q"});
            return MatrixOperator::sandwich(matrix_from_json(j["P"], where + ".P"),
                                            matrix_from_json(j["Q"], where + ".Q"));
        }
        if (form == "dense") {
            require_object(j, where, {"form", "M"}, {"form", "M"});
            return MatrixOperator::dense(matrix_from_json(j["M"], where + ".M"));
        }
        if (form == "lyapunov") {
            require_object(j, where, {"form", "A"}, {"form", "A"});
            return MatrixOperator::lyapunov(matrix_from_json(j["A"], where + ".A"));
        }
    } catch (const MalformedInput&) {
        throw;
    } catch (const Error& e) {
        bad(where, std::string("operator rejected: ") + e.what());
    }
    bad(where, "unknown operator form \"" + form + "\"");
}

json operator_to_json(const MatrixOperator& L) {
    json out;
    if (L.form == MatrixOperator::Form::Sandwich) {
        out["form"] = "sandwich";
        out["P"] = matrix_to_json(L.P);
        out["Q"] = matrix_to_json(L.Q);
    } else {
        out["form"] = "dense";
        out["M"] = matrix_to_json(L.M);
    }
    return out;
}

ProblemFile problem_from_json(const json& j) {
    require_object(j, "problem", {"matrix", "cone1", "cone2", "operator", "options"},
                   {"matrix", "cone1"});
    ProblemFile pf;
    pf.matrix = matrix_from_json(j["matrix"], "matrix");
    pf.cone1 = cone_from_json(j["cone1"], "cone1");
    if (j.contains("cone2")) pf.cone2 = cone_from_json(j["cone2"], "cone2");
    if (j.contains("operator")) pf.op = operator_from_json(j["operator"], "operator");

    if (j.contains("options")) {
        const json& o = j["options"];
        require_object(o, "options", {"tol_membership", "tol_interior", "seed"}, {});
        if (o.contains("tol_membership")) {
            double t = number_from(o["tol_membership"], "options.tol_membership");
            if (t <= 0) bad("options.tol_membership", "must be positive");
            pf.options.tol_membership = t;
        }
        if (o.contains("tol_interior")) {
            double t = number_from(o["tol_interior"], "options.tol_interior");
            if (t <= 0) bad("options.tol_interior", "must be positive");
            pf.options.tol_interior = t;
        }
        if (o.contains("seed")) {
            if (!o["seed"].is_number_unsigned())
                bad("options.seed", "expected an unsigned integer");
            pf.options.seed = o["seed"].get<std::uint64_t>();
        }
    }

    if (pf.matrix.cols() != pf.cone1.dim())
        bad("problem", "matrix has " + std::to_string(pf.matrix.cols()) +
                           " columns but cone1 lives in dimension " +
                           std::to_string(pf.cone1.dim()));
    if (pf.matrix.rows() != pf.second_cone().dim())
        bad("problem", "matrix has " + std::to_string(pf.matrix.rows()) +
                           " rows but the image cone lives in dimension " +
                           std::to_string(pf.second_cone().dim()));
    if (pf.op) {
        if (pf.matrix.rows() != pf.matrix.cols())
            bad("problem", "operators act on square matrices");
        if (pf.op->n != pf.matrix.rows())
            bad("problem", "operator acts on " + std::to_string(pf.op->n) +
                               "x" + std::to_string(pf.op->n) +
                               " matrices but the matrix is " +
                               std::to_string(pf.matrix.rows()) + "x" +
                               std::to_string(pf.matrix.cols()));
    }
    return pf;
}

ProblemFile parse_problem_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedInput(std::string("problem: invalid JSON: ") + e.what());
    }
    return problem_from_json(j);
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

json certificate_to_json(const Certificate& cert, std::uint64_t seed,
                         const NumericPolicy& policy) {
    json out;
    switch (cert.outcome) {
        case CertificateOutcome::SemipositiveWitness:
            out["outcome"] = "witness";
            break;
        case CertificateOutcome::DualCertificate:
            out["outcome"] = "dual_certificate";
            break;
        case CertificateOutcome::Inconclusive:
            out["outcome"] = "inconclusive";
            break;
    }
    out["vector"] = vector_to_json(cert.vector);
    out["margins"] = json::array({cert.margin1, cert.margin2});
    out["seed"] = seed;
    out["tolerances"] = {{"membership", policy.membership}, {"interior", policy.interior}};
    return out;
}

Certificate certificate_from_json(const json& j) {
    require_object(j, "certificate", {"outcome", "vector", "margins", "seed", "tolerances"},
                   {"outcome", "vector"});
    if (!j["outcome"].is_string()) bad("certificate", "\"outcome\" must be a string");
    const std::string kind = j["outcome"].get<std::string>();
    Certificate cert;
    if (kind == "witness")
        cert.outcome = CertificateOutcome::SemipositiveWitness;
    else if (kind == "dual_certificate")
        cert.outcome = CertificateOutcome::DualCertificate;
    else if (kind == "inconclusive")
        cert.outcome = CertificateOutcome::Inconclusive;
    else
        bad("certificate", "unknown outcome \"" + kind + "\"");
    cert.vector = vector_from_json(j["vector"], "certificate.vector");
    if (j.contains("margins")) {
        Vector m = vector_from_json(j["margins"], "certificate.margins");
        if (m.size() != 2) bad("certificate.margins", "expected two entries");
        cert.margin1 = m[0];
        cert.margin2 = m[1];
    }
    return cert;
}

}  // namespace conecert
