#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "conecert/errors.hpp"
#include "conecert/json_io.hpp"

using namespace conecert;
using nlohmann::json;

TEST_CASE("matrix and vector round trips preserve values") {
    Matrix A{{1.5, -2.0}, {0.25, 3.0}};
    Matrix back = matrix_from_json(matrix_to_json(A), "t");
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(back(i, j) == A(i, j));

    Vector v{0.1, -7.0, 2.5};
    Vector vb = vector_from_json(vector_to_json(v), "t");
    REQUIRE(vb.size() == 3);
    CHECK(vb[1] == -7.0);
}

TEST_CASE("malformed matrices are rejected with context") {
    CHECK_THROWS_AS(matrix_from_json(json::parse("[]"), "m"), MalformedInput);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[[1,2],[3]]"), "m"), MalformedInput);
    CHECK_THROWS_AS(matrix_from_json(json::parse("[[1,\"x\"]]"), "m"), MalformedInput);
    CHECK_THROWS_AS(vector_from_json(json::parse("{}"), "v"), MalformedInput);
}

TEST_CASE("every cone type parses and round trips") {
    auto rt = [](const std::string& text) {
        Cone K = cone_from_json(json::parse(text), "cone");
        Cone K2 = cone_from_json(cone_to_json(K), "cone2");
        CHECK(K2.kind() == K.kind());
        CHECK(K2.dim() == K.dim());
        return K;
    };
    CHECK(rt(R"({"type":"orthant","n":3})").kind() == ConeKind::Orthant);
    CHECK(rt(R"({"type":"lorentz","n":4})").dim() == 4);
    Cone psd = rt(R"({"type":"psd","n":2})");
    CHECK(psd.psd_order() == 2);
    CHECK(psd.dim() == 3);
    CHECK(rt(R"({"type":"polyhedral","rays":[[1,0],[1,1]]})").kind() ==
          ConeKind::PolyhedralGen);
    CHECK(rt(R"({"type":"polyhedral_facets","facets":[[0,1],[1,-1]]})").kind() ==
          ConeKind::PolyhedralFacet);
    CHECK(rt(R"({"type":"ellipsoidal","T":[[2,0],[0,1]]})").kind() ==
          ConeKind::Ellipsoidal);
}

TEST_CASE("quadric-described cones reduce to the transform form") {
    Cone K = cone_from_json(
        json::parse(R"({"type":"ellipsoidal_quadric","Q":[[1,0,0],[0,1,0],[0,0,-1]],"u":[0,0,1]})"),
        "cone");
    CHECK(K.kind() == ConeKind::Ellipsoidal);
    // the canonical quadric is the circular cone itself: T = I
    Vector axis{0.0, 0.0, 1.0};
    CHECK(K.membership_margin(axis).classification == PointClass::Interior);
    Vector out{1.0, 0.0, 0.5};
    CHECK(K.membership_margin(out).classification == PointClass::Outside);
    // serializes as a plain transform cone
    CHECK(cone_to_json(K)["type"] == "ellipsoidal");
}

TEST_CASE("unknown keys and types are rejected everywhere") {
    CHECK_THROWS_AS(cone_from_json(json::parse(R"({"type":"orthant","n":2,"extra":1})"), "c"),
                    MalformedInput);
    CHECK_THROWS_AS(cone_from_json(json::parse(R"({"type":"orthant"})"), "c"),
                    MalformedInput);
    CHECK_THROWS_AS(cone_from_json(json::parse(R"({"type":"moebius","n":2})"), "c"),
                    MalformedInput);
    CHECK_THROWS_AS(cone_from_json(json::parse(R"({"type":"polyhedral","rays":[[1,0]],"n":2})"), "c"),
                    MalformedInput);
    CHECK_THROWS_AS(cone_from_json(json::parse(R"({"type":"orthant","n":0})"), "c"),
                    MalformedInput);
    CHECK_THROWS_AS(cone_from_json(json::parse(R"({"type":"orthant","n":-2})"), "c"),
                    MalformedInput);
}

TEST_CASE("improper cones surface as malformed input, not a crash") {
    // a line through the origin: not pointed
    CHECK_THROWS_AS(
        cone_from_json(json::parse(R"({"type":"polyhedral","rays":[[1,0],[-1,0]]})"), "c"),
        MalformedInput);
    // wrong inertia for a quadric cone
    CHECK_THROWS_AS(
        cone_from_json(
            json::parse(R"({"type":"ellipsoidal_quadric","Q":[[1,0],[0,1]],"u":[0,1]})"), "c"),
        MalformedInput);
}

TEST_CASE("operators parse in all three forms") {
    MatrixOperator s = operator_from_json(
        json::parse(R"({"form":"sandwich","P":[[1,0],[0,1]],"Q":[[2,0],[0,2]]})"), "op");
    CHECK(s.form == MatrixOperator::Form::Sandwich);
    CHECK(s.n == 2);

    MatrixOperator d = operator_from_json(
        json::parse(R"({"form":"dense","M":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]})"), "op");
    CHECK(d.form == MatrixOperator::Form::Dense);

    MatrixOperator l =
        operator_from_json(json::parse(R"({"form":"lyapunov","A":[[0,1],[0,0]]})"), "op");
    CHECK(l.form == MatrixOperator::Form::Dense);
    Matrix X{{0.0, 0.0}, {0.0, 1.0}};
    Matrix Ax = l.apply(X);  // A X + X A' with A = upper shift
    CHECK(Ax(0, 0) == 0.0);
    CHECK(Ax(0, 1) == 1.0);
    CHECK(Ax(1, 0) == 1.0);

    CHECK_THROWS_AS(operator_from_json(json::parse(R"({"form":"sandwich","P":[[1]]})"), "op"),
                    MalformedInput);
    CHECK_THROWS_AS(operator_from_json(json::parse(R"({"form":"affine","M":[[1]]})"), "op"),
                    MalformedInput);
    // sandwich serialization keeps the factors
    CHECK(operator_to_json(s)["form"] == "sandwich");
    CHECK(operator_to_json(l)["form"] == "dense");
}

TEST_CASE("problem files parse, default the image cone, and check dimensions") {
    ProblemFile pf = parse_problem_text(R"({
        "matrix": [[1,-1],[1,1]],
        "cone1": {"type":"lorentz","n":2}
    })");
    CHECK(pf.matrix(0, 1) == -1.0);
    CHECK(pf.second_cone().kind() == ConeKind::Lorentz);
    CHECK_FALSE(pf.cone2.has_value());
    CHECK_FALSE(pf.op.has_value());

    ProblemFile full = parse_problem_text(R"({
        "matrix": [[1,0],[0,1]],
        "cone1": {"type":"orthant","n":2},
        "cone2": {"type":"lorentz","n":2},
        "operator": {"form":"sandwich","P":[[1,0],[0,1]],"Q":[[1,0],[0,1]]},
        "options": {"tol_membership": 1e-8, "seed": 7}
    })");
    CHECK(full.cone2->kind() == ConeKind::Lorentz);
    CHECK(full.options.policy().membership == 1e-8);
    CHECK(full.options.policy().interior == default_policy().interior);
    CHECK(full.options.seed.value() == 7);

    // rectangular maps between cones of different dimension are fine
    ProblemFile rect = parse_problem_text(R"({
        "matrix": [[1,0,0],[0,1,0]],
        "cone1": {"type":"orthant","n":3},
        "cone2": {"type":"orthant","n":2}
    })");
    CHECK(rect.matrix.rows() == 2);
}

TEST_CASE("problem files with inconsistent dimensions are rejected") {
    CHECK_THROWS_AS(parse_problem_text(R"({
        "matrix": [[1,0],[0,1]],
        "cone1": {"type":"orthant","n":3}
    })"),
                    MalformedInput);
    CHECK_THROWS_AS(parse_problem_text(R"({
        "matrix": [[1,0,0],[0,1,0]],
        "cone1": {"type":"orthant","n":3}
    })"),
                    MalformedInput);
    CHECK_THROWS_AS(parse_problem_text(R"({
        "matrix": [[1,0],[0,1]],
        "cone1": {"type":"orthant","n":2},
        "operator": {"form":"dense","M":[[1]]}
    })"),
                    MalformedInput);
    CHECK_THROWS_AS(parse_problem_text(R"({
        "matrix": [[1,0],[0,1]],
        "cone1": {"type":"orthant","n":2},
        "unknown_key": true
    })"),
                    MalformedInput);
    CHECK_THROWS_AS(parse_problem_text("not json at all"), MalformedInput);
    CHECK_THROWS_AS(parse_problem_text(R"({
        "matrix": [[1,0],[0,1]],
        "cone1": {"type":"orthant","n":2},
        "options": {"tol_membership": -1}
    })"),
                    MalformedInput);
}

TEST_CASE("certificates serialize with outcome, margins, seed, and tolerances") {
    Certificate cert;
    cert.outcome = CertificateOutcome::SemipositiveWitness;
    cert.vector = Vector{0.2, 1.0};
    cert.margin1 = 0.2;
    cert.margin2 = 0.3;
    json j = certificate_to_json(cert, 42, default_policy());
    CHECK(j["outcome"] == "witness");
    CHECK(j["margins"][1] == 0.3);
    CHECK(j["seed"] == 42);
    CHECK(j["tolerances"]["membership"] == default_policy().membership);

    Certificate back = certificate_from_json(j);
    CHECK(back.outcome == CertificateOutcome::SemipositiveWitness);
    REQUIRE(back.vector.size() == 2);
    CHECK(back.vector[1] == 1.0);

    cert.outcome = CertificateOutcome::DualCertificate;
    CHECK(certificate_from_json(certificate_to_json(cert, 0, default_policy())).outcome ==
          CertificateOutcome::DualCertificate);

    CHECK_THROWS_AS(certificate_from_json(json::parse(R"({"outcome":"maybe","vector":[1]})")),
                    MalformedInput);
    CHECK_THROWS_AS(certificate_from_json(json::parse(R"({"vector":[1]})")), MalformedInput);
}

TEST_CASE("files load from disk and missing paths are reported") {
    CHECK_THROWS_AS(load_problem_file("/nonexistent/nope.json"), MalformedInput);
}
