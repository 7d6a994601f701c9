// conecert: certify semipositivity and nonnegativity of matrices relative to
// proper cones, or refute with a constructive spoiler.
//
// Exit codes: 0 affirmative, 1 refuted (certificate or counterexample
// emitted), 2 inconclusive, 64 usage error, 65 malformed input, 70 internal
// contradiction (mutually exclusive certificates both validated: a bug).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "conecert/certify.hpp"
#include "conecert/cone.hpp"
#include "conecert/errors.hpp"
#include "conecert/harness.hpp"
#include "conecert/json_io.hpp"
#include "conecert/preserve.hpp"
#include "conecert/semicone.hpp"
#include "conecert/spectral.hpp"

namespace {

using namespace conecert;
using nlohmann::json;

constexpr int kAffirmative = 0;
constexpr int kRefuted = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 64;
constexpr int kMalformed = 65;
constexpr int kContradiction = 70;

struct GlobalOpts {
    std::optional<double> tol_membership;
    std::optional<double> tol_interior;
    std::optional<std::uint64_t> seed;
    bool json_mode = false;
    bool quiet = false;
};

// Collects the machine document and the human transcript; exactly one of
// them lands on stdout depending on --json.
struct Emitter {
    const GlobalOpts& g;
    json doc;
    std::ostringstream human;

    explicit Emitter(const GlobalOpts& g_) : g(g_) {}

    void say(const std::string& line) { human << line << "\n"; }

    int finish(int code) {
        if (g.json_mode) {
            std::cout << doc.dump(2) << "\n";
            if (!g.quiet) std::cerr << human.str();
        } else if (!g.quiet) {
            std::cout << human.str();
        }
        return code;
    }
};

// File options are the baseline; command-line flags override them.
NumericPolicy resolve_policy(const ProblemOptions& file_opts, const GlobalOpts& g) {
    NumericPolicy pol = file_opts.policy();
    if (g.tol_membership) pol.membership = *g.tol_membership;
    if (g.tol_interior) pol.interior = *g.tol_interior;
    if (pol.membership <= 0.0 || pol.interior <= 0.0)
        throw MalformedInput("tolerances must be positive");
    return pol;
}

std::uint64_t resolve_seed(const ProblemOptions& file_opts, const GlobalOpts& g) {
    if (g.seed) return *g.seed;
    if (file_opts.seed) return *file_opts.seed;
    return 0;
}

const char* class_name(PointClass c) {
    switch (c) {
        case PointClass::Interior:
            return "interior";
        case PointClass::Boundary:
            return "boundary";
        case PointClass::Outside:
            return "outside";
    }
    return "unknown";
}

const char* probe_name(PowerProbe::Status s) {
    switch (s) {
        case PowerProbe::Status::Holds:
            return "holds";
        case PowerProbe::Status::Fails:
            return "fails";
        case PowerProbe::Status::Skipped:
            return "skipped";
    }
    return "unknown";
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

int cmd_check_semipositive(const ProblemFile& pf, const GlobalOpts& g, Emitter& em) {
    NumericPolicy pol = resolve_policy(pf.options, g);
    std::uint64_t seed = resolve_seed(pf.options, g);
    Certificate cert =
        semipositivity_certificate(pf.matrix, pf.cone1, pf.second_cone(), pol, seed);
    em.doc = certificate_to_json(cert, seed, pol);
    switch (cert.outcome) {
        case CertificateOutcome::SemipositiveWitness:
            em.say("semipositive: witness with margins " + fmt(cert.margin1) + ", " +
                   fmt(cert.margin2));
            return kAffirmative;
        case CertificateOutcome::DualCertificate:
            em.say("not semipositive: dual certificate with margins " + fmt(cert.margin1) +
                   ", " + fmt(cert.margin2));
            return kRefuted;
        case CertificateOutcome::Inconclusive:
            em.say("inconclusive: best primal margin " + fmt(cert.best_margin));
            return kInconclusive;
    }
    throw InternalContradiction("unreachable certificate outcome");
}

int cmd_check_nonnegative(const ProblemFile& pf, const GlobalOpts& g, Emitter& em) {
    NumericPolicy pol = resolve_policy(pf.options, g);
    std::uint64_t seed = resolve_seed(pf.options, g);
    NonnegativityReport rep =
        nonnegativity_check(pf.matrix, pf.cone1, pf.second_cone(), pol, seed);
    em.doc["nonnegative"] = rep.nonnegative;
    em.doc["exact"] = rep.exact;
    em.doc["checked_rays"] = rep.checked_rays;
    em.doc["worst_margin"] = rep.worst_margin;
    if (!rep.nonnegative) em.doc["counterexample"] = vector_to_json(rep.counterexample);
    if (rep.nonnegative) {
        em.say(std::string("nonnegative (") + (rep.exact ? "exact" : "sampled") +
               "): worst margin " + fmt(rep.worst_margin));
        return kAffirmative;
    }
    em.say("not nonnegative: counterexample ray found, margin " + fmt(rep.worst_margin));
    return kRefuted;
}

int cmd_refute(const ProblemFile& pf, const GlobalOpts& g, Emitter& em) {
    NumericPolicy pol = resolve_policy(pf.options, g);
    std::uint64_t seed = resolve_seed(pf.options, g);
    try {
        RefutationBundle b =
            refute_nonnegativity(pf.matrix, pf.cone1, pf.second_cone(), pol, seed);
        em.doc["x"] = vector_to_json(b.x);
        em.doc["y"] = vector_to_json(b.y);
        em.doc["z"] = vector_to_json(b.z);
        em.doc["v"] = vector_to_json(b.v);
        em.doc["B"] = matrix_to_json(b.B);
        em.say("refuted: rank-one spoiler B built; A + B carries dual certificate y");
        return kRefuted;
    } catch (const PreconditionViolated& e) {
        em.doc["refuted"] = false;
        em.doc["note"] = e.what();
        em.say(std::string("nothing to refute: ") + e.what());
        return kAffirmative;
    }
}

int cmd_lorentz_refute(const ProblemFile& pf, const GlobalOpts& g, Emitter& em) {
    if (pf.cone1.kind() != ConeKind::Lorentz)
        throw CLI::ValidationError("lorentz-refute needs cone1 of type lorentz");
    NumericPolicy pol = resolve_policy(pf.options, g);
    std::uint64_t seed = resolve_seed(pf.options, g);
    try {
        LorentzRefuter r = lorentz_transpose_refuter(pf.matrix, pol, seed);
        em.doc["B"] = matrix_to_json(r.B);
        em.doc["x"] = vector_to_json(r.x);
        em.doc["y"] = vector_to_json(r.y);
        em.doc["case"] = r.case_one ? 1 : 2;
        em.say(std::string("refuted: single-row spoiler built (case ") +
               (r.case_one ? "1" : "2") + ")");
        return kRefuted;
    } catch (const PreconditionViolated& e) {
        em.doc["refuted"] = false;
        em.doc["note"] = e.what();
        em.say(std::string("nothing to refute: ") + e.what());
        return kAffirmative;
    }
}

int cmd_semicone_member(const ProblemFile& pf, const GlobalOpts& g, Emitter& em,
                        const std::vector<double>& point) {
    NumericPolicy pol = resolve_policy(pf.options, g);
    if (point.size() != pf.cone1.dim())
        throw CLI::ValidationError("--point needs " + std::to_string(pf.cone1.dim()) +
                                   " coordinates");
    SemipositiveCone sc = build_semipositive_cone(pf.matrix, pf.cone1);
    MarginReport rep = semicone_membership(point, sc, pol);
    em.doc["classification"] = class_name(rep.classification);
    em.doc["margin"] = rep.margin;
    em.say(std::string("point is ") + class_name(rep.classification) +
           " (margin " + fmt(rep.margin) + ")");
    return rep.classification == PointClass::Outside ? kRefuted : kAffirmative;
}

int cmd_semicone_proper(const ProblemFile& pf, const GlobalOpts& g, Emitter& em) {
    NumericPolicy pol = resolve_policy(pf.options, g);
    std::uint64_t seed = resolve_seed(pf.options, g);
    SemipositiveCone sc = build_semipositive_cone(pf.matrix, pf.cone1);
    ProperReport rep = is_proper(sc, pol, seed);
    em.doc["solid"] = rep.solid;
    em.doc["pointed"] = rep.pointed;
    em.doc["proper"] = rep.proper();
    if (rep.solid) em.doc["interior_point"] = vector_to_json(rep.interior_point);
    if (!rep.pointed) em.doc["counter_line"] = vector_to_json(rep.counter_line);
    em.say(std::string("semipositive cone is ") + (rep.proper() ? "proper" : "not proper") +
           " (solid: " + (rep.solid ? "yes" : "no") +
           ", pointed: " + (rep.pointed ? "yes" : "no") + ")");
    return rep.proper() ? kAffirmative : kRefuted;
}

int cmd_semicone_invariance(const ProblemFile& pf, const GlobalOpts& g, Emitter& em) {
    NumericPolicy pol = resolve_policy(pf.options, g);
    std::uint64_t seed = resolve_seed(pf.options, g);
    SemipositiveCone sc = build_semipositive_cone(pf.matrix, pf.cone1);
    InvarianceReport rep = invariance_check(sc, pol, seed);
    em.doc["invariant"] = rep.invariant;
    em.doc["exact"] = rep.exact;
    em.doc["checked"] = rep.checked;
    if (!rep.invariant) {
        em.doc["violator"] = vector_to_json(rep.violator);
        em.doc["violation"] = rep.violation;
    }
    em.say(std::string("semipositive cone is ") +
           (rep.invariant ? "invariant under A" : "not invariant under A") + " (" +
           (rep.exact ? "exact" : "sampled") + ", " + std::to_string(rep.checked) +
           " members checked)");
    return rep.invariant ? kAffirmative : kRefuted;
}

int cmd_semicone_power(const ProblemFile& pf, const GlobalOpts& g, Emitter& em,
                       std::size_t j) {
    NumericPolicy pol = resolve_policy(pf.options, g);
    std::uint64_t seed = resolve_seed(pf.options, g);
    SemipositiveCone sc = build_semipositive_cone(pf.matrix, pf.cone1);
    PowerAutoReport rep = power_auto_hypothesis(sc, j, pol, seed);
    em.doc["j"] = rep.j;
    em.doc["forward_j"] = probe_name(rep.forward_j.status);
    em.doc["forward_j1"] = probe_name(rep.forward_j1.status);
    em.doc["backward_j"] = probe_name(rep.backward_j.status);
    em.doc["backward_j1"] = probe_name(rep.backward_j1.status);
    em.doc["backward_skipped"] = rep.backward_skipped;
    em.doc["interior_found"] = rep.interior_found;
    em.doc["samples"] = rep.samples;
    if (!rep.interior_found) {
        em.say("inconclusive: no interior point certified, probes are vacuous");
        return kInconclusive;
    }
    bool any_fail = rep.forward_j.status == PowerProbe::Status::Fails ||
                    rep.forward_j1.status == PowerProbe::Status::Fails ||
                    rep.backward_j.status == PowerProbe::Status::Fails ||
                    rep.backward_j1.status == PowerProbe::Status::Fails;
    if (any_fail || rep.backward_skipped) {
        em.say("power hypothesis fails at j = " + std::to_string(j) +
               (rep.backward_skipped ? " (singular matrix, onto impossible)" : ""));
        return kRefuted;
    }
    em.say("power hypothesis holds on " + std::to_string(rep.samples) +
           " samples at j = " + std::to_string(j));
    return kAffirmative;
}

int cmd_spectral_pf(const ProblemFile& pf, const GlobalOpts& g, Emitter& em) {
    NumericPolicy pol = resolve_policy(pf.options, g);
    PFReport rep = pf_properties(pf.matrix, pf.cone1, pol, true);
    em.doc["rho"] = rep.rho;
    em.doc["has_pf"] = rep.has_pf;
    em.doc["has_strong_pf"] = rep.has_strong_pf;
    em.doc["dominance_gap"] = rep.dominance_gap;
    em.doc["simple"] = rep.simple;
    if (rep.right_vector) {
        em.doc["right_vector"] = vector_to_json(*rep.right_vector);
        em.doc["right_margin"] = rep.right_margin;
    }
    if (rep.left_vector) {
        em.doc["left_vector"] = vector_to_json(*rep.left_vector);
        em.doc["left_margin"] = rep.left_margin;
    }
    em.say("rho = " + fmt(rep.rho) + ", PF: " + (rep.has_pf ? "yes" : "no") +
           ", strong PF: " + (rep.has_strong_pf ? "yes" : "no"));
    return rep.has_pf ? kAffirmative : kRefuted;
}

int cmd_spectral_eventual(const ProblemFile& pf, const GlobalOpts& g, Emitter& em,
                          std::size_t kmax) {
    NumericPolicy pol = resolve_policy(pf.options, g);
    std::uint64_t seed = resolve_seed(pf.options, g);
    try {
        std::optional<std::size_t> k0 =
            eventual_positivity(pf.matrix, pf.cone1, kmax, pol, seed);
        if (k0) {
            em.doc["k0"] = *k0;
            em.say("eventually positive from power " + std::to_string(*k0));
            return kAffirmative;
        }
        em.doc["k0"] = nullptr;
        em.say("no positivity run found up to power " + std::to_string(kmax));
        return kInconclusive;
    } catch (const Overflow& e) {
        em.doc["k0"] = nullptr;
        em.doc["note"] = e.what();
        em.say(std::string("inconclusive: ") + e.what());
        return kInconclusive;
    }
}

int cmd_preserve_basis(const ProblemFile& pf, const GlobalOpts& g, Emitter& em,
                       const std::string& family) {
    NumericPolicy pol = resolve_policy(pf.options, g);
    try {
        BasisBundle b = family == "nonnegative" ? nonnegative_basis(pf.cone1, pol)
                                                : semipositive_basis(pf.cone1, pol);
        json elems = json::array();
        for (const Matrix& E : b.elements) elems.push_back(matrix_to_json(E));
        json wits = json::array();
        for (const Vector& w : b.witnesses) wits.push_back(vector_to_json(w));
        em.doc["family"] = family;
        em.doc["elements"] = elems;
        em.doc["witnesses"] = wits;
        em.doc["rank"] = b.independence_rank;
        std::size_t full = pf.cone1.dim() * pf.cone1.dim();
        em.say("basis of " + std::to_string(b.elements.size()) + " elements, rank " +
               std::to_string(b.independence_rank) + " of " + std::to_string(full));
        return b.independence_rank == full ? kAffirmative : kInconclusive;
    } catch (const BasisDegenerate& e) {
        em.doc["note"] = e.what();
        em.say(std::string("inconclusive: ") + e.what());
        return kInconclusive;
    }
}

int cmd_preserve_verify(const ProblemFile& pf, const GlobalOpts& g, Emitter& em,
                        std::size_t samples) {
    if (!pf.op)
        throw CLI::ValidationError("preserve verify needs an \"operator\" in the problem file");
    NumericPolicy pol = resolve_policy(pf.options, g);
    std::uint64_t seed = resolve_seed(pf.options, g);
    try {
        PreserverReport rep =
            preserver_images_nonnegative(*pf.op, pf.cone1, samples, seed, pol);
        em.doc["preserved"] = true;
        em.doc["samples"] = rep.samples;
        em.doc["spot_checked"] = rep.spot_checked;
        em.doc["passes"] = rep.passes;
        em.doc["note"] = rep.note;
        em.say("preserver verified on " + std::to_string(rep.passes) + " samples (" +
               std::to_string(rep.spot_checked) + " semipositivity spot checks)");
        return kAffirmative;
    } catch (const AssertionFailed& e) {
        em.doc["preserved"] = false;
        em.doc["note"] = e.what();
        em.say(std::string("refuted: ") + e.what());
        return kRefuted;
    } catch (const NotInvertible& e) {
        em.doc["preserved"] = false;
        em.doc["note"] = e.what();
        em.say(std::string("refuted: ") + e.what());
        return kRefuted;
    }
}

int cmd_suite(const GlobalOpts& g, Emitter& em, std::uint64_t seed, std::size_t trials,
              const std::string& out_path) {
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    if (g.tol_membership || g.tol_interior) {
        NumericPolicy pol = default_policy();
        if (g.tol_membership) pol.membership = *g.tol_membership;
        if (g.tol_interior) pol.interior = *g.tol_interior;
        cfg.tolerance_overrides = pol;
    }
    SuiteReport rep;
    try {
        rep = run_theorem_suite(cfg);
    } catch (const PreconditionViolated& e) {
        throw CLI::ValidationError(e.what());
    }
    em.doc = suite_report_to_json(rep);
    em.human << format_suite_table(rep);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw MalformedInput("cannot open report path: " + out_path);
        out << em.doc.dump(2) << "\n";
    }
    return rep.all_pass() ? kAffirmative : kRefuted;
}

int cmd_examples(Emitter& em) {
    SuiteReport rep = run_golden_examples();
    em.doc = suite_report_to_json(rep);
    em.human << format_suite_table(rep);
    return rep.all_pass() ? kAffirmative : kRefuted;
}

int cmd_verify(const GlobalOpts& g, Emitter& em, const std::string& cert_path,
               const std::string& problem_path) {
    ProblemFile pf = load_problem_file(problem_path);
    NumericPolicy pol = resolve_policy(pf.options, g);
    std::ifstream in(cert_path);
    if (!in) throw MalformedInput("cannot read certificate file: " + cert_path);
    std::stringstream buf;
    buf << in.rdbuf();
    json cj;
    try {
        cj = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw MalformedInput(std::string("certificate file: ") + e.what());
    }
    Certificate cert = certificate_from_json(cj);
    const Matrix& A = pf.matrix;
    const Cone& K1 = pf.cone1;
    Cone K2 = pf.second_cone();
    em.doc["checked"] = cert_path;
    switch (cert.outcome) {
        case CertificateOutcome::SemipositiveWitness: {
            double m1 = K1.membership_margin(cert.vector, pol).margin;
            double m2 = K2.membership_margin(A * cert.vector, pol).margin;
            em.doc["outcome"] = "witness";
            em.doc["margins"] = {m1, m2};
            if (m1 > pol.interior && m2 > pol.interior) {
                em.say("witness re-verified: margins " + fmt(m1) + ", " + fmt(m2));
                return kAffirmative;
            }
            em.say("claimed witness fails re-verification");
            return kContradiction;
        }
        case CertificateOutcome::DualCertificate: {
            const Vector& y = cert.vector;
            double m1 = K2.dual().membership_margin(y, pol).margin;
            double m2 = K1.dual().membership_margin(-1.0 * (A.transpose() * y), pol).margin;
            em.doc["outcome"] = "dual_certificate";
            em.doc["margins"] = {m1, m2};
            if (std::abs(norm2(y) - 1.0) <= 1e-6 && m1 >= -pol.membership &&
                m2 >= -pol.membership) {
                em.say("dual certificate re-verified: margins " + fmt(m1) + ", " + fmt(m2));
                return kRefuted;
            }
            em.say("claimed dual certificate fails re-verification");
            return kContradiction;
        }
        case CertificateOutcome::Inconclusive:
            em.doc["outcome"] = "inconclusive";
            em.say("certificate records an inconclusive search; nothing to verify");
            return kInconclusive;
    }
    throw InternalContradiction("unreachable certificate outcome");
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOpts g;
    CLI::App app{"certify semipositivity and cone nonnegativity, constructively"};
    app.require_subcommand(1);
    app.add_option("--tol-membership", g.tol_membership, "membership tolerance override");
    app.add_option("--tol-interior", g.tol_interior, "interiority tolerance override");
    app.add_option("--seed", g.seed, "seed override for randomized searches");
    app.add_flag("--json", g.json_mode, "machine-readable JSON on stdout, text on stderr");
    app.add_flag("--quiet", g.quiet, "suppress human-readable output");

    std::string file_path, cert_path, problem_path, out_path, family = "semipositive";
    std::vector<double> point;
    std::size_t j = 1, kmax = 16, samples = 100;
    std::uint64_t suite_seed = 0;
    std::size_t suite_trials = 200;

    auto add_file = [&file_path](CLI::App* sub) {
        sub->add_option("-f,--file", file_path, "problem file (JSON)")->required();
    };

    CLI::App* cs = app.add_subcommand("check-semipositive",
                                      "decide semipositivity, emit witness or dual certificate");
    add_file(cs);
    CLI::App* cn = app.add_subcommand("check-nonnegative",
                                      "decide whether A maps cone1 into cone2");
    add_file(cn);
    CLI::App* rf = app.add_subcommand("refute",
                                      "build the rank-one spoiler for a non-nonnegative A");
    add_file(rf);
    CLI::App* lr = app.add_subcommand("lorentz-refute",
                                      "build the single-row circular-cone spoiler");
    add_file(lr);

    CLI::App* semi = app.add_subcommand("semicone", "semipositive cone diagnostics");
    semi->require_subcommand(1);
    CLI::App* sm = semi->add_subcommand("member", "classify a point against K_A");
    add_file(sm);
    sm->add_option("--point", point, "coordinates of the point")
        ->required()
        ->delimiter(',');
    CLI::App* sp = semi->add_subcommand("proper", "solidity and pointedness of K_A");
    add_file(sp);
    CLI::App* si = semi->add_subcommand("invariance", "does A map K_A into K_A");
    add_file(si);
    CLI::App* sw = semi->add_subcommand("power-hypothesis",
                                        "interior auto test for A^j and A^{j+1}");
    add_file(sw);
    sw->add_option("--j", j, "power to test")->required()->check(CLI::Range(std::size_t{1},
                                                                           std::size_t{32}));

    CLI::App* spec = app.add_subcommand("spectral", "Perron-Frobenius diagnostics");
    spec->require_subcommand(1);
    CLI::App* pf_cmd = spec->add_subcommand("pf", "spectral radius and PF eigenvectors");
    add_file(pf_cmd);
    CLI::App* ev = spec->add_subcommand("eventual", "first power pushing the cone inside");
    add_file(ev);
    ev->add_option("--kmax", kmax, "largest power to probe")
        ->check(CLI::Range(std::size_t{1}, std::size_t{64}));

    CLI::App* pres = app.add_subcommand("preserve", "semipositivity preserver tools");
    pres->require_subcommand(1);
    CLI::App* pb = pres->add_subcommand("basis", "matrix-space basis from a cone family");
    add_file(pb);
    pb->add_option("--family", family, "semipositive or nonnegative")
        ->check(CLI::IsMember({"semipositive", "nonnegative"}));
    CLI::App* pv = pres->add_subcommand("verify", "check an operator preserves nonnegativity");
    add_file(pv);
    pv->add_option("--samples", samples, "sampled matrices per direction")
        ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));

    CLI::App* suite = app.add_subcommand("suite", "randomized property suite");
    suite->add_option("--seed", suite_seed, "suite seed");
    suite->add_option("--trials", suite_trials, "trials per property");
    suite->add_option("--out", out_path, "write the JSON report here");

    CLI::App* ex = app.add_subcommand("examples", "run every golden example assertion");

    CLI::App* ver = app.add_subcommand("verify", "re-verify an emitted certificate");
    ver->add_option("-f,--file", cert_path, "certificate file (JSON)")->required();
    ver->add_option("-p,--problem", problem_path, "problem file it certifies")->required();

    // let global flags appear after the subcommand too
    auto allow_fallthrough = [](CLI::App* node, auto&& self) -> void {
        for (CLI::App* sub : node->get_subcommands({})) {
            sub->fallthrough();
            self(sub, self);
        }
    };
    allow_fallthrough(&app, allow_fallthrough);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    Emitter em(g);
    try {
        int code = kUsage;
        if (cs->parsed()) code = cmd_check_semipositive(load_problem_file(file_path), g, em);
        else if (cn->parsed()) code = cmd_check_nonnegative(load_problem_file(file_path), g, em);
        else if (rf->parsed()) code = cmd_refute(load_problem_file(file_path), g, em);
        else if (lr->parsed()) code = cmd_lorentz_refute(load_problem_file(file_path), g, em);
        else if (sm->parsed())
            code = cmd_semicone_member(load_problem_file(file_path), g, em, point);
        else if (sp->parsed()) code = cmd_semicone_proper(load_problem_file(file_path), g, em);
        else if (si->parsed())
            code = cmd_semicone_invariance(load_problem_file(file_path), g, em);
        else if (sw->parsed())
            code = cmd_semicone_power(load_problem_file(file_path), g, em, j);
        else if (pf_cmd->parsed()) code = cmd_spectral_pf(load_problem_file(file_path), g, em);
        else if (ev->parsed())
            code = cmd_spectral_eventual(load_problem_file(file_path), g, em, kmax);
        else if (pb->parsed())
            code = cmd_preserve_basis(load_problem_file(file_path), g, em, family);
        else if (pv->parsed())
            code = cmd_preserve_verify(load_problem_file(file_path), g, em, samples);
        else if (suite->parsed()) {
            std::uint64_t seed = suite->count("--seed") ? suite_seed : (g.seed ? *g.seed : 0);
            code = cmd_suite(g, em, seed, suite_trials, out_path);
        } else if (ex->parsed()) code = cmd_examples(em);
        else if (ver->parsed()) code = cmd_verify(g, em, cert_path, problem_path);
        return em.finish(code);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const MalformedInput& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return kMalformed;
    } catch (const InternalContradiction& e) {
        std::cerr << "internal contradiction: " << e.what() << "\n";
        return kContradiction;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    }
}
