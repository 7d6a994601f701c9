#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "conecert/policy.hpp"

namespace conecert {

// Cone shapes the suite can draw instances from. Random polyhedral cones are
// built from n + ceil(n/2) random rays and rejected until the double
// description validation certifies a proper cone.
enum class ConeTemplate { Orthant, Lorentz, RandomPolyhedral };

struct SuiteConfig {
    std::uint64_t seed = 0;
    std::size_t trials = 200;
    std::vector<ConeTemplate> cone_pool = {ConeTemplate::Orthant, ConeTemplate::Lorentz,
                                           ConeTemplate::RandomPolyhedral};
    std::size_t dim_min = 2;
    std::size_t dim_max = 4;
    std::optional<NumericPolicy> tolerance_overrides;

    NumericPolicy policy() const {
        return tolerance_overrides ? *tolerance_overrides : default_policy();
    }
};

// The randomized properties bound to the decision core. Each is checked on
// freshly drawn instances satisfying its own precondition, so no property is
// vacuous regardless of how the shared instance mix falls.
enum class SuiteProperty {
    Exclusivity,           // certificate outcomes are exclusive and re-verify
    TransposeDuality,      // A nonnegative iff A' nonnegative between the duals
    SumStability,          // nonnegative A plus semipositive B stays semipositive
    RefuterRoundTrip,      // non-nonnegative A yields a validated spoiler bundle
    ConjugationTransport,  // verdicts are invariant under T A T^{-1} with T(K)
    SelfDualSquare,        // A^2 nonnegative over self-dual K forces invariance
};

constexpr std::size_t kSuitePropertyCount = 6;
const char* suite_property_name(SuiteProperty p);

struct TrialOutcome {
    enum class Verdict { Pass, Fail, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    // re-runnable problem file for failing instances, empty otherwise
    nlohmann::json counterexample;
};

// One seeded trial of one property. Deterministic in (cfg.seed, trial); the
// suite and the acceptance gate share this entry point.
TrialOutcome run_property_trial(SuiteProperty p, const SuiteConfig& cfg, std::size_t trial);

struct PropertyResult {
    std::string name;
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t inconclusive = 0;
    std::vector<nlohmann::json> counterexamples;

    std::size_t trials() const { return pass + fail + inconclusive; }
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<PropertyResult> properties;
    // display only: never serialized, so equal-seed reports stay byte-equal
    double wall_clock_seconds = 0.0;

    bool all_pass() const;
    std::size_t failures() const;
};

// Runs every property on `cfg.trials` seeded instances. Failures are data
// (collected with their instances), never exceptions.
SuiteReport run_theorem_suite(const SuiteConfig& cfg);

// Golden assertions transcribing the worked 2x2 rotation-scale example, the
// 3x3 spiral example, the orthant shear example, the canonical quadric cone,
// and the ones-plus-spike basis; one property row per assertion.
SuiteReport run_golden_examples();

nlohmann::json suite_report_to_json(const SuiteReport& rep);
std::string format_suite_table(const SuiteReport& rep);

}  // namespace conecert
