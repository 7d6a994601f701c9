#pragma once

namespace conecert {

// Tolerance knobs shared by every decision procedure. The defaults are the
// contract: membership tests compare margins against `membership`, strict
// interior tests against `interior`, and eigen residuals against `eigen`.
struct NumericPolicy {
    double membership = 1e-9;
    double interior = 1e-7;
    double eigen = 1e-10;
};

inline const NumericPolicy& default_policy() {
    static const NumericPolicy p{};
    return p;
}

}  // namespace conecert
