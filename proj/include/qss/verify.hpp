// verify.hpp
// Self-check suite behind `hbbqss verify`: reruns the core invariants of every
// module and itemizes each result. Faults can be injected to confirm the
// checks actually bite.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qss::verify {

struct Faults {
    bool corrupt_s_gate = false;  ///< S = diag(1, -i) instead of diag(1, i)
    bool corrupt_detection_table = false;  ///< case I announcement table inverted
};

struct CheckResult {
    std::string module;
    std::string invariant;
    bool passed = false;
    double deviation = 0.0;  ///< measured violation (0 when exact)
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool ok() const;
};

VerifyReport run_verify(const Faults& faults = {}, std::uint64_t seed = 42);

/// One line per check: "PASS module/invariant deviation=... detail".
std::string format_report(const VerifyReport& r);

}  // namespace qss::verify
