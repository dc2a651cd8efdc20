#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hgl::verify {

struct RunOptions {
    std::vector<unsigned> qs{2, 3, 4};
    std::vector<unsigned> ns{2};
    std::uint64_t seed = 1;
    std::uint64_t budget_vertices = 1'000'000;
    double budget_seconds = 0;  // 0 = no wall-clock limit
    unsigned samples = 200;     // random instances per sampled check
};

struct CheckRecord {
    std::string name;
    std::string status;  // "pass", "fail", "skip"
    std::string detail;
};

/// Deterministic run record: identical options produce a byte-identical
/// JSON rendering.  Wall-clock timings are deliberately not part of the
/// manifest; emit them separately if needed.
struct RunManifest {
    RunOptions options;
    std::vector<CheckRecord> checks;
    std::string version;

    unsigned passed() const;
    unsigned failed() const;
    unsigned skipped() const;
    /// 0 all pass, 1 any failure, 3 skips but no failures.
    int exit_code() const;
    /// Canonical JSON (sorted keys, no whitespace variance).
    std::string to_json() const;
};

/// Runs the cross-module property suite over the requested field sizes and
/// dimensions.  Checks whose scale exceeds the budgets are recorded as
/// skipped, never silently dropped.
RunManifest verify_all(const RunOptions& opt);

/// FNV-1a content hash, used to reference emitted artifacts.
std::uint64_t fnv1a(const std::string& data);

}  // namespace hgl::verify
