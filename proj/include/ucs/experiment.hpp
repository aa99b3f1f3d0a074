#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ucs::cli {

inline constexpr const char* kCodeVersion = "0.1.0";

// Parsed experiment configuration. File references inside the config are
// resolved relative to the config file's directory.
struct ExperimentSpec {
    std::string mode;
    nlohmann::json config;
    std::filesystem::path base_dir;

    static ExperimentSpec load_file(const std::filesystem::path& path);
    static ExperimentSpec from_json(nlohmann::json j, std::filesystem::path base_dir = ".");
};

struct ValidationIssue {
    std::string where;
    std::string what;
    // Budget findings are advisory: the runner skips the affected sweep
    // points instead of refusing the whole config.
    bool fatal = true;
};

struct ValidationReport {
    std::vector<ValidationIssue> problems;
    bool ok() const { return problems.empty(); }
};

// Schema and invariant check of the referenced PMFs, code parameters and
// enumeration budgets; collects problems instead of throwing.
ValidationReport validate(const ExperimentSpec& spec);

struct OutputRecord {
    std::string path;
    std::string digest; // fnv64 over content, runtime_ms column zeroed
};

struct RunManifest {
    std::string spec_digest;
    std::string code_version = kCodeVersion;
    std::string timestamp;
    std::vector<std::uint64_t> seeds;
    std::vector<OutputRecord> outputs;
    std::vector<std::string> skipped; // budget-exceeded runs, reported not fatal
    int exit_code = 0;                // 0 ok, 2 validation failure, 3 partial
};

struct RunOptions {
    std::optional<std::uint64_t> seed_override;
    unsigned jobs = 1;
    std::filesystem::path out_dir = ".";
};

// Dispatches on spec.mode, writes CSV/JSON outputs plus manifest.json into
// out_dir, and returns the manifest.
RunManifest run(const ExperimentSpec& spec, const RunOptions& options);

// Long-format plot table derived from a results CSV.
// Kinds: tv-vs-n, theta-sweep, threshold-heatmap.
void plot_data(const std::filesystem::path& results_csv, const std::string& kind,
               const std::filesystem::path& out_csv);

// Digest of an output file; the runtime_ms column (when present) is zeroed
// before hashing so reruns compare equal.
std::string results_digest(const std::filesystem::path& path);

void to_json(nlohmann::json& j, const RunManifest& m);

} // namespace ucs::cli
