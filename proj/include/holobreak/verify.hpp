#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holobreak/errors.hpp"
#include "holobreak/scalar.hpp"
#include "holobreak/term_algebra.hpp"

namespace holobreak {

struct ConfigError : HoloError {
    using HoloError::HoloError;
};

// A grid entry as typed by the user; "p/q" marks a rational.
struct ParamValue {
    std::string text;
    mpq_class exact;
    double value = 0;
    bool rational = false;
};

ParamValue parse_param(const std::string& text);
// Comma-separated list; an empty string gives an empty list.
std::vector<ParamValue> parse_param_list(const std::string& text);

struct SuiteConfig {
    std::string suite;
    // Unset lists fall back to per-suite defaults; set-but-empty is an error.
    std::optional<std::vector<ParamValue>> lambda1, lambda2, lambda;
    std::optional<std::vector<int>> n;
    std::optional<int> ell_max;
    double tol = NAN;            // NaN: per-identity default
    bool exact = false;          // also implied by any p/q entry
    std::uint64_t seed = 20240917;
    int order = 24;              // holographic quadrature order per axis
    double radius = 20;          // holographic truncation radius
    int threads = 0;             // 0: hardware concurrency
};

struct CaseRecord {
    std::string suite;
    std::string id;
    std::string mode;  // exact | float
    std::vector<std::pair<std::string, std::string>> params;
    Complex computed{0.0};
    Complex reference{0.0};
    double abs_residual = 0;
    double rel_residual = 0;
    double tol = 0;
    bool pass = false;
    std::string note;
    double wall_ms = 0;
};

struct VerificationReport {
    std::string suite;
    std::string mode;
    std::vector<CaseRecord> records;  // in case order
    double wall_ms = 0;

    std::size_t passed() const;
    std::size_t failed() const { return records.size() - passed(); }
    bool ok() const { return failed() == 0; }

    // One JSON object per record, then a summary object.
    std::string json_lines(bool with_time = true) const;
    std::string csv(bool with_time = true) const;
};

const std::vector<std::string>& suite_names();

// Throws ConfigError for an unknown suite or an empty or invalid grid.
VerificationReport run_suite(const SuiteConfig& config);

// Two-variable test sums used by the Rankin-Cohen identity checks.
std::vector<HoloSum<Exact>> rc_test_library();

}  // namespace holobreak
