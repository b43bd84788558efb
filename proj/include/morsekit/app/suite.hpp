#pragma once

#include "morsekit/app/config.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace morsekit::app {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string summary;
    nlohmann::json details;
};

/// Runs acceptance criterion `id` (1..9). Module errors become a failing
/// result carrying the error code. Uses config.seed, order, delta and trials.
CriterionResult run_criterion(int id, const RunConfig& config);

std::vector<std::string> criterion_names();

struct SuiteReport {
    nlohmann::json config;
    std::vector<CriterionResult> criteria;
    bool pass() const;
};

/// Criteria 1..9, then criterion 10 by rerunning them and comparing the
/// serialized reports byte for byte (skipped when `determinism` is false).
SuiteReport run_suite(const RunConfig& config, bool determinism = true);

nlohmann::json to_json(const CriterionResult& r);
nlohmann::json to_json(const SuiteReport& r);

/// "[PASS] 3 stability: ..." per criterion.
std::string summary_line(const CriterionResult& r);

} // namespace morsekit::app
