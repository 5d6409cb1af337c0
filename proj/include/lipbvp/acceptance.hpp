#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lipbvp/serialization.hpp"

namespace lipbvp {

struct AcceptanceConfig {
    std::uint64_t seed = 20240611;
    /// Criterion whose tolerances are replaced by unattainable values (0 = none).
    int inject_error = 0;
};

struct Check {
    enum class Cmp { LessEq, GreaterEq };
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    Cmp cmp = Cmp::LessEq;
    bool passed = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::vector<Check> checks;
    Json metrics = Json::object();
};

struct AcceptanceReport {
    std::uint64_t seed = 0;
    std::vector<CriterionResult> results;
    bool all_passed() const;
};

constexpr int kCriteria = 10;

std::string criterion_name(int id);
CriterionResult run_criterion(int id, const AcceptanceConfig& config);
/// Runs the listed criteria in order (all when empty).
AcceptanceReport run_acceptance(const AcceptanceConfig& config, std::vector<int> ids = {});

Json to_json(const CriterionResult& r);
Json to_json(const AcceptanceReport& r);
/// One "PASS"/"FAIL" line per criterion.
std::string summary_text(const AcceptanceReport& r);

}  // namespace lipbvp
