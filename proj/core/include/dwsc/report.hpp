#pragma once

#include <string>
#include <vector>

#include "dwsc/engine.hpp"

namespace dwsc {

inline constexpr const char* kGenerationsSchema = "dwsc-generations/1";
inline constexpr const char* kResultSchema = "dwsc-result/1";
inline constexpr const char* kSummarySchema = "dwsc-summary/1";
inline constexpr const char* kImprovementsSchema = "dwsc-improvements/1";

// Per-generation CSV. The elapsed_ms column carries measured wall clock only
// when include_timing is set; by default it is written as 0 so that repeated
// runs with identical flags produce byte-identical files (measured wall
// clock is always available in the result JSON).
std::string generations_csv(const RunResult& result, bool include_timing = false);

// Run summary: config echo, instance digest, bounds, best solution.
std::string result_json(const RunResult& result, const ProblemInstance& instance);

// Writes result.json, generations.csv and best.dot into out_dir.
void write_run_artifacts(const RunResult& result, const ProblemInstance& instance,
                         const std::string& out_dir, bool include_timing = false);

struct SummaryRow {
    std::string instance;
    std::string variant;
    std::size_t runs = 0;
    double mean_f = 0.0;
    double std_f = 0.0;
    double mean_ms = 0.0;
    double std_ms = 0.0;
};

struct ImprovementRow {
    std::string instance;
    std::string variant;
    double pct_type1 = 0.0;
    double pct_type2 = 0.0;
    double pct_none = 100.0;
};

std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string improvements_csv(const std::vector<ImprovementRow>& rows);

// Aggregates repeated runs of one (instance, variant) cell into table rows.
SummaryRow summarize_runs(const std::string& instance_name, const std::string& variant,
                          const std::vector<RunResult>& runs);
ImprovementRow summarize_improvements(const std::string& instance_name, const std::string& variant,
                                      const std::vector<RunResult>& runs);

const char* ablation_name(Ablation a);
Ablation ablation_from_name(const std::string& name);

}  // namespace dwsc
