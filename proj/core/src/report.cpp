#include "dwsc/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dwsc/bundle.hpp"
#include "dwsc/util.hpp"

namespace dwsc {
namespace {

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double stddev(const std::vector<double>& xs, double m) {
    if (xs.size() <= 1) return 0.0;
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size()));
}

}  // namespace

const char* ablation_name(Ablation a) {
    switch (a) {
        case Ablation::Full: return "full";
        case Ablation::NoLocalSearch: return "no_local_search";
        case Ablation::Type1Only: return "type1_only";
        case Ablation::Type2Only: return "type2_only";
    }
    return "full";
}

Ablation ablation_from_name(const std::string& name) {
    if (name == "full") return Ablation::Full;
    if (name == "no_local_search") return Ablation::NoLocalSearch;
    if (name == "type1_only") return Ablation::Type1Only;
    if (name == "type2_only") return Ablation::Type2Only;
    throw std::invalid_argument("unknown ablation: " + name);
}

std::string generations_csv(const RunResult& result, bool include_timing) {
    std::ostringstream os;
    os << "# schema: " << kGenerationsSchema << "\n";
    os << "generation,best_f,mean_f,std_f,elapsed_ms,ls_t1_improved,ls_t2_improved,ls_none\n";
    for (const GenerationRow& r : result.rows) {
        os << r.generation << ',' << fmt_double(r.best_f) << ',' << fmt_double(r.mean_f) << ','
           << fmt_double(r.std_f) << ',' << (include_timing ? r.elapsed_ms : 0) << ','
           << r.ls_t1_improved << ',' << r.ls_t2_improved << ',' << r.ls_none << "\n";
    }
    return os.str();
}

std::string result_json(const RunResult& result, const ProblemInstance& instance) {
    json doc;
    doc["schema"] = kResultSchema;
    doc["instance_digest"] = result.instance_digest;

    json cfg;
    cfg["population_size"] = result.config.population_size;
    cfg["generations"] = result.config.generations;
    cfg["p_crossover"] = result.config.p_crossover;
    cfg["p_mutation"] = result.config.p_mutation;
    cfg["p_local_search"] = result.config.p_local_search;
    cfg["neighborhood_size"] = result.config.neighborhood_size;
    cfg["elitism"] = result.config.elitism;
    cfg["tournament_k"] = result.config.tournament_k;
    cfg["seed"] = result.config.seed;
    cfg["ablation"] = ablation_name(result.config.ablation);
    cfg["eq_interpretation"] =
        result.config.eq_interpretation == EqInterpretation::Once ? "once" : "literal";
    cfg["provider_choice"] =
        result.config.provider_choice == ProviderChoice::Earliest ? "earliest" : "nearest";
    cfg["ls_granularity"] = result.config.ls_granularity == LsGranularity::PerIndividual
                                ? "per_individual"
                                : "per_generation";
    doc["config"] = std::move(cfg);

    doc["bounds"] = {{"time", result.time_bound}, {"cost", result.cost_bound}};
    doc["clamp_count"] = result.clamp_count;
    doc["audit_violations"] = result.audit_violations;
    doc["wall_clock_ms"] = result.wall_clock_ms;
    doc["local_search"] = {{"type1_improved", result.ls_t1_total},
                           {"type2_improved", result.ls_t2_total},
                           {"no_improvement", result.ls_none_total}};

    json best;
    json seq = json::array();
    for (ServiceId s : result.best.sequence) seq.push_back(instance.service(s).id);
    best["sequence"] = std::move(seq);
    if (result.best.fit) {
        best["total_time"] = result.best.fit->total_time;
        best["total_cost"] = result.best.fit->total_cost;
        best["norm_time"] = result.best.fit->norm_time;
        best["norm_cost"] = result.best.fit->norm_cost;
        best["fitness"] = result.best.fit->fitness;
    }
    doc["best"] = std::move(best);
    return doc.dump(2) + "\n";
}

void write_run_artifacts(const RunResult& result, const ProblemInstance& instance,
                         const std::string& out_dir, bool include_timing) {
    std::filesystem::create_directories(out_dir);
    auto path = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };
    write_file(path("result.json"), result_json(result, instance));
    write_file(path("generations.csv"), generations_csv(result, include_timing));
    write_file(path("best.dot"),
               result.best.dag ? to_dot(*result.best.dag, instance) : "digraph workflow {}\n");
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream os;
    os << "# schema: " << kSummarySchema << "\n";
    os << "instance,variant,runs,mean_f,std_f,mean_ms,std_ms\n";
    for (const SummaryRow& r : rows)
        os << r.instance << ',' << r.variant << ',' << r.runs << ',' << fmt_double(r.mean_f) << ','
           << fmt_double(r.std_f) << ',' << fmt_double(r.mean_ms) << ',' << fmt_double(r.std_ms)
           << "\n";
    return os.str();
}

std::string improvements_csv(const std::vector<ImprovementRow>& rows) {
    std::ostringstream os;
    os << "# schema: " << kImprovementsSchema << "\n";
    os << "instance,variant,pct_type1,pct_type2,pct_none\n";
    for (const ImprovementRow& r : rows)
        os << r.instance << ',' << r.variant << ',' << fmt_double(r.pct_type1) << ','
           << fmt_double(r.pct_type2) << ',' << fmt_double(r.pct_none) << "\n";
    return os.str();
}

SummaryRow summarize_runs(const std::string& instance_name, const std::string& variant,
                          const std::vector<RunResult>& runs) {
    SummaryRow row;
    row.instance = instance_name;
    row.variant = variant;
    row.runs = runs.size();
    std::vector<double> finals, times;
    for (const RunResult& r : runs) {
        finals.push_back(r.best.fit ? r.best.fit->fitness : 1.0);
        times.push_back(static_cast<double>(r.wall_clock_ms));
    }
    row.mean_f = mean(finals);
    row.std_f = stddev(finals, row.mean_f);
    row.mean_ms = mean(times);
    row.std_ms = stddev(times, row.mean_ms);
    return row;
}

ImprovementRow summarize_improvements(const std::string& instance_name, const std::string& variant,
                                      const std::vector<RunResult>& runs) {
    ImprovementRow row;
    row.instance = instance_name;
    row.variant = variant;
    std::uint64_t t1 = 0, t2 = 0, none = 0;
    for (const RunResult& r : runs) {
        t1 += r.ls_t1_total;
        t2 += r.ls_t2_total;
        none += r.ls_none_total;
    }
    const std::uint64_t total = t1 + t2 + none;
    if (total == 0) return row;  // no invocations: 0 / 0 / 100
    row.pct_type1 = 100.0 * static_cast<double>(t1) / static_cast<double>(total);
    row.pct_type2 = 100.0 * static_cast<double>(t2) / static_cast<double>(total);
    row.pct_none = 100.0 * static_cast<double>(none) / static_cast<double>(total);
    return row;
}

}  // namespace dwsc
