#pragma once

#include <atomic>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dwsc/model.hpp"

namespace dwsc {

// Total execution time of one service including its data terms: per data
// item, propagation from the data host, server access latency, and transfer
// time (size divided by link bandwidth). In Literal mode the processing time
// is charged inside the per-item sum (m times); in Once mode it is charged
// once. The modes coincide for services with exactly one data item.
double service_time(const Service& service, const NetworkModel& network,
                    EqInterpretation mode = EqInterpretation::Once);

// Total cost of one service: per data item, communication cost from the data
// host plus the provision cost; the service invocation cost is charged per
// item (Literal) or once (Once).
double service_cost(const Service& service, const NetworkModel& network,
                    EqInterpretation mode = EqInterpretation::Once);

// Caches per-service time/cost and the normalization bounds for one
// instance; pure and reentrant afterwards, so a population can be evaluated
// concurrently against a single shared Evaluator.
class Evaluator {
public:
    Evaluator(const ProblemInstance& instance, EqInterpretation mode = EqInterpretation::Once);

    EqInterpretation mode() const { return mode_; }

    double node_time(ServiceId s) const { return node_time_[static_cast<std::size_t>(s)]; }
    double node_cost(ServiceId s) const { return node_cost_[static_cast<std::size_t>(s)]; }

    // Sum of node costs plus communication cost over service-to-service
    // edges; virtual endpoints and their edges contribute zero.
    double total_cost(const WorkflowDag& dag) const;

    // Duration of the most time-consuming start-to-end path: node times plus
    // inter-service propagation, by topological-order dynamic programming.
    double total_time(const WorkflowDag& dag) const;

    // Longest-path duration from start through each service, the service's
    // own time included.
    std::unordered_map<ServiceId, double> completion_times(const WorkflowDag& dag) const;

    // Loose instance-wide upper bounds: every decodable workflow satisfies
    // total_time <= time_bound and total_cost <= cost_bound.
    double time_bound() const { return time_bound_; }
    double cost_bound() const { return cost_bound_; }

    FitnessBreakdown evaluate(const WorkflowDag& dag) const;

    // Number of evaluations that exceeded a bound and were clamped.
    std::uint64_t clamp_count() const { return clamp_count_.load(std::memory_order_relaxed); }

private:
    const ProblemInstance& inst_;
    EqInterpretation mode_;
    std::vector<double> node_time_;
    std::vector<double> node_cost_;
    double time_bound_ = 0.0;
    double cost_bound_ = 0.0;
    mutable std::atomic<std::uint64_t> clamp_count_{0};
};

}  // namespace dwsc
