#include "dwsc/evaluator.hpp"

#include <algorithm>
#include <unordered_map>

#include "dwsc/util.hpp"

namespace dwsc {

double service_time(const Service& service, const NetworkModel& network, EqInterpretation mode) {
    double per_item = 0.0;
    for (const DataItem& d : service.data_items) {
        double bw = network.bandwidth(d.id, service.id);
        if (bw <= 0.0)
            throw ValidationError("missing bandwidth entry: " + d.id + " <-> " + service.id);
        double transfer = d.size / bw;
        double propagation = network.propagation(d.location, service.location);
        per_item += propagation + d.access_latency + transfer;
        if (mode == EqInterpretation::Literal) per_item += service.proc_time;
    }
    return mode == EqInterpretation::Literal ? per_item : service.proc_time + per_item;
}

double service_cost(const Service& service, const NetworkModel& network, EqInterpretation mode) {
    double per_item = 0.0;
    for (const DataItem& d : service.data_items) {
        per_item += network.comm_cost(d.location, service.location) + d.provision_cost;
        if (mode == EqInterpretation::Literal) per_item += service.service_cost;
    }
    return mode == EqInterpretation::Literal ? per_item : service.service_cost + per_item;
}

Evaluator::Evaluator(const ProblemInstance& instance, EqInterpretation mode)
    : inst_(instance), mode_(mode) {
    const std::size_t n = instance.size();
    node_time_.reserve(n);
    node_cost_.reserve(n);
    double time_sum = 0.0, cost_sum = 0.0;
    std::size_t input_count = 0;
    for (const Service& s : instance.services) {
        node_time_.push_back(service_time(s, instance.network, mode));
        node_cost_.push_back(service_cost(s, instance.network, mode));
        time_sum += node_time_.back();
        cost_sum += node_cost_.back();
        input_count += s.inputs.size();
    }
    // A path visits at most n services, so at most n-1 inter-service hops;
    // the edge-cost sum is bounded by one resolved provider per input concept
    // over the whole repository. Distances are normalized, so distance 1 is
    // the per-link worst case.
    time_bound_ = time_sum + (n > 0 ? static_cast<double>(n - 1) : 0.0) *
                                 instance.network.propagation_factor;
    cost_bound_ = cost_sum + static_cast<double>(input_count) * instance.network.comm_cost_factor;
}

double Evaluator::total_cost(const WorkflowDag& dag) const {
    double sum = 0.0;
    for (ServiceId s : dag.services) sum += node_cost(s);
    for (const DagEdge& e : dag.edges) sum += inst_.edge_comm_cost(e.from, e.to);
    return sum;
}

std::unordered_map<ServiceId, double> Evaluator::completion_times(const WorkflowDag& dag) const {
    // Kahn order over service-to-service edges; edges touching the virtual
    // endpoints carry zero weight and do not gate readiness.
    std::unordered_map<ServiceId, int> deg;
    std::unordered_map<ServiceId, std::vector<const DagEdge*>> incoming;
    std::unordered_map<ServiceId, std::vector<ServiceId>> succ;
    for (ServiceId s : dag.services) deg[s] = 0;
    for (const DagEdge& e : dag.edges) {
        if (e.from == kStartNode || e.to == kEndNode) continue;
        ++deg[e.to];
        succ[e.from].push_back(e.to);
        incoming[e.to].push_back(&e);
    }
    std::vector<ServiceId> queue, order;
    for (ServiceId s : dag.services)
        if (deg[s] == 0) queue.push_back(s);
    while (!queue.empty()) {
        ServiceId v = queue.back();
        queue.pop_back();
        order.push_back(v);
        if (auto it = succ.find(v); it != succ.end())
            for (ServiceId w : it->second)
                if (--deg[w] == 0) queue.push_back(w);
    }
    if (order.size() != dag.services.size())
        throw ValidationError("total_time requires an acyclic workflow");

    // completion[v]: duration of the longest path from start through v,
    // v's own time included.
    std::unordered_map<ServiceId, double> completion;
    for (ServiceId v : order) {
        double longest_in = 0.0;
        if (auto it = incoming.find(v); it != incoming.end())
            for (const DagEdge* e : it->second)
                longest_in =
                    std::max(longest_in, completion[e->from] + inst_.edge_propagation(e->from, v));
        completion[v] = node_time(v) + longest_in;
    }
    return completion;
}

double Evaluator::total_time(const WorkflowDag& dag) const {
    if (dag.services.empty()) return 0.0;
    auto completion = completion_times(dag);
    double result = 0.0;
    for (const DagEdge& e : dag.edges)
        if (e.to == kEndNode && e.from != kStartNode)
            result = std::max(result, completion[e.from]);
    return result;
}

FitnessBreakdown Evaluator::evaluate(const WorkflowDag& dag) const {
    FitnessBreakdown out;
    out.total_time = total_time(dag);
    out.total_cost = total_cost(dag);
    auto normalize = [&](double value, double bound) {
        if (bound <= 0.0) return 0.0;
        double v = value / bound;
        if (v > 1.0) {
            clamp_count_.fetch_add(1, std::memory_order_relaxed);
            return 1.0;
        }
        return v;
    };
    out.norm_time = normalize(out.total_time, time_bound_);
    out.norm_cost = normalize(out.total_cost, cost_bound_);
    out.fitness = inst_.weights.time * out.norm_time + inst_.weights.cost * out.norm_cost;
    return out;
}

}  // namespace dwsc
