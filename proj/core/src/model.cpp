#include "dwsc/model.hpp"

#include <algorithm>
#include <cmath>

#include "dwsc/util.hpp"

namespace dwsc {

std::vector<ConceptId> normalize_concepts(std::vector<ConceptId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

bool WorkflowDag::contains(ServiceId s) const {
    return std::find(services.begin(), services.end(), s) != services.end();
}

ServiceId ProblemInstance::find_service(const std::string& id) const {
    auto it = service_index_.find(id);
    if (it == service_index_.end()) throw ValidationError("unknown service: " + id);
    return it->second;
}

std::string ProblemInstance::node_name(ServiceId s) const {
    if (s == kStartNode) return "start";
    if (s == kEndNode) return "end";
    return services[static_cast<std::size_t>(s)].id;
}

void ProblemInstance::finalize() {
    if (!taxonomy.finalized()) taxonomy.finalize();

    if (services.empty()) throw ValidationError("empty repository");
    if (task.provided.empty() || task.wanted.empty())
        throw ValidationError("task must provide and want at least one concept");
    if (std::abs(weights.time + weights.cost - 1.0) > 1e-9 || weights.time < 0.0 ||
        weights.cost < 0.0)
        throw ValidationError("weights must be non-negative and sum to 1");

    const std::size_t n_concepts = taxonomy.size();
    auto check_concepts = [&](const std::vector<ConceptId>& ids, const std::string& where) {
        for (ConceptId c : ids)
            if (c < 0 || static_cast<std::size_t>(c) >= n_concepts)
                throw ValidationError("concept id out of range in " + where);
    };

    service_index_.clear();
    for (std::size_t i = 0; i < services.size(); ++i) {
        Service& s = services[i];
        s.inputs = normalize_concepts(std::move(s.inputs));
        s.outputs = normalize_concepts(std::move(s.outputs));
        check_concepts(s.inputs, s.id);
        check_concepts(s.outputs, s.id);
        if (s.inputs.empty() || s.outputs.empty())
            throw ValidationError("service with empty inputs or outputs: " + s.id);
        if (!service_index_.emplace(s.id, static_cast<ServiceId>(i)).second)
            throw ValidationError("duplicate service id: " + s.id);
        for (const DataItem& d : s.data_items) {
            if (d.size <= 0.0) throw ValidationError("data item with non-positive size: " + d.id);
            if (d.provision_cost < 0.0 || d.access_latency < 0.0)
                throw ValidationError("data item with negative cost or latency: " + d.id);
        }
    }
    task.provided = normalize_concepts(std::move(task.provided));
    task.wanted = normalize_concepts(std::move(task.wanted));
    check_concepts(task.provided, "task.provided");
    check_concepts(task.wanted, "task.wanted");

    // Satisfaction closures: a provided concept satisfies itself and all of
    // its ancestors, so marking ancestors once makes each later check O(1).
    auto closure_of = [&](const std::vector<ConceptId>& provided) {
        std::vector<bool> bits(n_concepts, false);
        for (ConceptId c : provided)
            taxonomy.for_each_ancestor_including_self(
                c, [&](ConceptId a) { bits[static_cast<std::size_t>(a)] = true; });
        return bits;
    };
    out_closure_.clear();
    out_closure_.reserve(services.size());
    for (const Service& s : services) out_closure_.push_back(closure_of(s.outputs));
    task_closure_ = closure_of(task.provided);

    // Service-to-service normalized distances.
    const std::size_t n = services.size();
    dist_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!network.located(services[i].location))
            throw ValidationError("service has no coordinate: " + services[i].id);
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = network.distance(services[i].location, services[j].location);
            dist_[i * n + j] = d;
            dist_[j * n + i] = d;
        }
    }

    finalized_ = true;
}

}  // namespace dwsc
