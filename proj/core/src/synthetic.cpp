#include "dwsc/synthetic.hpp"

#include <stdexcept>
#include <string>

#include "dwsc/rng.hpp"
#include "dwsc/util.hpp"

namespace dwsc {

ProblemInstance generate_synthetic(std::size_t n_services, std::size_t n_concepts,
                                   std::size_t layers, std::size_t items_per_service,
                                   std::uint64_t seed) {
    AugmentationParams aug;
    aug.items_per_service_min = items_per_service;
    aug.items_per_service_max = items_per_service;
    return generate_synthetic(n_services, n_concepts, layers, seed, std::move(aug));
}

ProblemInstance generate_synthetic(std::size_t n_services, std::size_t n_concepts,
                                   std::size_t layers, std::uint64_t seed,
                                   AugmentationParams aug) {
    if (n_services < 1 || layers < 1)
        throw std::invalid_argument("need at least one service and one layer");
    const std::size_t interfaces = layers + 1;
    if (n_concepts < interfaces)
        throw std::invalid_argument("cannot host a feasible chain: need at least " +
                                    std::to_string(interfaces) + " concepts");
    if (n_services < layers)
        throw std::invalid_argument("cannot host a feasible chain: need at least " +
                                    std::to_string(layers) + " services");

    Rng rng(seed);
    ProblemInstance inst;

    // Interface concepts are taxonomy roots; the leftover concept budget
    // becomes child concepts attached to random interfaces.
    std::size_t width = std::max<std::size_t>(1, n_concepts / (2 * interfaces));
    width = std::min<std::size_t>(width, 4);
    if (width * interfaces > n_concepts) width = n_concepts / interfaces;

    std::vector<std::vector<ConceptId>> interface_bases(interfaces);
    std::size_t next_concept = 0;
    auto concept_name = [](std::size_t i) { return "c" + std::to_string(i); };
    for (std::size_t i = 0; i < interfaces; ++i)
        for (std::size_t w = 0; w < width; ++w)
            interface_bases[i].push_back(inst.taxonomy.add_concept(concept_name(next_concept++)));

    std::vector<std::vector<ConceptId>> children(inst.taxonomy.size());
    const std::size_t base_total = next_concept;
    for (std::size_t i = base_total; i < n_concepts; ++i) {
        auto parent = static_cast<ConceptId>(rng.uniform_index(base_total));
        ConceptId child = inst.taxonomy.add_concept(concept_name(i), inst.taxonomy.name(parent));
        children[static_cast<std::size_t>(parent)].push_back(child);
    }
    inst.taxonomy.finalize();

    // Chain services guarantee every interface is fully producible.
    for (std::size_t layer = 1; layer <= layers; ++layer) {
        Service s;
        s.id = "s" + std::to_string(inst.services.size());
        s.inputs = interface_bases[layer - 1];
        s.outputs = interface_bases[layer];
        inst.services.push_back(std::move(s));
    }
    // Alternatives: random subsets across one layer boundary; outputs may be
    // child concepts, which still satisfy consumers wanting the base.
    auto subset = [&](const std::vector<ConceptId>& pool) {
        std::size_t k = 1 + static_cast<std::size_t>(rng.uniform_index(pool.size()));
        std::vector<ConceptId> out;
        for (std::size_t idx : rng.sample_indices(pool.size(), k)) out.push_back(pool[idx]);
        return out;
    };
    while (inst.services.size() < n_services) {
        std::size_t layer = 1 + static_cast<std::size_t>(rng.uniform_index(layers));
        Service s;
        s.id = "s" + std::to_string(inst.services.size());
        s.inputs = subset(interface_bases[layer - 1]);
        for (ConceptId base : subset(interface_bases[layer])) {
            const auto& kids = children[static_cast<std::size_t>(base)];
            std::size_t pick = static_cast<std::size_t>(rng.uniform_index(kids.size() + 1));
            s.outputs.push_back(pick == 0 ? base : kids[pick - 1]);
        }
        inst.services.push_back(std::move(s));
    }

    for (Service& s : inst.services) {
        s.proc_time = rng.unit_oc();
        s.service_cost = rng.unit_oc();
    }

    inst.task.provided = interface_bases.front();
    inst.task.wanted = interface_bases.back();
    inst.weights = {0.5, 0.5};

    aug.seed = derive_seed(seed, 0xA06);
    inst.network = augment(inst.services, aug);
    inst.finalize();
    return inst;
}

}  // namespace dwsc
