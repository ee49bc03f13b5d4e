#include "dwsc/taxonomy.hpp"

#include <stdexcept>

#include "dwsc/util.hpp"

namespace dwsc {

ConceptId Taxonomy::add_concept(const std::string& name, const std::string& parent_name) {
    if (index_.count(name)) throw ValidationError("duplicate concept: " + name);
    ConceptId parent = kNoConcept;
    if (!parent_name.empty()) {
        auto it = index_.find(parent_name);
        if (it == index_.end())
            throw ValidationError("unknown parent concept: " + parent_name + " (of " + name + ")");
        parent = it->second;
    }
    ConceptId id = static_cast<ConceptId>(names_.size());
    names_.push_back(name);
    parents_.push_back(parent);
    index_.emplace(name, id);
    finalized_ = false;
    return id;
}

ConceptId Taxonomy::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? kNoConcept : it->second;
}

ConceptId Taxonomy::require(const std::string& name) const {
    ConceptId id = find(name);
    if (id == kNoConcept) throw ValidationError("unknown concept: " + name);
    return id;
}

void Taxonomy::finalize() {
    const std::size_t n = names_.size();
    std::vector<std::vector<ConceptId>> children(n);
    std::vector<ConceptId> roots;
    for (std::size_t i = 0; i < n; ++i) {
        ConceptId p = parents_[i];
        if (p == kNoConcept)
            roots.push_back(static_cast<ConceptId>(i));
        else
            children[p].push_back(static_cast<ConceptId>(i));
    }

    tin_.assign(n, -1);
    tout_.assign(n, -1);
    std::int32_t clock = 0;
    // Iterative DFS; assigns [tin, tout) intervals per subtree.
    std::vector<std::pair<ConceptId, std::size_t>> stack;
    for (ConceptId root : roots) {
        stack.emplace_back(root, 0);
        tin_[root] = clock++;
        while (!stack.empty()) {
            auto& [node, next_child] = stack.back();
            if (next_child < children[node].size()) {
                ConceptId ch = children[node][next_child++];
                tin_[ch] = clock++;
                stack.emplace_back(ch, 0);
            } else {
                tout_[node] = clock;
                stack.pop_back();
            }
        }
    }
    // A parent edge pointing into a cycle leaves nodes unvisited.
    for (std::size_t i = 0; i < n; ++i)
        if (tin_[i] < 0) throw ValidationError("taxonomy is not a forest: cycle through " + names_[i]);
    finalized_ = true;
}

}  // namespace dwsc
