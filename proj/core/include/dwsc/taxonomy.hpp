#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace dwsc {

using ConceptId = std::int32_t;
inline constexpr ConceptId kNoConcept = -1;

enum class MatchMode {
    Subsumption,  // provided concept equal to or below the wanted concept
    ExactOnly,    // provided concept must equal the wanted concept
};

// Concept forest with constant-time subsumption queries.
//
// Concepts are interned to dense ids. Subsumption follows the WSC-challenge
// convention: a provided concept matches a wanted concept when it is the same
// concept or a descendant of it.
class Taxonomy {
public:
    // Adds a concept; parent must already exist (or be empty for a root).
    ConceptId add_concept(const std::string& name, const std::string& parent_name = "");

    // Lookup, kNoConcept if unknown.
    ConceptId find(const std::string& name) const;
    // Lookup that throws ValidationError naming the concept if unknown.
    ConceptId require(const std::string& name) const;

    const std::string& name(ConceptId id) const { return names_[id]; }
    ConceptId parent(ConceptId id) const { return parents_[id]; }
    std::size_t size() const { return names_.size(); }

    // Must be called after the last add_concept and before subsumes().
    // Verifies the forest invariants (no cycles) and builds interval labels.
    void finalize();
    bool finalized() const { return finalized_; }

    // true iff `provided` equals `wanted` or is a descendant of it.
    bool subsumes(ConceptId provided, ConceptId wanted) const {
        if (mode_ == MatchMode::ExactOnly) return provided == wanted;
        return tin_[wanted] <= tin_[provided] && tout_[provided] <= tout_[wanted];
    }
    bool subsumes(const std::string& provided, const std::string& wanted) const {
        return subsumes(require(provided), require(wanted));
    }

    // `wanted` concept plus all its descendants can satisfy it; conversely a
    // provided concept satisfies itself and all its ancestors. Walks the
    // parent chain invoking fn(ancestor_or_self).
    template <typename Fn>
    void for_each_ancestor_including_self(ConceptId id, Fn&& fn) const {
        if (mode_ == MatchMode::ExactOnly) {
            fn(id);
            return;
        }
        for (ConceptId c = id; c != kNoConcept; c = parents_[c]) fn(c);
    }

    void set_match_mode(MatchMode mode) { mode_ = mode; }
    MatchMode match_mode() const { return mode_; }

private:
    std::vector<std::string> names_;
    std::vector<ConceptId> parents_;
    std::unordered_map<std::string, ConceptId> index_;
    std::vector<std::int32_t> tin_, tout_;  // subtree interval labels
    MatchMode mode_ = MatchMode::Subsumption;
    bool finalized_ = false;
};

}  // namespace dwsc
