#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dwsc/model.hpp"

namespace dwsc {

// Removes duplicate service ids, keeping the first occurrence of each.
std::vector<ServiceId> dedup(const std::vector<ServiceId>& sequence);

// Forward-chaining existence check: starting from the task-provided concepts,
// repeatedly applies any service whose inputs are all satisfiable, and
// reports whether every wanted concept becomes satisfiable.
bool forward_feasible(const ProblemInstance& instance);

// Builds a workflow from a duplicate-free sequence by backward decoding: the
// goal set starts at the task outputs and the sequence is scanned in repeated
// passes, committing any unselected service whose outputs satisfy an open
// goal. A committed service's inputs are bound to the start node, to an
// already committed provider (when that creates no cycle), or become new
// goals. If the goals cannot be closed, the committed service whose input is
// unresolvable is excluded and decoding restarts, so an unproducible service
// that grabbed a goal cannot block an otherwise reachable solution.
//
// Returns std::nullopt when the sequence cannot realize the task.
std::optional<WorkflowDag> decode_backward(const std::vector<ServiceId>& sequence,
                                           const ProblemInstance& instance,
                                           ProviderChoice provider = ProviderChoice::Earliest);

// Subsequence of `sequence` containing exactly the dag's services, original
// relative order preserved.
std::vector<ServiceId> strip_redundant(const std::vector<ServiceId>& sequence,
                                       const WorkflowDag& dag);

// Full structural audit of a decoded workflow. Returns human-readable
// problem descriptions; empty means the dag satisfies every invariant
// (acyclic, every input satisfied, every node on a start-to-end path, edge
// concepts actually produced by their providers).
std::vector<std::string> validate_dag(const WorkflowDag& dag, const ProblemInstance& instance);

// Graphviz rendering for inspection.
std::string to_dot(const WorkflowDag& dag, const ProblemInstance& instance);

}  // namespace dwsc
