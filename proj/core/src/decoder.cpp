#include "dwsc/decoder.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "dwsc/util.hpp"

namespace dwsc {
namespace {

// An input concept of a committed consumer still waiting for a provider.
struct PendingInput {
    ServiceId consumer;  // kEndNode for task outputs
    ConceptId concept;
    bool resolved = false;
};

// Decode working state for a single attempt.
struct Attempt {
    const ProblemInstance& inst;
    ProviderChoice provider;
    const std::vector<char>& banned;  // indexed by service id

    std::vector<ServiceId> selected;
    std::vector<char> is_selected;
    std::vector<PendingInput> pending;
    std::size_t open_count = 0;

    // Raw single-concept edges in creation order; merged per pair at the end.
    std::vector<DagEdge> raw_edges;
    std::unordered_map<ServiceId, std::vector<ServiceId>> out_adj;

    Attempt(const ProblemInstance& instance, ProviderChoice choice, const std::vector<char>& bans)
        : inst(instance), provider(choice), banned(bans), is_selected(instance.size(), 0) {}

    void add_edge(ServiceId from, ServiceId to, ConceptId concept) {
        raw_edges.push_back({from, to, {concept}});
        if (from != kStartNode) out_adj[from].push_back(to);
    }

    // true iff a data-flow path from -> ... -> to already exists.
    bool reaches(ServiceId from, ServiceId to) const {
        if (from == to) return true;
        std::vector<ServiceId> stack{from};
        std::unordered_set<ServiceId> seen{from};
        while (!stack.empty()) {
            ServiceId v = stack.back();
            stack.pop_back();
            auto it = out_adj.find(v);
            if (it == out_adj.end()) continue;
            for (ServiceId w : it->second) {
                if (w == to) return true;
                if (seen.insert(w).second) stack.push_back(w);
            }
        }
        return false;
    }

    // Provider for input `concept` of `consumer` among already committed
    // services; kEndNode when none is usable. An edge u -> consumer is only
    // usable if it keeps the graph acyclic.
    ServiceId find_committed_provider(ServiceId consumer, ConceptId concept) const {
        ServiceId best = kEndNode;
        double best_dist = 0.0;
        for (ServiceId u : selected) {
            if (u == consumer || !inst.service_satisfies(u, concept)) continue;
            if (reaches(consumer, u)) continue;
            if (provider == ProviderChoice::Earliest) return u;
            double d = inst.service_distance(u, consumer);
            if (best == kEndNode || d < best_dist) {
                best = u;
                best_dist = d;
            }
        }
        return best;
    }

    // Commits service s: wires it as provider for every open goal it
    // satisfies, then binds its own inputs (start, committed provider, or a
    // new open goal).
    void commit(ServiceId s) {
        selected.push_back(s);
        is_selected[static_cast<std::size_t>(s)] = 1;
        for (PendingInput& p : pending) {
            if (p.resolved || !inst.service_satisfies(s, p.concept)) continue;
            p.resolved = true;
            --open_count;
            add_edge(s, p.consumer, p.concept);
        }
        for (ConceptId c : inst.service(s).inputs) {
            if (inst.task_satisfies(c)) {
                add_edge(kStartNode, s, c);
                continue;
            }
            ServiceId u = find_committed_provider(s, c);
            if (u != kEndNode) {
                add_edge(u, s, c);
            } else {
                pending.push_back({s, c, false});
                ++open_count;
            }
        }
    }

    bool satisfies_any_open(ServiceId s) const {
        for (const PendingInput& p : pending)
            if (!p.resolved && inst.service_satisfies(s, p.concept)) return true;
        return false;
    }

    // Multi-pass scan; returns true when every goal was closed.
    bool run(const std::vector<ServiceId>& sequence) {
        for (ConceptId g : inst.task.wanted) {
            if (inst.task_satisfies(g)) {
                add_edge(kStartNode, kEndNode, g);
            } else {
                pending.push_back({kEndNode, g, false});
                ++open_count;
            }
        }
        bool progress = true;
        while (open_count > 0 && progress) {
            progress = false;
            for (ServiceId s : sequence) {
                auto idx = static_cast<std::size_t>(s);
                if (is_selected[idx] || banned[idx]) continue;
                if (satisfies_any_open(s)) {
                    commit(s);
                    progress = true;
                    if (open_count == 0) break;
                }
            }
        }
        return open_count == 0;
    }

    WorkflowDag build_dag() const {
        WorkflowDag dag;
        dag.services = selected;
        // Merge single-concept edges per (from, to) pair, first-creation order.
        std::unordered_map<std::uint64_t, std::size_t> pair_index;
        for (const DagEdge& e : raw_edges) {
            std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.from)) << 32) |
                                static_cast<std::uint32_t>(e.to);
            auto [it, inserted] = pair_index.emplace(key, dag.edges.size());
            if (inserted)
                dag.edges.push_back(e);
            else
                dag.edges[it->second].concepts.push_back(e.concepts.front());
        }
        for (DagEdge& e : dag.edges) e.concepts = normalize_concepts(std::move(e.concepts));
        return dag;
    }

    // First unresolved goal held by a real (bannable) consumer, if any.
    std::optional<ServiceId> bannable_consumer() const {
        for (const PendingInput& p : pending)
            if (!p.resolved && p.consumer != kEndNode) return p.consumer;
        return std::nullopt;
    }
};

}  // namespace

std::vector<ServiceId> dedup(const std::vector<ServiceId>& sequence) {
    std::vector<ServiceId> out;
    out.reserve(sequence.size());
    std::unordered_set<ServiceId> seen;
    for (ServiceId s : sequence)
        if (seen.insert(s).second) out.push_back(s);
    return out;
}

bool forward_feasible(const ProblemInstance& instance) {
    const std::size_t n_concepts = instance.taxonomy.size();
    std::vector<bool> satisfiable(n_concepts, false);
    auto provide = [&](ConceptId c) {
        instance.taxonomy.for_each_ancestor_including_self(
            c, [&](ConceptId a) { satisfiable[static_cast<std::size_t>(a)] = true; });
    };
    for (ConceptId c : instance.task.provided) provide(c);

    std::vector<char> applied(instance.size(), 0);
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < instance.size(); ++i) {
            if (applied[i]) continue;
            const Service& s = instance.services[i];
            bool ready = std::all_of(s.inputs.begin(), s.inputs.end(), [&](ConceptId c) {
                return satisfiable[static_cast<std::size_t>(c)];
            });
            if (!ready) continue;
            applied[i] = 1;
            progress = true;
            for (ConceptId o : s.outputs) provide(o);
        }
    }
    return std::all_of(instance.task.wanted.begin(), instance.task.wanted.end(),
                       [&](ConceptId c) { return satisfiable[static_cast<std::size_t>(c)]; });
}

std::optional<WorkflowDag> decode_backward(const std::vector<ServiceId>& sequence,
                                           const ProblemInstance& instance,
                                           ProviderChoice provider) {
    std::vector<char> banned(instance.size(), 0);
    // Each restart permanently excludes one service whose inputs proved
    // unresolvable, so the loop runs at most |sequence| + 1 times.
    for (;;) {
        Attempt attempt(instance, provider, banned);
        if (attempt.run(sequence)) return attempt.build_dag();
        auto culprit = attempt.bannable_consumer();
        if (!culprit) return std::nullopt;  // only task outputs left open
        banned[static_cast<std::size_t>(*culprit)] = 1;
    }
}

std::vector<ServiceId> strip_redundant(const std::vector<ServiceId>& sequence,
                                       const WorkflowDag& dag) {
    std::unordered_set<ServiceId> keep(dag.services.begin(), dag.services.end());
    std::vector<ServiceId> out;
    out.reserve(dag.services.size());
    for (ServiceId s : sequence)
        if (keep.count(s)) out.push_back(s);
    return out;
}

std::vector<std::string> validate_dag(const WorkflowDag& dag, const ProblemInstance& instance) {
    std::vector<std::string> problems;
    auto complain = [&](const std::string& msg) { problems.push_back(msg); };

    std::unordered_set<ServiceId> nodes;
    for (ServiceId s : dag.services) {
        if (s < 0 || static_cast<std::size_t>(s) >= instance.size()) {
            complain("dag references service id out of range");
            return problems;
        }
        if (!nodes.insert(s).second) complain("duplicate service node: " + instance.node_name(s));
    }

    // Edge sanity and per-consumer coverage.
    std::unordered_map<ServiceId, std::vector<ConceptId>> incoming;
    std::unordered_map<ServiceId, std::vector<ServiceId>> succ;
    for (const DagEdge& e : dag.edges) {
        bool from_ok = e.from == kStartNode || nodes.count(e.from);
        bool to_ok = e.to == kEndNode || nodes.count(e.to);
        if (!from_ok || !to_ok) {
            complain("edge endpoint not in dag: " + instance.node_name(e.from) + " -> " +
                     instance.node_name(e.to));
            continue;
        }
        if (e.from == e.to) complain("self loop at " + instance.node_name(e.from));
        if (e.concepts.empty())
            complain("edge without concepts: " + instance.node_name(e.from) + " -> " +
                     instance.node_name(e.to));
        for (ConceptId c : e.concepts) {
            bool ok = e.from == kStartNode ? instance.task_satisfies(c)
                                           : instance.service_satisfies(e.from, c);
            if (!ok)
                complain("edge concept " + instance.taxonomy.name(c) + " not produced by " +
                         instance.node_name(e.from));
            incoming[e.to].push_back(c);
        }
        succ[e.from].push_back(e.to);
    }

    auto covered = [&](ServiceId node, const std::vector<ConceptId>& required) {
        const auto it = incoming.find(node);
        for (ConceptId c : required) {
            bool found = it != incoming.end() &&
                         std::find(it->second.begin(), it->second.end(), c) != it->second.end();
            if (!found)
                complain("input " + instance.taxonomy.name(c) + " of " + instance.node_name(node) +
                         " unsatisfied");
        }
    };
    for (ServiceId s : dag.services) covered(s, instance.service(s).inputs);
    covered(kEndNode, instance.task.wanted);

    // Acyclicity over the service nodes (virtual endpoints cannot be on a
    // cycle: start has no in-edges, end no out-edges).
    {
        std::unordered_map<ServiceId, int> deg;
        for (ServiceId s : dag.services) deg[s] = 0;
        for (const DagEdge& e : dag.edges)
            if (e.from != kStartNode && e.to != kEndNode) ++deg[e.to];
        std::vector<ServiceId> queue;
        for (ServiceId s : dag.services)
            if (deg[s] == 0) queue.push_back(s);
        std::size_t visited = 0;
        while (!queue.empty()) {
            ServiceId v = queue.back();
            queue.pop_back();
            ++visited;
            if (auto it = succ.find(v); it != succ.end())
                for (ServiceId w : it->second)
                    if (w != kEndNode && --deg[w] == 0) queue.push_back(w);
        }
        if (visited != dag.services.size()) complain("dag contains a cycle");
    }

    // Every service on some start-to-end path.
    {
        auto sweep = [&](ServiceId origin, const std::unordered_map<ServiceId, std::vector<ServiceId>>& adj) {
            std::unordered_set<ServiceId> seen{origin};
            std::vector<ServiceId> stack{origin};
            while (!stack.empty()) {
                ServiceId v = stack.back();
                stack.pop_back();
                if (auto it = adj.find(v); it != adj.end())
                    for (ServiceId w : it->second)
                        if (seen.insert(w).second) stack.push_back(w);
            }
            return seen;
        };
        std::unordered_map<ServiceId, std::vector<ServiceId>> pred;
        for (const DagEdge& e : dag.edges) pred[e.to].push_back(e.from);
        auto from_start = sweep(kStartNode, succ);
        auto to_end = sweep(kEndNode, pred);
        for (ServiceId s : dag.services) {
            if (!from_start.count(s))
                complain("service not reachable from start: " + instance.node_name(s));
            if (!to_end.count(s)) complain("service cannot reach end: " + instance.node_name(s));
        }
    }
    return problems;
}

std::string to_dot(const WorkflowDag& dag, const ProblemInstance& instance) {
    std::ostringstream os;
    os << "digraph workflow {\n  rankdir=LR;\n";
    os << "  start [shape=circle];\n  end [shape=doublecircle];\n";
    for (ServiceId s : dag.services) {
        const Service& svc = instance.service(s);
        os << "  \"" << svc.id << "\" [label=\"" << svc.id << "\\nT=" << fmt_double(svc.proc_time)
           << " C=" << fmt_double(svc.service_cost) << "\"];\n";
    }
    for (const DagEdge& e : dag.edges) {
        os << "  \"" << instance.node_name(e.from) << "\" -> \"" << instance.node_name(e.to)
           << "\" [label=\"";
        for (std::size_t i = 0; i < e.concepts.size(); ++i) {
            if (i) os << ",";
            os << instance.taxonomy.name(e.concepts[i]);
        }
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace dwsc
