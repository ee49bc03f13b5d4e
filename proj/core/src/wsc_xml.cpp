#include "dwsc/wsc_xml.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "dwsc/util.hpp"

namespace dwsc {
namespace {

namespace pt = boost::property_tree;

pt::ptree parse_xml(const std::string& content, const std::string& what) {
    try {
        std::istringstream in(content);
        pt::ptree tree;
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
        return tree;
    } catch (const pt::xml_parser_error& e) {
        throw ParseError("malformed " + what + " document: " + e.message());
    }
}

std::string attr_name(const pt::ptree& node, const std::string& what) {
    auto name = node.get_optional<std::string>("<xmlattr>.name");
    if (!name || name->empty()) throw ParseError(what + " element without a name attribute");
    return *name;
}

// instance name -> owning concept.
using InstanceMap = std::unordered_map<std::string, std::string>;

void walk_taxonomy(const pt::ptree& node, const std::string& parent, Taxonomy& taxonomy,
                   InstanceMap& instances) {
    for (const auto& [key, child] : node) {
        if (key == "concept") {
            std::string name = attr_name(child, "concept");
            taxonomy.add_concept(name, parent);
            walk_taxonomy(child, name, taxonomy, instances);
        } else if (key == "instance") {
            if (parent.empty()) throw ParseError("instance declared outside any concept");
            std::string name = attr_name(child, "instance");
            if (!instances.emplace(name, parent).second)
                throw ParseError("duplicate instance: " + name);
        }
    }
}

std::vector<ConceptId> resolve_instances(const pt::ptree& node, const Taxonomy& taxonomy,
                                         const InstanceMap& instances) {
    std::vector<ConceptId> out;
    for (const auto& [key, child] : node) {
        if (key != "instance") continue;
        std::string name = attr_name(child, "instance");
        auto it = instances.find(name);
        if (it == instances.end()) throw ParseError("unknown instance: " + name);
        out.push_back(taxonomy.require(it->second));
    }
    return normalize_concepts(std::move(out));
}

// First node (depth first) owning both a <provided> and a <wanted> child.
const pt::ptree* find_task_node(const pt::ptree& node) {
    if (node.get_child_optional("provided") && node.get_child_optional("wanted")) return &node;
    for (const auto& [key, child] : node) {
        if (key == "<xmlattr>") continue;
        if (const pt::ptree* found = find_task_node(child)) return found;
    }
    return nullptr;
}

}  // namespace

ParsedWsc parse_wsc(const std::string& services_xml, const std::string& taxonomy_xml,
                    const std::string& problem_xml) {
    ParsedWsc out;

    InstanceMap instances;
    {
        pt::ptree doc = parse_xml(taxonomy_xml, "taxonomy");
        auto root = doc.get_child_optional("taxonomy");
        if (!root) throw ParseError("taxonomy document missing <taxonomy> root");
        walk_taxonomy(*root, "", out.taxonomy, instances);
        out.taxonomy.finalize();
    }

    std::vector<double> raw_time, raw_cost;
    std::vector<std::string> missing_qos;
    {
        pt::ptree doc = parse_xml(services_xml, "services");
        auto root = doc.get_child_optional("services");
        if (!root) throw ParseError("services document missing <services> root");
        for (const auto& [key, node] : *root) {
            if (key != "service") continue;
            Service s;
            s.id = attr_name(node, "service");
            if (auto inputs = node.get_child_optional("inputs"))
                s.inputs = resolve_instances(*inputs, out.taxonomy, instances);
            if (auto outputs = node.get_child_optional("outputs"))
                s.outputs = resolve_instances(*outputs, out.taxonomy, instances);
            auto rt = node.get_optional<double>("<xmlattr>.responseTime");
            auto rc = node.get_optional<double>("<xmlattr>.cost");
            if (!rt || !rc) {
                missing_qos.push_back(s.id);
            } else {
                raw_time.push_back(*rt);
                raw_cost.push_back(*rc);
            }
            out.repository.push_back(std::move(s));
        }
    }
    if (out.repository.empty()) throw ParseError("empty repository");
    if (!missing_qos.empty()) {
        std::string msg = "services missing QoS attributes:";
        for (const auto& id : missing_qos) msg += " " + id;
        throw ParseError(msg);
    }

    // Min-max normalization into [0, 1]; a degenerate range maps to 0.
    auto normalized = [](const std::vector<double>& raw) {
        auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
        double lo = *lo_it, hi = *hi_it;
        std::vector<double> out(raw.size(), 0.0);
        if (hi > lo)
            for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - lo) / (hi - lo);
        return out;
    };
    auto proc = normalized(raw_time);
    auto cost = normalized(raw_cost);
    for (std::size_t i = 0; i < out.repository.size(); ++i) {
        out.repository[i].proc_time = proc[i];
        out.repository[i].service_cost = cost[i];
    }

    {
        pt::ptree doc = parse_xml(problem_xml, "problem");
        const pt::ptree* task_node = find_task_node(doc);
        if (!task_node) throw ParseError("problem document has no provided/wanted task node");
        out.task.provided =
            resolve_instances(task_node->get_child("provided"), out.taxonomy, instances);
        out.task.wanted = resolve_instances(task_node->get_child("wanted"), out.taxonomy, instances);
        if (out.task.provided.empty() || out.task.wanted.empty())
            throw ParseError("task must list provided and wanted instances");
    }
    return out;
}

ParsedWsc parse_wsc_files(const std::string& services_path, const std::string& taxonomy_path,
                          const std::string& problem_path) {
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ParseError("cannot open file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    return parse_wsc(slurp(services_path), slurp(taxonomy_path), slurp(problem_path));
}

}  // namespace dwsc
