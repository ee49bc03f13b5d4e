#include "dwsc/bundle.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dwsc/util.hpp"

namespace dwsc {
namespace {

using nlohmann::json;

json concepts_to_json(const Taxonomy& taxonomy) {
    json arr = json::array();
    for (std::size_t i = 0; i < taxonomy.size(); ++i) {
        auto id = static_cast<ConceptId>(i);
        json c;
        c["id"] = taxonomy.name(id);
        if (taxonomy.parent(id) != kNoConcept)
            c["parent"] = taxonomy.name(taxonomy.parent(id));
        else
            c["parent"] = nullptr;
        arr.push_back(std::move(c));
    }
    return arr;
}

json concept_names(const Taxonomy& taxonomy, const std::vector<ConceptId>& ids) {
    json arr = json::array();
    for (ConceptId c : ids) arr.push_back(taxonomy.name(c));
    return arr;
}

std::vector<ConceptId> concepts_from_json(const Taxonomy& taxonomy, const json& arr) {
    std::vector<ConceptId> out;
    for (const auto& name : arr) out.push_back(taxonomy.require(name.get<std::string>()));
    return out;
}

}  // namespace

std::string save_bundle(const ProblemInstance& inst) {
    json doc;
    doc["schema"] = kInstanceSchema;
    doc["weights"] = {{"time", inst.weights.time}, {"cost", inst.weights.cost}};
    doc["match_mode"] =
        inst.taxonomy.match_mode() == MatchMode::Subsumption ? "subsumption" : "exact";
    doc["taxonomy"] = concepts_to_json(inst.taxonomy);
    doc["task"] = {{"provided", concept_names(inst.taxonomy, inst.task.provided)},
                   {"wanted", concept_names(inst.taxonomy, inst.task.wanted)}};

    json net;
    net["propagation_factor"] = inst.network.propagation_factor;
    net["comm_cost_factor"] = inst.network.comm_cost_factor;
    net["max_distance"] = inst.network.max_distance;
    json coords = json::array();
    json bandwidth = json::array();
    // Entities serialized per service then per item, so the bundle text is
    // identical across saves of the same instance.
    for (const Service& s : inst.services) {
        const Coord& c = inst.network.coord(s.location);
        coords.push_back({{"id", s.location}, {"x", c.x}, {"y", c.y}});
        for (const DataItem& d : s.data_items) {
            const Coord& dc = inst.network.coord(d.location);
            if (d.location != s.location)
                coords.push_back({{"id", d.location}, {"x", dc.x}, {"y", dc.y}});
            double bw = inst.network.bandwidth(d.id, s.id);
            if (bw > 0.0) bandwidth.push_back({{"a", d.id}, {"b", s.id}, {"value", bw}});
        }
    }
    net["coordinates"] = std::move(coords);
    net["bandwidth"] = std::move(bandwidth);
    doc["network"] = std::move(net);

    json services = json::array();
    for (const Service& s : inst.services) {
        json sj;
        sj["id"] = s.id;
        sj["inputs"] = concept_names(inst.taxonomy, s.inputs);
        sj["outputs"] = concept_names(inst.taxonomy, s.outputs);
        sj["proc_time"] = s.proc_time;
        sj["service_cost"] = s.service_cost;
        sj["location"] = s.location;
        json items = json::array();
        for (const DataItem& d : s.data_items)
            items.push_back({{"id", d.id},
                             {"provision_cost", d.provision_cost},
                             {"size", d.size},
                             {"access_latency", d.access_latency},
                             {"location", d.location}});
        sj["data_items"] = std::move(items);
        services.push_back(std::move(sj));
    }
    doc["services"] = std::move(services);
    return doc.dump(2) + "\n";
}

ProblemInstance load_bundle(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed instance bundle: ") + e.what());
    }
    try {
        if (doc.at("schema").get<std::string>() != kInstanceSchema)
            throw ParseError("unsupported bundle schema: " + doc["schema"].dump());

        ProblemInstance inst;
        inst.weights.time = doc.at("weights").at("time").get<double>();
        inst.weights.cost = doc.at("weights").at("cost").get<double>();
        if (doc.value("match_mode", "subsumption") == std::string("exact"))
            inst.taxonomy.set_match_mode(MatchMode::ExactOnly);

        for (const auto& c : doc.at("taxonomy")) {
            std::string parent =
                c.at("parent").is_null() ? std::string() : c.at("parent").get<std::string>();
            inst.taxonomy.add_concept(c.at("id").get<std::string>(), parent);
        }
        inst.taxonomy.finalize();

        const json& net = doc.at("network");
        inst.network.propagation_factor = net.at("propagation_factor").get<double>();
        inst.network.comm_cost_factor = net.at("comm_cost_factor").get<double>();
        inst.network.max_distance = net.at("max_distance").get<double>();
        for (const auto& c : net.at("coordinates"))
            inst.network.coords[c.at("id").get<std::string>()] = {c.at("x").get<double>(),
                                                                  c.at("y").get<double>()};
        for (const auto& b : net.at("bandwidth"))
            inst.network.set_bandwidth(b.at("a").get<std::string>(), b.at("b").get<std::string>(),
                                       b.at("value").get<double>());

        for (const auto& sj : doc.at("services")) {
            Service s;
            s.id = sj.at("id").get<std::string>();
            s.inputs = concepts_from_json(inst.taxonomy, sj.at("inputs"));
            s.outputs = concepts_from_json(inst.taxonomy, sj.at("outputs"));
            s.proc_time = sj.at("proc_time").get<double>();
            s.service_cost = sj.at("service_cost").get<double>();
            s.location = sj.at("location").get<std::string>();
            for (const auto& dj : sj.at("data_items")) {
                DataItem d;
                d.id = dj.at("id").get<std::string>();
                d.provision_cost = dj.at("provision_cost").get<double>();
                d.size = dj.at("size").get<double>();
                d.access_latency = dj.at("access_latency").get<double>();
                d.location = dj.at("location").get<std::string>();
                s.data_items.push_back(std::move(d));
            }
            inst.services.push_back(std::move(s));
        }

        inst.task.provided = concepts_from_json(inst.taxonomy, doc.at("task").at("provided"));
        inst.task.wanted = concepts_from_json(inst.taxonomy, doc.at("task").at("wanted"));
        inst.finalize();
        return inst;
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance bundle misses a field: ") + e.what());
    }
}

void save_bundle_file(const ProblemInstance& instance, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << save_bundle(instance);
}

ProblemInstance load_bundle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_bundle(ss.str());
}

std::string instance_digest(const ProblemInstance& instance) {
    std::uint64_t h = fnv1a(save_bundle(instance));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace dwsc
