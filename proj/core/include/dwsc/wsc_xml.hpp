#pragma once

#include <string>
#include <vector>

#include "dwsc/model.hpp"

namespace dwsc {

// Result of parsing a WSC-challenge style document triplet. Services carry
// resolved concept sets and min-max normalized QoS; network geometry and
// data items are attached later by augment().
struct ParsedWsc {
    std::vector<Service> repository;
    Taxonomy taxonomy;
    Task task;
};

// Parses the three XML documents (contents, not paths):
//
//   services: <services><service name=".." responseTime=".." cost="..">
//               <inputs><instance name=".."/>..</inputs>
//               <outputs><instance name=".."/>..</outputs></service>..</services>
//   taxonomy: <taxonomy><concept name=".."><instance name=".."/>
//               <concept ..>..</concept></concept>..</taxonomy>
//   problem:  any root containing a node with <provided> and <wanted>
//             children listing <instance name=".."/> entries
//
// Service inputs/outputs and the task refer to instances; each instance
// resolves to the concept that declares it. Raw responseTime/cost are
// min-max normalized over the repository into proc_time/service_cost (a
// degenerate range maps to 0). Throws ParseError on malformed documents,
// dangling instance references, an empty repository, or missing QoS
// attributes.
ParsedWsc parse_wsc(const std::string& services_xml, const std::string& taxonomy_xml,
                    const std::string& problem_xml);

// Same, reading the documents from files.
ParsedWsc parse_wsc_files(const std::string& services_path, const std::string& taxonomy_path,
                          const std::string& problem_path);

}  // namespace dwsc
