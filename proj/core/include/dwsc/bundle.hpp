#pragma once

#include <string>

#include "dwsc/model.hpp"

namespace dwsc {

inline constexpr const char* kInstanceSchema = "dwsc-instance/1";

// Self-contained JSON form of an augmented instance (repository, taxonomy,
// task, network, weights), so experiments are archivable and reloadable.
// Loading the saved text yields an identical instance.
std::string save_bundle(const ProblemInstance& instance);
ProblemInstance load_bundle(const std::string& json_text);

void save_bundle_file(const ProblemInstance& instance, const std::string& path);
ProblemInstance load_bundle_file(const std::string& path);

// Stable content hash of the bundle form, reported in run artifacts.
std::string instance_digest(const ProblemInstance& instance);

}  // namespace dwsc
