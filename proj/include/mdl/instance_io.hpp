#pragma once
#include <string>

#include "mdl/core.hpp"

#include <json.hpp>

namespace mdl {

// Raised on schema violations; `path` points at the offending element,
// e.g. "distributions[1][3].p".
struct SchemaError : std::runtime_error {
    SchemaError(std::string path_, const std::string& what_)
        : std::runtime_error(path_.empty() ? what_ : path_ + ": " + what_),
          path(std::move(path_)) {}
    std::string path;
};

// Schema:
//   {"domain_size": int,
//    "hypotheses": [[0|1, ...], ...],
//    "distributions": [[{"x": int, "y": 0|1, "p": float}, ...], ...]}
Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);

nlohmann::json instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

} // namespace mdl
