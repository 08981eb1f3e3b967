#pragma once

#include <string>

#include <json.hpp>

#include "rcm/tessellation.hpp"

namespace rcm {

/// {"spec":{"d","codegree","depth"},"vertices":[{"id","ring"}],
///  "edges":[{"id","u","v","dual"}],"faces":[{"id","cycle","complete"}]}
nlohmann::ordered_json graph_to_json(const PlanarGraph& g);

}  // namespace rcm
