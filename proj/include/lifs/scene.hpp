#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "lifs/graph_directed.hpp"

namespace lifs {

// Numeric fields in scene files may be plain JSON numbers or expression
// strings over + - * / sqrt() exp() and parentheses, e.g. "1/2 + sqrt(3)/4".
double eval_expression(const std::string& text);
double eval_number(const nlohmann::json& j, const std::string& field);

// Closed-interval string "[lo, hi]"; round brackets raise OpenDomainRejected.
void parse_interval(const std::string& text, double& lo, double& hi);

struct Scene {
    std::string title, notes;
    std::unique_ptr<Space> space;
    std::unique_ptr<LocalIFS> ifs;
};

struct GraphScene {
    std::string title, notes;
    std::unique_ptr<Space> base;
    GraphDirectedIFS gd;
};

// A document with a "vertices" key is a graph scene; otherwise a local one.
bool is_graph_scene(const nlohmann::json& doc);

// Strict parsing: unknown keys anywhere raise SchemaError naming the field;
// every map passes Lipschitz validation before the system is returned.
Scene scene_from_json(const nlohmann::json& doc);
GraphScene graph_scene_from_json(const nlohmann::json& doc);

Scene load_scene(const std::string& path);
GraphScene load_graph_scene(const std::string& path);

// Inverse of scene_from_json up to constant folding: parsing the emitted
// document reproduces the same document field-for-field.
nlohmann::json emit_scene(const LocalIFS& ifs, const std::string& title = "",
                          const std::string& notes = "");

// Ordinary local-IFS scene describing the enriched system of a graph scene.
nlohmann::json gd_to_local_scene(const GraphDirectedIFS& gd, const std::string& title = "");

}  // namespace lifs
