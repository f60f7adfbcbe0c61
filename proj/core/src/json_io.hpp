#pragma once

// Private JSON helpers shared by the graph and certificate formats.

#include <string>

#include <json.hpp>

#include "wallrig/gain_graph.hpp"

namespace wallrig::detail {

using ordered_json = nlohmann::ordered_json;

ordered_json gain_to_json(const GroupElement& a);
GroupElement gain_from_json(const ordered_json& j, const std::string& where);

ordered_json graph_to_json(const GainGraph& g);
GainGraph graph_from_json(const ordered_json& j, const std::string& where);

/// Pretty form with one compact object per edge line.
std::string dump_graph(const GainGraph& g, int indent);

int int_field(const ordered_json& obj, const char* key, const std::string& where);
const ordered_json& field(const ordered_json& obj, const char* key, const std::string& where);

[[noreturn]] void parse_fail(const std::string& where, const std::string& what);

}  // namespace wallrig::detail
