#pragma once

#include "symrigid/constructions.hpp"
#include "symrigid/gain_graph.hpp"
#include "symrigid/probability.hpp"
#include "symrigid/rigidity.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace symrigid {

using Json = nlohmann::json;

struct Document {
  GainGraph gg;
  std::vector<std::string> names;
  std::optional<Placement> placement;
  bool has_group = false;
  bool has_gains = false;  // every edge carried a gain literal
  Json extra = Json::object();  // informational fields (e.g. copies) written back verbatim
};

// Parses a gain-graph document. Schema errors name the offending JSON path; with
// `require_gains` the gain map is validated and missing gains are rejected.
Document parse_document(const std::string& text, bool require_gains = true);
std::string serialize_document(const Document& doc);
Json document_to_json(const Document& doc);
Document make_document(const GainGraph& gg, std::optional<Placement> placement = std::nullopt);

// Sorted keys, two-space indentation, doubles printed with 17 significant digits.
std::string canonical_json(const Json& j);

Json group_to_json(const SymmetryGroup& group);
SymmetryGroup group_from_json(const Json& j, const std::string& path = "$.group");
Json element_to_json(const SymmetryGroup& group, const GroupElement& g);
GroupElement element_from_json(const SymmetryGroup& group, const Json& j, const std::string& path);

Json to_json(const RankReport& r);
Json to_json(const ProbabilityReport& r);
Json to_json(const ConstructionSequence& seq);
Json to_json(const std::vector<InvarianceVerdict>& verdicts);

}  // namespace symrigid
