#pragma once

// BehaviorTree.CPP (v3 layout) documents for a single Sequence of action leaves:
//
//   <root main_tree_to_execute="MainTree">
//     <BehaviorTree ID="MainTree">
//       <Sequence>
//         <Move x="1.5" z="-2.0"/>
//         <Goal/>
//       </Sequence>
//     </BehaviorTree>
//   </root>
//
// Two-space indentation, LF line endings, trailing newline. Element names are
// action names with the first letter uppercased; parameters become attributes.

#include <string>
#include <string_view>

#include "nl2bt/action_registry.hpp"
#include "nl2bt/logical_form.hpp"

namespace nl2bt {

inline constexpr std::string_view kDefaultTreeId = "MainTree";

// Attribute order: schema order for params the registry knows, then the rest
// alphabetically. Throws EmitError for names that do not map to XML names.
std::string emit(const SequenceNode& tree, const ActionRegistry& registry,
                 std::string_view tree_id = kDefaultTreeId);

// Inverse of emit. Action names get their first letter lowercased and `$`
// indices are assigned 0, 1, 2, ... in document order. Throws XmlError.
SequenceNode parse_bt_xml(std::string_view xml);

// "say" -> "Say"; throws EmitError if the result is not a usable element name.
std::string element_name_for(std::string_view action_name);

std::string xml_escape(std::string_view text);

}  // namespace nl2bt
