#include "nl2bt/xml_emitter.hpp"

#include <expat.h>

#include <algorithm>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "text_util.hpp"

namespace nl2bt {
namespace {

bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }

bool is_name_char(char c) {
  return is_ascii_lower(c) || is_ascii_upper(c) || (c >= '0' && c <= '9') ||
         c == '_' || c == '-' || c == '.';
}

// ASCII subset of the XML Name production, without ':'.
bool is_xml_name(std::string_view name) {
  if (name.empty()) return false;
  char first = name.front();
  if (!(is_ascii_lower(first) || is_ascii_upper(first) || first == '_')) return false;
  return std::all_of(name.begin(), name.end(), is_name_char);
}

struct Attribute {
  const ParamNode* param;
  bool known;
  std::size_t order;
};

std::vector<Attribute> ordered_attributes(const ActionNode& action,
                                          const ActionSchema* schema) {
  std::vector<Attribute> attrs;
  std::set<std::string_view> seen;
  for (const ParamNode& param : action.params) {
    if (!is_xml_name(param.name)) {
      throw EmitError("parameter '" + param.name + "' of action '" +
                      action.name + "' is not a legal XML attribute name");
    }
    if (!seen.insert(param.name).second) {
      throw EmitError("parameter '" + param.name + "' appears twice in action '" +
                      action.name + "'");
    }
    auto order = schema ? schema->order_of(param.name) : std::nullopt;
    attrs.push_back({&param, order.has_value(), order.value_or(0)});
  }
  std::stable_sort(attrs.begin(), attrs.end(),
                   [](const Attribute& a, const Attribute& b) {
                     if (a.known != b.known) return a.known;
                     if (a.known) return a.order < b.order;
                     return a.param->name < b.param->name;
                   });
  return attrs;
}

// Minimal element tree collected from expat callbacks.
struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlElement> children;
  std::size_t line = 0;
  std::size_t text_line = 0;  // line of first non-blank text, 0 if none
};

struct TreeBuilder {
  XML_Parser parser = nullptr;
  XmlElement document;  // synthetic parent of the root element
  std::vector<XmlElement*> stack{&document};

  static void on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
    auto* self = static_cast<TreeBuilder*>(data);
    XmlElement element;
    element.name = name;
    element.line = XML_GetCurrentLineNumber(self->parser);
    for (std::size_t i = 0; attrs[i]; i += 2) {
      element.attributes.emplace_back(attrs[i], attrs[i + 1]);
    }
    XmlElement* parent = self->stack.back();
    parent->children.push_back(std::move(element));
    self->stack.push_back(&parent->children.back());
  }

  static void on_end(void* data, const XML_Char*) {
    static_cast<TreeBuilder*>(data)->stack.pop_back();
  }

  static void on_text(void* data, const XML_Char* text, int len) {
    auto* self = static_cast<TreeBuilder*>(data);
    XmlElement* current = self->stack.back();
    if (current->text_line) return;
    if (!detail::trim(std::string_view(text, static_cast<std::size_t>(len))).empty()) {
      current->text_line = XML_GetCurrentLineNumber(self->parser);
    }
  }
};

XmlElement read_document(std::string_view xml) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)>
      parser(XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw XmlError(XmlErrorKind::Syntax, 0, "cannot create XML parser");
  // Stack entries stay valid: only the top element's children vector grows.
  TreeBuilder builder;
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &TreeBuilder::on_start, &TreeBuilder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &TreeBuilder::on_text);
  if (XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw XmlError(XmlErrorKind::Syntax, XML_GetCurrentLineNumber(parser.get()),
                   XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (builder.document.children.size() != 1) {
    throw XmlError(XmlErrorKind::Syntax, 0, "document has no root element");
  }
  return std::move(builder.document.children.front());
}

const std::string* attribute(const XmlElement& element, std::string_view name) {
  for (const auto& [key, value] : element.attributes) {
    if (key == name) return &value;
  }
  return nullptr;
}

[[noreturn]] void shape_error(std::size_t line, const std::string& message) {
  throw XmlError(XmlErrorKind::Shape, line, message);
}

void reject_text(const XmlElement& element) {
  if (element.text_line) {
    shape_error(element.text_line, "unexpected text inside <" + element.name + ">");
  }
}

const XmlElement& find_main_tree(const XmlElement& root) {
  const std::string* main_id = attribute(root, "main_tree_to_execute");
  const XmlElement* found = nullptr;
  std::size_t trees = 0;
  for (const XmlElement& child : root.children) {
    if (child.name != "BehaviorTree") continue;
    ++trees;
    const std::string* id = attribute(child, "ID");
    if (main_id && id && *id == *main_id) return child;
    if (!found) found = &child;
  }
  if (!found) shape_error(root.line, "missing <BehaviorTree> element");
  if (main_id) {
    shape_error(root.line, "no <BehaviorTree> with ID \"" + *main_id + "\"");
  }
  if (trees > 1) {
    shape_error(root.line,
                "several <BehaviorTree> elements and no main_tree_to_execute");
  }
  return *found;
}

}  // namespace

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string element_name_for(std::string_view action_name) {
  // Uppercase first letters would not map back to the same action name.
  if (action_name.empty() || is_ascii_upper(action_name.front())) {
    throw EmitError("action '" + std::string(action_name) +
                    "' has no reversible XML element name");
  }
  std::string name(action_name);
  if (is_ascii_lower(name.front())) name.front() = static_cast<char>(name.front() - 'a' + 'A');
  if (!is_xml_name(name)) {
    throw EmitError("action '" + std::string(action_name) +
                    "' is not a legal XML element name");
  }
  return name;
}

std::string emit(const SequenceNode& tree, const ActionRegistry& registry,
                 std::string_view tree_id) {
  const std::string id = xml_escape(tree_id);
  std::string out;
  out += "<root main_tree_to_execute=\"" + id + "\">\n";
  out += "  <BehaviorTree ID=\"" + id + "\">\n";
  out += "    <Sequence>\n";
  for (const ActionNode& action : tree.actions) {
    out += "      <" + element_name_for(action.name);
    for (const Attribute& attr : ordered_attributes(action, registry.lookup(action.name))) {
      out += ' ';
      out += attr.param->name;
      out += "=\"";
      out += xml_escape(attr.param->value);
      out += '"';
    }
    out += "/>\n";
  }
  out += "    </Sequence>\n";
  out += "  </BehaviorTree>\n";
  out += "</root>\n";
  return out;
}

SequenceNode parse_bt_xml(std::string_view xml) {
  const XmlElement root = read_document(xml);
  if (root.name != "root") {
    shape_error(root.line, "root element is <" + root.name + ">, expected <root>");
  }
  const XmlElement& tree = find_main_tree(root);
  reject_text(tree);
  if (tree.children.size() != 1 || tree.children.front().name != "Sequence") {
    shape_error(tree.line, "<BehaviorTree> must contain exactly one <Sequence>");
  }
  const XmlElement& sequence = tree.children.front();
  reject_text(sequence);

  SequenceNode node;
  std::size_t var = 0;
  for (const XmlElement& leaf : sequence.children) {
    if (!leaf.children.empty()) {
      shape_error(leaf.children.front().line,
                  "<" + leaf.name + "> has child elements; only leaf actions are supported");
    }
    reject_text(leaf);
    ActionNode action;
    action.name = leaf.name;
    if (is_ascii_upper(action.name.front())) {
      action.name.front() = static_cast<char>(action.name.front() - 'A' + 'a');
    }
    for (const auto& [key, raw_value] : leaf.attributes) {
      std::vector<std::string> words = detail::split_words(raw_value);
      if (words.empty()) {
        shape_error(leaf.line, "attribute '" + key + "' of <" + leaf.name + "> is empty");
      }
      for (const std::string& word : words) {
        if (word == "(" || word == ")") {
          shape_error(leaf.line, "attribute '" + key + "' of <" + leaf.name +
                                     "> contains a bare parenthesis");
        }
      }
      action.params.push_back({key, var++, detail::join(words)});
    }
    node.actions.push_back(std::move(action));
  }
  return node;
}

}  // namespace nl2bt
