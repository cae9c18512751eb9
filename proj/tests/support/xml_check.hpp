#pragma once

// Generic well-formedness check straight on libexpat, bypassing the emitter's
// own parser so shape rules don't mask syntax problems.

#include <expat.h>

#include <string>
#include <string_view>
#include <vector>

namespace xmlcheck {

inline bool well_formed(std::string_view xml) {
  XML_Parser parser = XML_ParserCreate("UTF-8");
  bool ok = XML_Parse(parser, xml.data(), static_cast<int>(xml.size()), XML_TRUE) == XML_STATUS_OK;
  XML_ParserFree(parser);
  return ok;
}

// Element names in document order.
inline std::vector<std::string> element_names(std::string_view xml) {
  std::vector<std::string> names;
  XML_Parser parser = XML_ParserCreate("UTF-8");
  XML_SetUserData(parser, &names);
  XML_SetStartElementHandler(parser, [](void* data, const XML_Char* name, const XML_Char**) {
    static_cast<std::vector<std::string>*>(data)->emplace_back(name);
  });
  XML_Parse(parser, xml.data(), static_cast<int>(xml.size()), XML_TRUE);
  XML_ParserFree(parser);
  return names;
}

}  // namespace xmlcheck
