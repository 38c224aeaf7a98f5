#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "viscat/dsl.hpp"

namespace fixtures {

inline std::string path(const std::string& name) {
  return std::string(VISCAT_FIXTURE_DIR) + "/" + name;
}

inline viscat::SpecSource source(const std::string& name) {
  std::ifstream in(path(name), std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return viscat::SpecSource{buffer.str(), path(name)};
}

inline viscat::ParseResult parse(const std::string& name) {
  return viscat::parse_spec(source(name));
}

// Must parse cleanly to a ProcessModel.
inline viscat::ProcessModel model(const std::string& name) {
  viscat::ParseResult result = parse(name);
  if (!result.ok() || !result.process) {
    std::string detail = "fixture " + name + " did not parse to a model";
    for (const auto& d : result.diagnostics) detail += "\n  " + d.message;
    throw std::runtime_error(detail);
  }
  return *result.process;
}

// The .viscat files expected to parse cleanly.
inline const std::vector<std::string>& corpus() {
  static const std::vector<std::string> names = {
      "golden.viscat",
      "golden_bad_understanding.viscat",
      "extension_only.viscat",
      "fig11_redundancy.viscat",
      "fig12a_plain.viscat",
      "fig12b_arbitrary_junk.viscat",
      "fig12c_schema_face.viscat",
      "sensitivity_bar.viscat",
      "sensitivity_text.viscat",
  };
  return names;
}

// Deliberately corrupted specs; every one must fail with a positioned error.
inline const std::vector<std::string>& bad_corpus() {
  static const std::vector<std::string> names = {
      "bad/unknown_object.viscat",
      "bad/duplicate_element.viscat",
      "bad/missing_arrow.viscat",
      "bad/partial_map.viscat",
      "bad/unknown_role.viscat",
      "bad/unterminated_quote.viscat",
      "bad/dangling_equality.viscat",
      "bad/partial_intension.viscat",
  };
  return names;
}

}  // namespace fixtures
