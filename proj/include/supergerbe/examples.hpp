#pragma once

#include <string>
#include <vector>

#include "supergerbe/manifest.hpp"

namespace supergerbe {

struct ExampleInfo {
  std::string name;
  std::string description;
};

std::vector<ExampleInfo> builtin_examples();
// Builds one entry; InvalidArgument for unknown names.
Manifest builtin_example(const std::string& name, const Exec& exec = {});

}  // namespace supergerbe
