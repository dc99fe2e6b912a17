#pragma once

#include <string_view>
#include <vector>

namespace nrlat {

// Data files compiled into the library, addressed by their path under data/.
// Throws ConfigError for unknown names.
std::string_view resource(std::string_view name);
std::vector<std::string_view> resource_names();

}  // namespace nrlat
