#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qot::detail {

/// (template_id, file text) pairs embedded at build time from templates/.
const std::vector<std::pair<std::string, std::string>>& builtin_template_sources();

}  // namespace qot::detail
