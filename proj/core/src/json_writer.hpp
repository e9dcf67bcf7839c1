#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace rriqa::detail {

// Dumps like nlohmann's dump() but prints floating-point numbers with 17 significant
// digits. indent < 0 gives the compact form.
std::string dump_json(const nlohmann::ordered_json& value, int indent = -1);

}  // namespace rriqa::detail
