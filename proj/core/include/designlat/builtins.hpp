#pragma once

#include <designlat/applications.hpp>

#include <string>
#include <vector>

namespace designlat {

struct BuiltinInfo {
    std::string name;
    std::string description;
};

const std::vector<BuiltinInfo>& builtin_instances();
// Throws InputError for an unknown name.
ProblemInstance build_builtin(const std::string& name);

} // namespace designlat
