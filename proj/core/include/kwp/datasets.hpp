#pragma once

#include <string_view>
#include <vector>

namespace kwp::datasets {

/// Exceedances of flood peaks (m^3/s) of the Wheaton River near Carcross,
/// Yukon: 72 values, one decimal, in the customary row order.
const std::vector<double>& wheaton();

/// Looks up an embedded dataset by name ("wheaton"); nullptr if unknown.
const std::vector<double>* find(std::string_view name);

}  // namespace kwp::datasets
