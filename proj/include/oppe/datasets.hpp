#pragma once

#include <istream>
#include <string_view>
#include <vector>

namespace oppe {

/// A bundled sample; the same values ship as data/<name>.csv.
struct Dataset {
    std::string_view name;
    std::string_view description;
    const std::vector<double>& values;
};

/// carbon20 (69 values), aircond (188), failures50 (50). InvalidInput otherwise.
const Dataset& dataset(std::string_view name);
std::vector<std::string_view> dataset_names();

/// One value per line, '.' decimal separator, no header; blank lines skipped.
/// Throws InvalidInput on a malformed line or when no value is present.
std::vector<double> read_values(std::istream& in);

}  // namespace oppe
