#include "oppe/datasets.hpp"

#include <array>
#include <cmath>
#include <charconv>
#include <sstream>
#include <string>

#include "oppe/errors.hpp"

namespace oppe {

namespace {

// Tensile strength (GPa) of single carbon fibres tested at 20 mm gauge length.
const std::vector<double> kCarbon20 = {
    0.312, 0.700, 0.944, 1.006, 1.063, 1.224, 1.272, 1.359, 1.434, 1.511, 1.566, 1.633, 1.697, 1.800,
    1.848, 2.067, 2.128, 2.585, 0.314, 0.803, 0.958, 1.021, 1.098, 1.240, 1.274, 1.382, 1.435, 1.514,
    1.570, 1.642, 1.726, 1.809, 1.880, 2.084, 2.233, 0.479, 0.861, 0.966, 1.027, 1.140, 1.253, 1.301,
    1.382, 1.478, 1.535, 1.586, 1.648, 1.770, 1.818, 1.954, 2.090, 2.433, 0.552, 0.865, 0.997, 1.055,
    1.179, 1.270, 1.301, 1.426, 1.490, 1.554, 1.629, 1.684, 1.773, 1.821, 2.012, 2.096, 2.585,
};

// Successive failure intervals of jet-airplane air-conditioning systems.
const std::vector<double> kAircond = {
    194.0, 413.0, 90.0, 74.0, 55.0, 23.0, 97.0, 50.0, 359.0, 50.0, 130.0, 487.0, 57.0, 102.0, 15.0, 14.0,
    10.0, 57.0, 320.0, 261.0, 51.0, 44.0, 9.0, 254.0, 493.0, 33.0, 18.0, 209.0, 41.0, 58.0, 60.0, 48.0,
    56.0, 87.0, 11.0, 102.0, 12.0, 5.0, 14.0, 14.0, 29.0, 37.0, 186.0, 29.0, 104.0, 7.0, 4.0, 72.0,
    270.0, 283.0, 7.0, 61.0, 100.0, 61.0, 502.0, 220.0, 120.0, 141.0, 22.0, 603.0, 35.0, 98.0, 54.0, 100.0,
    11.0, 181.0, 65.0, 49.0, 12.0, 239.0, 14.0, 18.0, 39.0, 3.0, 12.0, 5.0, 32.0, 9.0, 438.0, 43.0,
    134.0, 184.0, 20.0, 386.0, 182.0, 71.0, 80.0, 188.0, 230.0, 152.0, 5.0, 36.0, 79.0, 59.0, 33.0, 246.0,
    1.0, 79.0, 3.0, 27.0, 201.0, 84.0, 27.0, 156.0, 21.0, 16.0, 88.0, 130.0, 14.0, 118.0, 44.0, 15.0,
    42.0, 106.0, 46.0, 230.0, 26.0, 59.0, 153.0, 104.0, 20.0, 206.0, 5.0, 66.0, 34.0, 29.0, 26.0, 35.0,
    5.0, 82.0, 31.0, 118.0, 326.0, 12.0, 54.0, 36.0, 34.0, 18.0, 25.0, 120.0, 31.0, 22.0, 18.0, 216.0,
    139.0, 67.0, 310.0, 3.0, 46.0, 210.0, 57.0, 76.0, 14.0, 111.0, 97.0, 62.0, 39.0, 30.0, 7.0, 44.0,
    11.0, 63.0, 23.0, 22.0, 23.0, 14.0, 18.0, 13.0, 34.0, 16.0, 18.0, 130.0, 90.0, 163.0, 208.0, 1.0,
    24.0, 70.0, 16.0, 101.0, 52.0, 208.0, 95.0, 62.0, 11.0, 191.0, 14.0, 71.0,
};

// Failure times (weeks) of 50 components.
const std::vector<double> kFailures50 = {
    0.013, 0.065, 0.111, 0.111, 0.163, 0.309, 0.426, 0.535, 0.684, 0.747,
    0.997, 1.284, 1.304, 1.647, 1.829, 2.336, 2.838, 3.269, 3.977, 3.981,
    4.520, 4.789, 4.849, 5.202, 5.291, 5.349, 5.911, 6.018, 6.427, 6.456,
    6.572, 7.023, 7.087, 7.291, 7.787, 8.596, 9.388, 10.261, 10.713, 11.658,
    13.006, 13.388, 13.842, 17.152, 17.283, 19.418, 23.471, 24.777, 32.795, 48.105,
};

const std::array<Dataset, 3>& all() {
    static const std::array<Dataset, 3> sets = {{
        {"carbon20", "single carbon fibre tensile strength, 20 mm gauge", kCarbon20},
        {"aircond", "air-conditioning system failure intervals", kAircond},
        {"failures50", "failure times of 50 components (weeks)", kFailures50},
    }};
    return sets;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

const Dataset& dataset(std::string_view name) {
    for (const auto& d : all()) {
        if (d.name == name) return d;
    }
    throw InvalidInput("unknown dataset '" + std::string(name) + "'");
}

std::vector<std::string_view> dataset_names() {
    std::vector<std::string_view> out;
    for (const auto& d : all()) out.push_back(d.name);
    return out;
}

std::vector<double> read_values(std::istream& in) {
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string field = trim(line);
        if (field.empty()) continue;
        double v = 0.0;
        const auto* end = field.data() + field.size();
        const auto [ptr, ec] = std::from_chars(field.data(), end, v);
        if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
            throw InvalidInput("line " + std::to_string(line_no) + ": '" + field +
                               "' is not a finite number");
        }
        values.push_back(v);
    }
    if (values.empty()) throw InvalidInput("no data values found");
    return values;
}

}  // namespace oppe
