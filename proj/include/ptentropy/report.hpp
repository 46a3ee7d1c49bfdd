#pragma once

// Tabular reports and carpet serialization (CSV, JSON, PGM).

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptentropy/coherent.hpp"

namespace pt::report {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// RFC-4180-style CSV with a header row; numbers use 17 significant digits.
void write_csv(const Table& table, std::ostream& os);
Table read_csv(std::istream& is);

/// Aligned text table with 6 significant digits.
void write_pretty(const Table& table, std::ostream& os);

nlohmann::json to_json(const Table& table);

/// Shortest round-trip decimal form ("%.17g").
std::string format_number(double v);

struct PgmInfo {
    double v_min = 0.0;
    double v_max = 0.0;
    bool degenerate = false;  ///< v_max == v_min, written as uniform mid-gray
};

/// Binary P5 greyscale image, one row per time (ascending downward), one
/// column per x (ascending rightward); pixel = round(255 (v - min)/(max - min)).
PgmInfo write_pgm(const coherent::CarpetField& field, std::ostream& os);

/// First row "t\x,x_0,...", then one row per time "t_i,v_i0,...".
void write_carpet_csv(const coherent::CarpetField& field, std::ostream& os);

nlohmann::json carpet_to_json(const coherent::CarpetField& field);

}  // namespace pt::report
