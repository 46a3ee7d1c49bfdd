#include "ptentropy/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "ptentropy/errors.hpp"

namespace pt::report {

namespace {

std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

std::string pretty_number(double v) {
    if (std::isnan(v)) return "-";
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const Table& table, std::ostream& os) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        os << (c ? "," : "") << quote_if_needed(table.columns[c]);
    }
    os << "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
        os << "\r\n";
    }
}

Table read_csv(std::istream& is) {
    Table table;
    std::string line;
    if (!std::getline(is, line)) throw DomainError("read_csv: empty input");
    table.columns = split_csv_line(line);
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != table.columns.size()) {
            throw DomainError("read_csv: row width does not match header");
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(std::strtod(f.c_str(), nullptr));
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_pretty(const Table& table, std::ostream& os) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back(table.columns);
    for (const auto& row : table.rows) {
        std::vector<std::string> r;
        for (double v : row) r.push_back(pretty_number(v));
        cells.push_back(std::move(r));
    }
    std::vector<std::size_t> width(table.columns.size(), 0);
    for (const auto& r : cells) {
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) {
            width[c] = std::max(width[c], r[c].size());
        }
    }
    for (const auto& r : cells) {
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) {
            os << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << r[c];
        }
        os << '\n';
    }
}

nlohmann::json to_json(const Table& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (std::isfinite(row[c])) {
                obj[table.columns[c]] = row[c];
            } else {
                obj[table.columns[c]] = nullptr;
            }
        }
        rows.push_back(std::move(obj));
    }
    return {{"columns", table.columns}, {"rows", rows}};
}

PgmInfo write_pgm(const coherent::CarpetField& field, std::ostream& os) {
    PgmInfo info;
    const auto [lo, hi] = std::minmax_element(field.values.begin(), field.values.end());
    info.v_min = *lo;
    info.v_max = *hi;
    info.degenerate = !(info.v_max > info.v_min);

    os << "P5\n" << field.cols() << ' ' << field.rows() << "\n255\n";
    std::string pixels(field.values.size(), static_cast<char>(128));
    if (!info.degenerate) {
        const double scale = 255.0 / (info.v_max - info.v_min);
        for (std::size_t k = 0; k < field.values.size(); ++k) {
            const double level = std::round((field.values[k] - info.v_min) * scale);
            pixels[k] = static_cast<char>(static_cast<unsigned char>(std::clamp(level, 0.0, 255.0)));
        }
    }
    os.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
    return info;
}

void write_carpet_csv(const coherent::CarpetField& field, std::ostream& os) {
    os << "t\\x";
    for (double x : field.x_grid.points()) os << ',' << format_number(x);
    os << "\r\n";
    for (std::size_t i = 0; i < field.rows(); ++i) {
        os << format_number(field.t_grid[i]);
        for (std::size_t j = 0; j < field.cols(); ++j) os << ',' << format_number(field.at(i, j));
        os << "\r\n";
    }
}

nlohmann::json carpet_to_json(const coherent::CarpetField& field) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < field.rows(); ++i) {
        rows.push_back(std::vector<double>(field.values.begin() + static_cast<std::ptrdiff_t>(i * field.cols()),
                                           field.values.begin() + static_cast<std::ptrdiff_t>((i + 1) * field.cols())));
    }
    const auto pts = [](const numerics::Grid1D& g) {
        return std::vector<double>(g.points().begin(), g.points().end());
    };
    return {{"x", pts(field.x_grid)},
            {"t", pts(field.t_grid)},
            {"gamma", {field.gamma.real(), field.gamma.imag()}},
            {"n_states", field.n_states},
            {"values", rows}};
}

}  // namespace pt::report
