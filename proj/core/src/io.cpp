#include "parmax/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace parmax {
namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void parse_error(const std::string& what) {
    throw std::runtime_error("parmax io: " + what);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) parse_error("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

void write_grid_record(std::ostream& out, const Cylinder& grid) {
    out << "parmax-grid 1\n";
    out << "n = " << grid.dim() << "\n";
    out << "R = " << format_double(grid.radius()) << "\n";
    out << "T = " << format_double(grid.final_time()) << "\n";
    out << "Nx = " << grid.nx() << "\n";
    out << "Nt = " << grid.nt() << "\n";
}

Cylinder read_grid_record(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header != "parmax-grid 1")
        parse_error("grid record header missing or unsupported");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) parse_error("grid record line without '=': " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        const auto trim = [](std::string& s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t\r");
            s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(value);
        kv[key] = value;
    }
    for (const char* key : {"n", "R", "T", "Nx", "Nt"}) {
        if (!kv.count(key)) parse_error(std::string("grid record missing key '") + key + "'");
    }
    return Cylinder(std::stoi(kv["n"]), std::stod(kv["R"]), std::stod(kv["T"]),
                    std::stoi(kv["Nx"]), std::stoi(kv["Nt"]));
}

void write_grid_record_file(const std::string& path, const Cylinder& grid) {
    auto out = open_output(path);
    write_grid_record(out, grid);
}

Cylinder read_grid_record_file(const std::string& path) {
    auto in = open_input(path);
    return read_grid_record(in);
}

void write_grid_function_csv(std::ostream& out, const GridFunction& u) {
    const Cylinder& grid = u.grid();
    out << (grid.dim() == 1 ? "index,x1,t,value\n" : "index,x1,x2,t,value\n");
    for (int it = 0; it < grid.nt(); ++it) {
        for (std::size_t is = 0; is < grid.space_count(); ++is) {
            const std::size_t f = grid.flat(is, it);
            out << f << ',' << format_double(grid.coord(is, 0));
            if (grid.dim() == 2) out << ',' << format_double(grid.coord(is, 1));
            out << ',' << format_double(grid.time(it)) << ',' << format_double(u.at_flat(f))
                << '\n';
        }
    }
}

GridFunction read_grid_function_csv(std::istream& in, const Cylinder& grid) {
    std::string line;
    if (!std::getline(in, line)) parse_error("grid function csv is empty");
    std::vector<double> values(grid.node_count());
    std::vector<bool> seen(grid.node_count(), false);
    const int fields = grid.dim() == 1 ? 4 : 5;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (static_cast<int>(cells.size()) != fields)
            parse_error("grid function csv row has wrong field count: " + line);
        const std::size_t idx = std::stoull(cells[0]);
        if (idx >= values.size()) parse_error("grid function csv index out of range: " + cells[0]);
        values[idx] = std::stod(cells.back());
        seen[idx] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) parse_error("grid function csv missing node " + std::to_string(i));
    return GridFunction(grid, std::move(values));
}

void write_grid_function_csv_file(const std::string& path, const GridFunction& u) {
    auto out = open_output(path);
    write_grid_function_csv(out, u);
}

GridFunction read_grid_function_csv_file(const std::string& path, const Cylinder& grid) {
    auto in = open_input(path);
    return read_grid_function_csv(in, grid);
}

}  // namespace parmax
