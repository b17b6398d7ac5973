// dataset.hpp - numeric tables, CSV emission, metadata sidecar
#pragma once

#include "dickesim/config.hpp"
#include "dickesim/observables.hpp"

#include <string>
#include <variant>
#include <vector>

namespace dicke {

// A cell is either a finite number or an explicit sentinel string ("nan",
// "n/a", flag words); no silent gaps.
using Cell = std::variant<double, std::string>;

struct Column {
    std::string name;
    std::string unit;
};

struct Table {
    std::string name;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::string to_csv() const;
};

struct Dataset {
    RunConfig config;
    std::string version;
    double wall_clock_s = 0.0;
    std::vector<Table> tables;
    std::vector<std::pair<std::string, HusimiFrame>> frames;
    bool any_breach = false;

    const Table& table(const std::string& name) const;
    // Writes <table>.csv per table, <frame>.csv per Husimi frame and
    // <config.name>.meta.json into dir. Creates dir if needed.
    std::vector<std::string> write(const std::string& dir) const;
    nlohmann::ordered_json metadata() const;
};

// Shortest round-trip decimal formatting (locale-free, deterministic).
std::string format_double(double v);
std::string csv_escape(const std::string& field);
std::string frame_to_csv(const HusimiFrame& frame);

}  // namespace dicke
