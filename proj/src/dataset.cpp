// dataset.cpp - CSV/metadata writers
#include "dickesim/dataset.hpp"

#include "dickesim/version.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace dicke {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw NumericalError("Table '" + name + "': row width " + std::to_string(row.size()) +
                             " != " + std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += csv_escape(columns[c].name);
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            if (std::holds_alternative<double>(row[c]))
                out += format_double(std::get<double>(row[c]));
            else
                out += csv_escape(std::get<std::string>(row[c]));
        }
        out += '\n';
    }
    return out;
}

std::string frame_to_csv(const HusimiFrame& frame) {
    // first row: corner label then the Re(alpha) axis; one row per Im(alpha)
    std::string out = "im_alpha_over_re_alpha";
    for (Eigen::Index j = 0; j < frame.re_alpha.size(); ++j) {
        out += ',';
        out += format_double(frame.re_alpha(j));
    }
    out += '\n';
    for (Eigen::Index i = 0; i < frame.im_alpha.size(); ++i) {
        out += format_double(frame.im_alpha(i));
        for (Eigen::Index j = 0; j < frame.re_alpha.size(); ++j) {
            out += ',';
            out += format_double(frame.values(i, j));
        }
        out += '\n';
    }
    return out;
}

const Table& Dataset::table(const std::string& tname) const {
    for (const Table& t : tables)
        if (t.name == tname) return t;
    throw NumericalError("Dataset has no table '" + tname + "'");
}

nlohmann::ordered_json Dataset::metadata() const {
    nlohmann::ordered_json meta;
    meta["generator"] = "dickesim";
    meta["version"] = version.empty() ? kVersion : version;
    meta["wall_clock_s"] = wall_clock_s;
    meta["breach"] = any_breach;
    nlohmann::ordered_json cfg;
    to_json(cfg, config);
    meta["config"] = cfg;
    nlohmann::ordered_json tbls = nlohmann::ordered_json::array();
    for (const Table& t : tables) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["rows"] = t.rows.size();
        nlohmann::ordered_json cols = nlohmann::ordered_json::array();
        for (const Column& c : t.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
        jt["columns"] = cols;
        tbls.push_back(jt);
    }
    meta["tables"] = tbls;
    nlohmann::ordered_json frs = nlohmann::ordered_json::array();
    for (const auto& [fname, frame] : frames) {
        nlohmann::ordered_json jf;
        jf["name"] = fname;
        jf["alpha_convention"] = frame.alpha_convention;
        jf["flagged_cells"] = frame.flagged_count();
        frs.push_back(jf);
    }
    meta["frames"] = frs;
    return meta;
}

std::vector<std::string> Dataset::write(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;

    auto emit = [&](const std::string& filename, const std::string& content) {
        fs::path p = fs::path(dir) / filename;
        std::ofstream out(p, std::ios::binary);
        if (!out) throw NumericalError("cannot write '" + p.string() + "'");
        out << content;
        written.push_back(p.string());
    };

    for (const Table& t : tables) emit(t.name + ".csv", t.to_csv());
    for (const auto& [fname, frame] : frames) emit(fname + ".csv", frame_to_csv(frame));
    emit(config.name + ".meta.json", metadata().dump(2) + "\n");
    return written;
}

}  // namespace dicke
