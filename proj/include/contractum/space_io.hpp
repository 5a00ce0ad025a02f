#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "contractum/error.hpp"
#include "contractum/metric_spaces.hpp"
#include "contractum/numeric_text.hpp"

namespace contractum {

namespace detail {

using MaybeTable = std::vector<std::vector<std::optional<double>>>;

/// Expands full, lower-triangular or upper-triangular input into a square
/// table, mirroring missing entries from their transposed counterpart.
inline std::vector<std::vector<double>> complete_table(const std::vector<std::string>& labels, MaybeTable rows) {
    const std::size_t n = labels.size();
    if (rows.size() != n)
        throw malformed_input("distance table has " + std::to_string(rows.size()) + " rows for " + std::to_string(n) +
                              " points");

    bool lower = true, lower_strict = true, upper = true, upper_strict = true, square = true;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t len = rows[i].size();
        lower = lower && len == i + 1;
        lower_strict = lower_strict && len == i;
        upper = upper && len == n - i;
        upper_strict = upper_strict && len == n - i - 1;
        square = square && len == n;
    }

    MaybeTable full(n, std::vector<std::optional<double>>(n));
    if (square) {
        full = std::move(rows);
    } else if (lower || lower_strict) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                full[i][j] = rows[i][j];
    } else if (upper || upper_strict) {
        const std::size_t offset = upper ? 0 : 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < rows[i].size(); ++k)
                full[i][i + offset + k] = rows[i][k];
    } else {
        throw malformed_input("distance table is neither square nor triangular");
    }

    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (full[i][j])
                out[i][j] = *full[i][j];
            else if (i == j)
                out[i][j] = 0.0;
            else if (full[j][i])
                out[i][j] = *full[j][i];
            else
                throw malformed_input("missing distance for pair (" + labels[i] + ", " + labels[j] + ")");
        }
    return out;
}

inline std::optional<double> json_real(const nlohmann::json& cell, const std::string& where) {
    if (cell.is_null())
        return std::nullopt;
    if (cell.is_number())
        return cell.get<double>();
    if (cell.is_string()) {
        auto text = cell.get<std::string>();
        if (detail::trim(text).empty())
            return std::nullopt;
        return parse_real(text, where);
    }
    throw malformed_input("unsupported JSON value at " + where);
}

inline std::string json_label(const nlohmann::json& cell) {
    if (cell.is_string())
        return cell.get<std::string>();
    if (cell.is_number())
        return format_real(cell.get<double>());
    throw malformed_input("point labels must be strings or numbers");
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    cells.push_back(cell);
    for (auto& c : cells)
        c = std::string(trim(c));
    return cells;
}

} // namespace detail

/// { "points": [labels], "distances": [[row], ...] }; rows may be triangular
/// and entries may be numbers, numeric strings ("1/25", "0,16") or null.
inline FiniteSpace space_from_json(const nlohmann::json& doc, double tolerance = default_distance_tolerance) {
    if (!doc.is_object() || !doc.contains("points") || !doc.contains("distances"))
        throw malformed_input("space JSON needs 'points' and 'distances'");
    std::vector<std::string> labels;
    for (const auto& p : doc.at("points"))
        labels.push_back(detail::json_label(p));
    detail::MaybeTable rows;
    std::size_t r = 0;
    for (const auto& row : doc.at("distances")) {
        if (!row.is_array())
            throw malformed_input("distance rows must be arrays");
        std::vector<std::optional<double>> parsed;
        std::size_t c = 0;
        for (const auto& cell : row)
            parsed.push_back(detail::json_real(cell, "distances[" + std::to_string(r) + "][" + std::to_string(c++) + "]"));
        rows.push_back(std::move(parsed));
        ++r;
    }
    if (doc.contains("tolerance"))
        tolerance = doc.at("tolerance").get<double>();
    return FiniteSpace(labels, detail::complete_table(labels, std::move(rows)), tolerance);
}

/// Header row of labels, then one row per point. A leading label column is
/// recognised and dropped; empty cells are mirrored.
inline FiniteSpace space_from_csv(std::istream& in, double tolerance = default_distance_tolerance) {
    std::string line;
    std::vector<std::string> labels;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty())
            continue;
        labels = detail::split_csv_line(line);
        break;
    }
    if (!labels.empty() && labels.front().empty())
        labels.erase(labels.begin());  // corner cell of a labeled matrix
    if (labels.empty())
        throw malformed_input("CSV space has no header row");

    detail::MaybeTable rows;
    std::size_t r = 0;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty())
            continue;
        auto cells = detail::split_csv_line(line);
        if (r < labels.size() && !cells.empty() && cells.front() == labels[r] &&
            (cells.size() == labels.size() + 1 || !try_parse_real(cells.front())))
            cells.erase(cells.begin());
        while (!cells.empty() && cells.back().empty() && cells.size() > labels.size())
            cells.pop_back();
        std::vector<std::optional<double>> parsed;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].empty())
                parsed.emplace_back();
            else
                parsed.push_back(parse_real(cells[c], "CSV cell (" + std::to_string(r + 2) + ", " +
                                                          std::to_string(c + 1) + ")"));
        }
        // Trailing empty cells of a triangular row are layout, not data.
        while (!parsed.empty() && !parsed.back() && parsed.size() != labels.size())
            parsed.pop_back();
        rows.push_back(std::move(parsed));
        ++r;
    }
    return FiniteSpace(labels, detail::complete_table(labels, std::move(rows)), tolerance);
}

inline FiniteSpace load_space(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw malformed_input("cannot open space file '" + path.string() + "'");
    auto ext = path.extension().string();
    if (ext == ".csv")
        return space_from_csv(in);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw malformed_input("invalid JSON in '" + path.string() + "': " + e.what());
    }
    return space_from_json(doc);
}

inline nlohmann::json space_to_json(const FiniteSpace& space) {
    nlohmann::json doc;
    doc["points"] = space.labels();
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < space.size(); ++j)
            row.push_back(space(i, j));
        rows.push_back(std::move(row));
    }
    doc["distances"] = std::move(rows);
    return doc;
}

} // namespace contractum
