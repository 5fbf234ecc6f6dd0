// Copyright 2026 The vqderiv Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Fixed-schema CSV tables. Reals are written in scientific notation with
 * 12 significant digits; lists of reals are ';'-joined inside one cell.
 */
#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "vqderiv/error.hpp"

namespace vqderiv::bench {

using RealList = std::vector<double>;
using Cell = std::variant<std::string, double, std::int64_t, RealList>;

inline std::string formatReal(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v == 0.0 ? 0.0 : v);
    return buf;
}

inline double parseReal(const std::string &s) {
    if (s == "nan") {
        return std::nan("");
    }
    if (s == "inf") {
        return INFINITY;
    }
    if (s == "-inf") {
        return -INFINITY;
    }
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || std::isspace(static_cast<unsigned char>(s[0])) ||
        end != s.c_str() + s.size()) {
        throw Error(ErrorKind::Parse, "not a number: '" + s + "'");
    }
    return v;
}

inline std::string formatCell(const Cell &c) {
    struct {
        std::string operator()(const std::string &s) const {
            if (s.find_first_of(",\n\"") != std::string::npos) {
                throw Error(ErrorKind::InvalidArgument,
                            "CSV text cell contains a separator: " + s);
            }
            return s;
        }
        std::string operator()(double v) const { return formatReal(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const RealList &l) const {
            std::string out;
            for (std::size_t i = 0; i < l.size(); ++i) {
                out += (i != 0 ? ";" : "") + formatReal(l[i]);
            }
            return out;
        }
    } visitor;
    return std::visit(visitor, c);
}

class Table {
  public:
    explicit Table(std::vector<std::string> columns)
        : columns_(std::move(columns)) {}

    [[nodiscard]] const std::vector<std::string> &columns() const {
        return columns_;
    }
    [[nodiscard]] std::size_t numRows() const { return rows_.size(); }

    void addRow(std::vector<Cell> row) {
        if (row.size() != columns_.size()) {
            throw Error(ErrorKind::Size, "row has " + std::to_string(row.size()) +
                                             " cells, schema has " +
                                             std::to_string(columns_.size()));
        }
        std::vector<std::string> text;
        text.reserve(row.size());
        for (const auto &c : row) {
            text.push_back(formatCell(c));
        }
        rows_.push_back(std::move(text));
    }

    void addTextRow(std::vector<std::string> row) {
        if (row.size() != columns_.size()) {
            throw Error(ErrorKind::Size, "row width does not match schema");
        }
        rows_.push_back(std::move(row));
    }

    [[nodiscard]] std::size_t column(const std::string &name) const {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (columns_[i] == name) {
                return i;
            }
        }
        throw Error(ErrorKind::InvalidArgument, "no column '" + name + "'");
    }

    [[nodiscard]] const std::string &text(std::size_t row,
                                          const std::string &name) const {
        return rows_.at(row).at(column(name));
    }
    [[nodiscard]] double real(std::size_t row, const std::string &name) const {
        return parseReal(text(row, name));
    }
    [[nodiscard]] std::int64_t integer(std::size_t row,
                                       const std::string &name) const {
        return std::stoll(text(row, name));
    }
    [[nodiscard]] RealList list(std::size_t row, const std::string &name) const {
        RealList out;
        std::stringstream ss(text(row, name));
        std::string item;
        while (std::getline(ss, item, ';')) {
            out.push_back(parseReal(item));
        }
        return out;
    }

    [[nodiscard]] std::string str() const {
        std::string out;
        auto line = [&](const std::vector<std::string> &cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out += (i != 0 ? "," : "") + cells[i];
            }
            out += '\n';
        };
        line(columns_);
        for (const auto &r : rows_) {
            line(r);
        }
        return out;
    }

    friend bool operator==(const Table &, const Table &) = default;

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

inline Table parseCsv(const std::string &text) {
    std::stringstream in(text);
    std::string line;
    auto split = [](const std::string &l) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = l.find(',', start);
            cells.push_back(l.substr(start, comma - start));
            if (comma == std::string::npos) {
                return cells;
            }
            start = comma + 1;
        }
    };
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::Parse, "empty CSV");
    }
    Table t(split(line));
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split(line);
        if (cells.size() != t.columns().size()) {
            throw Error(ErrorKind::Parse, "CSV row width does not match header");
        }
        t.addTextRow(std::move(cells));
    }
    return t;
}

inline Table readCsvFile(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parseCsv(ss.str());
}

inline void writeTextFile(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw Error(ErrorKind::Io, "write to '" + path + "' failed");
    }
}

} // namespace vqderiv::bench
