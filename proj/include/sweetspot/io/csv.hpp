#pragma once

// Locale-independent CSV with a leading provenance comment:
//   # sweetspot <version> config_hash=<16 hex> seed=<n>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#ifndef SWEETSPOT_VERSION
#define SWEETSPOT_VERSION "0.1.0"
#endif

namespace sweetspot::io {

inline constexpr const char* kVersion = SWEETSPOT_VERSION;
inline constexpr int kSignificantDigits = 12;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t fnv1a(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

inline std::string format_double(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kSignificantDigits);
    if (r.ec != std::errc{}) throw FormatError("format_double: conversion failed");
    return {buf, r.ptr};
}

inline double parse_double(std::string_view s)
{
    double v = 0.0;
    const auto* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    const auto r = std::from_chars(first, s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || s.empty()) {
        throw FormatError("not a number: '" + std::string(s) + "'");
    }
    return v;
}

struct Provenance {
    std::string config_hash = hex64(0);
    std::uint64_t seed = 0;

    [[nodiscard]] std::string header_line() const
    {
        return std::string("# sweetspot ") + kVersion + " config_hash=" + config_hash + " seed=" + std::to_string(seed);
    }
};

struct CsvTable {
    std::vector<std::string> comments; // without the leading '#'
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(std::string_view name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) return i;
        }
        throw FormatError("missing column '" + std::string(name) + "'");
    }

    /// Numeric column; data rows are numbered from 1 in messages.
    [[nodiscard]] std::vector<double> numbers(std::string_view name) const
    {
        const std::size_t c = column(name);
        std::vector<double> out;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            try {
                out.push_back(parse_double(rows[r].at(c)));
            } catch (const FormatError& e) {
                throw FormatError("row " + std::to_string(r + 1) + ", column '" + std::string(name) + "': " + e.what());
            }
        }
        return out;
    }
};

inline std::vector<std::string> split_fields(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) return out;
        start = comma + 1;
    }
}

inline CsvTable read_csv(std::istream& in)
{
    CsvTable t;
    std::string line;
    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            t.comments.push_back(line.substr(1));
            continue;
        }
        auto fields = split_fields(line);
        if (t.columns.empty()) {
            t.columns = std::move(fields);
            continue;
        }
        ++data_row;
        if (fields.size() != t.columns.size()) {
            throw FormatError("row " + std::to_string(data_row) + ": expected " + std::to_string(t.columns.size()) +
                              " fields, found " + std::to_string(fields.size()));
        }
        t.rows.push_back(std::move(fields));
    }
    if (t.columns.empty()) throw FormatError("CSV has no header row");
    return t;
}

inline CsvTable read_csv_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_csv(in);
}

inline void write_csv(std::ostream& out, const Provenance& prov, const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows,
                      const std::vector<std::string>& extra_comments = {})
{
    out << prov.header_line() << '\n';
    for (const auto& c : extra_comments) out << "# " << c << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

inline void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << content;
    out.close();
    if (!out) throw FormatError("failed writing '" + path + "'");
}

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace sweetspot::io
