#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "io_util.hpp"
#include "panel.hpp"

namespace panelar {

enum class PanelCsvFormat { LongCsv, WideCsv };

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline bool parse_int(std::string_view s, std::int64_t& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

struct CsvLine {
    std::size_t number = 0;  // 1-based position in the file
    std::vector<std::string_view> fields;
};

// Splits into data lines, dropping blank lines and an optional header
// (detected by a non-numeric first field).
inline std::vector<CsvLine> csv_lines(const std::string& content) {
    std::vector<CsvLine> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool first_content_line = true;
    while (pos <= content.size()) {
        const std::size_t nl = content.find('\n', pos);
        const std::size_t end = (nl == std::string::npos) ? content.size() : nl;
        std::string_view line(content.data() + pos, end - pos);
        ++line_no;
        pos = end + 1;
        if (trim(line).empty()) {
            if (nl == std::string::npos) break;
            continue;
        }
        auto fields = split_fields(line);
        if (first_content_line) {
            first_content_line = false;
            double probe;
            if (!parse_double(fields.front(), probe)) {
                if (nl == std::string::npos) break;
                continue;  // header row
            }
        }
        out.push_back({line_no, std::move(fields)});
        if (nl == std::string::npos) break;
    }
    return out;
}

}  // namespace detail

// Reads a balanced panel. Long format: columns i (1-based section), t, y.
// Wide format: one row per section, T+1 values with the t=0 start first.
// If every long-format section starts at t=1, a zero start column is
// prepended and a warning recorded; any other gap is rejected.
inline PanelData ingest_panel(const std::string& path, PanelCsvFormat format) {
    const std::string content = read_file(path);
    const std::vector<detail::CsvLine> lines = detail::csv_lines(content);
    if (lines.empty()) throw MalformedRow(path + ": no data rows");

    PanelData panel;

    if (format == PanelCsvFormat::WideCsv) {
        const std::size_t width = lines.front().fields.size();
        if (width < 2)
            throw MalformedRow(path + " line " + std::to_string(lines.front().number) +
                               ": wide rows need at least 2 values");
        panel.n = static_cast<std::int64_t>(lines.size());
        panel.t_len = static_cast<std::int64_t>(width) - 1;
        panel.y.reserve(lines.size() * width);
        for (const auto& line : lines) {
            if (line.fields.size() != width)
                throw UnbalancedPanel(path + " line " + std::to_string(line.number) + ": expected " +
                                      std::to_string(width) + " values, got " +
                                      std::to_string(line.fields.size()));
            for (const auto& field : line.fields) {
                double v;
                if (!detail::parse_double(field, v))
                    throw MalformedRow(path + " line " + std::to_string(line.number) +
                                       ": non-numeric value '" + std::string(field) + "'");
                panel.y.push_back(v);
            }
            if (panel.y[panel.y.size() - width] != 0.0)
                throw NonzeroInitial(path + " line " + std::to_string(line.number) +
                                     ": series must start at 0");
        }
        panel.validate();
        return panel;
    }

    struct Obs {
        std::int64_t t;
        double y;
        std::size_t line;
    };
    std::map<std::int64_t, std::vector<Obs>> sections;
    for (const auto& line : lines) {
        if (line.fields.size() != 3)
            throw MalformedRow(path + " line " + std::to_string(line.number) +
                               ": expected 3 fields i,t,y, got " + std::to_string(line.fields.size()));
        std::int64_t i, t;
        double y;
        if (!detail::parse_int(line.fields[0], i) || i < 1)
            throw MalformedRow(path + " line " + std::to_string(line.number) +
                               ": section index must be an integer >= 1");
        if (!detail::parse_int(line.fields[1], t) || t < 0)
            throw MalformedRow(path + " line " + std::to_string(line.number) +
                               ": time index must be an integer >= 0");
        if (!detail::parse_double(line.fields[2], y))
            throw MalformedRow(path + " line " + std::to_string(line.number) + ": non-numeric y value");
        sections[i].push_back({t, y, line.number});
    }

    const std::int64_t n = static_cast<std::int64_t>(sections.size());
    if (sections.begin()->first != 1 || sections.rbegin()->first != n)
        throw UnbalancedPanel(path + ": section indices must be contiguous 1.." + std::to_string(n));

    // All sections must share one gapless t range, starting at 0 or at 1.
    std::int64_t t_min = -1, t_max = -1;
    for (auto& [i, obs] : sections) {
        std::sort(obs.begin(), obs.end(), [](const Obs& a, const Obs& b) { return a.t < b.t; });
        for (std::size_t k = 1; k < obs.size(); ++k) {
            if (obs[k].t == obs[k - 1].t)
                throw MalformedRow(path + " line " + std::to_string(obs[k].line) +
                                   ": duplicate observation for section " + std::to_string(i) +
                                   ", t=" + std::to_string(obs[k].t));
            if (obs[k].t != obs[k - 1].t + 1)
                throw UnbalancedPanel(path + ": section " + std::to_string(i) + " has a gap between t=" +
                                      std::to_string(obs[k - 1].t) + " and t=" + std::to_string(obs[k].t));
        }
        if (t_min < 0) {
            t_min = obs.front().t;
            t_max = obs.back().t;
        } else if (obs.front().t != t_min || obs.back().t != t_max) {
            throw UnbalancedPanel(path + ": section " + std::to_string(i) + " covers t=" +
                                  std::to_string(obs.front().t) + ".." + std::to_string(obs.back().t) +
                                  " while section 1 covers t=" + std::to_string(t_min) + ".." +
                                  std::to_string(t_max));
        }
    }
    if (t_min > 1) throw UnbalancedPanel(path + ": t range must start at 0 or 1, starts at " + std::to_string(t_min));
    const bool prepend_zero = (t_min == 1);
    if (t_max < 1) throw UnbalancedPanel(path + ": panel needs at least one observation past t=0");

    panel.n = n;
    panel.t_len = t_max;  // t range 0..t_max, or 1..t_max with a zero start prepended
    panel.y.assign(static_cast<std::size_t>(panel.n) * static_cast<std::size_t>(panel.t_len + 1), 0.0);
    for (const auto& [i, obs] : sections) {
        for (const auto& o : obs) {
            if (!prepend_zero && o.t == 0 && o.y != 0.0)
                throw NonzeroInitial(path + " line " + std::to_string(o.line) + ": y at t=0 must be 0, got " +
                                     format_double(o.y));
            panel.at(i - 1, o.t) = o.y;
        }
    }
    if (prepend_zero)
        panel.warnings.push_back("t=0 column absent; zero start values prepended");
    panel.validate();
    return panel;
}

inline std::string panel_to_csv(const PanelData& panel, PanelCsvFormat format) {
    std::string out;
    if (format == PanelCsvFormat::LongCsv) {
        out += "i,t,y\n";
        for (std::int64_t i = 0; i < panel.n; ++i)
            for (std::int64_t t = 0; t <= panel.t_len; ++t)
                out += std::to_string(i + 1) + "," + std::to_string(t) + "," +
                       format_double(panel.at(i, t)) + "\n";
    } else {
        for (std::int64_t i = 0; i < panel.n; ++i) {
            for (std::int64_t t = 0; t <= panel.t_len; ++t) {
                if (t > 0) out += ',';
                out += format_double(panel.at(i, t));
            }
            out += '\n';
        }
    }
    return out;
}

inline void write_panel_csv(const PanelData& panel, const std::string& path, PanelCsvFormat format) {
    write_file_atomic(path, panel_to_csv(panel, format));
}

}  // namespace panelar
