#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "oneconn/check.hpp"
#include "oneconn/structure.hpp"

namespace oneconn {

// Left-aligned columns separated by two spaces; the first row is the header.
inline std::string format_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (row.size() > width.size())
            width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::string line;
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            line += rows[r][c];
            if (c + 1 < rows[r].size())
                line += std::string(width[c] - rows[r][c].size() + 2, ' ');
        }
        out += line + '\n';
        if (r == 0) {
            std::size_t total = 0;
            for (std::size_t c = 0; c < width.size(); ++c)
                total += width[c] + (c + 1 < width.size() ? 2 : 0);
            out += std::string(total, '-') + '\n';
        }
    }
    return out;
}

inline std::string format_checks(const std::vector<CheckResult>& checks) {
    std::vector<std::vector<std::string>> rows{{"check", "status", "detail"}};
    for (const auto& c : checks) {
        std::string detail = c.detail;
        if (c.witness)
            detail += " [witness " + format_mult(*c.witness) + "]";
        rows.push_back({c.name, std::string(to_string(c.status)), detail});
    }
    return format_table(rows);
}

inline std::string format_report(const ConsistencyReport& r) {
    std::string out = "D = " + format_mult(r.d) + ", Z = " + format_mult(r.z) + "\n\n";
    out += format_checks(r.checks);
    out += "\npredicted h0(D-Z): " + std::to_string(r.predicted_h0);
    if (r.observed_h0)
        out += " (reduced shadow: " + std::to_string(*r.observed_h0) + ")";
    out += '\n';
    if (r.chain) {
        out += "chain:";
        for (const auto& p : r.chain->pieces)
            out += " " + format_mult(p);
        out += '\n';
    }
    out += std::string("verdict: ") +
           (r.consistent() ? "consistent with Z in the fixed part of |omega_D|"
                           : "INCONSISTENT: Z cannot lie in the fixed part of |omega_D|") +
           '\n';
    out += "note: " + r.note + '\n';
    return out;
}

} // namespace oneconn
