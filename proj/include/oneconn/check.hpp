#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "oneconn/config.hpp"

namespace oneconn {

// not_applicable is distinct from fail: a hypothesis that does not hold is not a refuted claim.
enum class CheckStatus { pass, fail, not_applicable };

inline std::string_view to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "not-applicable";
    }
    return "?";
}

inline CheckStatus parse_check_status(std::string_view s) {
    if (s == "pass") return CheckStatus::pass;
    if (s == "fail") return CheckStatus::fail;
    if (s == "not-applicable") return CheckStatus::not_applicable;
    throw InputError("unknown check status '" + std::string(s) + "'");
}

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
    std::optional<Multiplicity> witness;
    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

// "(1,0,2)"
inline std::string format_mult(std::span<const Int> m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(m[i]);
    }
    return s + ")";
}

} // namespace oneconn
