#pragma once

// Text renderings of trial reports: CSV (one line per measured output), JSON (a field
// dump that parses back into an equal report) and a Markdown table laid out like the
// classic zero-ulp / one-ulp error-rate tables.

#include <array>
#include <charconv>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp" // nlohmann/json, vendored

#include "fmacomp/trial.hpp"

namespace fmacomp {

enum class ReportFormat { csv, json, markdown };

[[nodiscard]] inline std::optional<ReportFormat> parse_report_format(std::string_view s) noexcept {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    if (s == "md" || s == "markdown") return ReportFormat::markdown;
    return std::nullopt;
}

inline constexpr std::string_view csv_header = "algo,dist,n,seed,zero_ulp,one_ulp,two_ulp,three_plus_ulp,max_ulp,rejected";

namespace report_detail {

[[nodiscard]] inline std::string column_name(const ErrorRateReport& r, const OutputHistogram& o) {
    return o.name.empty() ? r.algorithm : r.algorithm + "." + o.name;
}

/// Percentage of the evaluated samples with three decimals; exact 0 and 100 print bare.
[[nodiscard]] inline std::string percent(std::uint64_t count, std::uint64_t total) {
    if (count == 0) {
        return "0";
    }
    if (count == total) {
        return "100";
    }
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.3f", 100.0 * static_cast<double>(count) / static_cast<double>(total));
    return buf.data();
}

} // namespace report_detail

[[nodiscard]] inline std::string render_csv(std::span<const ErrorRateReport> reports) {
    std::ostringstream os;
    os << csv_header << '\n';
    for (const auto& r : reports) {
        for (const auto& o : r.outputs) {
            const auto& h = o.histogram;
            os << report_detail::column_name(r, o) << ',' << r.distribution.label() << ',' << r.n << ',' << r.seed << ','
               << h.zero << ',' << h.one << ',' << h.two << ',' << h.three_plus << ',' << h.max_ulp << ',' << r.rejected
               << '\n';
        }
    }
    return os.str();
}

inline void to_json(nlohmann::json& j, const ErrorRateReport& r) {
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& o : r.outputs) {
        const auto& h = o.histogram;
        outputs.push_back({{"name", o.name},
                           {"zero_ulp", h.zero},
                           {"one_ulp", h.one},
                           {"two_ulp", h.two},
                           {"three_plus_ulp", h.three_plus},
                           {"max_ulp", h.max_ulp}});
    }
    j = {{"algo", r.algorithm}, {"dist", r.distribution.label()}, {"n", r.n},       {"seed", r.seed},
         {"rng", r.rng},        {"outputs", outputs},             {"rejected", r.rejected}, {"oracle_ties", r.oracle_ties}};
}

inline void from_json(const nlohmann::json& j, ErrorRateReport& r) {
    r.algorithm = j.at("algo").get<std::string>();
    r.distribution = Distribution::parse(j.at("dist").get<std::string>());
    r.n = j.at("n").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.rng = j.at("rng").get<std::string>();
    r.rejected = j.at("rejected").get<std::uint64_t>();
    r.oracle_ties = j.at("oracle_ties").get<std::uint64_t>();
    r.outputs.clear();
    for (const auto& o : j.at("outputs")) {
        OutputHistogram out;
        out.name = o.at("name").get<std::string>();
        out.histogram.zero = o.at("zero_ulp").get<std::uint64_t>();
        out.histogram.one = o.at("one_ulp").get<std::uint64_t>();
        out.histogram.two = o.at("two_ulp").get<std::uint64_t>();
        out.histogram.three_plus = o.at("three_plus_ulp").get<std::uint64_t>();
        out.histogram.max_ulp = o.at("max_ulp").get<std::uint64_t>();
        r.outputs.push_back(std::move(out));
    }
}

[[nodiscard]] inline std::string render_json(std::span<const ErrorRateReport> reports) {
    if (reports.size() == 1) {
        return nlohmann::json(reports.front()).dump(2) + "\n";
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back(r);
    }
    return arr.dump(2) + "\n";
}

[[nodiscard]] inline ErrorRateReport report_from_json(std::string_view text) {
    return nlohmann::json::parse(text).get<ErrorRateReport>();
}

/// One column per measured output; rows are percentages of evaluated samples. Rows for
/// two and three-or-more ulps appear only when some column has such errors.
[[nodiscard]] inline std::string render_markdown(std::span<const ErrorRateReport> reports) {
    struct Column {
        std::string name;
        UlpHistogram h;
        std::uint64_t rejected;
    };
    std::vector<Column> cols;
    for (const auto& r : reports) {
        for (const auto& o : r.outputs) {
            cols.push_back({report_detail::column_name(r, o), o.histogram, r.rejected});
        }
    }
    bool any_two = false;
    bool any_three = false;
    for (const auto& c : cols) {
        any_two = any_two || c.h.two != 0;
        any_three = any_three || c.h.three_plus != 0;
    }

    std::ostringstream os;
    if (!reports.empty()) {
        const auto& r = reports.front();
        os << "Error rate (%) with x ~ " << r.distribution.label() << ", n = " << r.n << ", seed = " << r.seed
           << ", rng = " << r.rng << "\n\n";
    }
    os << "| |";
    for (const auto& c : cols) os << ' ' << c.name << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < cols.size(); ++i) os << "---|";
    os << '\n';
    const auto row = [&](std::string_view label, auto value) {
        os << "| " << label << " |";
        for (const auto& c : cols) os << ' ' << value(c) << " |";
        os << '\n';
    };
    row("Zero ulp", [](const Column& c) { return report_detail::percent(c.h.zero, c.h.total()); });
    row("One ulp", [](const Column& c) { return report_detail::percent(c.h.one, c.h.total()); });
    if (any_two) row("Two ulp", [](const Column& c) { return report_detail::percent(c.h.two, c.h.total()); });
    if (any_three) row("Three+ ulp", [](const Column& c) { return report_detail::percent(c.h.three_plus, c.h.total()); });
    row("Max ulp", [](const Column& c) { return std::to_string(c.h.max_ulp); });
    row("Rejected", [](const Column& c) { return std::to_string(c.rejected); });
    return os.str();
}

[[nodiscard]] inline std::string render_report(std::span<const ErrorRateReport> reports, ReportFormat format) {
    switch (format) {
    case ReportFormat::csv: return render_csv(reports);
    case ReportFormat::json: return render_json(reports);
    case ReportFormat::markdown: return render_markdown(reports);
    }
    return {};
}

[[nodiscard]] inline std::string render_report(const ErrorRateReport& report, ReportFormat format) {
    return render_report(std::span<const ErrorRateReport>(&report, 1), format);
}

} // namespace fmacomp
