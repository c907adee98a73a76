#pragma once

// Single-input inspection: every applicable kernel next to the oracle, with bit
// patterns and ulp distances.

#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fmacomp/fast_rsqrt.hpp"
#include "fmacomp/givens.hpp"
#include "fmacomp/oracle.hpp"
#include "fmacomp/rhypot.hpp"
#include "fmacomp/rsqrt.hpp"

namespace fmacomp {

/// Decimal or hexadecimal-significand literal (as accepted by strtod); the whole
/// string must be consumed.
[[nodiscard]] inline std::optional<double> parse_float(std::string_view text) {
    const std::string owned(text);
    if (owned.empty()) {
        return std::nullopt;
    }
    char* end = nullptr;
    const double v = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size()) {
        return std::nullopt;
    }
    return v;
}

/// Shortest round-trip decimal.
[[nodiscard]] inline std::string format_decimal(double x) {
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), res.ptr};
}

/// Hexadecimal significand, e.g. 0x1.fffffffffffffp-1.
[[nodiscard]] inline std::string format_hex(double x) {
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::hex);
    std::string s(buf.data(), res.ptr);
    if (!std::isfinite(x)) {
        return s;
    }
    const std::size_t at = s.front() == '-' ? 1 : 0;
    s.insert(at, "0x");
    return s;
}

[[nodiscard]] inline std::string format_bits(double x) {
    std::array<char, 24> buf{};
    std::snprintf(buf.data(), buf.size(), "0x%016llx", static_cast<unsigned long long>(to_bits(x)));
    return buf.data();
}

struct InspectionEntry {
    std::string algorithm;
    std::vector<double> outputs;          // empty when the kernel raised
    std::vector<std::uint64_t> ulp_error; // per output, against the oracle
    std::string error;                    // kernel error message, if any
    bool domain_error = false;
};

struct InspectionRecord {
    std::vector<double> inputs;
    std::vector<std::string> output_labels;
    std::vector<double> oracle;
    std::string oracle_error;
    bool oracle_tie = false;
    std::vector<InspectionEntry> entries;

    [[nodiscard]] bool any_domain_error() const noexcept {
        if (!oracle_error.empty()) {
            return true;
        }
        for (const auto& e : entries) {
            if (e.domain_error) {
                return true;
            }
        }
        return false;
    }
};

namespace inspect_detail {

template <class Fn>
InspectionEntry run(std::string name, const std::vector<double>& oracle, Fn&& fn) {
    InspectionEntry e;
    e.algorithm = std::move(name);
    try {
        e.outputs = fn();
        if (!oracle.empty()) {
            for (std::size_t i = 0; i < e.outputs.size(); ++i) {
                const std::int64_t a = ordered_int(e.outputs[i]);
                const std::int64_t b = ordered_int(oracle[i]);
                e.ulp_error.push_back(a > b ? static_cast<std::uint64_t>(a - b) : static_cast<std::uint64_t>(b - a));
            }
        }
    } catch (const fmacomp::domain_error& err) {
        e.error = err.what();
        e.domain_error = true;
    } catch (const fmacomp::range_error& err) {
        e.error = err.what();
    }
    return e;
}

} // namespace inspect_detail

/// Reciprocal square root of x through every rsqrt kernel. The three sqrt-based
/// variants run through the power-of-4 wrapper so any positive x is accepted; the
/// square-root-free kernels only accept [2^-510, 2^510].
[[nodiscard]] inline InspectionRecord inspect(double x) {
    InspectionRecord rec;
    rec.inputs = {x};
    rec.output_labels = {"y"};
    try {
        const OracleResult ref = rn_rsqrt_certified(x);
        rec.oracle = {ref.value};
        rec.oracle_tie = ref.certificate.tie;
    } catch (const std::exception& err) {
        rec.oracle_error = err.what();
    }
    using V = std::vector<double>;
    rec.entries.push_back(inspect_detail::run("rsqrt_naive", rec.oracle, [&] { return V{rsqrt_full_range(x, RsqrtVariant::naive)}; }));
    rec.entries.push_back(
        inspect_detail::run("rsqrt_compensated", rec.oracle, [&] { return V{rsqrt_full_range(x, RsqrtVariant::compensated)}; }));
    rec.entries.push_back(
        inspect_detail::run("rsqrt_modified", rec.oracle, [&] { return V{rsqrt_full_range(x, RsqrtVariant::modified)}; }));
    rec.entries.push_back(inspect_detail::run("rcpsqrt331d", rec.oracle, [&] { return V{rcpsqrt331d(x)}; }));
    rec.entries.push_back(inspect_detail::run("rcpsqrt331d_modified", rec.oracle, [&] { return V{rcpsqrt331d_modified(x)}; }));
    return rec;
}

/// Givens rotation of (f, g) through both DLARTG kernels, plus the reciprocal
/// hypotenuse kernels reported against their own oracle.
[[nodiscard]] inline std::vector<InspectionRecord> inspect(double f, double g) {
    using V = std::vector<double>;
    InspectionRecord hyp;
    hyp.inputs = {f, g};
    hyp.output_labels = {"rho"};
    try {
        const OracleResult ref = rn_rhypot_certified(f, g);
        hyp.oracle = {ref.value};
        hyp.oracle_tie = ref.certificate.tie;
    } catch (const std::exception& err) {
        hyp.oracle_error = err.what();
    }
    hyp.entries.push_back(inspect_detail::run("rhypot_naive", hyp.oracle, [&] { return V{rhypot_naive(f, g)}; }));
    hyp.entries.push_back(inspect_detail::run("rhypot_compensated", hyp.oracle, [&] { return V{rhypot_compensated(f, g)}; }));

    InspectionRecord rot;
    rot.inputs = {f, g};
    rot.output_labels = {"c", "s"};
    try {
        const GivensOracleResult ref = rn_givens_certified(f, g);
        rot.oracle = {ref.rotation.c, ref.rotation.s};
        rot.oracle_tie = ref.any_tie();
    } catch (const std::exception& err) {
        rot.oracle_error = err.what();
    }
    rot.entries.push_back(inspect_detail::run("dlartg_naive", rot.oracle, [&] {
        const GivensRotation r = dlartg_naive(f, g);
        return V{r.c, r.s};
    }));
    rot.entries.push_back(inspect_detail::run("dlartg_compensated", rot.oracle, [&] {
        const GivensRotation r = dlartg_compensated(f, g);
        return V{r.c, r.s};
    }));
    return {hyp, rot};
}

[[nodiscard]] inline std::string describe(double v) { return format_decimal(v) + " (" + format_hex(v) + ", " + format_bits(v) + ")"; }

[[nodiscard]] inline std::string render_inspection(const InspectionRecord& rec) {
    static constexpr std::array<std::string_view, 2> single = {"x"};
    static constexpr std::array<std::string_view, 2> pair = {"f", "g"};
    const auto& names = rec.inputs.size() == 1 ? single : pair;

    std::ostringstream os;
    for (std::size_t i = 0; i < rec.inputs.size(); ++i) {
        os << names[i] << " = " << describe(rec.inputs[i]) << '\n';
    }
    for (std::size_t i = 0; i < rec.output_labels.size(); ++i) {
        os << "  oracle " << rec.output_labels[i] << " = ";
        if (rec.oracle_error.empty()) {
            os << describe(rec.oracle[i]);
        } else {
            os << "error: " << rec.oracle_error;
        }
        os << '\n';
    }
    if (rec.oracle_tie) {
        os << "  oracle: exact midpoint encountered, resolved ties-to-even\n";
    }
    for (const auto& e : rec.entries) {
        if (!e.error.empty()) {
            os << "  " << e.algorithm << ": error: " << e.error << '\n';
            continue;
        }
        for (std::size_t i = 0; i < e.outputs.size(); ++i) {
            os << "  " << e.algorithm << ' ' << rec.output_labels[i] << " = " << describe(e.outputs[i]);
            if (i < e.ulp_error.size()) {
                os << "  [" << e.ulp_error[i] << " ulp]";
            }
            os << '\n';
        }
    }
    return os.str();
}

} // namespace fmacomp
