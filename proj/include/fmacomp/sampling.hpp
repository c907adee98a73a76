#pragma once

// Reproducible input streams for accuracy trials.
//
// The generator is counter-based: word k of a stream is the k-th output of a
// SplitMix64 generator seeded with `seed`, computed directly from k. Sample i owns
// words [4i, 4i+4), so any index range can be produced independently of the others
// and chunked evaluation sees exactly the serial stream.
//
// Coordinate j of a sample draws from words 4i+2j and 4i+2j+1. For uniform and
// log-uniform samples the second word only replaces a draw that landed exactly on zero.
// Normal coordinates each take the cosine branch of their own Box-Muller draw. Using
// both branches of one draw would give f^2 + g^2 = R^2 up to rounding, which correlates
// the two coordinates at the ulp level and skews the Givens error rates.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "fmacomp/errors.hpp"

namespace fmacomp {

inline constexpr std::string_view rng_name = "splitmix64";

[[nodiscard]] constexpr std::uint64_t splitmix64_word(std::uint64_t seed, std::uint64_t k) noexcept {
    std::uint64_t z = seed + (k + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Top 53 bits as a multiple of 2^-53 in [0, 1).
[[nodiscard]] constexpr double unit_interval(std::uint64_t word) noexcept {
    return static_cast<double>(word >> 11) * 0x1p-53;
}

enum class DistributionKind { uniform, normal, log_uniform };

/// uniform: [a, b); normal: mean a, standard deviation b; log_uniform: m * 2^e with
/// m uniform in [1, 2) and integer e uniform in [a, b].
struct Distribution {
    DistributionKind kind = DistributionKind::uniform;
    double a = 0.0;
    double b = 1.0;

    static Distribution uniform(double lo, double hi) { return checked({DistributionKind::uniform, lo, hi}); }
    static Distribution normal(double mean, double stddev) { return checked({DistributionKind::normal, mean, stddev}); }
    static Distribution log_uniform(int min_exp, int max_exp) {
        return checked({DistributionKind::log_uniform, static_cast<double>(min_exp), static_cast<double>(max_exp)});
    }

    static Distribution checked(Distribution d) {
        if (!std::isfinite(d.a) || !std::isfinite(d.b)) {
            throw config_error("distribution parameters must be finite");
        }
        switch (d.kind) {
        case DistributionKind::uniform:
            if (!(d.a < d.b)) {
                throw config_error("uniform distribution requires lo < hi");
            }
            break;
        case DistributionKind::normal:
            if (!(d.b > 0.0)) {
                throw config_error("normal distribution requires stddev > 0");
            }
            break;
        case DistributionKind::log_uniform:
            if (d.a != std::trunc(d.a) || d.b != std::trunc(d.b) || d.a > d.b || d.a < -1074 || d.b > 1023) {
                throw config_error("log_uniform requires integer exponents min <= max within [-1074, 1023]");
            }
            break;
        }
        return d;
    }

    /// Canonical text form, e.g. "uniform:0.5:1"; accepted back by parse().
    [[nodiscard]] std::string label() const {
        const auto num = [](double v) {
            std::array<char, 32> buf{};
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
            return std::string(buf.data(), res.ptr);
        };
        const char* name = kind == DistributionKind::uniform ? "uniform" : kind == DistributionKind::normal ? "normal" : "log_uniform";
        return std::string(name) + ":" + num(a) + ":" + num(b);
    }

    /// "uniform:LO,HI", "normal:MEAN,SD" or "log_uniform:EMIN,EMAX"; ':' also separates
    /// parameters.
    static Distribution parse(std::string_view text) {
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) {
            throw config_error("distribution must look like kind:p1,p2");
        }
        const std::string_view kind = text.substr(0, colon);
        std::string_view rest = text.substr(colon + 1);
        const auto sep = rest.find_first_of(",:");
        if (sep == std::string_view::npos) {
            throw config_error("distribution needs two parameters");
        }
        const double p1 = parse_number(rest.substr(0, sep));
        const double p2 = parse_number(rest.substr(sep + 1));
        if (kind == "uniform") {
            return uniform(p1, p2);
        }
        if (kind == "normal") {
            return normal(p1, p2);
        }
        if (kind == "log_uniform") {
            return checked({DistributionKind::log_uniform, p1, p2});
        }
        throw config_error("unknown distribution kind '" + std::string(kind) + "'");
    }

    friend bool operator==(const Distribution&, const Distribution&) = default;

  private:
    static double parse_number(std::string_view s) {
        const std::string owned(s);
        char* end = nullptr;
        const double v = std::strtod(owned.c_str(), &end);
        if (owned.empty() || end != owned.c_str() + owned.size()) {
            throw config_error("cannot parse distribution parameter '" + owned + "'");
        }
        return v;
    }
};

/// Random-access view of the sample stream for (distribution, seed).
class SampleStream {
  public:
    static constexpr std::uint64_t words_per_sample = 4;

    SampleStream(Distribution dist, std::uint64_t seed) : dist_(Distribution::checked(dist)), seed_(seed) {}

    /// Coordinate `coord` (0 or 1) of sample `index`.
    [[nodiscard]] double at(std::uint64_t index, unsigned coord) const {
        const std::uint64_t base = index * words_per_sample;
        switch (dist_.kind) {
        case DistributionKind::uniform:
            return uniform_at(base + 2 * coord);
        case DistributionKind::normal:
            return normal_at(base + 2 * coord);
        case DistributionKind::log_uniform:
            return log_uniform_at(base + 2 * coord);
        }
        return 0.0;
    }

    [[nodiscard]] std::array<double, 2> pair_at(std::uint64_t index) const { return {at(index, 0), at(index, 1)}; }

    [[nodiscard]] const Distribution& distribution() const noexcept { return dist_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  private:
    [[nodiscard]] double uniform_draw(std::uint64_t word) const {
        const double lo = dist_.a;
        const double hi = dist_.b;
        double x = lo + (hi - lo) * unit_interval(splitmix64_word(seed_, word));
        if (x >= hi) {
            x = std::nextafter(hi, lo);
        }
        return x;
    }

    [[nodiscard]] double uniform_at(std::uint64_t word) const {
        const double x = uniform_draw(word);
        return x != 0.0 ? x : uniform_draw(word + 1);
    }

    [[nodiscard]] double normal_at(std::uint64_t word) const {
        const double u1 = static_cast<double>((splitmix64_word(seed_, word) >> 11) + 1) * 0x1p-53; // (0, 1]
        const double u2 = unit_interval(splitmix64_word(seed_, word + 1));
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double z = radius * std::cos(2.0 * std::numbers::pi * u2);
        return dist_.a + dist_.b * z;
    }

    [[nodiscard]] double log_uniform_at(std::uint64_t word) const {
        const auto lo = static_cast<std::int64_t>(dist_.a);
        const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(dist_.b) - lo + 1);
        const std::uint64_t e_word = splitmix64_word(seed_, word);
        const auto e = lo + static_cast<std::int64_t>(e_word % span);
        const double m = 1.0 + unit_interval(splitmix64_word(seed_, word + 1));
        return std::ldexp(m, static_cast<int>(e));
    }

    Distribution dist_;
    std::uint64_t seed_;
};

/// The first coordinate of n consecutive samples.
[[nodiscard]] inline std::vector<double> generate_samples(const Distribution& dist, std::uint64_t n, std::uint64_t seed) {
    const SampleStream stream(dist, seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        out.push_back(stream.at(i, 0));
    }
    return out;
}

} // namespace fmacomp
