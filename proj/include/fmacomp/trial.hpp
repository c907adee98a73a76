#pragma once

// Accuracy trials: run kernels over a seeded sample stream and histogram their ulp
// distance from the correctly rounded oracle value. Every sample is checked against
// the oracle.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "fmacomp/fast_rsqrt.hpp"
#include "fmacomp/givens.hpp"
#include "fmacomp/oracle.hpp"
#include "fmacomp/rhypot.hpp"
#include "fmacomp/rsqrt.hpp"
#include "fmacomp/sampling.hpp"

namespace fmacomp {

enum class Algorithm {
    rsqrt_naive,
    rsqrt_compensated,
    rsqrt_modified,
    rcpsqrt331d,
    rcpsqrt331d_modified,
    rhypot_naive,
    rhypot_compensated,
    dlartg_naive,
    dlartg_compensated,
};

inline constexpr std::array all_algorithms = {
    Algorithm::rsqrt_naive,  Algorithm::rsqrt_compensated,  Algorithm::rsqrt_modified,
    Algorithm::rcpsqrt331d,  Algorithm::rcpsqrt331d_modified, Algorithm::rhypot_naive,
    Algorithm::rhypot_compensated, Algorithm::dlartg_naive, Algorithm::dlartg_compensated,
};

/// Which correctly rounded reference an algorithm is measured against.
enum class OracleKind { rsqrt, rhypot, givens };

[[nodiscard]] constexpr std::string_view algorithm_id(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::rsqrt_naive: return "rsqrt_naive";
    case Algorithm::rsqrt_compensated: return "rsqrt_compensated";
    case Algorithm::rsqrt_modified: return "rsqrt_modified";
    case Algorithm::rcpsqrt331d: return "rcpsqrt331d";
    case Algorithm::rcpsqrt331d_modified: return "rcpsqrt331d_modified";
    case Algorithm::rhypot_naive: return "rhypot_naive";
    case Algorithm::rhypot_compensated: return "rhypot_compensated";
    case Algorithm::dlartg_naive: return "dlartg_naive";
    case Algorithm::dlartg_compensated: return "dlartg_compensated";
    }
    return "unknown";
}

[[nodiscard]] inline std::optional<Algorithm> parse_algorithm(std::string_view id) noexcept {
    for (const Algorithm a : all_algorithms) {
        if (algorithm_id(a) == id) {
            return a;
        }
    }
    return std::nullopt;
}

[[nodiscard]] constexpr OracleKind oracle_kind(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::rhypot_naive:
    case Algorithm::rhypot_compensated:
        return OracleKind::rhypot;
    case Algorithm::dlartg_naive:
    case Algorithm::dlartg_compensated:
        return OracleKind::givens;
    default:
        return OracleKind::rsqrt;
    }
}

/// Inputs per sample.
[[nodiscard]] constexpr unsigned arity(Algorithm a) noexcept { return oracle_kind(a) == OracleKind::rsqrt ? 1U : 2U; }

/// Names of the measured outputs: one unnamed output, or "cos"/"sin" for rotations.
[[nodiscard]] inline std::vector<std::string> output_names(Algorithm a) {
    if (oracle_kind(a) == OracleKind::givens) {
        return {"cos", "sin"};
    }
    return {""};
}

struct TrialConfig {
    Algorithm algorithm = Algorithm::rsqrt_naive;
    Distribution distribution;
    std::uint64_t n = 1;
    std::uint64_t seed = 0;
    std::string rng = std::string(rng_name);

    void validate() const {
        Distribution::checked(distribution);
        if (n < 1) {
            throw config_error("sample count must be at least 1");
        }
        if (rng != rng_name) {
            throw config_error("unsupported generator '" + rng + "'");
        }
    }
};

/// Counts per ulp-distance bucket.
struct UlpHistogram {
    std::uint64_t zero = 0;
    std::uint64_t one = 0;
    std::uint64_t two = 0;
    std::uint64_t three_plus = 0;
    std::uint64_t max_ulp = 0;

    void add(std::uint64_t distance) noexcept {
        switch (distance) {
        case 0: ++zero; break;
        case 1: ++one; break;
        case 2: ++two; break;
        default: ++three_plus; break;
        }
        max_ulp = std::max(max_ulp, distance);
    }

    void merge(const UlpHistogram& other) noexcept {
        zero += other.zero;
        one += other.one;
        two += other.two;
        three_plus += other.three_plus;
        max_ulp = std::max(max_ulp, other.max_ulp);
    }

    [[nodiscard]] std::uint64_t total() const noexcept { return zero + one + two + three_plus; }

    friend bool operator==(const UlpHistogram&, const UlpHistogram&) = default;
};

struct OutputHistogram {
    std::string name;
    UlpHistogram histogram;

    friend bool operator==(const OutputHistogram&, const OutputHistogram&) = default;
};

/// Result of one trial. For each output, bucket counts plus `rejected` sum to n.
/// oracle_ties counts samples whose reference value sat exactly on a rounding
/// midpoint (expected to stay zero).
struct ErrorRateReport {
    std::string algorithm;
    Distribution distribution;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string rng;
    std::vector<OutputHistogram> outputs;
    std::uint64_t rejected = 0;
    std::uint64_t oracle_ties = 0;

    friend bool operator==(const ErrorRateReport&, const ErrorRateReport&) = default;
};

namespace trial_detail {

[[nodiscard]] inline std::uint64_t gap(double a, double b) noexcept {
    const std::int64_t ia = ordered_int(a);
    const std::int64_t ib = ordered_int(b);
    return ia > ib ? static_cast<std::uint64_t>(ia - ib) : static_cast<std::uint64_t>(ib - ia);
}

/// Kernel outputs (one or two values).
struct Outputs {
    std::array<double, 2> values{};
};

[[nodiscard]] inline Outputs evaluate(Algorithm a, double x, double y) {
    switch (a) {
    case Algorithm::rsqrt_naive: return {{rsqrt_naive(x), 0.0}};
    case Algorithm::rsqrt_compensated: return {{rsqrt_compensated(x), 0.0}};
    case Algorithm::rsqrt_modified: return {{rsqrt_modified(x), 0.0}};
    case Algorithm::rcpsqrt331d: return {{rcpsqrt331d(x), 0.0}};
    case Algorithm::rcpsqrt331d_modified: return {{rcpsqrt331d_modified(x), 0.0}};
    case Algorithm::rhypot_naive: return {{rhypot_naive(x, y), 0.0}};
    case Algorithm::rhypot_compensated: return {{rhypot_compensated(x, y), 0.0}};
    case Algorithm::dlartg_naive: {
        const GivensRotation g = dlartg_naive(x, y);
        return {{g.c, g.s}};
    }
    case Algorithm::dlartg_compensated: {
        const GivensRotation g = dlartg_compensated(x, y);
        return {{g.c, g.s}};
    }
    }
    return {};
}

/// Reference values for one sample, or nullopt when the oracle rejects the input.
struct Reference {
    std::array<double, 2> values{};
    bool tie = false;
};

[[nodiscard]] inline std::optional<Reference> reference(OracleKind kind, double x, double y) {
    try {
        switch (kind) {
        case OracleKind::rsqrt: {
            const OracleResult r = rn_rsqrt_certified(x);
            return Reference{{r.value, 0.0}, r.certificate.tie};
        }
        case OracleKind::rhypot: {
            const OracleResult r = rn_rhypot_certified(x, y);
            return Reference{{r.value, 0.0}, r.certificate.tie};
        }
        case OracleKind::givens: {
            const GivensOracleResult r = rn_givens_certified(x, y);
            return Reference{{r.rotation.c, r.rotation.s}, r.any_tie()};
        }
        }
    } catch (const domain_error&) {
    } catch (const range_error&) {
    }
    return std::nullopt;
}

struct Partial {
    std::vector<std::array<UlpHistogram, 2>> histograms;
    std::vector<std::uint64_t> rejected;
    std::vector<std::uint64_t> ties;
};

[[nodiscard]] inline Partial run_range(std::span<const Algorithm> algos, const SampleStream& stream, std::uint64_t begin,
                                       std::uint64_t end) {
    Partial part;
    part.histograms.resize(algos.size());
    part.rejected.assign(algos.size(), 0);
    part.ties.assign(algos.size(), 0);

    constexpr std::array kinds = {OracleKind::rsqrt, OracleKind::rhypot, OracleKind::givens};
    std::array<bool, 3> needed{};
    unsigned coords = 1;
    for (const Algorithm a : algos) {
        needed[static_cast<std::size_t>(oracle_kind(a))] = true;
        coords = std::max(coords, arity(a));
    }

    for (std::uint64_t i = begin; i < end; ++i) {
        const double x = stream.at(i, 0);
        const double y = coords > 1 ? stream.at(i, 1) : 0.0;
        std::array<std::optional<Reference>, 3> refs;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            if (needed[k]) {
                refs[k] = reference(kinds[k], x, y);
            }
        }
        for (std::size_t j = 0; j < algos.size(); ++j) {
            const auto& ref = refs[static_cast<std::size_t>(oracle_kind(algos[j]))];
            if (!ref) {
                ++part.rejected[j];
                continue;
            }
            Outputs out;
            try {
                out = evaluate(algos[j], x, y);
            } catch (const domain_error&) {
                ++part.rejected[j];
                continue;
            } catch (const range_error&) {
                ++part.rejected[j];
                continue;
            }
            if (ref->tie) {
                ++part.ties[j];
            }
            const std::size_t n_out = oracle_kind(algos[j]) == OracleKind::givens ? 2 : 1;
            for (std::size_t o = 0; o < n_out; ++o) {
                part.histograms[j][o].add(gap(out.values[o], ref->values[o]));
            }
        }
    }
    return part;
}

} // namespace trial_detail

/// Runs several algorithms over one shared sample stream; each report equals what
/// run_trial would produce for that algorithm alone. Samples are split into
/// `threads` contiguous index ranges whose partial counts are summed, so the result
/// does not depend on the thread count.
[[nodiscard]] inline std::vector<ErrorRateReport> run_trials(std::span<const Algorithm> algos, const Distribution& dist,
                                                             std::uint64_t n, std::uint64_t seed, unsigned threads = 1) {
    TrialConfig probe{algos.empty() ? Algorithm::rsqrt_naive : algos.front(), dist, n, seed};
    probe.validate();
    if (algos.empty()) {
        throw config_error("no algorithms selected");
    }
    const SampleStream stream(dist, seed);
    threads = std::max(1U, threads);
    const std::uint64_t chunks = std::min<std::uint64_t>(threads, n);

    std::vector<trial_detail::Partial> partials(chunks);
    if (chunks == 1) {
        partials[0] = trial_detail::run_range(algos, stream, 0, n);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(chunks);
        for (std::uint64_t c = 0; c < chunks; ++c) {
            const std::uint64_t begin = n * c / chunks;
            const std::uint64_t end = n * (c + 1) / chunks;
            workers.emplace_back([&, c, begin, end] { partials[c] = trial_detail::run_range(algos, stream, begin, end); });
        }
        for (auto& w : workers) {
            w.join();
        }
    }

    std::vector<ErrorRateReport> reports;
    reports.reserve(algos.size());
    for (std::size_t j = 0; j < algos.size(); ++j) {
        ErrorRateReport rep;
        rep.algorithm = std::string(algorithm_id(algos[j]));
        rep.distribution = dist;
        rep.n = n;
        rep.seed = seed;
        rep.rng = std::string(rng_name);
        const auto names = output_names(algos[j]);
        for (std::size_t o = 0; o < names.size(); ++o) {
            UlpHistogram h;
            for (const auto& p : partials) {
                h.merge(p.histograms[j][o]);
            }
            rep.outputs.push_back({names[o], h});
        }
        for (const auto& p : partials) {
            rep.rejected += p.rejected[j];
            rep.oracle_ties += p.ties[j];
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

[[nodiscard]] inline ErrorRateReport run_trial(const TrialConfig& config, unsigned threads = 1) {
    config.validate();
    const std::array algos = {config.algorithm};
    return run_trials(algos, config.distribution, config.n, config.seed, threads).front();
}

} // namespace fmacomp
