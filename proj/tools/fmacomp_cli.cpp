// fmacomp: accuracy trials and single-value inspection for the compensated
// reciprocal square root, reciprocal hypotenuse and Givens kernels.
//
//   fmacomp bench --algo rsqrt_naive,rsqrt_compensated --dist uniform:0.5,1 --n 10000000 --seed 1 --format md
//   fmacomp inspect --x 0x1.ffffffffffffep-1
//   fmacomp inspect --f 3 --g 4
//
// Exit codes: 0 success, 2 configuration or usage error, 3 kernel domain error during
// inspect, 1 unusable floating-point environment or I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fmacomp/fmacomp.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_environment = 1;
constexpr int exit_config = 2;
constexpr int exit_domain = 3;

std::vector<fmacomp::Algorithm> parse_algorithms(const std::string& list) {
    std::vector<fmacomp::Algorithm> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = fmacomp::parse_algorithm(item);
        if (!a) {
            std::string known;
            for (const auto k : fmacomp::all_algorithms) {
                known += std::string(known.empty() ? "" : ", ") + std::string(fmacomp::algorithm_id(k));
            }
            throw fmacomp::config_error("unknown algorithm '" + item + "' (known: " + known + ")");
        }
        out.push_back(*a);
    }
    if (out.empty()) {
        throw fmacomp::config_error("--algo is empty");
    }
    return out;
}

double parse_float_arg(const std::string& name, const std::string& text) {
    const auto v = fmacomp::parse_float(text);
    if (!v) {
        throw fmacomp::config_error("cannot parse " + name + " value '" + text + "'");
    }
    return *v;
}

} // namespace

int main(int argc, char** argv) {
    if (!fmacomp::fma_is_single_rounding()) {
        std::cerr << "fmacomp: fused multiply-add is not single-rounding on this platform; refusing to run\n";
        return exit_environment;
    }

    CLI::App app{"Accuracy harness for FMA-compensated rsqrt, rhypot and Givens kernels"};
    app.require_subcommand(1);

    auto* bench = app.add_subcommand("bench", "Histogram ulp errors of kernels against the correctly rounded oracle");
    std::string algo_list;
    std::string dist_text;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string format_text = "csv";
    std::string out_path;
    unsigned threads = 1;
    bench->add_option("--algo", algo_list, "Algorithm id, or a comma-separated list sharing one sample stream")->required();
    bench->add_option("--dist", dist_text, "uniform:LO,HI | normal:MEAN,SD | log_uniform:EMIN,EMAX")->required();
    bench->add_option("--n", n, "Number of samples")->required();
    bench->add_option("--seed", seed, "Generator seed")->required();
    bench->add_option("--format", format_text, "csv | json | md");
    bench->add_option("--out", out_path, "Write the report here instead of standard output");
    bench->add_option("--threads", threads, "Worker threads (results are identical for any value)");

    auto* insp = app.add_subcommand("inspect", "Show every kernel and the oracle for one input");
    std::string x_text;
    std::string f_text;
    std::string g_text;
    auto* x_opt = insp->add_option("--x", x_text, "Argument of the reciprocal square root");
    auto* f_opt = insp->add_option("--f", f_text, "First component of the vector to rotate");
    auto* g_opt = insp->add_option("--g", g_text, "Second component of the vector to rotate");
    x_opt->excludes(f_opt)->excludes(g_opt);
    f_opt->needs(g_opt);
    g_opt->needs(f_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (bench->parsed()) {
            const auto algos = parse_algorithms(algo_list);
            const auto dist = fmacomp::Distribution::parse(dist_text);
            const auto format = fmacomp::parse_report_format(format_text);
            if (!format) {
                throw fmacomp::config_error("unknown format '" + format_text + "' (csv, json, md)");
            }
            const auto reports = fmacomp::run_trials(algos, dist, n, seed, threads);
            const std::string text = fmacomp::render_report(reports, *format);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                out << text;
                if (!out) {
                    std::cerr << "fmacomp: cannot write " << out_path << '\n';
                    return exit_environment;
                }
            }
            return exit_ok;
        }

        std::vector<fmacomp::InspectionRecord> records;
        if (!x_text.empty()) {
            records.push_back(fmacomp::inspect(parse_float_arg("--x", x_text)));
        } else if (!f_text.empty()) {
            records = fmacomp::inspect(parse_float_arg("--f", f_text), parse_float_arg("--g", g_text));
        } else {
            throw fmacomp::config_error("inspect needs --x, or --f with --g");
        }
        bool domain = false;
        for (std::size_t i = 0; i < records.size(); ++i) {
            std::cout << (i == 0 ? "" : "\n") << fmacomp::render_inspection(records[i]);
            domain = domain || records[i].any_domain_error();
        }
        return domain ? exit_domain : exit_ok;
    } catch (const fmacomp::config_error& e) {
        std::cerr << "fmacomp: " << e.what() << '\n';
        return exit_config;
    }
}
