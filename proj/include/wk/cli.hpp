#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wk/io.hpp"
#include "wk/oracle.hpp"
#include "wk/parallel.hpp"
#include "wk/solver.hpp"

namespace wk::cli {

namespace detail {

inline std::string witness_line(const MembershipWitness& w,
                                const std::vector<GeneratorInfo>& gens) {
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [exps, coeff] : w.combination) {
        os << (first_term ? "" : " + ") << format_rational(coeff) << " * ";
        bool first_factor = true;
        for (std::size_t j = 0; j < exps.size(); ++j) {
            if (exps[j] == 0) continue;
            if (!first_factor) os << "*";
            os << gens[j].name;
            if (exps[j] > 1) os << "^" << exps[j];
            first_factor = false;
        }
        if (first_factor) os << "1";
        first_term = false;
    }
    return os.str();
}

}  // namespace detail

/// Entry point behind the wk binary. Exit codes: 0 success/pass,
/// 1 computation or verification failure, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"kernel of the Weitzenboeck derivation via Casimir elements"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: all cores, or WK_THREADS)");

    struct {
        int n = 1;
        int max_rounds = 10;
        int degree_cap = 0;
        bool no_minimize = false;
        std::string out_file;
    } kernel_opts;
    CLI::App* kernel = app.add_subcommand("kernel", "compute a minimal generating set");
    kernel->add_option("--n", kernel_opts.n, "ambient size")->required()->check(CLI::Range(1, 14));
    kernel->add_option("--max-rounds", kernel_opts.max_rounds, "closure round cap")
        ->check(CLI::PositiveNumber);
    kernel->add_option("--degree-cap", kernel_opts.degree_cap, "candidate degree safety bound")
        ->check(CLI::PositiveNumber);
    kernel->add_flag("--no-minimize", kernel_opts.no_minimize, "skip redundancy elimination");
    kernel->add_option("--out", kernel_opts.out_file, "output JSON file")->required();

    struct {
        int n = 1;
        int i = 0;
        std::string poly;
    } tau_opts;
    CLI::App* tau_cmd = app.add_subcommand("tau", "apply the tau_i map to a kernel element");
    tau_cmd->add_option("--n", tau_opts.n, "ambient size")->required()->check(CLI::Range(1, 14));
    tau_cmd->add_option("--i", tau_opts.i, "tau index")->required();
    tau_cmd->add_option("--poly", tau_opts.poly, "polynomial expression")->required();

    struct {
        int n = 1;
        int m = 0;
    } delta_opts;
    CLI::App* delta = app.add_subcommand("delta", "print the standard quadratic Casimir element");
    delta->add_option("--n", delta_opts.n, "ambient size")->required()->check(CLI::Range(1, 14));
    delta->add_option("--m", delta_opts.m, "level")->required();

    struct {
        int n = 1;
        std::string poly;
        std::string gens_file;
    } member_opts;
    CLI::App* member = app.add_subcommand("member", "signature-guided membership test");
    member->add_option("--n", member_opts.n, "ambient size")->required()->check(CLI::Range(1, 14));
    member->add_option("--poly", member_opts.poly, "polynomial expression")->required();
    member->add_option("--gens", member_opts.gens_file, "generator-set JSON file")->required();

    struct {
        int n = 1;
        std::string poly;
    } dec_opts;
    CLI::App* decompose = app.add_subcommand("decompose", "tau decomposition of a kernel element");
    decompose->add_option("--n", dec_opts.n, "ambient size")->required()->check(CLI::Range(1, 14));
    decompose->add_option("--poly", dec_opts.poly, "polynomial expression")->required();

    struct {
        int n = 1;
        int deg_max = 6;
        std::string gens_file;
    } oracle_opts;
    CLI::App* oracle = app.add_subcommand("oracle", "graded-slice dimension cross-check");
    oracle->add_option("--n", oracle_opts.n, "ambient size")->required()->check(CLI::Range(1, 14));
    oracle->add_option("--deg-max", oracle_opts.deg_max, "largest degree to check")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--gens", oracle_opts.gens_file, "generator-set JSON file")->required();

    struct {
        std::string gens_file;
    } verify_opts;
    CLI::App* verify = app.add_subcommand("verify", "re-check a generator file from first principles");
    verify->add_option("--gens", verify_opts.gens_file, "generator-set JSON file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    if (threads > 0) set_thread_count(threads);

    try {
        if (kernel->parsed()) {
            SolverConfig config;
            config.n = kernel_opts.n;
            config.max_rounds = kernel_opts.max_rounds;
            if (kernel_opts.degree_cap > 0) config.degree_cap = kernel_opts.degree_cap;
            config.minimize = !kernel_opts.no_minimize;
            config.progress = &err;
            KernelResult result = compute_kernel(config);
            write_generator_file(result, kernel_opts.out_file);
            std::ofstream table(kernel_opts.out_file + ".txt");
            if (!table) throw std::runtime_error("cannot open " + kernel_opts.out_file + ".txt");
            table << generator_table_text(result);
            out << generator_table_text(result);
            return result.closed ? 0 : 1;
        }
        if (tau_cmd->parsed()) {
            Poly z = parse_poly(tau_opts.poly, tau_opts.n);
            Poly image = tau(tau_opts.i, z, tau_opts.n);
            out << (image.is_zero() ? "0" : format_poly(normalize_primitive(image))) << "\n";
            return 0;
        }
        if (delta->parsed()) {
            out << format_poly(standard_casimir(delta_opts.m, delta_opts.n)) << "\n";
            return 0;
        }
        if (member->parsed()) {
            KernelResult gens = load_generator_file(member_opts.gens_file);
            if (gens.n != member_opts.n)
                throw std::runtime_error("generator file is for n = " + std::to_string(gens.n));
            Poly z = parse_poly(member_opts.poly, member_opts.n);
            auto witness = is_member(z, gens.generators, member_opts.n);
            if (witness) {
                out << "member\n" << detail::witness_line(*witness, gens.generators) << "\n";
                return 0;
            }
            out << "not member\n";
            return 1;
        }
        if (decompose->parsed()) {
            Poly z = parse_poly(dec_opts.poly, dec_opts.n);
            TauDecomposition dec = tau_decompose(z, dec_opts.n);
            for (int i = 0; i <= dec_opts.n; ++i)
                out << "c(" << i << ") = " << format_poly(dec.c[static_cast<std::size_t>(i)])
                    << "\n";
            out << "reconstruction verified: deg(z)*z = sum tau_{n-i}(c(i))\n";
            return 0;
        }
        if (oracle->parsed()) {
            KernelResult gens = load_generator_file(oracle_opts.gens_file);
            if (gens.n != oracle_opts.n)
                throw std::runtime_error("generator file is for n = " + std::to_string(gens.n));
            CrossCheckReport report = cross_check(gens.generators, oracle_opts.n,
                                                  oracle_opts.deg_max);
            out << cross_check_text(report);
            return report.discrepancies == 0 ? 0 : 1;
        }
        if (verify->parsed()) {
            KernelResult gens = load_generator_file(verify_opts.gens_file);
            VerifyReport report = verify_result(gens);
            out << verify_report_text(report);
            return report.pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace wk::cli
