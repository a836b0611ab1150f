#pragma once

// Command-line front end.  Exit codes: 0 = positive/holds, 1 =
// negative/fails, 2 = usage, format or internal error.  All output is
// deterministic given flags and seeds; only bench timing columns vary.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "demi/ar_recognition.hpp"
#include "demi/checkers.hpp"
#include "demi/core.hpp"
#include "demi/instances.hpp"
#include "demi/recognition.hpp"
#include "demi/tsp.hpp"

namespace demi::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

inline std::string join(const std::vector<int>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(xs[i]);
    }
    return out;
}

inline std::string format_millis(std::chrono::microseconds us) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(us.count()) / 1000.0);
    return buf;
}

struct Options {
    std::string klass;
    std::string file;
    std::string out = "-";
    int jobs = 1;
    bool halve_pairs = false;
    int ar_exhaustive = 0;
    bool assume_demidenko = false;
    GenConfig gen;
    std::vector<int> sizes;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    int max_n = -1;
};

inline RecognitionConfig recognition_config(const Options& opt) {
    RecognitionConfig cfg;
    cfg.jobs = opt.jobs;
    cfg.halve_pairs = opt.halve_pairs;
    cfg.ar.exhaustive_threshold = opt.ar_exhaustive;
    return cfg;
}

inline int run_check(const Options& opt) {
    ParsedMatrix parsed = parse_matrix(read_file(opt.file));
    Verdict v = opt.klass == "demidenko" ? check_demidenko(parsed.matrix)
                                         : check_anti_robinson(parsed.matrix);
    if (v.holds) return 0;
    std::cout << join(v.witness) << "\n";
    return 1;
}

inline int run_recognize(const Options& opt) {
    ParsedMatrix parsed = parse_matrix(read_file(opt.file));
    if (opt.klass == "anti-robinson") {
        ArConfig cfg;
        cfg.exhaustive_threshold = opt.ar_exhaustive;
        ArOutcome out = recognize_anti_robinson(parsed.matrix, cfg);
        if (!out.recognized) {
            std::cout << "NONE\n";
            return 1;
        }
        std::cout << join(out.permutation->images()) << "\n";
        return 0;
    }
    RecognitionReport rep = recognize_demidenko(parsed.matrix, recognition_config(opt));
    if (!rep.recognized) {
        std::cout << "NONE\n";
        return 1;
    }
    std::cout << join(rep.permutation->images()) << "\n";
    if (rep.anchor)
        std::cout << "anchor " << rep.anchor->first << " " << rep.anchor->second << "\n";
    return 0;
}

inline int run_generate(const Options& opt) {
    const MatrixClass cls =
        opt.klass == "demidenko" ? MatrixClass::Demidenko : MatrixClass::AntiRobinson;
    Instance inst = generate_instance(opt.gen, cls);
    std::string header = "# " + opt.klass + " instance n=" + std::to_string(opt.gen.n) +
                         " seed=" + std::to_string(opt.gen.seed) +
                         " bumps=" + std::to_string(opt.gen.bumps);
    if (opt.gen.symmetric_sum) header += " symmetric-sum";
    if (opt.gen.scramble) header += " scrambled";
    header += "\n";
    write_output(opt.out, header + serialize_matrix(inst.matrix));
    return 0;
}

inline int run_solve_tsp(const Options& opt) {
    ParsedMatrix parsed = parse_matrix(read_file(opt.file));
    if (opt.assume_demidenko) {
        Tour tour = solve_pyramidal(parsed.matrix);
        const bool certified = check_demidenko(parsed.matrix).holds;
        std::cout << "tour: " << join(tour.order.images()) << "\n";
        std::cout << "cost: " << format_scaled(tour.cost, parsed.scale_digits) << "\n";
        std::cout << "certified: " << (certified ? "yes" : "no") << "\n";
        return 0;
    }
    TspOutcome out = solve_permuted_demidenko_tsp(parsed.matrix, recognition_config(opt));
    if (!out.solved) {
        std::cout << "NONE\n";
        return 1;
    }
    std::cout << "tour: " << join(out.tour->order.images()) << "\n";
    std::cout << "cost: " << format_scaled(out.tour->cost, parsed.scale_digits) << "\n";
    std::cout << "certified: " << (out.certified ? "yes" : "no") << "\n";
    return 0;
}

inline int run_bench(const Options& opt) {
    if (opt.sizes.empty()) throw CLI::ValidationError("--sizes", "needs at least one size");
    std::string csv = "n,seed,case,recognized,pairs_tried,wall_millis\n";
    for (int n : opt.sizes) {
        for (std::uint64_t seed : opt.seeds) {
            GenConfig cfg;
            cfg.n = n;
            cfg.seed = seed;
            cfg.bumps = 3;
            cfg.symmetric_sum = true;
            cfg.scramble = true;
            Instance inst = generate_instance(cfg, MatrixClass::Demidenko);
            RecognitionReport rep = recognize_demidenko(inst.matrix, recognition_config(opt));
            csv += std::to_string(n) + "," + std::to_string(seed) + ",scrambled-demidenko," +
                   (rep.recognized ? "1" : "0") + "," + std::to_string(rep.pairs_tried) + "," +
                   format_millis(rep.elapsed) + "\n";
        }
    }
    write_output(opt.out, csv);
    return 0;
}

inline int run_oracle(const Options& opt) {
    ParsedMatrix parsed = parse_matrix(read_file(opt.file));
    if (opt.klass == "tsp") {
        Tour tour = oracle_tsp(parsed.matrix, opt.max_n < 0 ? 10 : opt.max_n);
        std::cout << "tour: " << join(tour.order.images()) << "\n";
        std::cout << "cost: " << format_scaled(tour.cost, parsed.scale_digits) << "\n";
        return 0;
    }
    const int bound = opt.max_n < 0 ? 8 : opt.max_n;
    if (opt.klass == "anti-robinson") {
        ArOutcome out = brute_force_ar(parsed.matrix, bound);
        if (!out.recognized) {
            std::cout << "NONE\n";
            return 1;
        }
        std::cout << join(out.permutation->images()) << "\n";
        return 0;
    }
    auto perm = oracle_permuted_demidenko(parsed.matrix, bound);
    if (!perm) {
        std::cout << "NONE\n";
        return 1;
    }
    std::cout << join(perm->images()) << "\n";
    return 0;
}

}  // namespace detail

inline int run(int argc, const char* const* argv) {
    CLI::App app{"Recognition toolkit for permuted Demidenko and Anti-Robinson matrices"};
    app.require_subcommand(1);
    detail::Options opt;

    const std::vector<std::string> matrix_classes{"demidenko", "anti-robinson"};
    const std::vector<std::string> oracle_classes{"demidenko", "anti-robinson", "tsp"};

    CLI::App* check = app.add_subcommand("check", "Check the conditions in the given order");
    check->add_option("--class", opt.klass, "Matrix class")
        ->required()
        ->check(CLI::IsMember(matrix_classes));
    check->add_option("file", opt.file, "Matrix file")->required();

    CLI::App* recognize = app.add_subcommand("recognize", "Search for a class permutation");
    recognize->add_option("--class", opt.klass, "Matrix class")
        ->required()
        ->check(CLI::IsMember(matrix_classes));
    recognize->add_option("file", opt.file, "Matrix file")->required();
    recognize->add_option("--jobs", opt.jobs, "Worker threads for the anchor-pair scan");
    recognize->add_flag("--halve-pairs", opt.halve_pairs, "Scan only anchor pairs with p < q");
    recognize->add_option("--ar-exhaustive", opt.ar_exhaustive,
                          "Exhaustive-scan threshold of the Anti-Robinson recognizer");

    CLI::App* generate = app.add_subcommand("generate", "Generate a seeded instance");
    generate->add_option("--class", opt.klass, "Matrix class")
        ->required()
        ->check(CLI::IsMember(matrix_classes));
    generate->add_option("--n", opt.gen.n, "Matrix order")->required();
    generate->add_option("--seed", opt.gen.seed, "Seed")->required();
    generate->add_flag("--scramble", opt.gen.scramble, "Hide the structure behind a random permutation");
    generate->add_option("--bumps", opt.gen.bumps, "Number of rectangular bumps");
    generate->add_flag("--symmetric-sum", opt.gen.symmetric_sum,
                       "Add a symmetric row/column shift (Demidenko class only)");
    generate->add_option("--value-lo", opt.gen.value_lo, "Low end of the value range");
    generate->add_option("--value-hi", opt.gen.value_hi, "High end of the value range");
    generate->add_option("-o,--out", opt.out, "Output file ('-' for stdout)");

    CLI::App* solve = app.add_subcommand("solve-tsp", "Solve the TSP via recognition");
    solve->add_option("file", opt.file, "Matrix file")->required();
    solve->add_flag("--assume-demidenko", opt.assume_demidenko,
                    "Skip recognition; certify only if the check passes");
    solve->add_option("--jobs", opt.jobs, "Worker threads for the recognition");

    CLI::App* bench = app.add_subcommand("bench", "Time recognition on scrambled instances");
    bench->add_option("--sizes", opt.sizes, "Instance sizes")->required()->delimiter(',');
    bench->add_option("--seeds", opt.seeds, "Seeds per size")->delimiter(',');
    bench->add_option("-o,--out", opt.out, "CSV output file ('-' for stdout)");
    bench->add_option("--jobs", opt.jobs, "Worker threads for the recognition");

    CLI::App* oracle = app.add_subcommand("oracle", "Brute-force reference answers");
    oracle->add_option("--class", opt.klass, "Problem class")
        ->required()
        ->check(CLI::IsMember(oracle_classes));
    oracle->add_option("file", opt.file, "Matrix file")->required();
    oracle->add_option("--max-n", opt.max_n, "Override the size bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (check->parsed()) return detail::run_check(opt);
        if (recognize->parsed()) return detail::run_recognize(opt);
        if (generate->parsed()) return detail::run_generate(opt);
        if (solve->parsed()) return detail::run_solve_tsp(opt);
        if (bench->parsed()) return detail::run_bench(opt);
        if (oracle->parsed()) return detail::run_oracle(opt);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace demi::cli
