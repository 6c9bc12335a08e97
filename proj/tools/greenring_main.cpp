// Command-line front end: singularity analysis of Spec(R(G) (x) Z[xi]) for a
// finite permutation group G, character table emission, and cyclotomic
// factorization reports.
//
// Exit codes: 0 success, 2 usage/parse/validation problem, 3 internal
// invariant violation (a bug, never the caller's fault).

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "greenring/report.hpp"

namespace {

struct CliOptions {
    std::string group;
    std::string table_path;
    std::string format;
    bool all_points = false;
    bool show_relations = false;
    std::int64_t prime = 0;
    std::uint64_t seed = greenring::kDefaultSeed;
    std::int64_t cyclotomic_n = 0;
    std::int64_t cyclotomic_p = 0;
};

int run_analyze_command(const CliOptions& opt) {
    greenring::RunConfig cfg;
    cfg.group = opt.group;
    cfg.table_path = opt.table_path;
    cfg.format = greenring::parse_output_format(opt.format.empty() ? "text" : opt.format);
    cfg.all_points = opt.all_points;
    cfg.show_relations = opt.show_relations;
    cfg.prime = opt.prime;
    cfg.seed = opt.seed;
    const greenring::AnalyzeReport report = greenring::run_analyze(cfg);
    std::cout << greenring::render_analyze(report, cfg.format);
    return 0;
}

int run_chartab_command(const CliOptions& opt) {
    const std::string format = opt.format.empty() ? "json" : opt.format;
    greenring::PermGroup G = greenring::make_group(opt.group);
    greenring::CharacterTable t = greenring::dixon_character_table(G);
    if (format == "json") {
        greenring::save_table(t, std::cout);
    } else if (format == "text") {
        std::cout << greenring::render_chartab_text(t);
    } else {
        throw greenring::ParseError("chartab supports --format text or json");
    }
    return 0;
}

int run_cyclotomic_command(const CliOptions& opt) {
    std::cout << greenring::render_cyclotomic(static_cast<int>(opt.cyclotomic_n),
                                              opt.cyclotomic_p, opt.seed);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"singular points of the spectrum of a representation ring over Z[xi]"};
    app.require_subcommand(1);

    CliOptions opt;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "list singular points with their dimension invariants");
    auto* source = analyze->add_option_group("source", "exactly one input");
    source->add_option("--group", opt.group, "group descriptor, e.g. A4, D8, C2xC4, perm:[...]");
    source->add_option("--table", opt.table_path, "character table JSON file");
    source->require_option(1);
    analyze->add_option("--format", opt.format, "text, json, or latex (default text)");
    analyze->add_flag("--all-points", opt.all_points,
                      "include the regular closed points above each prime");
    analyze->add_option("--prime", opt.prime, "restrict to a single prime");
    analyze->add_flag("--show-relations", opt.show_relations,
                      "also print the defining relations of the presentation");
    analyze->add_option("--seed", opt.seed, "seed for randomized factorization")
        ->envname("GREENRING_SEED");

    CLI::App* chartab = app.add_subcommand("chartab", "compute and emit a character table");
    chartab->add_option("--group", opt.group, "group descriptor")->required();
    chartab->add_option("--format", opt.format, "json (default) or text");
    chartab->add_option("--seed", opt.seed, "seed for randomized factorization")
        ->envname("GREENRING_SEED");

    CLI::App* cyclotomic = app.add_subcommand(
        "cyclotomic", "factor the n-th cyclotomic polynomial modulo a prime");
    cyclotomic->add_option("n", opt.cyclotomic_n, "conductor")->required();
    cyclotomic->add_option("p", opt.cyclotomic_p, "rational prime")->required();
    cyclotomic->add_option("--seed", opt.seed, "seed for randomized factorization")
        ->envname("GREENRING_SEED");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) return run_analyze_command(opt);
        if (chartab->parsed()) return run_chartab_command(opt);
        if (cyclotomic->parsed()) return run_cyclotomic_command(opt);
        std::cerr << "no command given\n";
        return 2;
    } catch (const greenring::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const greenring::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
