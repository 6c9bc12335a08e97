#ifndef GREENRING_REPORT_HPP
#define GREENRING_REPORT_HPP

/// Pipeline orchestration for the command line: run a full singularity
/// analysis from a group descriptor or a saved character table, and render
/// the result as text, JSON, or a LaTeX tabular.  All rendering is
/// deterministic: the same inputs produce byte-identical output.

#include <cstdint>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenring/chartable.hpp"
#include "greenring/cyclotomic.hpp"
#include "greenring/error.hpp"
#include "greenring/greenring.hpp"
#include "greenring/groups.hpp"
#include "greenring/singular.hpp"

namespace greenring {

enum class OutputFormat { Text, Json, Latex };

inline OutputFormat parse_output_format(const std::string& name) {
    if (name == "text") return OutputFormat::Text;
    if (name == "json") return OutputFormat::Json;
    if (name == "latex") return OutputFormat::Latex;
    throw ParseError("unknown output format '" + name + "' (expected text, json, or latex)");
}

struct RunConfig {
    std::string group;        // descriptor; empty when a table file is used
    std::string table_path;   // JSON character table; empty when a group is used
    OutputFormat format = OutputFormat::Text;
    bool all_points = false;
    bool show_relations = false;
    std::int64_t prime = 0;   // 0 = every prime dividing the group order
    std::uint64_t seed = kDefaultSeed;
};

/// One output row: the five data columns of the report.
struct AnalyzeRow {
    std::int64_t p = 0;
    std::string factor;
    int edim = 0;
    int dimT_Z = 0;
    int dimT_Zxi = 0;
};

struct AnalyzeReport {
    std::string source;       // descriptor or table path, as given
    std::int64_t order = 0;
    int conductor = 1;
    bool all_points = false;
    std::vector<AnalyzeRow> rows;
    std::vector<std::string> relations;  // only with show_relations
};

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::int64_t> ascending_prime_divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (const auto& [p, e] : factorize(n)) {
        (void)e;
        out.push_back(p);
    }
    return out;
}

}  // namespace detail

/// Runs the whole pipeline.  Point analyses are independent over shared
/// immutable data, so they run concurrently; rows are assembled in the fixed
/// report order (prime ascending, factor lexicographic, base class index)
/// regardless of completion order.
inline AnalyzeReport run_analyze(const RunConfig& cfg) {
    detail::require(cfg.group.empty() != cfg.table_path.empty(),
                    "analyze needs exactly one of a group descriptor or a table file");

    std::optional<PermGroup> group;
    std::optional<CharacterTable> table;
    if (!cfg.group.empty()) {
        group = make_group(cfg.group);
        table = dixon_character_table(*group);
    } else {
        table = load_table(cfg.table_path);
    }
    const GreenRing ring = structure_constants(*table);

    AnalyzeReport report;
    report.source = cfg.group.empty() ? cfg.table_path : cfg.group;
    report.order = table->order();
    report.conductor = table->conductor();
    report.all_points = cfg.all_points;

    std::vector<std::int64_t> primes;
    if (cfg.prime != 0) {
        detail::require(is_prime(cfg.prime), "--prime must be a prime number");
        primes.push_back(cfg.prime);
    } else {
        primes = detail::ascending_prime_divisors(table->order());
    }

    std::vector<PointDescriptor> points;
    for (std::int64_t p : primes) {
        const std::vector<int> fusion =
            group ? fusion_map(*group, p) : table_fusion_map(*table, p, cfg.seed);
        for (auto& pt : enumerate_points(ring, p, cfg.all_points, fusion, cfg.seed))
            points.push_back(std::move(pt));
    }

    std::vector<PointReport> analyses;
    analyses.reserve(points.size());
    if (points.size() > 1) {
        std::vector<std::future<PointReport>> futures;
        futures.reserve(points.size());
        for (const auto& pt : points)
            futures.push_back(std::async(std::launch::async,
                                         [&ring, pt] { return analyze_point(ring, pt); }));
        for (auto& f : futures) analyses.push_back(f.get());
    } else {
        for (const auto& pt : points) analyses.push_back(analyze_point(ring, pt));
    }

    for (const auto& a : analyses)
        report.rows.push_back(AnalyzeRow{a.point.Q.p(), a.point.Q.factor().to_string(), a.edim,
                                         a.dimT_Z, a.dimT_Zxi});
    if (cfg.show_relations) {
        const RelationSet rels = relations(ring);
        for (const auto& rel : rels.relations()) report.relations.push_back(rel.render());
    }
    return report;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace detail {

inline std::string latex_polynomial(const std::string& ascii) {
    // brace multi-digit exponents: "x^12 + x^3 + 1" -> "x^{12} + x^3 + 1"
    std::string out;
    for (std::size_t i = 0; i < ascii.size(); ++i) {
        out += ascii[i];
        if (ascii[i] != '^') continue;
        std::size_t j = i + 1;
        while (j < ascii.size() && std::isdigit(static_cast<unsigned char>(ascii[j]))) ++j;
        if (j - i - 1 >= 2) {
            out += "{" + ascii.substr(i + 1, j - i - 1) + "}";
            i = j - 1;
        }
    }
    return out;
}

inline std::string pad(const std::string& s, std::size_t width) {
    return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

}  // namespace detail

inline std::string render_analyze_text(const AnalyzeReport& r) {
    std::ostringstream out;
    out << "group: " << r.source << "\n";
    out << "order: " << r.order << "\n";
    out << "conductor: " << r.conductor << "\n";
    if (!r.relations.empty()) {
        out << "relations:\n";
        for (const auto& rel : r.relations) out << "  " << rel << "\n";
    }
    out << "\n";
    const std::vector<std::string> header{"p", "f(x)", "edim", "dim T(C/Z)", "dim T(C/Z[xi])"};
    std::vector<std::size_t> width(5);
    for (std::size_t c = 0; c < 5; ++c) width[c] = header[c].size();
    for (const auto& row : r.rows) {
        width[0] = std::max(width[0], std::to_string(row.p).size());
        width[1] = std::max(width[1], row.factor.size());
    }
    out << detail::pad(header[0], width[0]) << "  " << detail::pad(header[1], width[1]) << "  "
        << header[2] << "  " << header[3] << "  " << header[4] << "\n";
    for (const auto& row : r.rows) {
        out << detail::pad(std::to_string(row.p), width[0]) << "  "
            << detail::pad(row.factor, width[1]) << "  "
            << detail::pad(std::to_string(row.edim), header[2].size()) << "  "
            << detail::pad(std::to_string(row.dimT_Z), header[3].size()) << "  "
            << row.dimT_Zxi << "\n";
    }
    if (r.rows.empty()) out << "(no singular points)\n";
    return out.str();
}

inline std::string render_analyze_json(const AnalyzeReport& r) {
    nlohmann::json j;
    j["group"] = r.source;
    j["order"] = r.order;
    j["conductor"] = r.conductor;
    j["all_points"] = r.all_points;
    j["points"] = nlohmann::json::array();
    for (const auto& row : r.rows)
        j["points"].push_back({{"p", row.p},
                               {"f", row.factor},
                               {"edim", row.edim},
                               {"dim_T_Z", row.dimT_Z},
                               {"dim_T_Zxi", row.dimT_Zxi}});
    if (!r.relations.empty()) j["relations"] = r.relations;
    return j.dump(2) + "\n";
}

inline std::string render_analyze_latex(const AnalyzeReport& r) {
    std::ostringstream out;
    out << "\\begin{tabular}{|c|c|c|c|c|}\\hline\n";
    out << "$p$ & $f(x)$ & $\\edim_P\\, C$ & $\\dim_{k_P}T_P(C/\\Z)$ & "
           "$\\dim_{k_P}T_P(C/\\Z[\\xi])$ \\\\ \\hline\\hline\n";
    for (const auto& row : r.rows)
        out << row.p << " & $" << detail::latex_polynomial(row.factor) << "$ & " << row.edim
            << " & " << row.dimT_Z << " & " << row.dimT_Zxi << " \\\\ \\hline\n";
    out << "\\end{tabular}\n";
    return out.str();
}

inline std::string render_analyze(const AnalyzeReport& r, OutputFormat format) {
    switch (format) {
        case OutputFormat::Text: return render_analyze_text(r);
        case OutputFormat::Json: return render_analyze_json(r);
        case OutputFormat::Latex: return render_analyze_latex(r);
    }
    throw InternalError("unreachable output format");
}

/// Class-header table in the style of a printed character table.
inline std::string render_chartab_text(const CharacterTable& t) {
    const std::size_t s = t.s();
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> row;

    row = {"class"};
    for (std::size_t c = 0; c < s; ++c) row.push_back("c" + std::to_string(c + 1));
    grid.push_back(row);
    row = {"size"};
    for (std::size_t c = 0; c < s; ++c) row.push_back(std::to_string(t.classes()[c].size));
    grid.push_back(row);
    row = {"order"};
    for (std::size_t c = 0; c < s; ++c) row.push_back(std::to_string(t.classes()[c].element_order));
    grid.push_back(row);
    for (std::size_t i = 0; i < s; ++i) {
        row = {"chi_" + std::to_string(i + 1)};
        for (std::size_t c = 0; c < s; ++c) row.push_back(t.value(i, c).to_string());
        grid.push_back(row);
    }

    std::vector<std::size_t> width(s + 1, 0);
    for (const auto& line : grid)
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());

    std::ostringstream out;
    out << "group order: " << t.order() << "\n";
    out << "exponent: " << t.exponent() << "\n";
    out << "conductor: " << t.conductor() << "\n\n";
    for (const auto& line : grid) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            if (c > 0) out << "  ";
            out << detail::pad(line[c], c + 1 < line.size() ? width[c] : 0);
        }
        out << "\n";
    }
    return out.str();
}

/// The factorization report of the `cyclotomic` command: Phi_n, its shape
/// mod p as (f_1)^e ... (f_r)^e, and the ramification verdict.
inline std::string render_cyclotomic(int n, std::int64_t p, std::uint64_t seed = kDefaultSeed) {
    detail::require(n >= 1, "cyclotomic: n must be a positive integer");
    detail::require(is_prime(p), "cyclotomic: p must be prime");
    const auto primes = primes_above(n, p, seed);
    std::ostringstream out;
    out << "Phi_" << n << "(x) = " << cyclotomic_polynomial(n).to_string() << "\n";
    out << "Phi_" << n << "(x) mod " << p << " = ";
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i > 0) out << " ";
        out << "(" << primes[i].factor().to_string() << ")^" << primes[i].ram_exponent();
    }
    out << "\n";
    out << (is_ramified(n, p) ? "ramified" : "unramified") << "\n";
    return out.str();
}

}  // namespace greenring

#endif  // GREENRING_REPORT_HPP
