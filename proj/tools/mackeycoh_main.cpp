// Command-line front end: compute | table | check, plus the file store.
// Exit codes: 0 success, 1 violation found by a checker (or a store
// conflict), 2 parse/validation error, 3 unknown result or unknown
// dependency.
#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mackeycoh/cohomology.hpp"
#include "mackeycoh/cone.hpp"
#include "mackeycoh/error.hpp"
#include "mackeycoh/render.hpp"
#include "mackeycoh/serialize.hpp"
#include "mackeycoh/store.hpp"

using namespace mackeycoh;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kUnknown = 3;

struct Range {
    long long lo = 0, hi = 0;  // inclusive; empty when lo > hi
};

// "a0=-2..2,a1=0..1,c=-4..4": missing variables default to the point 0.
// Keys are c and a0..a(n-1).
std::map<std::string, Range> parse_range_spec(const std::string& text, int n) {
    std::map<std::string, Range> out;
    if (text.empty()) return out;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = std::min(text.find(',', pos), text.size());
        const std::string part = text.substr(pos, comma - pos);
        pos = comma + 1;
        if (part.empty())
            throw ParseError("range: empty clause in \"" + text + "\"");
        const size_t eq = part.find('=');
        const size_t dots = part.find("..");
        if (eq == std::string::npos || dots == std::string::npos || dots < eq)
            throw ParseError("range: expected var=lo..hi, got \"" + part + "\"");
        const std::string var = part.substr(0, eq);
        bool valid = var == "c";
        if (!valid && var.size() >= 2 && var[0] == 'a') {
            try {
                const int idx = std::stoi(var.substr(1));
                valid = idx >= 0 && idx < n &&
                        var == "a" + std::to_string(idx);
            } catch (const std::exception&) {
                valid = false;
            }
        }
        if (!valid)
            throw ParseError("range: unknown variable \"" + var + "\"");
        if (out.count(var))
            throw ParseError("range: duplicate variable \"" + var + "\"");
        Range r;
        try {
            r.lo = std::stoll(part.substr(eq + 1, dots - eq - 1));
            r.hi = std::stoll(part.substr(dots + 2));
        } catch (const std::exception&) {
            throw ParseError("range: bad bounds in \"" + part + "\"");
        }
        out[var] = r;
    }
    return out;
}

// All gradings of the requested range in lexicographic (c, a0, .., a(n-1))
// order.
std::vector<Grading> range_gradings(const std::string& text, int n) {
    const auto spec = parse_range_spec(text, n);
    auto get = [&](const std::string& var) {
        auto it = spec.find(var);
        return it == spec.end() ? Range{} : it->second;
    };
    std::vector<Range> dims;
    dims.push_back(get("c"));
    for (int i = 0; i < n; ++i) dims.push_back(get("a" + std::to_string(i)));

    std::vector<Grading> out;
    std::vector<long long> cur(dims.size());
    for (const Range& r : dims)
        if (r.lo > r.hi) return out;  // empty range, empty table
    for (size_t i = 0; i < dims.size(); ++i) cur[i] = dims[i].lo;
    while (true) {
        out.emplace_back(n, cur[0],
                         std::vector<long long>(cur.begin() + 1, cur.end()));
        size_t i = dims.size();
        while (i-- > 0) {
            if (cur[i] < dims[i].hi) {
                ++cur[i];
                for (size_t j = i + 1; j < dims.size(); ++j) cur[j] = dims[j].lo;
                break;
            }
            if (i == 0) return out;
        }
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string latex_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '{' || c == '}') out += '\\';
        out += c;
    }
    return out;
}

void print_trace(const std::vector<TraceEntry>& trace) {
    if (trace.empty()) return;
    std::cout << "trace:\n";
    for (const TraceEntry& t : trace) {
        std::cout << "  " << t.rule;
        if (!t.paper_ref.empty()) std::cout << "  [" << t.paper_ref << "]";
        if (!t.subquery.empty()) std::cout << "  -> " << t.subquery;
        std::cout << "\n";
    }
}

struct ComputeArgs {
    long long p = 0;
    int n = 0;
    std::string grading;
    std::string format = "ascii";
    std::string store_dir;
};

int run_compute(const ComputeArgs& args) {
    const ParsedGrading parsed = parse_grading(args.grading, args.p, args.n);
    const Grading& g = parsed.grading;
    const CohomResult result = compute_cohomology(args.p, args.n, g);
    const ResultRecord record = make_record(args.p, args.n, g, result);

    std::optional<ResultStore> store;
    if (!args.store_dir.empty())
        store.emplace(args.store_dir);
    else
        store = ResultStore::from_env();
    if (store) store->save(record);

    if (args.format == "json") {
        std::cout << record_to_json(record).dump(2) << "\n";
        return result.known() ? kOk : kUnknown;
    }

    std::cout << "p=" << args.p << " n=" << args.n << " grading: " << g.render()
              << "\n";
    for (const std::string& note : parsed.notes)
        std::cout << "note: " << note << "\n";
    if (!result.known()) {
        std::cout << "unknown: " << result.reason << "\n";
        print_trace(result.trace);
        return kUnknown;
    }
    if (args.format == "latex") {
        std::cout << render_latex(*result.functor);
    } else {
        std::cout << render_ascii(*result.functor);
    }
    const Recognition rec = recognize(*result.functor);
    if (rec.expr) {
        std::cout << "recognize: " << render_expr(*rec.expr, args.n) << "\n";
    } else {
        std::cout << "recognize: none\n";
        std::cout << "note: non-split extension\n";
    }
    print_trace(result.trace);
    if (store)
        std::cout << "stored: "
                  << store->path_for(args.p, args.n, g.render()).string()
                  << "\n";
    return kOk;
}

struct TableArgs {
    long long p = 0;
    int n = 0;
    std::string range;
    std::string format = "csv";
};

int run_table(const TableArgs& args) {
    const std::vector<Grading> grid = range_gradings(args.range, args.n);

    std::vector<std::string> header{"c"};
    for (int i = 0; i < args.n; ++i) header.push_back("a" + std::to_string(i));
    header.push_back("grading");
    header.push_back("value");

    std::vector<std::vector<std::string>> rows;
    for (const Grading& g : grid) {
        const CohomResult r = compute_cohomology(args.p, args.n, g);
        std::vector<std::string> row{std::to_string(g.c)};
        for (int i = 0; i < args.n; ++i) row.push_back(std::to_string(g.a[i]));
        row.push_back(g.render());
        row.push_back(r.known() ? display_name(*r.functor) : "unknown");
        rows.push_back(std::move(row));
    }

    if (args.format == "latex") {
        std::cout << "\\begin{tabular}{" << std::string(args.n + 1, 'r')
                  << "ll}\n";
        for (size_t i = 0; i < header.size(); ++i)
            std::cout << (i ? " & " : "") << header[i];
        std::cout << " \\\\\n\\hline\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i)
                std::cout << (i ? " & " : "") << latex_escape(row[i]);
            std::cout << " \\\\\n";
        }
        std::cout << "\\end{tabular}\n";
    } else {
        for (size_t i = 0; i < header.size(); ++i)
            std::cout << (i ? "," : "") << header[i];
        std::cout << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i)
                std::cout << (i ? "," : "") << csv_field(row[i]);
            std::cout << "\n";
        }
    }
    return kOk;
}

struct CheckArgs {
    std::string mode;
    long long p = 0;
    int n = 0;
    std::string grading;
    std::string range;
    int m = 0;
    int window = 4;
};

struct CheckTally {
    int passed = 0;
    int violations = 0;
    int unknowns = 0;

    int exit_code() const {
        if (violations) return kViolation;
        if (unknowns) return kUnknown;
        return kOk;
    }
};

void run_one_check(const CheckArgs& args, const Grading& g, CheckTally& tally) {
    const std::string label = g.render();
    try {
        if (args.mode == "anderson") {
            const CheckReport rep = check_anderson(args.p, args.n, g);
            for (const std::string& line : rep.lines)
                std::cout << label << ": " << line << "\n";
            ++tally.passed;
        } else if (args.mode == "les") {
            const CheckReport rep =
                check_les_orders(args.p, args.n, args.m, g, args.window);
            for (const std::string& line : rep.lines)
                std::cout << label << ": " << line << "\n";
            ++tally.passed;
        } else {  // cone
            if (g.c > 0 || g.c % 2 != 0 ||
                std::any_of(g.a.begin(), g.a.end(),
                            [](long long v) { return v < 0; })) {
                std::cout << label << ": skip (outside the positive cone)\n";
                return;
            }
            const CohomResult r = compute_cohomology(args.p, args.n, g);
            if (!r.known()) {
                std::cout << label << ": skip (engine value unknown)\n";
                ++tally.unknowns;
                return;
            }
            const FgAbGroup top = r.functor->level(args.n);
            const FgAbGroup cone = cone_group(args.p, g).group;
            if (top == cone) {
                std::cout << label << ": cone presentation == engine top level ("
                          << cone.to_string() << ")  [positive-cone ring]\n";
                ++tally.passed;
            } else {
                std::cout << label << ": VIOLATION cone " << cone.to_string()
                          << " vs engine top " << top.to_string() << "\n";
                ++tally.violations;
            }
        }
    } catch (const DualityViolation& e) {
        std::cout << label << ": VIOLATION " << e.what() << "\n";
        ++tally.violations;
    } catch (const ExactnessViolation& e) {
        std::cout << label << ": VIOLATION " << e.what() << "\n";
        ++tally.violations;
    } catch (const UnknownDependencyError& e) {
        std::cout << label << ": skip (unknown dependency) " << e.what() << "\n";
        ++tally.unknowns;
    }
}

int run_check(const CheckArgs& args) {
    CheckTally tally;
    if (args.mode == "axioms") {
        // Construct the full parametrized catalog; every constructor
        // re-checks the diagram conditions, and validate_mackey reports
        // instead of throwing.
        const int n = args.n;
        std::vector<Subset> subsets;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            Subset s;
            for (int i = 1; i <= n; ++i)
                if (mask & (1u << (i - 1))) s.insert(i);
            subsets.push_back(std::move(s));
        }
        auto audit = [&](const std::string& name, const MackeyFunctor& m) {
            std::vector<FgAbGroup> levels;
            std::vector<GroupHom> res, tr;
            for (int k = 0; k <= m.n(); ++k) levels.push_back(m.level(k));
            for (int k = 1; k <= m.n(); ++k) {
                res.push_back(m.res(k));
                tr.push_back(m.tr(k));
            }
            const auto issues = validate_mackey(m.p(), m.n(), levels, res, tr);
            if (issues.empty()) {
                std::cout << name << ": valid diagram  [double coset / "
                          << "Frobenius conditions]\n";
                ++tally.passed;
            } else {
                for (const std::string& line : issues)
                    std::cout << name << ": VIOLATION " << line << "\n";
                ++tally.violations;
            }
        };
        for (const Subset& s : subsets)
            audit("Z_" + subset_to_string(s), z_s(args.p, n, s));
        for (const Subset& t : subsets)
            for (const Subset& s : subsets) {
                if (!std::includes(t.begin(), t.end(), s.begin(), s.end()))
                    continue;
                audit("B[" + subset_to_string(t) + "|" + subset_to_string(s) +
                          "]",
                      b_ts(args.p, n, t, s));
            }
        if (n >= 2) audit("T(" + std::to_string(n) + ")", t_n(args.p, n));
    } else {
        std::vector<Grading> grid;
        if (!args.grading.empty())
            grid.push_back(parse_grading(args.grading, args.p, args.n).grading);
        else
            grid = range_gradings(args.range, args.n);
        if (grid.empty())
            throw ParseError("check: provide --grading or a non-empty --range");
        for (const Grading& g : grid) run_one_check(args, g, tally);
    }
    std::cout << "checks: " << tally.passed << " passed, " << tally.violations
              << " violations, " << tally.unknowns << " skipped\n";
    return tally.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact RO(G)-graded Bredon cohomology of a point for "
                 "cyclic p-groups"};
    app.require_subcommand(1);

    ComputeArgs cargs;
    CLI::App* compute = app.add_subcommand(
        "compute", "Compute one Mackey functor H^alpha and render it");
    compute->add_option("--p", cargs.p, "Prime p")->required();
    compute->add_option("--n", cargs.n, "Exponent n of the group order p^n")
        ->required();
    compute->add_option("--grading", cargs.grading,
                        "Grading text, e.g. \"2*L1 - 2*L0\"")
        ->required();
    compute->add_option("--format", cargs.format, "ascii | json | latex")
        ->check(CLI::IsMember({"ascii", "json", "latex"}));
    compute->add_option("--store", cargs.store_dir,
                        "Result store directory (default: $MACKEYCOH_STORE)");

    TableArgs targs;
    CLI::App* table = app.add_subcommand(
        "table", "Tabulate recognized values over a grading range");
    table->add_option("--p", targs.p, "Prime p")->required();
    table->add_option("--n", targs.n, "Exponent n")->required();
    table->add_option("--range", targs.range,
                      "e.g. \"a0=-4..4,a1=-4..4,c=-10..10\" (missing "
                      "variables pin to 0)")
        ->required();
    table->add_option("--format", targs.format, "csv | latex")
        ->check(CLI::IsMember({"csv", "latex"}));

    CheckArgs kargs;
    CLI::App* check = app.add_subcommand(
        "check", "Run a consistency checker over gradings or the catalog");
    check->add_option("mode", kargs.mode, "anderson | les | cone | axioms")
        ->required()
        ->check(CLI::IsMember({"anderson", "les", "cone", "axioms"}));
    check->add_option("--p", kargs.p, "Prime p")->required();
    check->add_option("--n", kargs.n, "Exponent n")->required();
    check->add_option("--grading", kargs.grading, "Single grading to check");
    check->add_option("--range", kargs.range, "Grading range to sweep");
    check->add_option("--m", kargs.m,
                      "les: which a_{lambda_m} sequence (0 <= m < n)");
    check->add_option("--window", kargs.window, "les: half-width in t");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (compute->parsed()) return run_compute(cargs);
        if (table->parsed()) return run_table(targs);
        return run_check(kargs);
    } catch (const StoreConflict& e) {
        std::cerr << "store conflict: " << e.what() << "\n";
        return kViolation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
