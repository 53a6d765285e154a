#include "cbc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cbc/bounds.hpp"
#include "cbc/constructions.hpp"
#include "cbc/core.hpp"
#include "cbc/matrix_io.hpp"
#include "cbc/search.hpp"
#include "cbc/verifier.hpp"

namespace cbc {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string join_one_based(const std::vector<std::size_t>& values) {
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i] + 1;
    return os.str();
}

std::string describe_violation(const Violation& v) {
    std::ostringstream os;
    os << v.items.size() << " items span " << weight(v.spanned) << " server" << (weight(v.spanned) == 1 ? "" : "s");
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << content)) throw UsageError("cannot write " + path);
}

IncidenceMatrix first_columns(const IncidenceMatrix& matrix, std::size_t n) {
    if (n > matrix.cols())
        throw UsageError("this method yields at most " + std::to_string(matrix.cols()) + " items");
    auto cols = matrix.columns();
    return IncidenceMatrix(matrix.rows(), std::vector<Mask>(cols.begin(), cols.begin() + static_cast<long>(n)));
}

IncidenceMatrix identity_code(std::size_t n, std::size_t m) {
    if (n > m) throw UsageError("identity needs n <= m");
    std::vector<Mask> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(bit(j));
    return IncidenceMatrix(m, cols);
}

IncidenceMatrix replication_prefix(std::size_t n, std::size_t m, std::size_t c) {
    const std::uint64_t per_copy = binomial(m, c);
    const std::uint64_t copies = (n + per_copy - 1) / per_copy;
    return first_columns(construct_uniform_replication(m, c, copies), n);
}

struct Built {
    IncidenceMatrix matrix;
    std::string method;
};

struct ConstructArgs {
    std::size_t n = 0, k = 0, m = 0, t = 1, c = 0;
    std::string method = "auto";
    std::string out;
    bool json = false;
};

Built build(const ConstructArgs& a) {
    CodeParams{a.n, a.k, a.m, a.t}.validate();
    if (a.m > kMaxServers) throw UsageError("m must be at most 64");
    const std::string& method = a.method;
    auto need_t1 = [&] {
        if (a.t != 1) throw UsageError(method + " needs t = 1");
    };
    auto need_k_le_m = [&](std::size_t lo) {
        if (a.k < lo || a.k > a.m)
            throw UsageError(method + " needs " + std::to_string(lo) + " <= k <= m");
    };

    if (method == "identity") return {identity_code(a.n, a.m), method};
    if (method == "grouped") {
        need_t1();
        need_k_le_m(2);
        const std::uint64_t full = (a.k - 1) * binomial(a.m, a.k - 1);
        if (a.n != full) throw UsageError("grouped needs n = " + std::to_string(full));
        return {grouped_matrix(a.m, a.k).flatten(), method};
    }
    if (method == "range") {
        need_t1();
        need_k_le_m(3);
        return {construct_range(a.n, a.k, a.m).matrix, method};
    }
    if (method == "saturated") {
        need_t1();
        need_k_le_m(2);
        return {construct_saturated(a.n, a.k, a.m), method};
    }
    if (method == "spread") {
        if (a.m != a.k) throw UsageError("spread needs m = k");
        return {construct_spread(a.n, a.k, a.t), method};
    }
    if (method == "uniform-replication") {
        if (a.c < 1 || a.c > a.m) throw UsageError("uniform-replication needs --c with 1 <= c <= m");
        return {replication_prefix(a.n, a.m, a.c), method + " (c=" + std::to_string(a.c) + ")"};
    }
    if (method == "pairs-augmented") {
        if (a.t != 2 || (a.k != 9 && a.k != 10)) throw UsageError("pairs-augmented needs t = 2 and k in {9, 10}");
        if (a.m < 3) throw UsageError("pairs-augmented needs m >= 3");
        const Graph extra = a.k == 9 ? construct_path_pack(a.m) : construct_girth5(a.m);
        return {first_columns(augment_pairs_code(a.m, extra, a.k), a.n), method};
    }
    if (method != "auto") throw UsageError("unknown method " + method);

    if (a.t == 1) {
        if (a.n <= a.m) return {identity_code(a.n, a.m), "identity"};
        if (a.k > a.m) throw UsageError("no code exists with k > m and t = 1");
        const std::uint64_t full = (a.k - 1) * binomial(a.m, a.k - 1);
        if (a.n == full) return {grouped_matrix(a.m, a.k).flatten(), "grouped"};
        if (a.n > full) return {construct_saturated(a.n, a.k, a.m), "saturated"};
        if (a.k >= 3 && a.n >= binomial(a.m, a.k - 2)) return {construct_range(a.n, a.k, a.m).matrix, "range"};
        throw UsageError("no construction for these parameters; try 'search min-storage'");
    }
    if (a.m == a.k && a.n <= a.t * a.k) return {construct_spread(a.n, a.k, a.t), "spread"};
    if (a.n <= a.m) return {identity_code(a.n, a.m), "identity"};
    for (std::size_t c = 1; c <= a.m; ++c) {
        auto candidate = replication_prefix(a.n, a.m, c);
        if (is_cbc(candidate, a.k, a.t).valid)
            return {std::move(candidate), "uniform-replication (c=" + std::to_string(c) + ")"};
    }
    throw UsageError("no construction for these parameters");
}

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
    const Built built = build(a);
    const auto check = is_cbc(built.matrix, a.k, a.t);
    std::vector<std::string> summary;
    summary.push_back("n=" + std::to_string(built.matrix.cols()));
    summary.push_back("N=" + std::to_string(total_storage(built.matrix)));
    summary.push_back("method=" + built.method);
    summary.push_back(std::string("verification=") + (check.valid ? "VALID" : "INVALID"));
    if (a.t == 1 && a.k <= a.m) summary.push_back("optimum: " + optimal_N(a.n, a.k, a.m).describe());

    const MatrixFile file{built.matrix, a.k, a.t};
    if (!a.out.empty()) {
        write_file(a.out, a.json ? to_json(file) : to_text(file, summary));
        for (const auto& line : summary) out << line << '\n';
    } else if (a.json) {
        out << to_json(file);
        for (const auto& line : summary) err << line << '\n';
    } else {
        out << to_text(file, summary);
    }
    return check.valid ? kExitOk : kExitInvalid;
}

struct VerifyArgs {
    std::string path;
    std::size_t k = 0, t = 0;
    bool naive = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const MatrixFile file = read_matrix_file(a.path);
    const std::size_t k = a.k ? a.k : file.k;
    const std::size_t t = a.t ? a.t : file.t;
    if (k > file.matrix.cols()) throw UsageError("k exceeds the number of items");
    const auto check = is_cbc(file.matrix, k, t);
    bool valid = check.valid;
    if (a.naive) valid = naive_is_cbc(file.matrix, k, t);
    if (valid) {
        out << "VALID\n";
        return kExitOk;
    }
    if (check.witness) {
        out << "INVALID: " << describe_violation(*check.witness) << '\n';
        out << "items " << join_one_based(check.witness->items) << " -> servers "
            << format_servers(check.witness->spanned) << '\n';
    } else {
        out << "INVALID\n";
    }
    return kExitInvalid;
}

struct BoundArgs {
    std::size_t n = 0, k = 0, m = 0, t = 1, c = 0, v = 0;
};

struct BudgetArgs {
    std::uint64_t max_nodes = SearchBudget{}.max_nodes;
    double max_seconds = SearchBudget{}.max_seconds;
    SearchBudget budget() const { return SearchBudget{max_nodes, max_seconds}; }
};

struct SearchArgs {
    std::size_t n = 0, k = 0, m = 0, t = 1, c = 0, v = 0, triangles = 0;
    std::string out;
    BudgetArgs budget;
};

void print_graph(const Graph& g, std::ostream& out) {
    out << "edges:";
    for (auto [a, b] : g.edges()) out << ' ' << a + 1 << '-' << b + 1;
    out << '\n';
}

void emit_witness(const IncidenceMatrix& matrix, std::size_t k, std::size_t t, const std::string& path,
                  std::ostream& out) {
    const MatrixFile file{matrix, k, t};
    if (!path.empty())
        write_file(path, to_text(file));
    else
        out << to_text(file);
}

int status_exit(SearchStatus status) {
    switch (status) {
        case SearchStatus::Optimal:
        case SearchStatus::Found:
        case SearchStatus::Unbounded: return kExitOk;
        case SearchStatus::Infeasible:
        case SearchStatus::NotFound: return kExitInvalid;
        case SearchStatus::Exhausted: return kExitExhausted;
    }
    return kExitExhausted;
}

int search_min_storage(const SearchArgs& a, std::ostream& out) {
    const auto r = min_storage_search(CodeParams{a.n, a.k, a.m, a.t}, a.budget.budget());
    if (r.status == SearchStatus::Exhausted) {
        out << "EXHAUSTED";
        if (r.storage) out << " (best so far N=" << *r.storage << ")";
        out << '\n';
    } else if (r.status == SearchStatus::Optimal) {
        out << *r.storage << " OPTIMAL\n";
    } else {
        out << to_string(r.status) << '\n';
    }
    out << "nodes " << r.nodes << '\n';
    if (r.witness) emit_witness(*r.witness, a.k, a.t, a.out, out);
    return status_exit(r.status);
}

int search_max_uniform(const SearchArgs& a, std::ostream& out) {
    const auto r = max_uniform_n_search(a.m, a.c, a.k, a.t, a.budget.budget());
    if (r.status == SearchStatus::Exhausted)
        out << "EXHAUSTED (best so far n=" << r.n.value_or(0) << ")\n";
    else if (r.status == SearchStatus::Unbounded)
        out << "UNBOUNDED\n";
    else
        out << *r.n << " OPTIMAL\n";
    out << "nodes " << r.nodes << '\n';
    if (r.witness && r.witness->cols() >= a.k) emit_witness(*r.witness, a.k, a.t, a.out, out);
    return status_exit(r.status);
}

int search_g8(const SearchArgs& a, std::ostream& out) {
    const auto r = find_span_witness_graph(a.v, a.triangles, a.k, a.budget.budget());
    if (r.status == SearchStatus::Found) {
        out << "FOUND " << r.triangles.size() << " triangles\n";
        print_graph(*r.graph, out);
        const auto code = triangle_code(*r.graph, r.triangles);
        if (code.cols() >= a.k) {
            out << "triangle code (" << code.cols() << ',' << total_storage(code) << ',' << a.k << ',' << a.v
                << "): " << (is_cbc(code, a.k, 1).valid ? "VALID" : "INVALID") << '\n';
            emit_witness(code, a.k, 1, a.out, out);
        }
    } else {
        out << to_string(r.status) << " (best " << r.best_triangles << " triangles)\n";
    }
    out << "nodes " << r.nodes << '\n';
    return status_exit(r.status);
}

int search_girth5(const SearchArgs& a, std::ostream& out) {
    const auto r = max_girth5_edges_search(a.v, a.budget.budget());
    if (r.status == SearchStatus::Exhausted)
        out << "EXHAUSTED (at least " << r.edges << " edges)\n";
    else
        out << r.edges << " OPTIMAL\n";
    if (r.witness) print_graph(*r.witness, out);
    out << "nodes " << r.nodes << '\n';
    return status_exit(r.status);
}

int report_table1(std::ostream& out) {
    const auto built = construct_range(15, 4, 6);
    out << "step  deleted     modified  new column  n   N\n";
    std::size_t step = 0;
    for (const auto& s : built.trace.steps) {
        ++step;
        std::string content(6, '0');
        for (auto r : mask_indices(s.new_content)) content[r] = '1';
        std::ostringstream row;
        row << std::left << std::setw(6) << step << std::setw(12) << join_one_based(s.deleted) << std::setw(10)
            << (s.modified ? std::to_string(*s.modified + 1) : "-") << std::setw(12)
            << (s.modified ? "(" + content + ")" : "-") << std::setw(4) << s.n_after << s.storage_after;
        out << row.str() << '\n';
    }
    return kExitOk;
}

int report_compare(std::ostream& out) {
    struct Row {
        std::size_t n, m, k;
        std::uint64_t published_t1;
    };
    static constexpr Row kRows[] = {{180, 10, 5, 640}, {180, 10, 6, 684}, {720, 10, 7, 4185}, {240, 10, 9, 1860}};
    constexpr std::size_t t = 2;

    out << "n    m   k  N(t=1)*  N(t=2)  c  source       check\n";
    for (const auto& row : kRows) {
        std::ostringstream line;
        line << std::left << std::setw(5) << row.n << std::setw(4) << row.m << std::setw(3) << row.k << std::setw(9)
             << row.published_t1;
        bool placed = false;
        for (std::size_t c = 1; c <= row.m && !placed; ++c) {
            const auto bound = uniform_max_n_t(row.m, c, row.k, t);
            if (bound.kind != BoundKind::Exact || *bound.value != row.n) continue;
            const auto matrix = construct_uniform_replication(row.m, c, row.n / binomial(row.m, c));
            const bool valid = is_cbc(matrix, row.k, t).valid;
            line << std::setw(8) << total_storage(matrix) << std::setw(3) << c << std::setw(13) << bound.provenance
                 << (valid ? "VALID" : "INVALID");
            placed = true;
        }
        if (!placed) line << "-       -  -            UNKNOWN";
        out << line.str() << '\n';
    }
    out << "* N(t=1): published values, NOT-VERIFIED; no construction here reproduces them\n";
    out << "published witness graphs for the rate-1/3 bounds: edge lists not reproduced, NOT-VERIFIED\n";
    return kExitOk;
}

int bound_N(const BoundArgs& a, std::ostream& out) {
    const auto r = a.t == 1 ? optimal_N(a.n, a.k, a.m) : optimal_N_t(a.n, a.k, a.m, a.t);
    out << r.describe() << '\n';
    return kExitOk;
}

int bound_uniform(const BoundArgs& a, std::ostream& out) {
    if (a.t == 1 && a.c < a.m) {
        for (const auto& r : uniform_max_n(a.m, a.c, a.k)) {
            out << r.describe();
            if (r.ambiguous) out << " [ambiguous transcription]";
            out << '\n';
        }
    } else {
        out << uniform_max_n_t(a.m, a.c, a.k, a.t).describe() << '\n';
    }
    return kExitOk;
}

int bound_tiling(const BoundArgs& a, std::ostream& out) {
    const auto b = tiling_bound(a.m);
    out << "Δ ≥ " << b.delta << " (d=" << b.d << ", g=" << b.g << ", s=" << b.s << ", e=" << b.e << ")\n";
    if (b.m_prime > 0)
        out << "full levels give " << b.delta_prime << " on " << a.m - b.m_prime << " servers; " << b.m_prime
            << " left over (j=" << b.j << ", best i=" << b.best_i << ")\n";
    return kExitOk;
}

int bound_girth5(const BoundArgs& a, std::ostream& out) {
    out << girth5_edge_bound(a.v) << " LOWER (Lemma 3)\n";
    return kExitOk;
}

void add_budget(CLI::App* cmd, BudgetArgs& b) {
    cmd->add_option("--max-nodes", b.max_nodes, "node budget")->check(CLI::PositiveNumber);
    cmd->add_option("--max-seconds", b.max_seconds, "time budget in seconds")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Construct, verify and bound combinatorial batch codes", "cbc"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "build a code and write it as a matrix file");
    construct->add_option("--n", ca.n, "items")->required()->check(CLI::PositiveNumber);
    construct->add_option("--k", ca.k, "batch size")->required()->check(CLI::PositiveNumber);
    construct->add_option("--m", ca.m, "servers")->required()->check(CLI::PositiveNumber);
    construct->add_option("--t", ca.t, "reads per server")->check(CLI::PositiveNumber);
    construct->add_option("--c", ca.c, "column weight for uniform-replication")->check(CLI::PositiveNumber);
    construct
        ->add_option("--method", ca.method)
        ->check(CLI::IsMember({"auto", "grouped", "range", "saturated", "spread", "uniform-replication",
                               "pairs-augmented", "identity"}));
    construct->add_option("--out", ca.out, "output path");
    construct->add_flag("--json", ca.json, "write JSON instead of text");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check a matrix file");
    verify->add_option("file", va.path)->required();
    verify->add_option("--k", va.k, "batch size (default: from the file)")->check(CLI::PositiveNumber);
    verify->add_option("--t", va.t, "reads per server (default: from the file)")->check(CLI::PositiveNumber);
    verify->add_flag("--naive", va.naive, "also enumerate every k-subset");

    BoundArgs ba;
    auto* bound = app.add_subcommand("bound", "closed-form values and bounds");
    bound->require_subcommand(1);
    auto* bound_n = bound->add_subcommand("N", "optimal storage");
    bound_n->add_option("--n", ba.n)->required()->check(CLI::PositiveNumber);
    bound_n->add_option("--k", ba.k)->required()->check(CLI::PositiveNumber);
    bound_n->add_option("--m", ba.m)->required()->check(CLI::PositiveNumber);
    bound_n->add_option("--t", ba.t)->check(CLI::PositiveNumber);
    auto* bound_u = bound->add_subcommand("uniform", "maximum n of a weight-c code");
    bound_u->add_option("--m", ba.m)->required()->check(CLI::PositiveNumber);
    bound_u->add_option("--c", ba.c)->required()->check(CLI::PositiveNumber);
    bound_u->add_option("--k", ba.k)->required()->check(CLI::PositiveNumber);
    bound_u->add_option("--t", ba.t)->check(CLI::PositiveNumber);
    auto* bound_tiling_cmd = bound->add_subcommand("tiling", "rate-1/3 tiling lower bound");
    bound_tiling_cmd->add_option("--m", ba.m)->required()->check(CLI::PositiveNumber);
    auto* bound_g5 = bound->add_subcommand("girth5", "edges of a triangle- and square-free graph");
    bound_g5->add_option("--v", ba.v)->required()->check(CLI::PositiveNumber);

    auto* report = app.add_subcommand("report", "reproduce reference tables");
    report->require_subcommand(1);
    auto* report_t1 = report->add_subcommand("table1", "range construction steps for m=6, k=4");
    auto* report_cmp = report->add_subcommand("compare", "storage for t=1 and t=2");

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "exhaustive oracles");
    search->require_subcommand(1);
    auto* s_min = search->add_subcommand("min-storage", "minimum N over all matrices");
    s_min->add_option("--n", sa.n)->required()->check(CLI::PositiveNumber);
    s_min->add_option("--k", sa.k)->required()->check(CLI::PositiveNumber);
    s_min->add_option("--m", sa.m)->required()->check(CLI::PositiveNumber);
    s_min->add_option("--t", sa.t)->check(CLI::PositiveNumber);
    s_min->add_option("--out", sa.out, "witness path");
    add_budget(s_min, sa.budget);
    auto* s_uni = search->add_subcommand("max-uniform", "maximum n of a weight-c code");
    s_uni->add_option("--m", sa.m)->required()->check(CLI::PositiveNumber);
    s_uni->add_option("--c", sa.c)->required()->check(CLI::PositiveNumber);
    s_uni->add_option("--k", sa.k)->required()->check(CLI::PositiveNumber);
    s_uni->add_option("--t", sa.t)->check(CLI::PositiveNumber);
    s_uni->add_option("--out", sa.out, "witness path");
    add_budget(s_uni, sa.budget);
    auto* s_g8 = search->add_subcommand("g8", "graph whose triangles form a code");
    s_g8->add_option("--v", sa.v)->required()->check(CLI::PositiveNumber);
    s_g8->add_option("--triangles", sa.triangles)->required();
    s_g8->add_option("--k", sa.k)->required()->check(CLI::PositiveNumber);
    s_g8->add_option("--out", sa.out, "path for the triangle code");
    add_budget(s_g8, sa.budget);
    auto* s_g5 = search->add_subcommand("girth5", "maximum edges without triangles or squares");
    s_g5->add_option("--v", sa.v)->required()->check(CLI::PositiveNumber);
    add_budget(s_g5, sa.budget);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (construct->parsed()) return cmd_construct(ca, out, err);
        if (verify->parsed()) return cmd_verify(va, out);
        if (bound_n->parsed()) return bound_N(ba, out);
        if (bound_u->parsed()) return bound_uniform(ba, out);
        if (bound_tiling_cmd->parsed()) return bound_tiling(ba, out);
        if (bound_g5->parsed()) return bound_girth5(ba, out);
        if (report_t1->parsed()) return report_table1(out);
        if (report_cmp->parsed()) return report_compare(out);
        if (s_min->parsed()) return search_min_storage(sa, out);
        if (s_uni->parsed()) return search_max_uniform(sa, out);
        if (s_g8->parsed()) return search_g8(sa, out);
        if (s_g5->parsed()) return search_girth5(sa, out);
    } catch (const ForbiddenConfiguration& e) {
        std::vector<std::size_t> vs(e.vertices().begin(), e.vertices().end());
        err << "error: forbidden configuration (" << e.shape() << ") on vertices " << join_one_based(vs) << '\n';
        return kExitUsage;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    err << "error: no command\n";
    return kExitUsage;
}

}  // namespace cbc
