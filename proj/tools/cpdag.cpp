// Command line front end.  Every subcommand reads the text formats of
// graph_io.hpp / ci.hpp / background.hpp and writes to stdout.
//
// Exit codes: 0 for success (or a true answer), 1 for a negative answer
// (NO_EXPLANATION, FAIL, false), 2 for unusable input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpdag/cpdag.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

struct CommonOptions {
    std::string ci_path;
    std::string graph_path;
    std::string bk_path;
    std::string vars;
    std::string search = "exhaustive";
    std::string format = "graph";
    std::string mode = "pairwise";
    bool forbid_check_only = false;
    bool full_equivalence = false;
    int cap = 8;
    int edge_cap = 12;
    std::vector<std::string> names;
};

cpdag::SolveOptions solve_options(const CommonOptions& o) {
    cpdag::SolveOptions opts;
    opts.search = o.search == "neighborhood" ? cpdag::SkeletonSearch::neighborhood
                                             : cpdag::SkeletonSearch::exhaustive;
    opts.forbidden = o.forbid_check_only ? cpdag::ForbiddenSemantics::check_only
                                         : cpdag::ForbiddenSemantics::orient_reverse;
    opts.verify = o.full_equivalence ? cpdag::VerifyMode::full_equivalence
                                     : cpdag::VerifyMode::steps;
    opts.full_cap = o.cap;
    return opts;
}

std::vector<std::string> universe(const cpdag::DependencyModel& m, const CommonOptions& o) {
    if (o.vars.empty()) return m.vertices();
    return split_csv(o.vars);
}

void print_graph(const cpdag::Pdag& g, const CommonOptions& o) {
    std::cout << (o.format == "dot" ? cpdag::serialize_dot(g) : cpdag::serialize_graph(g));
}

std::string sep_comment(const cpdag::Pdag& g, int a, int b, cpdag::VertexMask s) {
    std::string line = "# sep " + g.name_of(a) + " " + g.name_of(b) + " |";
    bool first = true;
    for (const auto& name : g.mask_names(s)) {
        line += first ? " " + name : "," + name;
        first = false;
    }
    return line;
}

int run_skeleton(const CommonOptions& o) {
    auto m = cpdag::parse_ci(read_file(o.ci_path));
    auto sk = cpdag::build_skeleton(m, universe(m, o),
                                    o.search == "neighborhood"
                                        ? cpdag::SkeletonSearch::neighborhood
                                        : cpdag::SkeletonSearch::exhaustive);
    std::cout << cpdag::serialize_graph(sk.graph);
    for (const auto& [pair, s] : sk.sepsets.entries())
        std::cout << sep_comment(sk.graph, pair.first, pair.second, s) << "\n";
    return 0;
}

int run_pattern(const CommonOptions& o) {
    auto m = cpdag::parse_ci(read_file(o.ci_path));
    auto p = cpdag::phase1(m, universe(m, o), solve_options(o).search);
    if (!p) {
        std::cerr << "NO_EXPLANATION (" << p.error().where << "): " << p.error().reason << "\n";
        return 1;
    }
    print_graph(p.value(), o);
    return 0;
}

int run_orient(const CommonOptions& o) {
    auto m = cpdag::parse_ci(read_file(o.ci_path));
    cpdag::BackgroundKnowledge k;
    if (!o.bk_path.empty()) k = cpdag::BackgroundKnowledge::parse(read_file(o.bk_path));
    auto g = cpdag::common_orientations(m, universe(m, o), k, solve_options(o));
    if (!g) {
        std::cerr << "NO_EXPLANATION (" << g.error().where << "): " << g.error().reason << "\n";
        return 1;
    }
    print_graph(g.value(), o);
    return 0;
}

int run_extend(const CommonOptions& o) {
    auto g = cpdag::parse_graph(read_file(o.graph_path));
    auto d = cpdag::try_extend_to_dag(g);
    if (!d) {
        std::cerr << "FAIL: " << d.error().reason << "\n";
        return 1;
    }
    print_graph(d.value().graph(), o);
    return 0;
}

int run_verify(const CommonOptions& o) {
    auto g = cpdag::parse_graph(read_file(o.graph_path));
    auto m = cpdag::parse_ci(read_file(o.ci_path), g.vertex_names());
    if (o.full_equivalence) {
        if (g.undirected_edge_count() != 0) {
            std::cerr << "FAIL: undirected edges remain\n";
            return 1;
        }
        if (cpdag::has_directed_cycle(g)) {
            std::cerr << "FAIL: cyclic\n";
            return 1;
        }
        auto mismatch = cpdag::full_equivalence_mismatch(cpdag::Dag(g), m, o.cap);
        if (mismatch) {
            std::cerr << "FAIL: entailment mismatch: " << mismatch->to_string() << "\n";
            return 1;
        }
        std::cout << "OK\n";
        return 0;
    }
    auto report = cpdag::verify_explanation(g, m);
    if (!report.ok) {
        std::cerr << "FAIL: " << report.reason << "\n";
        return 1;
    }
    std::cout << "OK\n";
    return 0;
}

int run_explain(const CommonOptions& o) {
    auto m = cpdag::parse_ci(read_file(o.ci_path));
    cpdag::BackgroundKnowledge k;
    if (!o.bk_path.empty()) k = cpdag::BackgroundKnowledge::parse(read_file(o.bk_path));
    auto d = cpdag::explain(m, universe(m, o), k, solve_options(o));
    if (!d) {
        std::cerr << "NO_EXPLANATION (" << d.error().where << "): " << d.error().reason << "\n";
        return 1;
    }
    print_graph(d.value().graph(), o);
    return 0;
}

int run_count(const CommonOptions& o) {
    auto g = cpdag::parse_graph(read_file(o.graph_path));
    std::cout << cpdag::count_extensions(g, o.edge_cap) << "\n";
    return 0;
}

int run_witness(const CommonOptions& o) {
    auto g = cpdag::parse_graph(read_file(o.graph_path));
    auto [forward, backward] = cpdag::witness_extensions(g, o.names[0], o.names[1]);
    std::cout << "# extension " << o.names[0] << " -> " << o.names[1] << "\n"
              << cpdag::serialize_graph(forward) << "# extension " << o.names[1] << " -> "
              << o.names[0] << "\n"
              << cpdag::serialize_graph(backward);
    return 0;
}

int run_dsep(const CommonOptions& o) {
    auto g = cpdag::parse_graph(read_file(o.graph_path));
    std::vector<std::string> rest;
    for (size_t i = 2; i < o.names.size(); ++i)
        if (o.names[i] != "|") rest.push_back(o.names[i]);
    if (rest.size() > 1) throw std::runtime_error("dsep: expected at most one conditioning set");
    std::vector<std::string> s;
    if (!rest.empty()) s = split_csv(rest[0]);
    bool sep = cpdag::d_separated(cpdag::Dag(g), split_csv(o.names[0]), split_csv(o.names[1]), s);
    std::cout << (sep ? "true\n" : "false\n");
    return sep ? 0 : 1;
}

int run_equiv(const CommonOptions& o) {
    cpdag::Dag g1(cpdag::parse_graph(read_file(o.names[0])));
    cpdag::Dag g2(cpdag::parse_graph(read_file(o.names[1])));
    bool eq = cpdag::markov_equivalent(g1, g2);
    std::cout << (eq ? "true\n" : "false\n");
    return eq ? 0 : 1;
}

int run_fromdag(const CommonOptions& o) {
    cpdag::Dag g(cpdag::parse_graph(read_file(o.graph_path)));
    auto mode = o.mode == "full" ? cpdag::GenerationMode::full : cpdag::GenerationMode::pairwise;
    std::cout << cpdag::serialize_ci(cpdag::from_dag(g, mode, o.cap));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complete causal explanations for conditional independence statements"};
    app.require_subcommand(1);
    CommonOptions o;

    auto add_ci = [&](CLI::App* c) {
        c->add_option("--ci", o.ci_path, "independence statements file")->required();
        c->add_option("--vars", o.vars, "comma-separated vertex universe (default: the "
                                        "vertices mentioned in the statements)");
    };
    auto add_search = [&](CLI::App* c) {
        c->add_option("--search", o.search, "skeleton search: exhaustive or neighborhood")
            ->check(CLI::IsMember({"exhaustive", "neighborhood"}));
    };
    auto add_format = [&](CLI::App* c) {
        c->add_option("--format", o.format, "output format: graph or dot")
            ->check(CLI::IsMember({"graph", "dot"}));
    };
    auto add_bk = [&](CLI::App* c) {
        c->add_option("--bk", o.bk_path, "background knowledge file");
        c->add_flag("--forbid-check-only", o.forbid_check_only,
                    "treat forbidden edges as checks; do not orient the reverse direction");
    };
    auto add_verify_opts = [&](CLI::App* c) {
        c->add_flag("--full-equivalence", o.full_equivalence,
                    "verify by exhaustive comparison of listed and entailed statements");
        c->add_option("--cap", o.cap, "vertex cap for exhaustive entailment enumeration");
    };

    auto* skeleton = app.add_subcommand("skeleton", "undirected skeleton and separators");
    add_ci(skeleton);
    add_search(skeleton);

    auto* pattern = app.add_subcommand("pattern", "skeleton with collider orientations");
    add_ci(pattern);
    add_search(pattern);
    add_format(pattern);

    auto* orient = app.add_subcommand("orient", "orientations common to every explanation");
    add_ci(orient);
    add_search(orient);
    add_format(orient);
    add_bk(orient);
    add_verify_opts(orient);

    auto* extend = app.add_subcommand("extend", "extend a maximally oriented graph to a DAG");
    extend->add_option("--graph", o.graph_path, "graph file")->required();
    add_format(extend);

    auto* verify = app.add_subcommand("verify", "check a DAG against an independence list");
    verify->add_option("--graph", o.graph_path, "graph file")->required();
    verify->add_option("--ci", o.ci_path, "independence statements file")->required();
    add_verify_opts(verify);

    auto* explain = app.add_subcommand("explain", "produce a complete causal explanation");
    add_ci(explain);
    add_search(explain);
    add_format(explain);
    add_bk(explain);
    add_verify_opts(explain);

    auto* count = app.add_subcommand("count", "number of consistent extensions");
    count->add_option("--graph", o.graph_path, "graph file")->required();
    count->add_option("--edge-cap", o.edge_cap, "per-component undirected edge cap");

    auto* witness = app.add_subcommand("witness",
                                       "two extensions disagreeing on an undirected edge");
    witness->add_option("vertices", o.names, "edge endpoints A B")->expected(2);
    witness->add_option("--graph", o.graph_path, "graph file")->required();

    auto* dsep = app.add_subcommand("dsep", "d-separation query A B [S] on a DAG");
    dsep->add_option("query", o.names, "A B [S] with S a comma-separated set")
        ->expected(2, 4);
    dsep->add_option("--graph", o.graph_path, "graph file")->required();

    auto* equiv = app.add_subcommand("equiv", "Markov equivalence of two DAGs");
    equiv->add_option("graphs", o.names, "two graph files")->expected(2);

    auto* fromdag = app.add_subcommand("fromdag", "independencies entailed by a DAG");
    fromdag->add_option("--graph", o.graph_path, "graph file")->required();
    fromdag->add_option("--mode", o.mode, "pairwise or full")
        ->check(CLI::IsMember({"pairwise", "full"}));
    fromdag->add_option("--cap", o.cap, "vertex cap for full mode");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (skeleton->parsed()) return run_skeleton(o);
        if (pattern->parsed()) return run_pattern(o);
        if (orient->parsed()) return run_orient(o);
        if (extend->parsed()) return run_extend(o);
        if (verify->parsed()) return run_verify(o);
        if (explain->parsed()) return run_explain(o);
        if (count->parsed()) return run_count(o);
        if (witness->parsed()) return run_witness(o);
        if (dsep->parsed()) return run_dsep(o);
        if (equiv->parsed()) return run_equiv(o);
        if (fromdag->parsed()) return run_fromdag(o);
    } catch (const cpdag::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
