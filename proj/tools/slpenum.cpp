#include "slpenum/generators.hpp"
#include "slpenum/mso_enum.hpp"
#include "slpenum/oracle.hpp"
#include "slpenum/updates.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace slpenum;

namespace {

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InvalidInput("cannot open '" + path + "'");
        ss << in.rdbuf();
    }
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << text;
}

uint32_t pick_vertex(const Fslp& g, int64_t requested) {
    if (g.size() == 0) throw InvalidInput("the f-SLP has no nodes");
    if (requested < 0) return g.roots.empty() ? static_cast<uint32_t>(g.size() - 1) : g.roots.front();
    if (static_cast<uint64_t>(requested) >= g.size())
        throw InvalidInput(fmt::format("unknown vertex {} (the f-SLP has {} nodes)", requested, g.size()));
    return static_cast<uint32_t>(requested);
}

uint32_t forest_vertex(const Fslp& g, const VertexStats& st, int64_t requested) {
    uint32_t a = pick_vertex(g, requested);
    if (st.tau[a] != 0) throw InvalidInput(fmt::format("vertex {} evaluates to a context, not a forest", a));
    return a;
}

std::string format_set(std::vector<BigNat> s, bool json) {
    std::sort(s.begin(), s.end());
    if (!json && s.empty()) return "-";
    std::string out = json ? "[" : "";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += json ? "," : " ";
        out += s[i].str();
    }
    return json ? out + "]" : out;
}

std::string format_family(const Family& f) {
    std::string out;
    for (const auto& s : f) {
        std::vector<BigNat> b(s.begin(), s.end());
        out += format_set(b, false) + "\n";
    }
    return out + "EOE\n";
}

struct EnumerateOptions {
    std::size_t limit = SIZE_MAX;
    bool json = false;
    bool instrument = false;
};

void stream_answers(const EnumDataStructure& eds, uint32_t a, const EnumerateOptions& opt) {
    auto s = eds.enumerate(a);
    if (opt.json) std::fputs("[", stdout);
    std::size_t count = 0;
    while (count < opt.limit) {
        auto ans = s.next();
        if (!ans) break;
        std::string line = format_set(*ans, opt.json);
        if (opt.json)
            std::fputs(count ? ",\n" : "\n", stdout);
        else
            line += "\n";
        std::fputs(line.c_str(), stdout);
        if (opt.instrument)
            fmt::print(stderr, "answer {}: size {} steps {} witness {}\n", count, ans->size(), s.last_steps(),
                       s.witness_size());
        ++count;
    }
    std::fputs(opt.json ? "\n]\n" : "EOE\n", stdout);
}

struct BenchOptions {
    std::string family = "chain";
    std::size_t size = 1000;
    uint64_t seed = 1;
    std::size_t limit = 1000;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench(const BenchOptions& o) {
    using Clock = std::chrono::steady_clock;
    if (o.family == "fig2") {
        auto d = ls_family(o.size);
        auto t0 = Clock::now();
        auto idx = preprocess<SumCategory>(d);
        double pre = seconds_since(t0);
        auto s = idx.open(0);
        uint64_t worst = 0, outputs = 0;
        t0 = Clock::now();
        while (outputs < o.limit && s.next()) {
            worst = std::max(worst, s.last_steps());
            ++outputs;
        }
        double run = seconds_since(t0);
        fmt::print("family fig2\nsize {}\ndag_vertices {}\npreprocess_seconds {:.6f}\noutputs {}\nmax_steps {}\n"
                   "outputs_per_second {:.0f}\n",
                   o.size, d.size(), pre, outputs, worst, run > 0 ? outputs / run : 0.0);
        return;
    }
    Fslp g;
    Nsta q;
    if (o.family == "chain") {
        g = chain_fslp(o.size);
        q = select_label_nsta(Symbol::intern("b"));
    } else if (o.family == "wide") {
        if (o.size > 60) throw InvalidInput("wide family size is the exponent k and must be at most 60");
        g = wide_fslp(static_cast<uint32_t>(o.size));
        q = select_one_nsta();
    } else if (o.family == "random") {
        Rng rng(o.seed);
        auto sigma = alphabet(3);
        g = compress_forest(random_forest(rng, std::max<std::size_t>(o.size, 1), sigma));
        q = random_nsta(rng, 3, sigma, 0.4);
    } else {
        throw InvalidInput("unknown family '" + o.family + "' (expected chain, wide, fig2 or random)");
    }
    auto t0 = Clock::now();
    auto eds = build_enum(g, q);
    double pre = seconds_since(t0);
    auto s = eds.enumerate(g.roots.front());
    uint64_t worst = 0, answers = 0, total_size = 0;
    t0 = Clock::now();
    while (answers < o.limit) {
        auto ans = s.next();
        if (!ans) break;
        worst = std::max(worst, s.last_steps());
        total_size += ans->size();
        ++answers;
    }
    double run = seconds_since(t0);
    const auto& st = eds.stats();
    uint32_t r = g.roots.front();
    fmt::print("family {}\nsize {}\nfslp_nodes {}\nforest_vertices {}\nheight {}\nautomaton_states {}\n"
               "product_vertices {}\npreprocess_seconds {:.6f}\nanswers {}\nanswer_elements {}\nmax_steps {}\n"
               "answers_per_second {:.0f}\n",
               o.family, o.size, g.size(), st.n[r].str(), st.height[r], eds.automaton().state_count(),
               eds.product_size(), pre, answers, total_size, worst, run > 0 ? answers / run : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enumeration of tree-automaton query answers over forest straight-line programs"};
    app.require_subcommand(1);
    std::size_t budget = 0;
    app.add_option("--budget", budget, "Materialization budget (default 10^6 or SLPENUM_BUDGET)")
        ->check(CLI::PositiveNumber);

    std::string in, in2, out = "-";
    int64_t vertex = -1;

    auto* compress = app.add_subcommand("compress", "Compress a term file into an f-SLP");
    compress->add_option("input", in, "Term file or -")->required();
    compress->add_option("-o,--output", out, "Output file");

    auto* decompress = app.add_subcommand("decompress", "Print the forest of an f-SLP vertex");
    decompress->add_option("input", in, "f-SLP file or -")->required();
    decompress->add_option("--vertex", vertex, "Node id (default: first root)");

    auto* stats = app.add_subcommand("stats", "Print per-node statistics");
    stats->add_option("input", in, "f-SLP file or -")->required();
    stats->add_option("--vertex", vertex, "Only this node");

    auto* validate = app.add_subcommand("validate", "Check typing of an f-SLP or an expression");
    validate->add_option("input", in, "f-SLP file, expression file, or -")->required();

    auto* oracle = app.add_subcommand("oracle", "Brute-force answers on an explicit forest");
    oracle->add_option("forest", in, "Term file")->required();
    oracle->add_option("query", in2, "nSTA file")->required();

    EnumerateOptions eopt;
    std::string format = "lines";
    auto* enumerate = app.add_subcommand("enumerate", "Enumerate the answers of a query");
    enumerate->add_option("fslp", in, "f-SLP file")->required();
    enumerate->add_option("query", in2, "nSTA file")->required();
    enumerate->add_option("--vertex", vertex, "Forest node (default: first root)");
    enumerate->add_option("--limit", eopt.limit, "Stop after this many answers")->check(CLI::NonNegativeNumber);
    enumerate->add_option("--format", format, "lines or json")->check(CLI::IsMember({"lines", "json"}));
    enumerate->add_flag("--instrument", eopt.instrument, "Per-answer step counts on standard error");

    std::string preorder, symbol;
    bool do_gc = false;
    auto* relabel_cmd = app.add_subcommand("relabel", "Relabel one vertex of the forest of a node");
    relabel_cmd->add_option("fslp", in, "f-SLP file")->required();
    relabel_cmd->add_option("--vertex", vertex, "Forest node (default: first root)");
    relabel_cmd->add_option("--preorder", preorder, "Preorder number of the vertex to relabel")->required();
    relabel_cmd->add_option("--symbol", symbol, "New label")->required();
    relabel_cmd->add_option("-o,--output", out, "Output file");
    relabel_cmd->add_flag("--gc", do_gc, "Drop nodes unreachable from the roots");

    BenchOptions bopt;
    auto* bench_cmd = app.add_subcommand("bench", "Preprocessing and delay measurements");
    bench_cmd->add_option("--family", bopt.family, "chain, wide, fig2 or random")
        ->check(CLI::IsMember({"chain", "wide", "fig2", "random"}));
    bench_cmd->add_option("--size", bopt.size, "Instance size (exponent k for wide)");
    bench_cmd->add_option("--seed", bopt.seed, "Random seed");
    bench_cmd->add_option("--limit", bopt.limit, "Answers to enumerate");

    CLI11_PARSE(app, argc, argv);
    if (budget) setenv("SLPENUM_BUDGET", std::to_string(budget).c_str(), 1);

    try {
        if (*compress) {
            Fslp g = compress_forest(parse_term(read_input(in)));
            auto st = compute_stats(g);
            uint32_t r = g.roots.front();
            write_output(out, write_fslp(g));
            fmt::print(stderr, "nodes {} vertices {} height {}\n", g.size(), st.n[r].str(), st.height[r]);
        } else if (*decompress) {
            Fslp g = read_fslp(read_input(in));
            auto st = compute_stats(g);
            uint32_t a = pick_vertex(g, vertex);
            Forest f = evaluate(g, a);
            fmt::print("{}\n", serialize_term(f));
        } else if (*stats) {
            Fslp g = read_fslp(read_input(in));
            auto st = compute_stats(g);
            auto line = [&](uint32_t v) {
                fmt::print("node {} tau {} s {} ell {} n {} height {}\n", v, st.tau[v], st.s[v].str(), st.ell[v].str(),
                           st.n[v].str(), st.height[v]);
            };
            if (vertex >= 0) {
                line(pick_vertex(g, vertex));
            } else {
                for (uint32_t v = 0; v < g.size(); ++v) line(v);
                for (uint32_t r : g.roots) fmt::print("root {} N {} height {}\n", r, st.n[r].str(), st.height[r]);
            }
        } else if (*validate) {
            std::string text = read_input(in);
            auto bt = build_btau();
            std::string trimmed = text.substr(text.find_first_not_of(" \t\r\n") == std::string::npos
                                                  ? text.size()
                                                  : text.find_first_not_of(" \t\r\n"));
            if (trimmed.rfind("fslp", 0) == 0) {
                Fslp g = read_fslp(text);
                auto q = dbuta_run_nodes(*bt, g);
                for (uint32_t v = 0; v < g.size(); ++v)
                    if (!bt->accepting(q[v])) {
                        fmt::print(stderr, "invalid: node {} is not a valid expression\n", v);
                        return 1;
                    }
                fmt::print("valid f-SLP: {} nodes\n", g.size());
            } else {
                Expr e = parse_expr(trimmed.substr(0, trimmed.find_last_not_of(" \t\r\n") + 1));
                State q = dbuta_run(*bt, e, {});
                if (!bt->accepting(q)) {
                    fmt::print(stderr, "invalid: the expression has no type\n");
                    return 1;
                }
                fmt::print("valid expression of type {}\n", q);
            }
        } else if (*oracle) {
            Forest f = parse_term(read_input(in));
            Nsta a = read_nsta(read_input(in2));
            std::fputs(format_family(brute_select(a, f)).c_str(), stdout);
        } else if (*enumerate) {
            Fslp g = read_fslp(read_input(in));
            Nsta a = read_nsta(read_input(in2));
            auto st = compute_stats(g);
            uint32_t v = forest_vertex(g, st, vertex);
            auto eds = build_enum(g, a);
            eopt.json = format == "json";
            stream_answers(eds, v, eopt);
        } else if (*relabel_cmd) {
            Fslp g = read_fslp(read_input(in));
            auto st = compute_stats(g);
            uint32_t a = forest_vertex(g, st, vertex);
            BigNat k;
            try {
                k = BigNat(preorder);
            } catch (const std::exception&) {
                throw InvalidInput("--preorder expects a non-negative integer");
            }
            uint32_t height = st.height[a];
            auto r = relabel(g, a, k, Symbol::intern(symbol));
            if (r.added > height + 1) throw std::logic_error("relabel added more than height+1 nodes");
            uint32_t root = r.new_root;
            if (do_gc) {
                std::vector<uint32_t> remap;
                g = gc(g, g.roots, &remap);
                root = remap[root];
            }
            write_output(out, write_fslp(g));
            fmt::print(stderr, "added {} new root {} height bound {}\n", r.added, root, height + 1);
        } else if (*bench_cmd) {
            bench(bopt);
        }
    } catch (const ParseError& e) {
        fmt::print(stderr, "parse error: {}\n", e.what());
        return 1;
    } catch (const InvalidInput& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    } catch (const BudgetExceeded& e) {
        fmt::print(stderr, "budget exceeded: {}\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        fmt::print(stderr, "internal error: {}\n", e.what());
        return 4;
    }
    return 0;
}
