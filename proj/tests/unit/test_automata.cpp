#include <doctest.h>

#include "../fixtures.hpp"
#include "slpenum/automata.hpp"
#include "slpenum/generators.hpp"
#include "slpenum/oracle.hpp"

#include <functional>
#include <set>

using namespace slpenum;

namespace {

std::vector<bool> bits_of(uint64_t mask, std::size_t n) {
    std::vector<bool> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1;
    return v;
}

// Every vertex other than the hole gets k-1 leaf siblings on its left.
Forest widen(const Forest& f, uint32_t k) {
    std::vector<Symbol> labels;
    std::vector<std::vector<uint32_t>> children;
    std::optional<uint32_t> hole;
    auto fresh = [&](Symbol s) {
        labels.push_back(s);
        children.emplace_back();
        return static_cast<uint32_t>(labels.size() - 1);
    };
    std::function<std::vector<uint32_t>(const std::vector<uint32_t>&)> go = [&](const std::vector<uint32_t>& vs) {
        std::vector<uint32_t> out;
        for (uint32_t v : vs) {
            if (f.hole && *f.hole == v) {
                hole = fresh(f.labels[v]);
                out.push_back(*hole);
                continue;
            }
            for (uint32_t i = 1; i < k; ++i) out.push_back(fresh(tuple_label(f.labels[v], i)));
            uint32_t top = fresh(tuple_label(f.labels[v], k));
            auto ch = go(f.children[v]);
            children[top] = ch;
            out.push_back(top);
        }
        return out;
    };
    auto roots = go(f.roots);
    return Forest::from_structure(labels, children, roots, hole);
}

}  // namespace

TEST_CASE("nsta text format") {
    Rng rng(41);
    auto sigma = alphabet(3);
    for (int it = 0; it < 50; ++it) {
        Nsta a = random_nsta(rng, 1 + rng() % 4, sigma);
        Nsta b = read_nsta(write_nsta(a));
        CHECK(write_nsta(b) == write_nsta(a));
        CHECK(b.delta == a.delta);
        CHECK(b.iota == a.iota);
    }
    Nsta w = read_nsta("nsta v1\n# comment\nstates 2\niota * 0 0\niota a 1 1\ntrans 0 0 0\ninit 0\nfinal 0\n");
    CHECK(w.covers(Symbol::intern("zz")));
    CHECK(w.iota_of(Symbol::intern("a"), false).empty());
    CHECK(w.iota_of(Symbol::intern("q"), false) == std::vector<uint32_t>{0});
    CHECK_THROWS_AS(read_nsta("states 2\n"), ParseError);
    CHECK_THROWS_AS(read_nsta("nsta v1\nstates 2\ntrans 0 0 5\ninit 0\nfinal 0\n"), InvalidInput);
    CHECK_THROWS_AS(read_nsta("nsta v1\nstates 2\nbogus\n"), ParseError);
    Nsta n = read_nsta("nsta v1\nstates 1\niota a 0 0\ntrans 0 0 0\ninit 0\nfinal 0\n");
    CHECK_THROWS_AS(n.iota_of(Symbol::intern("b"), false), InvalidInput);
}

TEST_CASE("acceptance agrees with the exhaustive run oracle") {
    Rng rng(42);
    auto sigma = alphabet(2);
    int accepted = 0;
    for (int it = 0; it < 400; ++it) {
        Nsta a = random_nsta(rng, 1 + rng() % 3, sigma, 0.4);
        Forest f = random_forest(rng, 1 + rng() % 4, sigma);
        for (uint64_t mask = 0; mask < (uint64_t(1) << f.size()); ++mask) {
            auto s = bits_of(mask, f.size());
            bool x = nsta_accepts(a, f, s);
            CHECK(x == brute_run_accepts(a, f, s));
            accepted += x;
        }
    }
    CHECK(accepted > 50);
}

TEST_CASE("bit-blind automata ignore the selection") {
    Rng rng(43);
    auto sigma = alphabet(2);
    for (int it = 0; it < 100; ++it) {
        Nsta a = random_nsta(rng, 1 + rng() % 3, sigma);
        for (Symbol s : sigma) a.iota[{s, true}] = a.iota[{s, false}];
        a.normalize();
        Forest f = random_forest(rng, 1 + rng() % 8, sigma);
        bool base = nsta_accepts(a, f, {});
        for (uint64_t mask = 1; mask < (uint64_t(1) << f.size()); mask += 3)
            CHECK(nsta_accepts(a, f, bits_of(mask, f.size())) == base);
    }
}

TEST_CASE("selecting the b-labelled vertices") {
    Forest f = parse_term(fixtures::kSampleForest);
    Nsta a = select_label_nsta(Symbol::intern("b"));
    CHECK(brute_select(a, f) == Family{{1, 4, 6, 9}});
}

TEST_CASE("determinization agrees with the nsta") {
    Rng rng(44);
    auto sigma = alphabet(2);
    for (int it = 0; it < 500; ++it) {
        Nsta a = random_nsta(rng, 1 + rng() % 3, sigma, 0.4);
        auto b = nsta_to_dbuta(a);
        Expr e = random_expr(rng, 1 + rng() % 10, sigma, 0);
        std::size_t leaves = e.leaf_count();
        Forest f = eval_expr(e);
        for (int trial = 0; trial < 4; ++trial) {
            auto sel = bits_of(rng(), leaves);
            State q = dbuta_run(*b, e, sel);
            CHECK(b->accepting(q) == nsta_accepts(a, f, selection_to_vertices(e, sel)));
        }
    }
}

TEST_CASE("subset states") {
    Nsta a;
    a.m = 1;
    a.iota[{Symbol::intern("a"), false}] = {0};
    a.iota[{Symbol::intern("a"), true}] = {};
    a.normalize();
    auto b = nsta_to_dbuta(a);
    std::set<State> seen;
    std::vector<State> frontier;
    for (bool ctx : {false, true})
        for (bool bit : {false, true}) {
            State q = b->leaf(Symbol::intern("a"), ctx, bit);
            if (seen.insert(q).second) frontier.push_back(q);
        }
    while (!frontier.empty()) {
        State x = frontier.back();
        frontier.pop_back();
        for (State y : std::vector<State>(seen.begin(), seen.end()))
            for (Op op : {Op::HC, Op::VC})
                for (State z : {b->step(x, y, op), b->step(y, x, op)})
                    if (seen.insert(z).second) frontier.push_back(z);
    }
    CHECK(seen.size() <= 3);
    CHECK(b->state_count() <= 3);

    Nsta c = random_nsta(*std::make_unique<Rng>(45), 2, alphabet(2));
    auto d = nsta_to_dbuta(c);
    State p = d->leaf(Symbol::intern("a"), false, false);
    CHECK(!d->is_quad(p));
    CHECK(d->step(p, p, Op::VC) == d->failure());
    CHECK(d->step(d->failure(), p, Op::HC) == d->failure());
    CHECK(d->leaf(Symbol::intern("a"), false, true) == d->leaf(Symbol::intern("a"), false, true));
    State x = d->leaf(Symbol::intern("b"), true, false);
    CHECK(d->is_quad(x));
    CHECK(d->step(x, x, Op::VC) == d->step(x, x, Op::VC));
}

TEST_CASE("validity automaton") {
    auto bt = build_btau();
    Symbol a = Symbol::intern("a");
    CHECK(bt->leaf(a, false, false) == 0);
    CHECK(bt->leaf(a, true, false) == 1);
    CHECK(bt->step(1, 0, Op::VC) == 0);
    CHECK(bt->step(1, 1, Op::VC) == 1);
    CHECK(bt->step(0, 0, Op::HC) == 0);
    CHECK(bt->step(0, 1, Op::HC) == 1);
    CHECK(bt->step(1, 0, Op::HC) == 1);
    CHECK(bt->step(1, 1, Op::HC) == 2);
    CHECK(bt->step(0, 0, Op::VC) == 2);
    CHECK(bt->step(0, 1, Op::VC) == 2);
    CHECK(!bt->accepting(dbuta_run(*bt, parse_expr("(a* - a*)"), {false, false})));
    CHECK(dbuta_run(*bt, parse_expr("a"), {true}) == 0);

    Rng rng(46);
    auto sigma = alphabet(2);
    for (int it = 0; it < 300; ++it) {
        // arbitrary trees, valid or not
        std::vector<ExprNode> nodes;
        std::size_t leaves = 1 + rng() % 8;
        std::vector<uint32_t> pool;
        for (std::size_t i = 0; i < leaves; ++i) {
            nodes.push_back({rng() % 2 ? ExprKind::LeafCtx : ExprKind::Leaf, sigma[rng() % 2]});
            pool.push_back(static_cast<uint32_t>(nodes.size() - 1));
        }
        while (pool.size() > 1) {
            std::size_t i = rng() % (pool.size() - 1);
            nodes.push_back({rng() % 2 ? ExprKind::HC : ExprKind::VC, Symbol(), pool[i], pool[i + 1]});
            pool.erase(pool.begin() + i, pool.begin() + i + 2);
            pool.insert(pool.begin() + i, static_cast<uint32_t>(nodes.size() - 1));
        }
        Expr e = Expr::from_nodes(nodes, pool[0]);
        State q = dbuta_run(*bt, e, std::vector<bool>(leaves));
        auto t = type_of(e);
        CHECK(bt->accepting(q) == t.has_value());
        if (t) CHECK(q == static_cast<State>(*t));
    }
}

TEST_CASE("multi-variable reduction") {
    Fslp ab = compress_forest(parse_term("ab"));
    auto r = multivar_reduce(ab, 2);
    auto expect = parse_term("\"(a,1)\"\"(a,2)\"\"(b,1)\"\"(b,2)\"");
    CHECK(evaluate(r.fslp, r.node_map[ab.roots.front()]) == expect);
    CHECK(r.decode({}) == std::vector<std::vector<BigNat>>(2));
    CHECK(r.decode({1, 2, 7}) == std::vector<std::vector<BigNat>>{{1}, {0, 3}});
    CHECK_THROWS_AS(multivar_reduce(ab, 1), InvalidInput);

    Rng rng(47);
    for (int it = 0; it < 100; ++it) {
        auto sigma = alphabet(1 + rng() % 3);
        Fslp g = random_fslp(rng, 2 + rng() % 12, sigma, 30);
        uint32_t k = 2 + rng() % 3;
        auto red = multivar_reduce(g, k);
        std::set<Symbol> used;
        for (uint32_t v = 0; v < g.size(); ++v)
            if (g[v].is_leaf()) used.insert(g[v].label);
        CHECK(red.added_nodes <= 3 * used.size() * k);
        for (uint32_t v = 0; v < g.size(); ++v)
            CHECK(evaluate(red.fslp, red.node_map[v]) == widen(evaluate(g, v), k));
    }
}
