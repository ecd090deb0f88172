#include <doctest.h>

#include "../fixtures.hpp"
#include "slpenum/generators.hpp"
#include "slpenum/oracle.hpp"
#include "slpenum/updates.hpp"

using namespace slpenum;
using fixtures::to_u32;

namespace {

EnumDataStructure rebuild(const EnumDataStructure& eds) {
    EnumDataStructure fresh(eds.automaton_ptr(), eds.fslp());
    fresh.set_roots(eds.fslp().roots);
    return fresh;
}

}  // namespace

TEST_CASE("extensions") {
    auto b = nsta_to_dbuta(select_label_nsta(Symbol::intern("b")));
    Fslp g;
    g.add(NodeDef::leaf(Symbol::intern("a")));
    g.add(NodeDef::leaf(Symbol::intern("b")));
    EnumDataStructure eds(b, g);
    EnumDataStructure before = eds;
    eds.extend({});
    CHECK(eds == before);

    eds.extend({NodeDef::hc(0, 1)});
    Fslp h = g;
    h.add(NodeDef::hc(0, 1));
    CHECK(eds == EnumDataStructure(b, h));
    CHECK(to_u32(enumerate_select(eds, 2)) == Family{{1}});

    std::vector<NodeDef> defs;
    Rng rng(51);
    for (uint32_t i = 0; i < 50; ++i) {
        uint32_t top = 3 + i;
        defs.push_back(NodeDef::hc(rng() % top, rng() % top));
    }
    EnumDataStructure one_by_one = eds, at_once = eds;
    for (const auto& d : defs) one_by_one.extend({d});
    at_once.extend(defs);
    Fslp full = h;
    for (const auto& d : defs) full.add(d);
    CHECK(one_by_one == at_once);
    CHECK(at_once == EnumDataStructure(b, full));
}

TEST_CASE("malformed extensions leave the structure unchanged") {
    auto b = nsta_to_dbuta(select_label_nsta(Symbol::intern("b")));
    Fslp g;
    g.add(NodeDef::leaf(Symbol::intern("a")));
    g.add(NodeDef::leaf_ctx(Symbol::intern("b")));
    EnumDataStructure eds(b, g);
    EnumDataStructure before = eds;
    CHECK_THROWS_AS(eds.extend({NodeDef::hc(0, 0), NodeDef::hc(0, 7)}), InvalidInput);
    CHECK(eds == before);
    CHECK_THROWS_AS(eds.extend({NodeDef::hc(0, 0), NodeDef::vc(2, 0)}), InvalidInput);
    CHECK(eds == before);
    CHECK_THROWS_AS(eds.extend({NodeDef::hc(1, 1)}), InvalidInput);
    CHECK(eds.fslp().size() == 2);
}

TEST_CASE("relabelling preorder vertex 14") {
    Fslp g = read_fslp(fixtures::kSharedFslp);
    Fslp orig = g;
    auto st = compute_stats(g);
    auto defs = relabel_defs(g, st, 12, 14, Symbol::intern("d"));
    CHECK(defs.size() == 7);
    auto r = relabel(g, 12, 14, Symbol::intern("d"));
    CHECK(r.added == 7);
    CHECK(r.new_root == 19);
    CHECK(g.roots == std::vector<uint32_t>{19});
    Forest before = evaluate(orig, 12), after = evaluate(g, 19);
    REQUIRE(before.size() == after.size());
    for (uint32_t v = 0; v < before.size(); ++v) {
        if (v == 14) CHECK(after.labels[v] == Symbol::intern("d"));
        else CHECK(after.labels[v] == before.labels[v]);
    }
    CHECK(after.children == before.children);
    CHECK(serialize_term(evaluate(g, 12)) == serialize_term(before));
    auto st2 = compute_stats(g);
    CHECK(st2.height[19] <= st2.height[12]);

    auto same = relabel(g, 12, 14, Symbol::intern("b"));
    CHECK(same.added == 7);
    CHECK(evaluate(g, same.new_root) == before);
}

TEST_CASE("relabel errors") {
    Fslp g = read_fslp(fixtures::kSharedFslp);
    CHECK_THROWS_AS(relabel(g, 12, 16, Symbol::intern("d")), InvalidInput);
    CHECK_THROWS_AS(relabel(g, 3, 0, Symbol::intern("d")), InvalidInput);
    try {
        relabel(g, 12, 99, Symbol::intern("d"));
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("[0, 16)") != std::string::npos);
    }
    CHECK(g.size() == 13);
    auto b = nsta_to_dbuta(random_nsta(*std::make_unique<Rng>(1), 2, alphabet(3)));
    EnumDataStructure eds(b, read_fslp(fixtures::kSharedFslp));
    CHECK_THROWS_AS(relabel(eds, 12, 0, Symbol::intern("q")), InvalidInput);
}

TEST_CASE("random relabel sequences match the oracle") {
    Rng rng(52);
    for (int it = 0; it < 40; ++it) {
        auto sigma = alphabet(2);
        Fslp g = random_fslp(rng, 4 + rng() % 10, sigma, 10);
        Nsta a = random_nsta(rng, 1 + rng() % 3, sigma, 0.4);
        EnumDataStructure eds = build_enum(g, a);
        uint32_t root = g.roots.front();
        for (int step = 0; step < 20; ++step) {
            const auto& st = eds.stats();
            uint64_t n = st.n[root].convert_to<uint64_t>();
            uint32_t height = st.height[root];
            std::size_t prod_before = eds.product_size();
            auto r = relabel(eds, root, rng() % n, sigma[rng() % 2]);
            CHECK(r.added <= height + 1);
            CHECK(eds.stats().height[r.new_root] <= height);
            CHECK(eds.product_size() - prod_before <= r.added * eds.automaton().state_count());
            root = r.new_root;
            Forest f = evaluate(eds.fslp(), root);
            CHECK(to_u32(enumerate_select(eds, root)) == brute_select(a, f));
        }
        CHECK(eds == rebuild(eds));
    }
}
