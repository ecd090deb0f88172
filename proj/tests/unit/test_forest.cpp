#include <doctest.h>

#include "../fixtures.hpp"
#include "slpenum/generators.hpp"

using namespace slpenum;

namespace {

// Preorder position of every leaf, found by giving leaves unique labels and traversing.
std::vector<uint64_t> traversal_preorders(const Expr& e) {
    std::vector<ExprNode> nodes = e.nodes();
    std::vector<uint32_t> leaf_ids;
    for (uint32_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].kind == ExprKind::Leaf || nodes[i].kind == ExprKind::LeafCtx) {
            nodes[i].label = Symbol::intern("#leaf" + std::to_string(leaf_ids.size()));
            leaf_ids.push_back(i);
        }
    Forest f = eval_expr(Expr::from_nodes(nodes, e.root()));
    std::vector<uint64_t> out(leaf_ids.size());
    for (uint32_t v = 0; v < f.size(); ++v) {
        std::string n = f.labels[v].name();
        if (n.rfind("#leaf", 0) == 0) out[std::stoul(n.substr(5))] = v;
    }
    return out;
}

}  // namespace

TEST_CASE("first forest in term syntax") {
    Forest f = parse_term(fixtures::kSampleForest);
    REQUIRE(f.size() == 10);
    std::string labels;
    for (Symbol s : f.labels) labels += s.name();
    CHECK(labels == "abaabcbcab");
    CHECK(f.roots == std::vector<uint32_t>{0, 4, 5, 6});
    CHECK(f.children[0] == std::vector<uint32_t>{1, 2});
    CHECK(f.children[2] == std::vector<uint32_t>{3});
    CHECK(f.children[6] == std::vector<uint32_t>{7});
    CHECK(f.children[7] == std::vector<uint32_t>{8, 9});
    CHECK(f.parent[9] == 7);
    CHECK(serialize_term(f) == fixtures::kSampleForest);
    CHECK(parse_term("a(b,a(a)) b, c b(c(a b))") == f);
}

TEST_CASE("small terms") {
    CHECK(parse_term("").empty());
    CHECK(parse_term("").roots.empty());
    CHECK(serialize_term(Forest{}) == "");
    Forest a = parse_term("a");
    CHECK(a.size() == 1);
    CHECK(a.roots == std::vector<uint32_t>{0});
    CHECK(serialize_term(parse_term("a b")) == "ab");
    Forest q = parse_term("\"long name\"(x \"q\\\"uote\")");
    CHECK(q.labels[0].name() == "long name");
    CHECK(q.labels[2].name() == "q\"uote");
    CHECK(parse_term(serialize_term(q)) == q);
    Forest ctx = parse_term("a(b *)");
    CHECK(ctx.is_context());
    CHECK(*ctx.hole == 2);
    CHECK(serialize_term(ctx) == "a(b*)");
}

TEST_CASE("term syntax errors") {
    CHECK_THROWS_AS(parse_term("a("), ParseError);
    CHECK_THROWS_AS(parse_term("a)"), ParseError);
    CHECK_THROWS_AS(parse_term("(a)"), ParseError);
    CHECK_THROWS_AS(parse_term("\"\""), ParseError);
    CHECK_THROWS_AS(parse_term("a$"), ParseError);
    CHECK_THROWS_AS(parse_term("* *"), ParseError);
    try {
        parse_term("ab(c");
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.position == 2);
    }
}

TEST_CASE("round trip on random forests") {
    Rng rng(1);
    auto sigma = alphabet(3);
    for (int it = 0; it < 200; ++it) {
        Forest f = random_forest(rng, rng() % 30, sigma);
        CHECK(parse_term(serialize_term(f)) == f);
    }
}

TEST_CASE("typing") {
    CHECK(type_of(parse_expr("a")) == 0);
    CHECK(type_of(parse_expr("a*")) == 1);
    CHECK_FALSE(type_of(parse_expr("(a* - a*)")).has_value());
    CHECK(type_of(parse_expr("(a* / b)")) == 0);
    CHECK_FALSE(type_of(parse_expr("(a / b)")).has_value());
    CHECK(type_of(parse_expr("(a* ⊘ b*)")) == 1);
    CHECK(type_of(parse_expr("(a ⊖ b*)")) == 1);
    CHECK_THROWS_AS(eval_expr(parse_expr("(a* - a*)")), InvalidInput);
    CHECK_THROWS_AS(parse_expr("(a - b"), ParseError);
    CHECK_THROWS_AS(parse_expr("(a + b)"), ParseError);
}

TEST_CASE("evaluation") {
    // the context a(b *) has a bare hole, so it is substituted at the term level
    Forest ctx_ab = parse_term("a(b *)");
    std::string arg = serialize_term(eval_expr(parse_expr("((a* / (b - c)) - (b* / ((c - c) - b)))")));
    std::string text = serialize_term(ctx_ab);
    text.replace(text.find('*'), 1, arg);
    CHECK(text == "a(ba(bc)b(ccb))");
    Expr e = parse_expr("(a* / (b - ((a* / (b - c)) - (b* / ((c - c) - b)))))");
    CHECK(eval_expr(e) == parse_term(text));
    CHECK(serialize_term(eval_expr(parse_expr("(a* / b)"))) == "a(b)");
    Forest ctx = eval_expr(parse_expr("(a - b*)"));
    CHECK(serialize_term(ctx) == "ab(*)");
    Fslp g = read_fslp(fixtures::kSharedFslp);
    Expr big = unfold(g, 12);
    Forest t = eval_expr(big);
    CHECK(t.size() == 16);
    CHECK(serialize_term(t) == "a(a(bc)b(ccb)a(bc)b(ccb)b)");
    CHECK(format_expr(parse_expr(format_expr(big))) == format_expr(big));
}

TEST_CASE("leaf preorders") {
    CHECK(leaf_preorders(parse_expr("a")) == std::vector<uint64_t>{0});
    Fslp g = read_fslp(fixtures::kSharedFslp);
    Expr e = unfold(g, 12);
    // preorder vertex 14 is the 15th leaf from the left: bc ccb bc cc, then b
    auto pre = leaf_preorders(e);
    CHECK(pre[14] == 14);
    CHECK_THROWS_AS(leaf_preorders(parse_expr("a*")), InvalidInput);
    Rng rng(2);
    auto sigma = alphabet(3);
    for (int it = 0; it < 300; ++it) {
        Expr r = random_expr(rng, 1 + rng() % 12, sigma);
        CHECK(leaf_preorders(r) == traversal_preorders(r));
        CHECK(eval_expr(r).size() == r.leaf_count());
    }
}

TEST_CASE("typing soundness and monoid law") {
    Rng rng(3);
    auto sigma = alphabet(2);
    for (int it = 0; it < 200; ++it) {
        int t = static_cast<int>(rng() % 2);
        Expr r = random_expr(rng, 1 + rng() % 10, sigma, t);
        CHECK(type_of(r) == t);
        Forest f = eval_expr(r);
        CHECK(f.is_context() == (t == 1));
        if (f.is_context()) CHECK(f.children[*f.hole].empty());
        Expr e1 = random_expr(rng, 1 + rng() % 4, sigma), e2 = random_expr(rng, 1 + rng() % 4, sigma, t),
             e3 = random_expr(rng, 1 + rng() % 4, sigma);
        CHECK(eval_expr(Expr::hc(e1, Expr::hc(e2, e3))) == eval_expr(Expr::hc(Expr::hc(e1, e2), e3)));
    }
}

TEST_CASE("selection transfer") {
    Expr e = parse_expr("((a* / b) - c)");
    auto sel = selection_to_vertices(e, {false, true, true});
    CHECK(sel == std::vector<bool>{false, true, true});
    auto sel2 = selection_to_vertices(e, {true, false, false});
    CHECK(sel2 == std::vector<bool>{true, false, false});
}
