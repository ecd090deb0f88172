#include "slpenum/generators.hpp"

#include <algorithm>

namespace slpenum {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

Symbol pick(Rng& rng, const std::vector<Symbol>& sigma) { return sigma[uniform(rng, 0, sigma.size() - 1)]; }

}  // namespace

std::vector<Symbol> alphabet(std::size_t k) {
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(Symbol::intern(std::string(1, char('a' + i))));
    return out;
}

Forest random_forest(Rng& rng, std::size_t vertices, const std::vector<Symbol>& sigma) {
    std::vector<Symbol> labels;
    std::vector<std::vector<uint32_t>> children;
    std::vector<uint32_t> roots, open;
    for (uint32_t v = 0; v < vertices; ++v) {
        if (!open.empty()) open.resize(uniform(rng, 0, open.size()));
        labels.push_back(pick(rng, sigma));
        children.emplace_back();
        if (open.empty())
            roots.push_back(v);
        else
            children[open.back()].push_back(v);
        open.push_back(v);
    }
    return Forest::from_structure(labels, children, roots);
}

Expr random_expr(Rng& rng, std::size_t leaves, const std::vector<Symbol>& sigma, int type) {
    if (leaves == 0) throw InvalidInput("expressions have at least one leaf");
    if (leaves == 1) return type == 0 ? Expr::leaf(pick(rng, sigma)) : Expr::leaf_ctx(pick(rng, sigma));
    std::size_t k = uniform(rng, 1, leaves - 1);
    if (type == 0) {
        if (coin(rng)) return Expr::hc(random_expr(rng, k, sigma, 0), random_expr(rng, leaves - k, sigma, 0));
        return Expr::vc(random_expr(rng, k, sigma, 1), random_expr(rng, leaves - k, sigma, 0));
    }
    switch (uniform(rng, 0, 2)) {
        case 0: return Expr::hc(random_expr(rng, k, sigma, 0), random_expr(rng, leaves - k, sigma, 1));
        case 1: return Expr::hc(random_expr(rng, k, sigma, 1), random_expr(rng, leaves - k, sigma, 0));
        default: return Expr::vc(random_expr(rng, k, sigma, 1), random_expr(rng, leaves - k, sigma, 1));
    }
}

Fslp random_fslp(Rng& rng, std::size_t nodes, const std::vector<Symbol>& sigma, std::size_t max_vertices) {
    Fslp g;
    std::vector<int> tau;
    std::vector<std::size_t> size;  // vertices, hole included
    auto add = [&](const NodeDef& d, int t, std::size_t n) {
        g.add(d);
        tau.push_back(t);
        size.push_back(n);
    };
    add(NodeDef::leaf(pick(rng, sigma)), 0, 1);
    add(NodeDef::leaf_ctx(pick(rng, sigma)), 1, 2);
    // Biased towards recent nodes.
    auto choose = [&](int t) -> uint32_t {
        for (int tries = 0; tries < 8; ++tries) {
            std::size_t hi = g.size() - 1;
            std::size_t lo = coin(rng, 0.7) && hi > 4 ? hi - 4 : 0;
            auto v = static_cast<uint32_t>(uniform(rng, lo, hi));
            if (tau[v] == t) return v;
        }
        for (auto v = static_cast<uint32_t>(g.size()); v-- > 0;)
            if (tau[v] == t) return v;
        return kNone;
    };
    auto try_internal = [&](bool want_forest) {
        int form = want_forest ? static_cast<int>(uniform(rng, 0, 1)) : static_cast<int>(uniform(rng, 2, 4));
        // 0: HC(0,0) 1: VC(1,0) 2: HC(0,1) 3: HC(1,0) 4: VC(1,1)
        static const int lt[] = {0, 1, 0, 1, 1}, rt[] = {0, 0, 1, 0, 1};
        uint32_t l = choose(lt[form]), r = choose(rt[form]);
        bool vc = form == 1 || form == 4;
        std::size_t n = vc ? size[l] - 1 + size[r] : size[l] + size[r];
        if (n > max_vertices + (want_forest ? 0 : 1)) return false;
        add(vc ? NodeDef::vc(l, r) : NodeDef::hc(l, r), want_forest ? 0 : 1, n);
        return true;
    };
    while (g.size() < nodes) {
        std::size_t r = uniform(rng, 0, 9);
        if (r == 0)
            add(NodeDef::leaf(pick(rng, sigma)), 0, 1);
        else if (r == 1)
            add(NodeDef::leaf_ctx(pick(rng, sigma)), 1, 2);
        else if (!try_internal(r < 6))
            add(NodeDef::leaf(pick(rng, sigma)), 0, 1);
    }
    // A forest root: the largest forest node that respects the bound.
    if (tau.back() != 0) {
        uint32_t best = 0;
        for (uint32_t v = 0; v < g.size(); ++v)
            if (tau[v] == 0 && size[v] >= size[best]) best = v;
        uint32_t ctx = g.size() - 1;
        if (size[ctx] - 1 + size[best] <= max_vertices)
            add(NodeDef::vc(ctx, best), 0, size[ctx] - 1 + size[best]);
        else
            add(NodeDef::vc(ctx, 0), 0, size[ctx]);
    }
    g.roots = {static_cast<uint32_t>(g.size() - 1)};
    return g;
}

Nsta random_nsta(Rng& rng, uint32_t m, const std::vector<Symbol>& sigma, double density) {
    Nsta a;
    a.m = m;
    for (uint32_t p = 0; p < m; ++p)
        for (uint32_t q = 0; q < m; ++q)
            for (uint32_t r = 0; r < m; ++r)
                if (coin(rng, density)) a.delta.push_back({p, q, r});
    for (Symbol s : sigma)
        for (bool bit : {false, true}) {
            auto& v = a.iota[{s, bit}];
            for (uint32_t q = 0; q < m; ++q)
                if (coin(rng, density)) v.push_back(q);
        }
    a.q0 = static_cast<uint32_t>(uniform(rng, 0, m - 1));
    a.qf = static_cast<uint32_t>(uniform(rng, 0, m - 1));
    a.normalize();
    return a;
}

Fslp chain_fslp(std::size_t n) {
    Fslp g;
    g.add(NodeDef::leaf(Symbol::intern("a")));
    g.add(NodeDef::leaf_ctx(Symbol::intern("a")));
    g.add(NodeDef::leaf_ctx(Symbol::intern("b")));
    uint32_t x = 0;
    for (std::size_t i = 1; i <= n; ++i) x = g.add(NodeDef::vc(i % 2 ? 2 : 1, x));
    g.roots = {x};
    return g;
}

Fslp wide_fslp(uint32_t k) {
    Fslp g;
    uint32_t x = g.add(NodeDef::leaf(Symbol::intern("a")));
    for (uint32_t i = 0; i < k; ++i) x = g.add(NodeDef::hc(x, x));
    g.roots = {x};
    return g;
}

DecoratedDag<BigNat> ls_family(std::size_t n) {
    DecoratedDag<BigNat> d;
    for (std::size_t i = 0; i <= n; ++i) d.add_vertex(0, i == n);
    auto t = d.add_vertex(0, true);
    for (uint32_t i = 0; i < n; ++i) {
        d.add_edge(i, i + 1, 1);
        d.add_edge(i, t, 1);
    }
    return d;
}

namespace {

Nsta one_state(std::vector<uint32_t> unselected, std::vector<uint32_t> selected) {
    Nsta a;
    a.m = 1;
    a.iota_default.emplace();
    (*a.iota_default)[0] = std::move(unselected);
    (*a.iota_default)[1] = std::move(selected);
    a.delta = {{0, 0, 0}};
    a.normalize();
    return a;
}

}  // namespace

Nsta accept_all_nsta() { return one_state({0}, {0}); }

Nsta only_empty_nsta() { return one_state({0}, {}); }

Nsta reject_all_nsta() {
    Nsta a;
    a.m = 2;
    a.iota_default.emplace();
    a.q0 = 0;
    a.qf = 1;
    a.normalize();
    return a;
}

Nsta select_one_nsta() {
    Nsta a;
    a.m = 2;
    a.iota_default.emplace();
    (*a.iota_default)[0] = {0};
    (*a.iota_default)[1] = {1};
    a.delta = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}};
    a.q0 = 0;
    a.qf = 1;
    a.normalize();
    return a;
}

Nsta select_label_nsta(Symbol target) {
    Nsta a = only_empty_nsta();
    a.iota[{target, false}] = {};
    a.iota[{target, true}] = {0};
    a.normalize();
    return a;
}

}  // namespace slpenum
