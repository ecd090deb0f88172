#include "slpenum/fslp.hpp"

#include <algorithm>
#include <sstream>

namespace slpenum {

uint32_t Fslp::add(const NodeDef& def) {
    auto id = static_cast<uint32_t>(nodes_.size());
    if (!def.is_leaf() && (def.left >= id || def.right >= id))
        throw InvalidInput("node " + std::to_string(id) + " references an undeclared node");
    nodes_.push_back(def);
    return id;
}

void VertexStats::append(const Fslp& g, uint32_t id) {
    if (id != tau.size()) throw std::logic_error("stats must be appended in node order");
    const NodeDef& d = g[id];
    auto where = [&](const char* rule) {
        return InvalidInput("invalid f-SLP: node " + std::to_string(id) + ": " + rule);
    };
    if (d.is_leaf()) {
        bool ctx = d.kind == NodeKind::LeafCtx;
        tau.push_back(ctx ? 1 : 0);
        s.emplace_back(1);
        ell.emplace_back(ctx ? 1 : 0);
        n.emplace_back(ctx ? 2 : 1);
        height.push_back(0);
        return;
    }
    uint32_t a = d.left, b = d.right;
    int ta = tau[a], tb = tau[b];
    int t;
    BigNat l = 0;
    if (d.kind == NodeKind::HC) {
        if (ta + tb > 1) throw where("hc needs at most one child of type 1");
        t = ta + tb;
        if (tb == 1)
            l = s[a] + ell[b];
        else if (ta == 1)
            l = ell[a];
    } else {
        if (ta != 1) throw where("vc needs a left child of type 1");
        t = tb;
        if (tb == 1) l = ell[a] + ell[b];
    }
    tau.push_back(static_cast<uint8_t>(t));
    s.push_back(s[a] + s[b]);
    ell.push_back(std::move(l));
    n.push_back(t == 0 ? s.back() : s.back() + 1);
    height.push_back(1 + std::max(height[a], height[b]));
    // N_A <= 2^|V| with |V| <= id + 1 nodes below A.
    if (bit_length(n.back()) > id + 2) throw std::logic_error("vertex count exceeds 2^|V|");
}

VertexStats compute_stats(const Fslp& g) {
    VertexStats st;
    for (uint32_t i = 0; i < g.size(); ++i) st.append(g, i);
    return st;
}

std::string format_path(const Path& p) {
    std::string out;
    for (Side s : p) out.push_back(s == Side::Left ? 'l' : 'r');
    return out;
}

PreorderEffect edge_effect(const Fslp& g, const VertexStats& st, uint32_t parent, Side side) {
    const NodeDef& d = g[parent];
    if (d.is_leaf()) throw InvalidInput("leaf node has no outgoing edges");
    uint32_t a = d.left, b = d.right;
    int ta = st.tau[a], tb = st.tau[b];
    bool left = side == Side::Left;
    if (d.kind == NodeKind::HC) {
        if (ta == 0 && tb == 0)
            return left ? PreorderEffect::make(Shape::M00) : PreorderEffect::make(Shape::M00, st.s[a]);
        if (ta == 0)
            return left ? PreorderEffect::make(Shape::M10a) : PreorderEffect::make(Shape::M11a, st.s[a], 0);
        return left ? PreorderEffect::make(Shape::M11a) : PreorderEffect::make(Shape::M10b, st.s[a]);
    }
    if (tb == 0)
        return left ? PreorderEffect::make(Shape::M01, 0, st.s[b]) : PreorderEffect::make(Shape::M00, st.ell[a]);
    return left ? PreorderEffect::make(Shape::M11a, 0, st.s[b]) : PreorderEffect::make(Shape::M11a, st.ell[a], 0);
}

BigNat path_preorder(const Fslp& g, const VertexStats& st, uint32_t a, const Path& path) {
    if (st.tau.at(a) != 0) throw InvalidInput("path_preorder needs a node of type 0");
    PreorderEffect acc = PreorderEffect::identity(0);
    uint32_t v = a;
    for (Side s : path) {
        if (g[v].is_leaf()) throw InvalidInput("path falls off the f-SLP");
        acc = compose(acc, edge_effect(g, st, v, s));
        v = s == Side::Left ? g[v].left : g[v].right;
    }
    if (!g[v].is_leaf()) throw InvalidInput("path ends at a non-leaf node");
    return acc.c;
}

Path preorder_to_path(const Fslp& g, const VertexStats& st, uint32_t a, const BigNat& k) {
    if (st.tau.at(a) != 0) throw InvalidInput("preorder_to_path needs a node of type 0");
    if (k < 0 || k >= st.n[a])
        throw InvalidInput("preorder " + k.str() + " out of range [0, " + st.n[a].str() + ")");
    Path path;
    uint32_t b = a;
    BigNat m = k, p = 0;
    while (!g[b].is_leaf()) {
        const NodeDef& d = g[b];
        uint32_t b1 = d.left, b2 = d.right;
        auto go = [&](Side s, uint32_t to) {
            path.push_back(s);
            b = to;
        };
        if (st.tau[b] == 0) {
            if (d.kind == NodeKind::HC) {
                if (m < st.s[b1]) {
                    go(Side::Left, b1);
                } else {
                    m -= st.s[b1];
                    go(Side::Right, b2);
                }
            } else if (m < st.ell[b1] || m >= st.ell[b1] + st.s[b2]) {
                p = st.s[b2];
                go(Side::Left, b1);
            } else {
                m -= st.ell[b1];
                go(Side::Right, b2);
            }
        } else if (d.kind == NodeKind::HC && st.tau[b1] == 0) {
            if (m < st.s[b1]) {
                go(Side::Left, b1);
            } else {
                m -= st.s[b1];
                go(Side::Right, b2);
            }
        } else if (d.kind == NodeKind::HC) {
            if (m < st.s[b1] + p) {
                go(Side::Left, b1);
            } else {
                m -= st.s[b1] + p;
                go(Side::Right, b2);
            }
        } else if (m < st.ell[b1] || m >= st.ell[b1] + st.s[b2] + p) {
            p += st.s[b2];
            go(Side::Left, b1);
        } else {
            m -= st.ell[b1];
            go(Side::Right, b2);
        }
    }
    return path;
}

Expr unfold(const Fslp& g, uint32_t a, std::size_t budget) {
    std::vector<ExprNode> out;
    std::vector<std::pair<uint32_t, bool>> stack{{a, false}};
    std::vector<uint32_t> done;  // postorder indices of finished subtrees
    while (!stack.empty()) {
        auto [v, expanded] = stack.back();
        stack.pop_back();
        const NodeDef& d = g[v];
        if (d.is_leaf()) {
            if (out.size() >= budget) throw BudgetExceeded("unfold exceeds the materialization budget");
            out.push_back({d.kind == NodeKind::Leaf ? ExprKind::Leaf : ExprKind::LeafCtx, d.label});
            done.push_back(static_cast<uint32_t>(out.size() - 1));
            continue;
        }
        if (!expanded) {
            stack.push_back({v, true});
            stack.push_back({d.right, false});
            stack.push_back({d.left, false});
            continue;
        }
        if (out.size() >= budget) throw BudgetExceeded("unfold exceeds the materialization budget");
        uint32_t r = done.back();
        done.pop_back();
        uint32_t l = done.back();
        done.pop_back();
        out.push_back({d.kind == NodeKind::HC ? ExprKind::HC : ExprKind::VC, Symbol(), l, r});
        done.push_back(static_cast<uint32_t>(out.size() - 1));
    }
    return Expr::from_nodes(out, done.back());
}

Forest evaluate(const Fslp& g, uint32_t a, std::size_t budget) {
    VertexStats st = compute_stats(g);
    if (st.n.at(a) > budget) throw BudgetExceeded("evaluation exceeds the materialization budget");
    return eval_expr(unfold(g, a, 2 * budget));
}

namespace {

struct LabelKey {
    ExprKind kind;
    Symbol label;
    bool operator==(const LabelKey&) const = default;
};

struct LabelKeyHash {
    size_t operator()(const LabelKey& k) const {
        return std::hash<uint32_t>{}(k.label.id() * 4u + static_cast<uint32_t>(k.kind));
    }
};

}  // namespace

Fslp fold_expr(const Expr& e) {
    if (!type_of(e)) throw InvalidInput("cannot fold an invalid expression");
    std::size_t n = e.size();
    std::vector<LabelKey> labels(n);
    std::vector<uint32_t> left(n), right(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& nd = e.nodes()[i];
        labels[i] = {nd.kind, nd.label};
        left[i] = nd.left;
        right[i] = nd.right;
    }
    auto cls = fold_classes<LabelKey, LabelKeyHash>(labels, left, right);
    Fslp g;
    for (std::size_t i = 0; i < n; ++i) {
        if (cls[i] < g.size()) continue;
        const auto& nd = e.nodes()[i];
        switch (nd.kind) {
            case ExprKind::Leaf: g.add(NodeDef::leaf(nd.label)); break;
            case ExprKind::LeafCtx: g.add(NodeDef::leaf_ctx(nd.label)); break;
            case ExprKind::HC: g.add(NodeDef::hc(cls[nd.left], cls[nd.right])); break;
            case ExprKind::VC: g.add(NodeDef::vc(cls[nd.left], cls[nd.right])); break;
        }
    }
    g.roots = {cls[e.root()]};
    return g;
}

namespace {

struct Balancer {
    const Forest& f;
    std::vector<uint64_t> size;
    std::vector<uint32_t> heavy;
    std::vector<ExprNode> nodes;

    explicit Balancer(const Forest& forest) : f(forest), size(forest.size(), 1), heavy(forest.size(), kNone) {
        for (auto v = static_cast<uint32_t>(f.size()); v-- > 0;) {
            for (uint32_t c : f.children[v]) {
                size[v] += size[c];
                if (heavy[v] == kNone || size[c] > size[heavy[v]]) heavy[v] = c;
            }
        }
    }

    uint32_t push(ExprNode n) {
        nodes.push_back(n);
        return static_cast<uint32_t>(nodes.size() - 1);
    }

    // Joins items[lo, hi) with `kind`, splitting where the weight midpoint falls.
    uint32_t join(ExprKind kind, const std::vector<uint32_t>& items, const std::vector<uint64_t>& prefix,
                  std::size_t lo, std::size_t hi) {
        if (hi - lo == 1) return items[lo];
        uint64_t base = prefix[lo], total = prefix[hi] - base;
        // first index whose prefix reaches half the weight
        std::size_t mid = std::upper_bound(prefix.begin() + lo + 1, prefix.begin() + hi + 1, base + total / 2) -
                          prefix.begin();
        // item mid-1 straddles the midpoint; cut before or after it, whichever is more even
        std::size_t cut = mid;
        if (mid - 1 > lo) {
            auto skew = [total](uint64_t w) { return 2 * w > total ? 2 * w - total : total - 2 * w; };
            if (skew(prefix[mid - 1] - base) <= skew(prefix[mid] - base)) cut = mid - 1;
        }
        cut = std::clamp(cut, lo + 1, hi - 1);
        uint32_t l = join(kind, items, prefix, lo, cut);
        uint32_t r = join(kind, items, prefix, cut, hi);
        return push({kind, Symbol(), l, r});
    }

    uint32_t join_weighted(ExprKind kind, const std::vector<uint32_t>& items, const std::vector<uint64_t>& weights) {
        std::vector<uint64_t> prefix(items.size() + 1, 0);
        for (std::size_t i = 0; i < items.size(); ++i) prefix[i + 1] = prefix[i] + weights[i];
        return join(kind, items, prefix, 0, items.size());
    }

    uint32_t forest(const std::vector<uint32_t>& trees) {
        std::vector<uint32_t> items;
        std::vector<uint64_t> weights;
        for (uint32_t t : trees) {
            items.push_back(tree(t));
            weights.push_back(size[t]);
        }
        return join_weighted(ExprKind::HC, items, weights);
    }

    uint32_t tree(uint32_t v) {
        if (f.children[v].empty()) return push({ExprKind::Leaf, f.labels[v]});
        // v = v1 -> v2 -> ... -> vm along heavy children; vm is a leaf.
        std::vector<uint32_t> chain{push({ExprKind::LeafCtx, f.labels[v]})};
        std::vector<uint64_t> weights{1};
        for (uint32_t u = v; heavy[u] != kNone; u = heavy[u]) {
            uint32_t h = heavy[u];
            std::vector<uint32_t> items;
            std::vector<uint64_t> w;
            for (uint32_t c : f.children[u]) {
                if (c == h) {
                    bool last = heavy[h] == kNone;
                    items.push_back(push({last ? ExprKind::Leaf : ExprKind::LeafCtx, f.labels[h]}));
                    w.push_back(1);
                } else {
                    items.push_back(tree(c));
                    w.push_back(size[c]);
                }
            }
            uint64_t total = 0;
            for (auto x : w) total += x;
            chain.push_back(join_weighted(ExprKind::HC, items, w));
            weights.push_back(total);
        }
        return join_weighted(ExprKind::VC, chain, weights);
    }
};

}  // namespace

Expr balanced_expr(const Forest& f) {
    if (f.empty()) throw InvalidInput("cannot compress the empty forest");
    if (f.is_context()) throw InvalidInput("cannot compress a forest context");
    Balancer b(f);
    uint32_t root = b.forest(f.roots);
    return Expr::from_nodes(b.nodes, root);
}

Fslp compress_forest(const Forest& f) {
    return fold_expr(balanced_expr(f));
}

namespace {

uint32_t parse_id(const std::string& tok, std::size_t line) {
    try {
        std::size_t used = 0;
        unsigned long v = std::stoul(tok, &used);
        if (used != tok.size() || v >= kNone) throw std::invalid_argument(tok);
        return static_cast<uint32_t>(v);
    } catch (const std::exception&) {
        throw ParseError("bad node id '" + tok + "' on line " + std::to_string(line), line);
    }
}

}  // namespace

Fslp read_fslp(std::string_view text) {
    Fslp g;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto fail = [&](const std::string& msg) { return ParseError(msg + " on line " + std::to_string(lineno), lineno); };
        if (!header) {
            if (tok.size() != 2 || tok[0] != "fslp" || tok[1] != "v1") throw fail("expected header 'fslp v1'");
            header = true;
            continue;
        }
        if (tok[0] == "root") {
            if (tok.size() != 2) throw fail("expected 'root <id>'");
            uint32_t r = parse_id(tok[1], lineno);
            if (r >= g.size()) throw fail("root refers to an undeclared node");
            g.roots.push_back(r);
            continue;
        }
        if (tok[0] != "node" || tok.size() < 4) throw fail("expected a node definition");
        uint32_t id = parse_id(tok[1], lineno);
        if (id != g.size()) throw fail("node ids must be 0, 1, 2, ... in declaration order");
        const std::string& kind = tok[2];
        if (kind == "leaf" || kind == "leafctx") {
            if (tok.size() != 4) throw fail("expected 'node <id> " + kind + " <label>'");
            Symbol a = Symbol::intern(tok[3]);
            g.add(kind == "leaf" ? NodeDef::leaf(a) : NodeDef::leaf_ctx(a));
        } else if (kind == "hc" || kind == "vc") {
            if (tok.size() != 5) throw fail("expected 'node <id> " + kind + " <id> <id>'");
            uint32_t l = parse_id(tok[3], lineno), r = parse_id(tok[4], lineno);
            if (l >= id || r >= id) throw fail("reference to an undeclared node");
            g.add(kind == "hc" ? NodeDef::hc(l, r) : NodeDef::vc(l, r));
        } else {
            throw fail("unknown node kind '" + kind + "'");
        }
    }
    if (!header) throw ParseError("missing header 'fslp v1'", 0);
    return g;
}

std::string write_fslp(const Fslp& g) {
    std::string out = "fslp v1\n";
    for (uint32_t i = 0; i < g.size(); ++i) {
        const NodeDef& d = g[i];
        out += "node " + std::to_string(i) + " ";
        switch (d.kind) {
            case NodeKind::Leaf: out += "leaf " + d.label.name(); break;
            case NodeKind::LeafCtx: out += "leafctx " + d.label.name(); break;
            case NodeKind::HC: out += "hc " + std::to_string(d.left) + " " + std::to_string(d.right); break;
            case NodeKind::VC: out += "vc " + std::to_string(d.left) + " " + std::to_string(d.right); break;
        }
        out += "\n";
    }
    for (uint32_t r : g.roots) out += "root " + std::to_string(r) + "\n";
    return out;
}

Fslp gc(const Fslp& g, const std::vector<uint32_t>& keep, std::vector<uint32_t>* remap) {
    std::vector<bool> live(g.size(), false);
    for (uint32_t r : keep) live.at(r) = true;
    for (auto i = static_cast<uint32_t>(g.size()); i-- > 0;) {
        if (!live[i] || g[i].is_leaf()) continue;
        live[g[i].left] = true;
        live[g[i].right] = true;
    }
    std::vector<uint32_t> map(g.size(), kNone);
    Fslp out;
    for (uint32_t i = 0; i < g.size(); ++i) {
        if (!live[i]) continue;
        NodeDef d = g[i];
        if (!d.is_leaf()) {
            d.left = map[d.left];
            d.right = map[d.right];
        }
        map[i] = out.add(d);
    }
    for (uint32_t r : keep) out.roots.push_back(map[r]);
    if (remap) *remap = std::move(map);
    return out;
}

}  // namespace slpenum
