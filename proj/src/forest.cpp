#include "slpenum/forest.hpp"
#include "slpenum/error.hpp"

#include <algorithm>
#include <cctype>

namespace slpenum {

Symbol hole_symbol() {
    static const Symbol s = Symbol::intern("*");
    return s;
}

Forest Forest::from_structure(const std::vector<Symbol>& labels,
                              const std::vector<std::vector<uint32_t>>& children,
                              const std::vector<uint32_t>& roots, std::optional<uint32_t> hole) {
    Forest f;
    std::vector<uint32_t> stack(roots.rbegin(), roots.rend());
    std::vector<uint32_t> parent_of_new;  // new id of parent for each stack entry
    std::vector<uint32_t> pstack(roots.size(), kNone);
    std::vector<uint32_t> renum(labels.size(), kNone);
    while (!stack.empty()) {
        uint32_t v = stack.back();
        uint32_t p = pstack.back();
        stack.pop_back();
        pstack.pop_back();
        if (renum[v] != kNone) throw InvalidInput("forest structure is not a tree");
        auto id = static_cast<uint32_t>(f.labels.size());
        renum[v] = id;
        f.labels.push_back(labels[v]);
        f.parent.push_back(p);
        f.children.emplace_back();
        if (p == kNone)
            f.roots.push_back(id);
        else
            f.children[p].push_back(id);
        const auto& ch = children[v];
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
            stack.push_back(*it);
            pstack.push_back(id);
        }
    }
    if (hole) f.hole = renum[*hole];
    return f;
}

namespace {

bool bare_label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_separator(char c) {
    return c == ',' || std::isspace(static_cast<unsigned char>(c));
}

// Reads a label at text[i]; returns the label and advances i.
std::optional<std::string> read_label(std::string_view text, std::size_t& i) {
    char c = text[i];
    if (bare_label_char(c)) {
        ++i;
        return std::string(1, c);
    }
    if (c != '"') return std::nullopt;
    std::size_t start = i;
    ++i;
    std::string name;
    while (i < text.size() && text[i] != '"') {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        name.push_back(text[i++]);
    }
    if (i >= text.size()) throw ParseError("unterminated quoted label", start);
    ++i;
    if (name.empty()) throw ParseError("empty label", start);
    return name;
}

}  // namespace

std::string format_label(Symbol s) {
    std::string n = s.name();
    if (n.size() == 1 && bare_label_char(n[0])) return n;
    std::string out = "\"";
    for (char c : n) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

Forest parse_term(std::string_view text) {
    Forest f;
    std::vector<uint32_t> open;        // vertices whose '(' is open
    std::vector<std::size_t> open_at;  // positions of those '('
    uint32_t last = kNone;             // last vertex created at current level (may take '(')
    bool last_is_hole = false;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (is_separator(c)) {
            ++i;
            continue;
        }
        if (c == '(') {
            if (last == kNone) throw ParseError("'(' without a preceding label", i);
            if (last_is_hole) throw ParseError("the hole must be a leaf", i);
            open.push_back(last);
            open_at.push_back(i);
            last = kNone;
            ++i;
            continue;
        }
        if (c == ')') {
            if (open.empty()) throw ParseError("unbalanced ')'", i);
            last = kNone;
            open.pop_back();
            open_at.pop_back();
            ++i;
            continue;
        }
        std::size_t at = i;
        bool hole = false;
        Symbol label;
        if (c == '*') {
            if (f.hole) throw ParseError("more than one hole", at);
            hole = true;
            label = hole_symbol();
            ++i;
        } else {
            auto name = read_label(text, i);
            if (!name) throw ParseError(std::string("unexpected character '") + c + "'", at);
            label = Symbol::intern(*name);
        }
        auto id = static_cast<uint32_t>(f.labels.size());
        uint32_t p = open.empty() ? kNone : open.back();
        f.labels.push_back(label);
        f.parent.push_back(p);
        f.children.emplace_back();
        if (p == kNone)
            f.roots.push_back(id);
        else
            f.children[p].push_back(id);
        if (hole) f.hole = id;
        last = id;
        last_is_hole = hole;
    }
    if (!open.empty()) throw ParseError("unbalanced '('", open_at.back());
    return f;
}

std::string serialize_term(const Forest& f) {
    std::string out;
    // Stack entries: vertex to print, or kNone meaning "emit ')'".
    std::vector<uint32_t> stack(f.roots.rbegin(), f.roots.rend());
    while (!stack.empty()) {
        uint32_t v = stack.back();
        stack.pop_back();
        if (v == kNone) {
            out.push_back(')');
            continue;
        }
        out += (f.hole && *f.hole == v) ? std::string("*") : format_label(f.labels[v]);
        const auto& ch = f.children[v];
        if (!ch.empty()) {
            out.push_back('(');
            stack.push_back(kNone);
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
        }
    }
    return out;
}

Expr Expr::leaf(Symbol a) {
    Expr e;
    e.nodes_.push_back({ExprKind::Leaf, a});
    return e;
}

Expr Expr::leaf_ctx(Symbol a) {
    Expr e;
    e.nodes_.push_back({ExprKind::LeafCtx, a});
    return e;
}

namespace {

void combine(ExprKind kind, const std::vector<ExprNode>& l, const std::vector<ExprNode>& r,
             std::vector<ExprNode>& out) {
    out.reserve(l.size() + r.size() + 1);
    out.insert(out.end(), l.begin(), l.end());
    auto off = static_cast<uint32_t>(l.size());
    for (auto n : r) {
        if (n.left != kNone) n.left += off;
        if (n.right != kNone) n.right += off;
        out.push_back(n);
    }
    out.push_back({kind, Symbol(), off - 1, static_cast<uint32_t>(out.size() - 1)});
}

}  // namespace

Expr Expr::hc(const Expr& l, const Expr& r) {
    Expr e;
    combine(ExprKind::HC, l.nodes_, r.nodes_, e.nodes_);
    return e;
}

Expr Expr::vc(const Expr& l, const Expr& r) {
    Expr e;
    combine(ExprKind::VC, l.nodes_, r.nodes_, e.nodes_);
    return e;
}

std::size_t Expr::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const ExprNode& n) {
        return n.kind == ExprKind::Leaf || n.kind == ExprKind::LeafCtx;
    }));
}

std::vector<uint32_t> Expr::leaves() const {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].kind == ExprKind::Leaf || nodes_[i].kind == ExprKind::LeafCtx) out.push_back(i);
    return out;
}

Expr Expr::from_nodes(const std::vector<ExprNode>& nodes, uint32_t root) {
    Expr e;
    std::vector<uint32_t> renum(nodes.size(), kNone);
    std::vector<std::pair<uint32_t, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [v, expanded] = stack.back();
        stack.pop_back();
        const auto& n = nodes[v];
        bool leafy = n.kind == ExprKind::Leaf || n.kind == ExprKind::LeafCtx;
        if (!expanded && !leafy) {
            stack.push_back({v, true});
            stack.push_back({n.right, false});
            stack.push_back({n.left, false});
            continue;
        }
        ExprNode m = n;
        if (!leafy) {
            m.left = renum[n.left];
            m.right = renum[n.right];
        }
        renum[v] = static_cast<uint32_t>(e.nodes_.size());
        e.nodes_.push_back(m);
    }
    return e;
}

namespace {

struct ExprParser {
    std::string_view text;
    std::size_t i = 0;
    std::vector<ExprNode> nodes;

    void skip() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    }

    bool eat(std::string_view tok) {
        skip();
        if (text.substr(i, tok.size()) == tok) {
            i += tok.size();
            return true;
        }
        return false;
    }

    uint32_t parse() {
        skip();
        if (i >= text.size()) throw ParseError("unexpected end of expression", i);
        if (text[i] == '(') {
            std::size_t at = i++;
            uint32_t l = parse();
            ExprKind kind;
            if (eat("-") || eat("⊖"))
                kind = ExprKind::HC;
            else if (eat("/") || eat("⊘"))
                kind = ExprKind::VC;
            else
                throw ParseError("expected '-' or '/'", i);
            uint32_t r = parse();
            if (!eat(")")) throw ParseError("expected ')' closing '(' at " + std::to_string(at), i);
            nodes.push_back({kind, Symbol(), l, r});
            return static_cast<uint32_t>(nodes.size() - 1);
        }
        std::size_t at = i;
        auto name = read_label(text, i);
        if (!name) throw ParseError(std::string("unexpected character '") + text[i] + "'", at);
        bool ctx = i < text.size() && text[i] == '*';
        if (ctx) ++i;
        nodes.push_back({ctx ? ExprKind::LeafCtx : ExprKind::Leaf, Symbol::intern(*name)});
        return static_cast<uint32_t>(nodes.size() - 1);
    }
};

}  // namespace

Expr parse_expr(std::string_view text) {
    ExprParser p{text, 0, {}};
    uint32_t root = p.parse();
    p.skip();
    if (p.i != text.size()) throw ParseError("trailing input", p.i);
    return Expr::from_nodes(p.nodes, root);
}

std::string format_expr(const Expr& e) {
    std::vector<std::string> s(e.size());
    for (uint32_t i = 0; i < e.size(); ++i) {
        const auto& n = e.nodes()[i];
        switch (n.kind) {
            case ExprKind::Leaf: s[i] = format_label(n.label); break;
            case ExprKind::LeafCtx: s[i] = format_label(n.label) + "*"; break;
            case ExprKind::HC:
            case ExprKind::VC:
                s[i] = "(" + std::move(s[n.left]) + (n.kind == ExprKind::HC ? " - " : " / ") +
                       std::move(s[n.right]) + ")";
                break;
        }
    }
    return s[e.root()];
}

namespace {

std::vector<int> types(const Expr& e) {
    std::vector<int> t(e.size(), -1);
    for (uint32_t i = 0; i < e.size(); ++i) {
        const auto& n = e.nodes()[i];
        switch (n.kind) {
            case ExprKind::Leaf: t[i] = 0; break;
            case ExprKind::LeafCtx: t[i] = 1; break;
            case ExprKind::HC: {
                int a = t[n.left], b = t[n.right];
                t[i] = (a >= 0 && b >= 0 && a + b <= 1) ? a + b : -1;
                break;
            }
            case ExprKind::VC: {
                int a = t[n.left], b = t[n.right];
                t[i] = (a == 1 && b >= 0) ? b : -1;
                break;
            }
        }
    }
    return t;
}

}  // namespace

std::optional<int> type_of(const Expr& e) {
    int t = types(e)[e.root()];
    if (t < 0) return std::nullopt;
    return t;
}

Forest eval_expr(const Expr& e) {
    if (!type_of(e)) throw InvalidInput("invalid forest algebra expression");
    std::vector<Symbol> labels;
    std::vector<std::vector<uint32_t>> children;
    std::vector<uint32_t> parent;
    struct Val {
        std::vector<uint32_t> roots;
        uint32_t hole = kNone;
    };
    std::vector<Val> val(e.size());
    auto fresh = [&](Symbol a, uint32_t p) {
        auto id = static_cast<uint32_t>(labels.size());
        labels.push_back(a);
        children.emplace_back();
        parent.push_back(p);
        if (p != kNone) children[p].push_back(id);
        return id;
    };
    for (uint32_t i = 0; i < e.size(); ++i) {
        const auto& n = e.nodes()[i];
        Val& out = val[i];
        switch (n.kind) {
            case ExprKind::Leaf: out.roots = {fresh(n.label, kNone)}; break;
            case ExprKind::LeafCtx: {
                uint32_t v = fresh(n.label, kNone);
                out.roots = {v};
                out.hole = fresh(hole_symbol(), v);
                break;
            }
            case ExprKind::HC: {
                Val l = std::move(val[n.left]), r = std::move(val[n.right]);
                out.roots = std::move(l.roots);
                out.roots.insert(out.roots.end(), r.roots.begin(), r.roots.end());
                out.hole = l.hole != kNone ? l.hole : r.hole;
                break;
            }
            case ExprKind::VC: {
                Val l = std::move(val[n.left]), r = std::move(val[n.right]);
                uint32_t h = l.hole, p = parent[h];
                auto& seq = p == kNone ? l.roots : children[p];
                auto pos = std::find(seq.begin(), seq.end(), h);
                pos = seq.erase(pos);
                seq.insert(pos, r.roots.begin(), r.roots.end());
                for (uint32_t c : r.roots) parent[c] = p;
                out.roots = std::move(l.roots);
                out.hole = r.hole;
                break;
            }
        }
    }
    Val& top = val[e.root()];
    std::optional<uint32_t> hole;
    if (top.hole != kNone) hole = top.hole;
    return Forest::from_structure(labels, children, top.roots, hole);
}

std::vector<uint64_t> leaf_preorders(const Expr& e) {
    auto t = types(e);
    if (t[e.root()] != 0) throw InvalidInput("leaf_preorders needs a valid expression of type 0");
    std::size_t n = e.size();
    std::vector<uint64_t> s(n), ell(n), x(n), y(n);
    for (uint32_t i = 0; i < n; ++i) {
        const auto& nd = e.nodes()[i];
        if (nd.kind == ExprKind::Leaf || nd.kind == ExprKind::LeafCtx) {
            s[i] = 1;
            ell[i] = 1;
            continue;
        }
        uint32_t a = nd.left, b = nd.right;
        s[i] = s[a] + s[b];
        if (nd.kind == ExprKind::HC)
            ell[i] = t[b] == 1 ? s[a] + ell[b] : ell[a];
        else
            ell[i] = ell[a] + ell[b];
    }
    std::vector<uint64_t> out;
    x[e.root()] = 0;
    for (uint32_t k = static_cast<uint32_t>(n); k-- > 0;) {
        const auto& nd = e.nodes()[k];
        if (nd.kind == ExprKind::Leaf || nd.kind == ExprKind::LeafCtx) continue;
        uint32_t a = nd.left, b = nd.right;
        if (nd.kind == ExprKind::HC) {
            x[a] = x[k];
            y[a] = y[k];
            x[b] = x[k] + s[a] + (t[a] == 1 ? y[k] : 0);
            y[b] = y[k];
        } else if (t[b] == 0) {
            x[a] = x[k];
            y[a] = s[b];
            x[b] = x[k] + ell[a];
        } else {
            x[a] = x[k];
            y[a] = y[k] + s[b];
            x[b] = x[k] + ell[a];
            y[b] = y[k];
        }
    }
    for (uint32_t i = 0; i < n; ++i) {
        const auto& nd = e.nodes()[i];
        if (nd.kind == ExprKind::Leaf || nd.kind == ExprKind::LeafCtx) out.push_back(x[i]);
    }
    return out;
}

std::vector<bool> selection_to_vertices(const Expr& e, const std::vector<bool>& leaf_selected) {
    auto pre = leaf_preorders(e);
    std::vector<bool> out(pre.size(), false);
    for (std::size_t i = 0; i < pre.size(); ++i) out[pre[i]] = leaf_selected.at(i);
    return out;
}

}  // namespace slpenum
