#include "slpenum/mso_enum.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace slpenum {

EnumDataStructure::EnumDataStructure(std::shared_ptr<const Dbuta> b) : b_(std::move(b)) {
    if (!b_) throw InvalidInput("missing automaton");
}

EnumDataStructure::EnumDataStructure(std::shared_ptr<const Dbuta> b, const Fslp& g)
    : EnumDataStructure(std::move(b)) {
    extend(g.nodes());
    g_.roots = g.roots;
}

void EnumDataStructure::extend(const std::vector<NodeDef>& defs) {
    std::size_t base = g_.size();
    std::vector<uint8_t> tau;
    for (std::size_t i = 0; i < defs.size(); ++i) {
        const NodeDef& d = defs[i];
        auto where = [&](const std::string& rule) {
            return InvalidInput("invalid extension: node " + std::to_string(base + i) + ": " + rule);
        };
        if (d.is_leaf()) {
            if (!b_->covers(d.label))
                throw where("label '" + d.label.name() + "' is not covered by the automaton");
            tau.push_back(d.kind == NodeKind::LeafCtx ? 1 : 0);
            continue;
        }
        auto type = [&](uint32_t c) -> int {
            if (c >= base + i) throw where("reference to undefined node " + std::to_string(c));
            return c < base ? st_.tau[c] : tau[c - base];
        };
        int ta = type(d.left), tb = type(d.right);
        if (d.kind == NodeKind::HC && ta + tb > 1) throw where("hc needs at most one child of type 1");
        if (d.kind == NodeKind::VC && ta != 1) throw where("vc needs a left child of type 1");
        tau.push_back(static_cast<uint8_t>(d.kind == NodeKind::HC ? ta + tb : tb));
    }
    for (const NodeDef& d : defs) add_node(d);
}

uint32_t EnumDataStructure::add_node(const NodeDef& def) {
    const Dbuta& b = *b_;
    const State fail = b.failure();
    if (def.is_leaf() && !b.covers(def.label))
        throw InvalidInput("alphabet mismatch: label '" + def.label.name() + "' is not covered by the automaton");
    uint32_t id = g_.add(def);
    try {
        st_.append(g_, id);
    } catch (...) {
        Fslp trimmed;
        for (uint32_t i = 0; i < id; ++i) trimmed.add(g_[i]);
        trimmed.roots = g_.roots;
        g_ = std::move(trimmed);
        throw;
    }

    NodeData d;
    d.base = static_cast<uint32_t>(prod_node_.size());
    // Outgoing product edges of each active state, left edges before right edges.
    std::vector<std::vector<EnumIndex<PreorderCategory>::OutEdge>> out;
    std::vector<std::vector<ProductEdge>> out_sides;

    if (def.is_leaf()) {
        bool ctx = def.kind == NodeKind::LeafCtx;
        d.empty = b.leaf(def.label, ctx, false);
        State q = b.leaf(def.label, ctx, true);
        if (q != fail) {
            d.active = {q};
            d.useful = {1};
        }
        d.succ_begin.assign(d.active.size() + 1, static_cast<uint32_t>(succ_.size()));
        out.resize(d.active.size());
        out_sides.resize(d.active.size());
    } else {
        const NodeData& l = data_[def.left];
        const NodeData& r = data_[def.right];
        Op op = def.kind == NodeKind::HC ? Op::HC : Op::VC;
        d.empty = b.step(l.empty, r.empty, op);
        d.eff_left = edge_effect(g_, st_, id, Side::Left);
        d.eff_right = edge_effect(g_, st_, id, Side::Right);

        struct Pair {
            State p;
            uint32_t i1, i2;
        };
        std::vector<Pair> both;  // A1 x A2 in lexicographic order
        std::vector<std::pair<State, uint32_t>> left_edges, right_edges;
        for (uint32_t i1 = 0; i1 < l.active.size(); ++i1) {
            for (uint32_t i2 = 0; i2 < r.active.size(); ++i2) {
                State p = b.step(l.active[i1], r.active[i2], op);
                if (p != fail) both.push_back({p, i1, i2});
            }
            if (r.empty != fail) {
                State p = b.step(l.active[i1], r.empty, op);
                if (p != fail) left_edges.push_back({p, i1});
            }
        }
        if (l.empty != fail)
            for (uint32_t i2 = 0; i2 < r.active.size(); ++i2) {
                State p = b.step(l.empty, r.active[i2], op);
                if (p != fail) right_edges.push_back({p, i2});
            }
        for (const auto& x : both) d.active.push_back(x.p);
        for (const auto& x : left_edges) d.active.push_back(x.first);
        for (const auto& x : right_edges) d.active.push_back(x.first);
        std::sort(d.active.begin(), d.active.end());
        d.active.erase(std::unique(d.active.begin(), d.active.end()), d.active.end());
        auto index_of = [&](State p) {
            return static_cast<uint32_t>(std::lower_bound(d.active.begin(), d.active.end(), p) - d.active.begin());
        };

        d.useful.assign(d.active.size(), 0);
        std::stable_sort(both.begin(), both.end(), [](const Pair& x, const Pair& y) { return x.p < y.p; });
        d.succ_begin.resize(d.active.size() + 1);
        std::size_t k = 0;
        for (uint32_t i = 0; i < d.active.size(); ++i) {
            d.succ_begin[i] = static_cast<uint32_t>(succ_.size());
            for (; k < both.size() && both[k].p == d.active[i]; ++k) {
                d.useful[i] = 1;
                succ_.push_back({l.base + both[k].i1, r.base + both[k].i2});
            }
        }
        d.succ_begin[d.active.size()] = static_cast<uint32_t>(succ_.size());

        out.resize(d.active.size());
        out_sides.resize(d.active.size());
        for (auto [p, i1] : left_edges) {
            uint32_t i = index_of(p);
            out[i].push_back({l.base + i1, d.eff_left});
            out_sides[i].push_back({l.base + i1, Side::Left});
        }
        for (auto [p, i2] : right_edges) {
            uint32_t i = index_of(p);
            out[i].push_back({r.base + i2, d.eff_right});
            out_sides[i].push_back({r.base + i2, Side::Right});
        }
    }

    int object = st_.tau[id];
    for (uint32_t i = 0; i < d.active.size(); ++i) {
        uint32_t pv = d.base + i;
        prod_node_.push_back(id);
        prod_state_.push_back(d.active[i]);
        prod_edges_.push_back(std::move(out_sides[i]));
        index_.define(pv, object, d.useful[i] != 0, out[i]);
    }
    data_.push_back(std::move(d));
    return id;
}

std::vector<State> EnumDataStructure::conf_useful(uint32_t v) const {
    const NodeData& d = data_.at(v);
    std::vector<State> u;
    for (std::size_t i = 0; i < d.active.size(); ++i)
        if (d.useful[i]) u.push_back(d.active[i]);
    return u;
}

uint32_t EnumDataStructure::product_vertex(uint32_t v, State q) const {
    const NodeData& d = data_.at(v);
    auto it = std::lower_bound(d.active.begin(), d.active.end(), q);
    if (it == d.active.end() || *it != q) return kNone;
    return d.base + static_cast<uint32_t>(it - d.active.begin());
}

std::vector<std::pair<State, State>> EnumDataStructure::succ_a(uint32_t v, State q) const {
    uint32_t p = product_vertex(v, q);
    std::vector<std::pair<State, State>> out;
    if (p == kNone) return out;
    const NodeData& d = data_[v];
    uint32_t i = p - d.base;
    for (uint32_t k = d.succ_begin[i]; k < d.succ_begin[i + 1]; ++k)
        out.push_back({prod_state_[succ_[k].left], prod_state_[succ_[k].right]});
    return out;
}

bool EnumDataStructure::check_empty_solution(uint32_t a) const {
    if (a >= data_.size()) throw InvalidInput("unknown node " + std::to_string(a));
    return b_->accepting(data_[a].empty);
}

AnswerStream EnumDataStructure::enumerate(uint32_t a) const {
    if (a >= data_.size()) throw InvalidInput("unknown node " + std::to_string(a));
    if (st_.tau[a] != 0) throw InvalidInput("node " + std::to_string(a) + " evaluates to a context, not a forest");
    AnswerStream s;
    s.eds_ = this;
    s.emit_empty_ = b_->accepting(data_[a].empty);
    const NodeData& d = data_[a];
    for (uint32_t i = 0; i < d.active.size(); ++i)
        if (b_->accepting(d.active[i])) s.roots_.push_back(d.base + i);
    return s;
}

bool EnumDataStructure::operator==(const EnumDataStructure& o) const {
    return b_ == o.b_ && g_.nodes() == o.g_.nodes() && st_ == o.st_ && data_ == o.data_ && succ_ == o.succ_ &&
           prod_node_ == o.prod_node_ && prod_state_ == o.prod_state_ && index_ == o.index_ &&
           std::equal(prod_edges_.begin(), prod_edges_.end(), o.prod_edges_.begin(), o.prod_edges_.end(),
                      [](const auto& x, const auto& y) {
                          return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const auto& e, const auto& f) {
                              return e.target == f.target && e.side == f.side;
                          });
                      });
}

uint32_t AnswerStream::append(WNode n) {
    auto i = static_cast<uint32_t>(size_);
    if (size_ < pool_.size())
        pool_[size_] = std::move(n);
    else
        pool_.push_back(std::move(n));
    ++size_;
    if (last_nonmax_.size() < size_) last_nonmax_.resize(size_);
    last_nonmax_[i] = maximal(i) ? (i ? last_nonmax_[i - 1] : kNone) : i;
    ++steps_;
    return i;
}

bool AnswerStream::maximal(uint32_t i) const {
    const WNode& n = pool_[i];
    switch (n.kind) {
        case Kind::Unary: return !n.lookahead.has_value();
        case Kind::Binary: return n.succ_pos + 1 >= n.succ_end;
        case Kind::Leaf: return true;
    }
    return true;
}

void AnswerStream::add_unary(uint32_t prod, uint32_t parent, PreorderEffect prefix) {
    WNode u;
    u.kind = Kind::Unary;
    u.prod = prod;
    u.parent = parent;
    u.prefix = std::move(prefix);
    u.session = eds_->index_.open(prod);
    auto first = u.session.next();
    steps_ += u.session.last_steps();
    if (!first) throw std::logic_error("active configuration without useful successor");
    u.lookahead = u.session.next();
    steps_ += u.session.last_steps();
    uint32_t i = append(std::move(u));
    add_child_of_unary(i, *first);
}

void AnswerStream::add_child_of_unary(uint32_t u, const PathSession<PreorderCategory>::Output& out) {
    WNode c;
    c.prod = out.target;
    c.parent = u;
    c.prefix = compose(pool_[u].prefix, out.mor);
    uint32_t v = eds_->prod_node_[out.target];
    if (eds_->g_[v].is_leaf()) {
        c.kind = Kind::Leaf;
        append(std::move(c));
        return;
    }
    const auto& d = eds_->data_[v];
    uint32_t k = out.target - d.base;
    c.kind = Kind::Binary;
    c.succ_pos = d.succ_begin[k];
    c.succ_end = d.succ_begin[k + 1];
    uint32_t i = append(std::move(c));
    tasks_.push_back({i, true});
    tasks_.push_back({i, false});
}

void AnswerStream::run_tasks() {
    while (!tasks_.empty()) {
        Task t = tasks_.back();
        tasks_.pop_back();
        const WNode& bn = pool_[t.binary];
        const auto& s = eds_->succ_[bn.succ_pos];
        const auto& d = eds_->data_[eds_->prod_node_[bn.prod]];
        PreorderEffect prefix = compose(bn.prefix, t.right ? d.eff_right : d.eff_left);
        if (t.right) pool_[t.binary].right_child = static_cast<uint32_t>(size_);
        add_unary(t.right ? s.right : s.left, t.binary, std::move(prefix));
    }
}

std::vector<BigNat> AnswerStream::collect() {
    std::vector<BigNat> out;
    for (std::size_t i = 0; i < size_; ++i)
        if (pool_[i].kind == Kind::Leaf) out.push_back(pool_[i].prefix.c);
    steps_ += size_;
    if (out.empty() || size_ > 4 * out.size() - 2)
        throw std::logic_error("witness tree with " + std::to_string(size_) + " nodes for " +
                               std::to_string(out.size()) + " leaves exceeds 4|S|-2");
    return out;
}

std::optional<std::vector<BigNat>> AnswerStream::next() {
    steps_ = 0;
    if (done_) return std::nullopt;
    if (emit_empty_) {
        emit_empty_ = false;
        ++steps_;
        return std::vector<BigNat>{};
    }
    for (;;) {
        if (!have_tree_) {
            if (root_pos_ == roots_.size()) {
                done_ = true;
                size_ = 0;
                return std::nullopt;
            }
            size_ = 0;
            add_unary(roots_[root_pos_++], kNone, PreorderEffect::identity(0));
            run_tasks();
            have_tree_ = true;
            return collect();
        }
        uint32_t i = last_nonmax_[size_ - 1];
        if (i == kNone) {
            have_tree_ = false;
            continue;
        }
        // Binary ancestors whose left subtree holds node i get their right subtree rebuilt.
        std::vector<uint32_t> anc;
        for (uint32_t x = i; pool_[x].parent != kNone; x = pool_[x].parent) {
            uint32_t p = pool_[x].parent;
            if (pool_[p].kind == Kind::Binary && pool_[p].right_child != x) anc.push_back(p);
            ++steps_;
        }
        size_ = i + 1;
        for (auto it = anc.rbegin(); it != anc.rend(); ++it) tasks_.push_back({*it, true});
        WNode& n = pool_[i];
        if (n.kind == Kind::Unary) {
            auto cur = std::move(*n.lookahead);
            n.lookahead = n.session.next();
            steps_ += n.session.last_steps();
            last_nonmax_[i] = maximal(i) ? (i ? last_nonmax_[i - 1] : kNone) : i;
            add_child_of_unary(i, cur);
        } else {
            ++n.succ_pos;
            last_nonmax_[i] = maximal(i) ? (i ? last_nonmax_[i - 1] : kNone) : i;
            tasks_.push_back({i, true});
            tasks_.push_back({i, false});
        }
        run_tasks();
        return collect();
    }
}

EnumDataStructure build_enum(const Fslp& g, const Nsta& a) {
    return EnumDataStructure(nsta_to_dbuta(a), g);
}

std::vector<std::vector<BigNat>> enumerate_select(const EnumDataStructure& eds, uint32_t a, std::size_t limit) {
    std::vector<std::vector<BigNat>> out;
    auto s = eds.enumerate(a);
    while (out.size() < limit) {
        auto ans = s.next();
        if (!ans) break;
        std::sort(ans->begin(), ans->end());
        if (std::adjacent_find(ans->begin(), ans->end()) != ans->end())
            throw std::logic_error("answer set with a repeated preorder number");
        out.push_back(std::move(*ans));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<uint32_t>> enumerate_select_uncompressed(const Expr& e, const Dbuta& b, std::size_t budget) {
    if (!type_of(e) || *type_of(e) != 0) throw InvalidInput("expression does not evaluate to a forest");
    const auto& nodes = e.nodes();
    const State fail = b.failure();
    std::size_t n = nodes.size();
    std::vector<State> empty(n);
    std::vector<std::set<State>> active(n), useful(n);
    // T (x) B edges: (v, p) -> list of (child, q)
    std::map<std::pair<uint32_t, State>, std::vector<std::pair<uint32_t, State>>> edges;
    std::vector<uint32_t> leaf_no(n, kNone);
    uint32_t leaves = 0;
    for (uint32_t v = 0; v < n; ++v) {
        const ExprNode& x = nodes[v];
        if (x.kind == ExprKind::Leaf || x.kind == ExprKind::LeafCtx) {
            bool ctx = x.kind == ExprKind::LeafCtx;
            leaf_no[v] = leaves++;
            empty[v] = b.leaf(x.label, ctx, false);
            State q = b.leaf(x.label, ctx, true);
            if (q != fail) active[v].insert(q), useful[v].insert(q);
            continue;
        }
        Op op = x.kind == ExprKind::HC ? Op::HC : Op::VC;
        uint32_t v1 = x.left, v2 = x.right;
        empty[v] = b.step(empty[v1], empty[v2], op);
        for (State q1 : active[v1])
            for (State q2 : active[v2]) {
                State p = b.step(q1, q2, op);
                if (p != fail) active[v].insert(p), useful[v].insert(p);
            }
        for (State q1 : active[v1]) {
            State p = b.step(q1, empty[v2], op);
            if (p != fail) active[v].insert(p), edges[{v, p}].push_back({v1, q1});
        }
        for (State q2 : active[v2]) {
            State p = b.step(empty[v1], q2, op);
            if (p != fail) active[v].insert(p), edges[{v, p}].push_back({v2, q2});
        }
    }

    using Family = std::vector<std::vector<uint32_t>>;
    std::map<std::pair<uint32_t, State>, Family> memo_a, memo_u;
    std::size_t produced = 0;
    auto charge = [&](std::size_t k) {
        produced += k;
        if (produced > budget) throw BudgetExceeded("uncompressed enumeration exceeds budget");
    };
    std::function<const Family&(uint32_t, State)> fam_a;
    std::function<const Family&(uint32_t, State)> fam_u = [&](uint32_t v, State q) -> const Family& {
        auto key = std::make_pair(v, q);
        if (auto it = memo_u.find(key); it != memo_u.end()) return it->second;
        Family f;
        const ExprNode& x = nodes[v];
        if (leaf_no[v] != kNone) {
            f.push_back({leaf_no[v]});
        } else {
            Op op = x.kind == ExprKind::HC ? Op::HC : Op::VC;
            for (State q1 : active[x.left])
                for (State q2 : active[x.right])
                    if (b.step(q1, q2, op) == q) {
                        const Family& f1 = fam_a(x.left, q1);
                        const Family& f2 = fam_a(x.right, q2);
                        charge(f1.size() * f2.size());
                        for (const auto& s1 : f1)
                            for (const auto& s2 : f2) {
                                auto s = s1;
                                s.insert(s.end(), s2.begin(), s2.end());
                                f.push_back(std::move(s));
                            }
                    }
        }
        return memo_u.emplace(key, std::move(f)).first->second;
    };
    fam_a = [&](uint32_t v, State q) -> const Family& {
        auto key = std::make_pair(v, q);
        if (auto it = memo_a.find(key); it != memo_a.end()) return it->second;
        // succ^u by explicit reachability over T (x) B
        std::set<std::pair<uint32_t, State>> seen{key};
        std::vector<std::pair<uint32_t, State>> stack{key};
        Family f;
        while (!stack.empty()) {
            auto [w, p] = stack.back();
            stack.pop_back();
            if (useful[w].count(p)) {
                const Family& g = fam_u(w, p);
                charge(g.size());
                f.insert(f.end(), g.begin(), g.end());
            }
            if (auto it = edges.find({w, p}); it != edges.end())
                for (const auto& nx : it->second)
                    if (seen.insert(nx).second) stack.push_back(nx);
        }
        return memo_a.emplace(key, std::move(f)).first->second;
    };

    Family out;
    uint32_t root = e.root();
    if (b.accepting(empty[root])) out.push_back({});
    for (State q : active[root])
        if (b.accepting(q)) {
            const Family& f = fam_a(root, q);
            out.insert(out.end(), f.begin(), f.end());
        }
    for (auto& s : out) std::sort(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace slpenum
