#include "slpenum/free_monoid.hpp"
#include "slpenum/path_enum.hpp"

namespace slpenum {

uint32_t FmIndex::intern_label(Label l) {
    labels_.push_back(l);
    return static_cast<uint32_t>(labels_.size() - 1);
}

bool FmIndex::nonempty(uint32_t lab) const {
    const Label& l = labels_[lab];
    return l.x != kEpsilon || (l.chain != kNone && entries_[l.chain].skip != kNone);
}

void FmIndex::expand(uint32_t lab, std::vector<uint32_t>& out, uint64_t& steps) const {
    const Label& l = labels_[lab];
    if (l.x != kEpsilon) {
        out.push_back(l.x);
        ++steps;
    }
    uint32_t t = l.chain == kNone ? kNone : entries_[l.chain].skip;
    while (t != kNone) {
        out.push_back(entries_[t].x);
        ++steps;
        uint32_t n = entries_[t].next;
        t = n == kNone ? kNone : entries_[n].skip;
    }
}

FmIndex::FmIndex(const FmDag& d) {
    DecoratedDag<uint32_t> shape;
    for (std::size_t v = 0; v < d.size(); ++v) shape.add_vertex();
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> out(d.size());
    for (const auto& e : d.edges) {
        shape.add_edge(e.source, e.target, 0);
        if (e.source < d.size()) out[e.source].push_back({e.target, e.label});
    }
    entries_.resize(d.size());
    std::vector<bool> seen(d.size(), false);
    for (uint32_t v : children_first_order(shape)) {
        seen[v] = true;
        struct Out {
            uint32_t target;
            Label lab;
        };
        std::vector<Out> edges;
        for (auto [t, x] : out[v]) {
            const Entry& te = entries_[t];
            if (te.status == Status::Pruned) continue;
            if (te.status == Status::Chain)
                edges.push_back({te.node, {x, t}});
            else
                edges.push_back({te.node, {x, kNone}});
        }
        Entry& me = entries_[v];
        if (d.is_target[v]) {
            nodes_.emplace_back();
            auto leaf = static_cast<uint32_t>(nodes_.size() - 1);
            nodes_[leaf].omega = leaf;
            nodes_[leaf].orig = v;
            if (edges.empty()) {
                me.status = Status::Node;
                me.node = leaf;
                continue;
            }
            edges.push_back({leaf, {}});
        } else if (edges.empty()) {
            me.status = Status::Pruned;
            continue;
        } else if (edges.size() == 1) {
            me.status = Status::Chain;
            me.node = edges[0].target;
            me.x = edges[0].lab.x;
            me.next = edges[0].lab.chain;
            me.self_label = intern_label({kEpsilon, v});
            if (me.x != kEpsilon)
                me.skip = v;
            else
                me.skip = me.next == kNone ? kNone : entries_[me.next].skip;
            continue;
        }
        std::size_t deg = edges.size();
        auto first = static_cast<uint32_t>(nodes_.size());
        nodes_.resize(nodes_.size() + deg - 1);
        for (std::size_t k = 0; k + 1 < deg; ++k) {
            Node& u = nodes_[first + k];
            u.left = edges[k].target;
            u.lab_left = intern_label(edges[k].lab);
            if (k + 2 < deg) {
                u.right = first + static_cast<uint32_t>(k) + 1;
                u.lab_right = intern_label({});
            } else {
                u.right = edges[deg - 1].target;
                u.lab_right = intern_label(edges[deg - 1].lab);
            }
        }
        for (std::size_t k = deg - 1; k-- > 0;) {
            Node& u = nodes_[first + k];
            const Node& r = nodes_[u.right];
            u.omega = r.omega;
            u.rnext = nonempty(u.lab_right) ? first + static_cast<uint32_t>(k) : (r.leaf() ? kNone : r.rnext);
        }
        me.status = Status::Node;
        me.node = first;
    }
}

FmSession FmIndex::open(uint32_t s) const {
    if (s >= entries_.size()) throw InvalidInput("unknown vertex " + std::to_string(s));
    FmSession sess;
    sess.idx_ = this;
    const Entry& e = entries_[s];
    if (e.status == Status::Pruned) return sess;
    sess.done_ = false;
    sess.v_ = e.node;
    if (e.status == Status::Chain && nonempty(e.self_label)) {
        sess.trie_.push_back({0, e.self_label});
        sess.alpha_ = 1;
    }
    return sess;
}

std::optional<FmSession::Output> FmSession::next() {
    steps_ = 0;
    const FmIndex& ix = *idx_;
    while (!done_) {
        ++steps_;
        const auto& n = ix.nodes_[v_];
        std::optional<Output> out;
        if (flag_) {
            Output o;
            o.target = ix.nodes_[n.omega].orig;
            std::vector<uint32_t> path;
            for (uint32_t a = alpha_; a != 0; a = trie_[a].parent) {
                path.push_back(a);
                ++steps_;
            }
            for (auto it = path.rbegin(); it != path.rend(); ++it) {
                ix.expand(trie_[*it].label, o.word, steps_);
            }
            uint32_t t = n.leaf() ? kNone : n.rnext;
            while (t != kNone) {
                const auto& tn = ix.nodes_[t];
                ix.expand(tn.lab_right, o.word, steps_);
                const auto& r = ix.nodes_[tn.right];
                t = r.leaf() ? kNone : r.rnext;
            }
            out = std::move(o);
        }
        flag_ = true;
        auto extend = [&](uint32_t lab) {
            if (!ix.nonempty(lab)) return alpha_;
            trie_.push_back({alpha_, lab});
            return static_cast<uint32_t>(trie_.size() - 1);
        };
        if (!n.leaf()) {
            if (!ix.nodes_[n.right].leaf()) stack_.emplace_back(n.right, extend(n.lab_right));
            alpha_ = extend(n.lab_left);
            v_ = n.left;
        } else if (!stack_.empty()) {
            std::tie(v_, alpha_) = stack_.back();
            stack_.pop_back();
            flag_ = false;
        } else {
            done_ = true;
        }
        if (out) return out;
    }
    return std::nullopt;
}

}  // namespace slpenum
