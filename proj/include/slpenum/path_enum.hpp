#pragma once

#include "slpenum/bignum.hpp"
#include "slpenum/error.hpp"
#include "slpenum/forest.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

namespace slpenum {

// DAG whose edges carry morphisms of a category C (C::Morphism, C::identity(obj),
// C::compose(f, g) meaning f then g). Edge indices are per-source insertion order.
template <class M>
struct DecoratedDag {
    struct Edge {
        uint32_t source;
        uint32_t target;
        M mor;
    };
    std::vector<int> objects;
    std::vector<bool> is_target;
    std::vector<Edge> edges;

    uint32_t add_vertex(int object = 0, bool target = false) {
        objects.push_back(object);
        is_target.push_back(target);
        return static_cast<uint32_t>(objects.size() - 1);
    }
    void add_edge(uint32_t s, uint32_t t, M m) { edges.push_back({s, t, std::move(m)}); }
    std::size_t size() const { return objects.size(); }
};

// The monoid (N, +) as a one-object category.
struct SumCategory {
    using Morphism = BigNat;
    static Morphism identity(int) { return 0; }
    static Morphism compose(const Morphism& f, const Morphism& g) { return f + g; }
};

template <class C>
class EnumIndex;

template <class C>
class PathSession {
public:
    using M = typename C::Morphism;
    struct Output {
        uint32_t target;
        M mor;
    };

    PathSession() = default;

    std::optional<Output> next();
    bool exhausted() const { return done_; }
    // Loop iterations spent by the most recent next() call.
    uint64_t last_steps() const { return steps_; }

private:
    friend class EnumIndex<C>;
    const EnumIndex<C>* idx_ = nullptr;
    uint32_t v_ = 0;
    M gamma_{};
    std::vector<std::pair<uint32_t, M>> stack_;
    bool flag_ = true;
    bool done_ = true;
    uint64_t steps_ = 0;
};

// Normalized binary DAG with right-path tables. Vertices of the original DAG are defined
// one at a time, children before parents; this makes the index extendable.
template <class C>
class EnumIndex {
public:
    using M = typename C::Morphism;

    struct OutEdge {
        uint32_t target;
        M mor;
    };

    enum class Status : uint8_t { Undefined, Pruned, Shortcut, Node };

    struct Entry {
        Status status = Status::Undefined;
        int object = 0;
        uint32_t node = kNone;
        M via{};  // shortcut morphism
        bool operator==(const Entry&) const = default;
    };

    struct Node {
        uint32_t left = kNone;
        uint32_t right = kNone;
        M mor_left{};
        M mor_right{};
        uint32_t omega = kNone;  // leaf reached by right edges
        M gamma_r{};             // morphism of that right path
        uint32_t orig = kNone;   // original vertex, for leaves
        bool leaf() const { return left == kNone; }
        bool operator==(const Node&) const = default;
    };

    void define(uint32_t v, int object, bool is_target, const std::vector<OutEdge>& edges) {
        if (v >= entries_.size()) entries_.resize(v + 1);
        if (entries_[v].status != Status::Undefined) throw InvalidInput("vertex defined twice");
        std::vector<OutEdge> out;
        out.reserve(edges.size() + 1);
        for (const auto& e : edges) {
            if (e.target >= entries_.size() || entries_[e.target].status == Status::Undefined)
                throw InvalidInput("edge to an undefined vertex");
            const Entry& t = entries_[e.target];
            if (t.status == Status::Pruned) continue;
            if (t.status == Status::Shortcut)
                out.push_back({t.node, C::compose(e.mor, t.via)});
            else
                out.push_back({t.node, e.mor});
        }
        Entry me;
        me.object = object;
        if (is_target) {
            uint32_t leaf = add_node();
            nodes_[leaf].omega = leaf;
            nodes_[leaf].gamma_r = C::identity(object);
            nodes_[leaf].orig = v;
            if (out.empty()) {
                me.status = Status::Node;
                me.node = leaf;
                entries_[v] = std::move(me);
                return;
            }
            out.push_back({leaf, C::identity(object)});
        } else if (out.empty()) {
            me.status = Status::Pruned;
            entries_[v] = std::move(me);
            return;
        } else if (out.size() == 1) {
            me.status = Status::Shortcut;
            me.node = out[0].target;
            me.via = std::move(out[0].mor);
            entries_[v] = std::move(me);
            return;
        }
        // right spine u_0 .. u_{d-2}
        std::size_t d = out.size();
        auto first = static_cast<uint32_t>(nodes_.size());
        for (std::size_t k = 0; k + 1 < d; ++k) add_node();
        for (std::size_t k = 0; k + 1 < d; ++k) {
            Node& u = nodes_[first + k];
            u.left = out[k].target;
            u.mor_left = std::move(out[k].mor);
            if (k + 2 < d) {
                u.right = first + static_cast<uint32_t>(k) + 1;
                u.mor_right = C::identity(object);
            } else {
                u.right = out[d - 1].target;
                u.mor_right = std::move(out[d - 1].mor);
            }
        }
        for (std::size_t k = d - 1; k-- > 0;) {
            Node& u = nodes_[first + k];
            const Node& r = nodes_[u.right];
            u.omega = r.omega;
            u.gamma_r = C::compose(u.mor_right, r.gamma_r);
        }
        me.status = Status::Node;
        me.node = first;
        entries_[v] = std::move(me);
    }

    PathSession<C> open(uint32_t s) const {
        if (s >= entries_.size() || entries_[s].status == Status::Undefined)
            throw InvalidInput("unknown vertex " + std::to_string(s));
        PathSession<C> sess;
        sess.idx_ = this;
        const Entry& e = entries_[s];
        if (e.status == Status::Pruned) return sess;
        sess.done_ = false;
        sess.v_ = e.node;
        sess.gamma_ = e.status == Status::Shortcut ? e.via : C::identity(e.object);
        return sess;
    }

    std::size_t vertex_count() const { return entries_.size(); }
    std::size_t node_count() const { return nodes_.size(); }
    const Entry& entry(uint32_t v) const { return entries_.at(v); }
    const Node& node(uint32_t n) const { return nodes_[n]; }

    bool operator==(const EnumIndex&) const = default;

private:
    uint32_t add_node() {
        nodes_.emplace_back();
        return static_cast<uint32_t>(nodes_.size() - 1);
    }

    std::vector<Entry> entries_;
    std::vector<Node> nodes_;
};

template <class C>
std::optional<typename PathSession<C>::Output> PathSession<C>::next() {
    steps_ = 0;
    while (!done_) {
        ++steps_;
        using Node = typename EnumIndex<C>::Node;
        const Node& n = idx_->node(v_);
        std::optional<Output> out;
        if (flag_) out = Output{idx_->node(n.omega).orig, C::compose(gamma_, n.gamma_r)};
        flag_ = true;
        if (!n.leaf()) {
            if (!idx_->node(n.right).leaf()) stack_.emplace_back(n.right, C::compose(gamma_, n.mor_right));
            gamma_ = C::compose(gamma_, n.mor_left);
            v_ = n.left;
        } else if (!stack_.empty()) {
            v_ = stack_.back().first;
            gamma_ = std::move(stack_.back().second);
            stack_.pop_back();
            flag_ = false;
        } else {
            done_ = true;
        }
        if (out) return out;
    }
    return std::nullopt;
}

// Children-first order of the DAG's vertices; throws on cycles or dangling edges.
template <class M>
std::vector<uint32_t> children_first_order(const DecoratedDag<M>& d) {
    std::size_t n = d.size();
    std::vector<uint32_t> pending(n, 0);
    std::vector<std::vector<uint32_t>> preds(n);
    for (const auto& e : d.edges) {
        if (e.source >= n || e.target >= n) throw InvalidInput("dangling edge reference");
        ++pending[e.source];
        preds[e.target].push_back(e.source);
    }
    std::deque<uint32_t> ready;
    for (uint32_t v = 0; v < n; ++v)
        if (pending[v] == 0) ready.push_back(v);
    std::vector<uint32_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        uint32_t v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (uint32_t p : preds[v])
            if (--pending[p] == 0) ready.push_back(p);
    }
    if (order.size() != n) throw InvalidInput("input DAG has a cycle");
    return order;
}

template <class C>
EnumIndex<C> preprocess(const DecoratedDag<typename C::Morphism>& d) {
    using M = typename C::Morphism;
    std::vector<std::vector<typename EnumIndex<C>::OutEdge>> out(d.size());
    for (const auto& e : d.edges) {
        if (e.source >= d.size() || e.target >= d.size()) throw InvalidInput("dangling edge reference");
        out[e.source].push_back({e.target, e.mor});
    }
    EnumIndex<C> idx;
    for (uint32_t v : children_first_order<M>(d)) idx.define(v, d.objects[v], d.is_target[v], out[v]);
    return idx;
}

}  // namespace slpenum
