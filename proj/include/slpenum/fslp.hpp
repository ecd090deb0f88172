#pragma once

#include "slpenum/bignum.hpp"
#include "slpenum/effect.hpp"
#include "slpenum/error.hpp"
#include "slpenum/forest.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace slpenum {

enum class NodeKind : uint8_t { Leaf, LeafCtx, HC, VC };

struct NodeDef {
    NodeKind kind = NodeKind::Leaf;
    Symbol label;
    uint32_t left = kNone;
    uint32_t right = kNone;

    static NodeDef leaf(Symbol a) { return {NodeKind::Leaf, a}; }
    static NodeDef leaf_ctx(Symbol a) { return {NodeKind::LeafCtx, a}; }
    static NodeDef hc(uint32_t l, uint32_t r) { return {NodeKind::HC, Symbol(), l, r}; }
    static NodeDef vc(uint32_t l, uint32_t r) { return {NodeKind::VC, Symbol(), l, r}; }

    bool is_leaf() const { return kind == NodeKind::Leaf || kind == NodeKind::LeafCtx; }
    friend bool operator==(const NodeDef&, const NodeDef&) = default;
};

// Forest straight-line program: node i may only reference nodes < i.
class Fslp {
public:
    uint32_t add(const NodeDef& def);
    const std::vector<NodeDef>& nodes() const { return nodes_; }
    const NodeDef& operator[](uint32_t id) const { return nodes_.at(id); }
    std::size_t size() const { return nodes_.size(); }

    std::vector<uint32_t> roots;

    friend bool operator==(const Fslp&, const Fslp&) = default;

private:
    std::vector<NodeDef> nodes_;
};

struct VertexStats {
    std::vector<uint8_t> tau;
    std::vector<BigNat> s;
    std::vector<BigNat> ell;  // 0 where tau == 0
    std::vector<BigNat> n;    // vertices of the evaluation, hole included
    std::vector<uint32_t> height;

    // Extends the stats by node `id` (all earlier nodes already present). Throws
    // InvalidInput naming the node and the violated typing rule.
    void append(const Fslp& g, uint32_t id);

    friend bool operator==(const VertexStats&, const VertexStats&) = default;
};

VertexStats compute_stats(const Fslp& g);

enum class Side : uint8_t { Left, Right };
using Path = std::vector<Side>;

std::string format_path(const Path& p);

PreorderEffect edge_effect(const Fslp& g, const VertexStats& st, uint32_t parent, Side side);

BigNat path_preorder(const Fslp& g, const VertexStats& st, uint32_t a, const Path& path);
Path preorder_to_path(const Fslp& g, const VertexStats& st, uint32_t a, const BigNat& k);

Expr unfold(const Fslp& g, uint32_t a, std::size_t budget = default_budget());
Forest evaluate(const Fslp& g, uint32_t a, std::size_t budget = default_budget());

// Minimal DAG of a labelled binary tree. Nodes are given children-first; kNone marks a
// missing child. Returns the class of every node; classes are numbered by first
// occurrence, so class ids also respect children-first order.
template <class Label, class Hash = std::hash<Label>>
std::vector<uint32_t> fold_classes(const std::vector<Label>& labels, const std::vector<uint32_t>& left,
                                   const std::vector<uint32_t>& right, uint32_t* class_count = nullptr) {
    struct Key {
        Label label;
        uint32_t l, r;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            size_t h = Hash{}(k.label);
            h ^= std::hash<uint64_t>{}((uint64_t(k.l) << 32) | k.r) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };
    std::unordered_map<Key, uint32_t, KeyHash> ids;
    std::vector<uint32_t> cls(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        Key k{labels[i], left[i] == kNone ? kNone : cls[left[i]], right[i] == kNone ? kNone : cls[right[i]]};
        auto [it, fresh] = ids.try_emplace(k, static_cast<uint32_t>(ids.size()));
        cls[i] = it->second;
    }
    if (class_count) *class_count = static_cast<uint32_t>(ids.size());
    return cls;
}

// DAG folding of a valid expression; the root of e becomes the last node and the only root.
Fslp fold_expr(const Expr& e);

// Balanced expression (heavy-path decomposition, weight-balanced splits) folded into an f-SLP.
Expr balanced_expr(const Forest& f);
Fslp compress_forest(const Forest& f);

// Line-based text format; see README.
Fslp read_fslp(std::string_view text);
std::string write_fslp(const Fslp& g);

// Keeps only nodes reachable from `keep`, preserving relative order. `remap` receives the
// old-to-new id map (kNone for dropped nodes).
Fslp gc(const Fslp& g, const std::vector<uint32_t>& keep, std::vector<uint32_t>* remap = nullptr);

}  // namespace slpenum
