#pragma once

#include "slpenum/forest.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace slpenum {

inline constexpr uint32_t kEpsilon = kNone;

// DAG with edges labelled by a single symbol (any uint32 other than kEpsilon) or by ε.
struct FmDag {
    struct Edge {
        uint32_t source;
        uint32_t target;
        uint32_t label;
    };
    std::vector<bool> is_target;
    std::vector<Edge> edges;

    uint32_t add_vertex(bool target = false) {
        is_target.push_back(target);
        return static_cast<uint32_t>(is_target.size() - 1);
    }
    void add_edge(uint32_t s, uint32_t t, uint32_t label) { edges.push_back({s, t, label}); }
    std::size_t size() const { return is_target.size(); }
};

class FmIndex;

class FmSession {
public:
    struct Output {
        uint32_t target;
        std::vector<uint32_t> word;
    };

    std::optional<Output> next();
    // Loop iterations plus symbols and trie entries touched by the most recent next().
    uint64_t last_steps() const { return steps_; }

private:
    friend class FmIndex;
    struct TrieNode {
        uint32_t parent;
        uint32_t label;  // index into the index's label table
    };
    const FmIndex* idx_ = nullptr;
    std::vector<TrieNode> trie_{{kNone, kNone}};
    uint32_t v_ = 0;
    uint32_t alpha_ = 0;
    std::vector<std::pair<uint32_t, uint32_t>> stack_;
    bool flag_ = true;
    bool done_ = true;
    uint64_t steps_ = 0;
};

class FmIndex {
public:
    explicit FmIndex(const FmDag& d);

    FmSession open(uint32_t s) const;
    std::size_t node_count() const { return nodes_.size(); }

private:
    friend class FmSession;

    // x, followed by the word of the outdegree-1 chain starting at `chain`.
    struct Label {
        uint32_t x = kEpsilon;
        uint32_t chain = kNone;
    };
    enum class Status : uint8_t { Pruned, Chain, Node };
    struct Entry {
        Status status = Status::Pruned;
        uint32_t node = kNone;  // normalized node (for Chain: f(v))
        uint32_t x = kEpsilon;  // Chain: label of the unique edge
        uint32_t next = kNone;  // Chain: next chain vertex, if the edge led into one
        uint32_t skip = kNone;  // Chain: first chain vertex from here with a non-ε label
        uint32_t self_label = kNone;  // Chain: label standing for the whole chain from here
    };
    struct Node {
        uint32_t left = kNone, right = kNone;
        uint32_t lab_left = kNone, lab_right = kNone;
        uint32_t omega = kNone;
        uint32_t orig = kNone;
        uint32_t rnext = kNone;  // first node on the right path with a non-empty right label
        bool leaf() const { return left == kNone; }
    };

    bool nonempty(uint32_t lab) const;
    void expand(uint32_t lab, std::vector<uint32_t>& out, uint64_t& steps) const;
    uint32_t intern_label(Label l);

    std::vector<Entry> entries_;
    std::vector<Node> nodes_;
    std::vector<Label> labels_;
};

}  // namespace slpenum
