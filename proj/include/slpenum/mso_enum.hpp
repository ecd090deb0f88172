#pragma once

#include "slpenum/automata.hpp"
#include "slpenum/effect.hpp"
#include "slpenum/fslp.hpp"
#include "slpenum/path_enum.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace slpenum {

class AnswerStream;

// Enumeration data structure over an f-SLP and a dBUTA: configuration sets, the product
// DAG with its path-enumeration index, ordered succ^a lists and edge effects. Nodes are
// added one at a time (children first), so extensions and relabelling reuse everything
// already built. Failure states are never stored: they cannot reach acceptance.
class EnumDataStructure {
public:
    struct ProductEdge {
        uint32_t target;  // product vertex
        Side side;
    };

    explicit EnumDataStructure(std::shared_ptr<const Dbuta> b);
    EnumDataStructure(std::shared_ptr<const Dbuta> b, const Fslp& g);

    // Appends a node to the underlying f-SLP and maintains every component.
    uint32_t add_node(const NodeDef& def);
    void extend(const std::vector<NodeDef>& defs);
    void set_roots(std::vector<uint32_t> roots) { g_.roots = std::move(roots); }

    const Fslp& fslp() const { return g_; }
    const VertexStats& stats() const { return st_; }
    const Dbuta& automaton() const { return *b_; }
    std::shared_ptr<const Dbuta> automaton_ptr() const { return b_; }

    // Conf^∅ state (may be the failure state), sorted Conf^a states, sorted Conf^u states.
    State conf_empty(uint32_t v) const { return data_.at(v).empty; }
    const std::vector<State>& conf_active(uint32_t v) const { return data_.at(v).active; }
    std::vector<State> conf_useful(uint32_t v) const;

    // succ^a of a useful configuration as (q1, q2), lexicographically ordered.
    std::vector<std::pair<State, State>> succ_a(uint32_t v, State q) const;
    // Product vertex of (v, q), or kNone when (v, q) is not active.
    uint32_t product_vertex(uint32_t v, State q) const;
    std::pair<uint32_t, State> product_config(uint32_t p) const { return {prod_node_[p], prod_state_[p]}; }
    std::size_t product_size() const { return prod_node_.size(); }
    const std::vector<ProductEdge>& product_edges(uint32_t p) const { return prod_edges_[p]; }
    const EnumIndex<PreorderCategory>& index() const { return index_; }

    bool check_empty_solution(uint32_t a) const;
    AnswerStream enumerate(uint32_t a) const;

    // Canonical comparison; meaningful when both sides share the same automaton object.
    bool operator==(const EnumDataStructure& o) const;

private:
    friend class AnswerStream;

    struct NodeData {
        State empty = 0;
        std::vector<State> active;
        std::vector<uint8_t> useful;           // parallel to active
        std::vector<uint32_t> succ_begin;      // parallel to active, plus end sentinel
        uint32_t base = 0;                     // product id of active[0]
        PreorderEffect eff_left, eff_right;    // internal nodes only
        bool operator==(const NodeData&) const = default;
    };
    struct Succ {
        uint32_t left, right;  // product vertices
        bool operator==(const Succ&) const = default;
    };

    std::shared_ptr<const Dbuta> b_;
    Fslp g_;
    VertexStats st_;
    std::vector<NodeData> data_;
    std::vector<Succ> succ_;
    std::vector<uint32_t> prod_node_;
    std::vector<State> prod_state_;
    std::vector<std::vector<ProductEdge>> prod_edges_;
    EnumIndex<PreorderCategory> index_;
};

// Witness-tree enumeration of select(A, [[A]]) as preorder-number sets. The index must
// outlive the stream and must not be modified while the stream is used.
class AnswerStream {
public:
    std::optional<std::vector<BigNat>> next();
    // Instrumented steps spent by the most recent next() call.
    uint64_t last_steps() const { return steps_; }
    // Node count of the witness tree behind the most recent non-empty answer.
    std::size_t witness_size() const { return size_; }

private:
    friend class EnumDataStructure;
    enum class Kind : uint8_t { Unary, Binary, Leaf };
    struct WNode {
        Kind kind = Kind::Leaf;
        uint32_t prod = 0;
        uint32_t parent = kNone;
        PreorderEffect prefix;
        PathSession<PreorderCategory> session;                            // unary
        std::optional<PathSession<PreorderCategory>::Output> lookahead;   // unary
        uint32_t succ_pos = 0, succ_end = 0;                              // binary
        uint32_t right_child = kNone;                                     // binary
    };
    struct Task {
        uint32_t binary;
        bool right;
    };

    uint32_t append(WNode n);
    void add_unary(uint32_t prod, uint32_t parent, PreorderEffect prefix);
    void add_child_of_unary(uint32_t u, const PathSession<PreorderCategory>::Output& out);
    void run_tasks();
    bool maximal(uint32_t i) const;
    void truncate(uint32_t n);
    std::vector<BigNat> collect();

    const EnumDataStructure* eds_ = nullptr;
    bool emit_empty_ = false;
    std::vector<uint32_t> roots_;  // product vertices of accepting root configurations
    std::size_t root_pos_ = 0;
    bool have_tree_ = false;
    bool done_ = false;

    std::vector<WNode> pool_;  // preorder; only the first size_ slots are live
    std::size_t size_ = 0;
    std::vector<uint32_t> last_nonmax_;
    std::vector<Task> tasks_;
    uint64_t steps_ = 0;
};

EnumDataStructure build_enum(const Fslp& g, const Nsta& a);

// Collects all answers (sorted within and across sets).
std::vector<std::vector<BigNat>> enumerate_select(const EnumDataStructure& eds, uint32_t a,
                                                  std::size_t limit = SIZE_MAX);

// Tree-level reference implementation on an explicit expression. Answers are sets of
// leaf indices (left-to-right order), sorted.
std::vector<std::vector<uint32_t>> enumerate_select_uncompressed(const Expr& e, const Dbuta& b,
                                                                 std::size_t budget = default_budget());

}  // namespace slpenum
