#pragma once

#include "slpenum/symbol.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slpenum {

inline constexpr uint32_t kNone = UINT32_MAX;

// Ordered labelled forest. Vertex i has preorder number i. A forest context is a
// Forest whose `hole` names the unique leaf standing for the hole.
struct Forest {
    std::vector<Symbol> labels;
    std::vector<uint32_t> parent;  // kNone for roots
    std::vector<std::vector<uint32_t>> children;
    std::vector<uint32_t> roots;
    std::optional<uint32_t> hole;

    std::size_t size() const { return labels.size(); }
    bool empty() const { return labels.empty(); }
    bool is_context() const { return hole.has_value(); }

    // Builds a forest from arbitrary node numbering; result is renumbered in preorder.
    static Forest from_structure(const std::vector<Symbol>& labels,
                                 const std::vector<std::vector<uint32_t>>& children,
                                 const std::vector<uint32_t>& roots,
                                 std::optional<uint32_t> hole = std::nullopt);

    friend bool operator==(const Forest&, const Forest&) = default;
};

Symbol hole_symbol();

// Term syntax: Forest := Tree*, Tree := LABEL ['(' Forest ')']. A bare label is a single
// character from [A-Za-z0-9_]; longer names are written in double quotes. Whitespace and
// commas separate. A lone `*` denotes the hole of a context.
Forest parse_term(std::string_view text);
std::string serialize_term(const Forest& f);
std::string format_label(Symbol s);

enum class ExprKind : uint8_t { Leaf, LeafCtx, HC, VC };

struct ExprNode {
    ExprKind kind;
    Symbol label;
    uint32_t left = kNone;
    uint32_t right = kNone;
    friend bool operator==(const ExprNode&, const ExprNode&) = default;
};

// Forest algebra expression as a binary tree. Nodes are kept in postorder (left subtree,
// right subtree, node), so leaves appear left to right and the root is last.
class Expr {
public:
    static Expr leaf(Symbol a);
    static Expr leaf_ctx(Symbol a);
    static Expr hc(const Expr& l, const Expr& r);
    static Expr vc(const Expr& l, const Expr& r);

    const std::vector<ExprNode>& nodes() const { return nodes_; }
    uint32_t root() const { return static_cast<uint32_t>(nodes_.size() - 1); }
    std::size_t size() const { return nodes_.size(); }
    std::size_t leaf_count() const;
    // Postorder index of each leaf, left to right.
    std::vector<uint32_t> leaves() const;

    // Takes nodes in any order where children precede parents; reorders to postorder.
    static Expr from_nodes(const std::vector<ExprNode>& nodes, uint32_t root);

    friend bool operator==(const Expr&, const Expr&) = default;

private:
    std::vector<ExprNode> nodes_;
};

// `a`, `a*`, `"name"`, `"name"*`, `(E - E)` for horizontal, `(E / E)` for vertical.
Expr parse_expr(std::string_view text);
std::string format_expr(const Expr& e);

std::optional<int> type_of(const Expr& e);
// Throws InvalidInput on invalid expressions.
Forest eval_expr(const Expr& e);
// Preorder number of every leaf (left to right); requires a valid type-0 expression.
std::vector<uint64_t> leaf_preorders(const Expr& e);

// Annotated evaluation: preorder vertex i is selected iff the leaf mapped to it is.
std::vector<bool> selection_to_vertices(const Expr& e, const std::vector<bool>& leaf_selected);

}  // namespace slpenum
