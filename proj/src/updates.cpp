#include "slpenum/updates.hpp"

#include <algorithm>
#include <stdexcept>

namespace slpenum {

std::vector<NodeDef> relabel_defs(const Fslp& g, const VertexStats& st, uint32_t a, const BigNat& k, Symbol label) {
    if (a >= g.size()) throw InvalidInput("unknown node " + std::to_string(a));
    if (st.tau[a] != 0) throw InvalidInput("node " + std::to_string(a) + " evaluates to a context, not a forest");
    if (k < 0 || k >= st.n[a])
        throw InvalidInput("preorder number " + k.str() + " outside the valid range [0, " + st.n[a].str() + ")");
    Path path = preorder_to_path(g, st, a, k);
    std::vector<uint32_t> chain{a};
    for (Side s : path) chain.push_back(s == Side::Left ? g[chain.back()].left : g[chain.back()].right);
    std::vector<NodeDef> defs;
    NodeDef leaf = g[chain.back()];
    leaf.label = label;
    defs.push_back(leaf);
    auto next = static_cast<uint32_t>(g.size());
    for (std::size_t j = path.size(); j-- > 0;) {
        NodeDef d = g[chain[j]];
        (path[j] == Side::Left ? d.left : d.right) = next++;
        defs.push_back(d);
    }
    if (defs.size() > std::size_t(st.height[a]) + 1)
        throw std::logic_error("relabel added more than height+1 nodes");
    return defs;
}

namespace {

void replace_root(std::vector<uint32_t>& roots, uint32_t a, uint32_t b) {
    auto it = std::find(roots.begin(), roots.end(), a);
    if (it != roots.end())
        *it = b;
    else
        roots.push_back(b);
}

}  // namespace

RelabelResult relabel(Fslp& g, uint32_t a, const BigNat& k, Symbol label) {
    auto defs = relabel_defs(g, compute_stats(g), a, k, label);
    for (const auto& d : defs) g.add(d);
    auto root = static_cast<uint32_t>(g.size() - 1);
    replace_root(g.roots, a, root);
    return {root, defs.size()};
}

RelabelResult relabel(EnumDataStructure& eds, uint32_t a, const BigNat& k, Symbol label) {
    auto defs = relabel_defs(eds.fslp(), eds.stats(), a, k, label);
    eds.extend(defs);
    auto root = static_cast<uint32_t>(eds.fslp().size() - 1);
    auto roots = eds.fslp().roots;
    replace_root(roots, a, root);
    eds.set_roots(std::move(roots));
    return {root, defs.size()};
}

}  // namespace slpenum
