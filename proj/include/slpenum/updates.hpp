#pragma once

#include "slpenum/mso_enum.hpp"

#include <cstdint>
#include <vector>

namespace slpenum {

// Bottom-up copies of the root-to-leaf path of preorder vertex k below node a, with the
// leaf copy relabelled. New nodes are numbered from g.size(); the last one is the new root.
std::vector<NodeDef> relabel_defs(const Fslp& g, const VertexStats& st, uint32_t a, const BigNat& k, Symbol label);

struct RelabelResult {
    uint32_t new_root;
    std::size_t added;
};

// Appends the relabelled path to g and replaces a by the new node among g.roots.
RelabelResult relabel(Fslp& g, uint32_t a, const BigNat& k, Symbol label);
// Same, maintaining the enumeration data structure along the way.
RelabelResult relabel(EnumDataStructure& eds, uint32_t a, const BigNat& k, Symbol label);

}  // namespace slpenum
