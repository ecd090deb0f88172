#pragma once

#include "slpenum/automata.hpp"
#include "slpenum/error.hpp"
#include "slpenum/forest.hpp"
#include "slpenum/free_monoid.hpp"
#include "slpenum/path_enum.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace slpenum {

// Brute-force references. They share no code with the enumeration engine.
struct OracleBudget {
    std::size_t max_vertices = 16;    // subset loops run over 2^max_vertices sets at most
    std::size_t max_paths = 100000;
    uint32_t max_states = 4;          // exhaustive run checks
};

using Family = std::vector<std::vector<uint32_t>>;

// All S with (F, S) accepted, by iterating every subset. Sorted family of sorted sets.
Family brute_select(const Nsta& a, const Forest& f, const OracleBudget& budget = {});

// Acceptance by enumerating every (rho0, rho1, rhof) assignment.
bool brute_run_accepts(const Nsta& a, const Forest& f, const std::vector<bool>& selected,
                       const OracleBudget& budget = {});

// All leaf subsets accepted by b, as sorted sets of leaf indices.
Family brute_dbuta_select(const Dbuta& b, const Expr& e, const OracleBudget& budget = {});

// Every path from s to a target by naive stack DFS, with its composed morphism.
template <class C>
std::vector<std::pair<uint32_t, typename C::Morphism>> brute_paths(const DecoratedDag<typename C::Morphism>& d,
                                                                  uint32_t s, const OracleBudget& budget = {}) {
    using M = typename C::Morphism;
    if (s >= d.size()) throw InvalidInput("unknown vertex " + std::to_string(s));
    std::vector<std::vector<std::size_t>> out(d.size());
    for (std::size_t i = 0; i < d.edges.size(); ++i) out[d.edges[i].source].push_back(i);
    std::vector<std::pair<uint32_t, M>> result;
    std::vector<std::pair<uint32_t, M>> stack{{s, C::identity(d.objects[s])}};
    while (!stack.empty()) {
        auto [v, m] = std::move(stack.back());
        stack.pop_back();
        if (d.is_target[v]) {
            result.push_back({v, m});
            if (result.size() > budget.max_paths) throw BudgetExceeded("path count exceeds oracle budget");
        }
        for (std::size_t i : out[v]) stack.push_back({d.edges[i].target, C::compose(m, d.edges[i].mor)});
    }
    return result;
}

// Free-monoid variant: every path with the concatenation of its non-ε labels.
std::vector<std::pair<uint32_t, std::vector<uint32_t>>> brute_fm_paths(const FmDag& d, uint32_t s,
                                                                      const OracleBudget& budget = {});

}  // namespace slpenum
