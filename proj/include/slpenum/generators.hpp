#pragma once

#include "slpenum/automata.hpp"
#include "slpenum/forest.hpp"
#include "slpenum/fslp.hpp"
#include "slpenum/path_enum.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace slpenum {

using Rng = std::mt19937_64;

std::vector<Symbol> alphabet(std::size_t k);  // a, b, c, ...

Forest random_forest(Rng& rng, std::size_t vertices, const std::vector<Symbol>& sigma);
// Valid expression of the given type with exactly `leaves` leaves.
Expr random_expr(Rng& rng, std::size_t leaves, const std::vector<Symbol>& sigma, int type = 0);
// Random f-SLP with sharing; the last node is a forest whose evaluation has at most
// max_vertices vertices, and it is the only root.
Fslp random_fslp(Rng& rng, std::size_t nodes, const std::vector<Symbol>& sigma, std::size_t max_vertices);
Nsta random_nsta(Rng& rng, uint32_t m, const std::vector<Symbol>& sigma, double density = 0.35);

// Vertical chain b(a(b(...a))) of n+1 vertices as an f-SLP with n+3 nodes.
Fslp chain_fslp(std::size_t n);
// a^(2^k) by repeated doubling: k+1 nodes.
Fslp wide_fslp(uint32_t k);
// Binary DAG whose path language from vertex 0 is {l^n} u {l^i r : i < n}, unit weights.
DecoratedDag<BigNat> ls_family(std::size_t n);

// Queries.
Nsta accept_all_nsta();
Nsta reject_all_nsta();
Nsta only_empty_nsta();
// Exactly one selected vertex, any labels.
Nsta select_one_nsta();
// S is exactly the set of vertices labelled `target`.
Nsta select_label_nsta(Symbol target);

}  // namespace slpenum
