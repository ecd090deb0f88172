#pragma once

#include "slpenum/forest.hpp"
#include "slpenum/free_monoid.hpp"
#include "slpenum/fslp.hpp"
#include "slpenum/path_enum.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using namespace slpenum;

inline const char* kSampleForest = "a(ba(a))bcb(c(ab))";

// Weighted DAG with source 3 and targets 11, 12, 13 (vertex 0 unused).
inline DecoratedDag<BigNat> weighted_dag() {
    DecoratedDag<BigNat> d;
    for (uint32_t v = 0; v <= 14; ++v) d.add_vertex(0, v == 11 || v == 12 || v == 13);
    const uint32_t e[][3] = {{3, 5, 0},  {3, 6, 8},  {5, 7, 4},  {5, 1, 10}, {7, 9, 8},  {7, 9, 2},
                             {9, 12, 1}, {9, 12, 0}, {6, 8, 2},  {6, 4, 0},  {8, 10, 0}, {8, 10, 5},
                             {10, 12, 3}, {10, 12, 5}, {1, 11, 0}, {1, 11, 1}, {4, 1, 8},  {4, 2, 3},
                             {2, 14, 0}, {2, 14, 5}, {14, 13, 0}, {14, 13, 2}};
    for (const auto& x : e) d.add_edge(x[0], x[1], x[2]);
    return d;
}

inline std::vector<std::pair<uint32_t, uint64_t>> weighted_dag_paths() {
    return {{11, 16}, {11, 10}, {11, 17}, {11, 11}, {12, 12}, {12, 6},  {12, 13}, {12, 7},
            {12, 13}, {12, 18}, {12, 15}, {12, 20}, {13, 11}, {13, 16}, {13, 13}, {13, 18}};
}

// f-SLP for a(a(bc)b(ccb)a(bc)b(ccb)b); node 12 is the root.
inline const char* kSharedFslp = R"(fslp v1
node 0 leaf b
node 1 leaf c
node 2 leafctx a
node 3 leafctx b
node 4 hc 0 1
node 5 vc 2 4
node 6 hc 1 1
node 7 hc 6 0
node 8 vc 3 7
node 9 hc 5 8
node 10 hc 9 9
node 11 hc 10 0
node 12 vc 2 11
root 12
)";

inline Path shared_fslp_path() {
    // nodes 12, 11, 10, 9, 8, 7, 0
    return {Side::Right, Side::Left, Side::Right, Side::Right, Side::Right, Side::Right};
}

// Output label (position, x|y) of the annotation transducer.
inline uint32_t fm_label(uint32_t pos, char var) { return pos * 2 + (var == 'y' ? 1 : 0); }

inline std::string fm_word(const std::vector<uint32_t>& w) {
    std::string s;
    for (uint32_t x : w) s += "(" + std::to_string(x / 2) + "," + (x % 2 ? "y" : "x") + ")";
    return s;
}

// Product of "ababba" with the four-state transducer; source (0,0) is vertex 0, vertex
// (i,q) is i*4+q, targets are (6,2) and (6,3).
inline FmDag fm_product() {
    const std::string w = "ababba";
    FmDag d;
    for (uint32_t i = 0; i <= w.size(); ++i)
        for (uint32_t q = 0; q < 4; ++q) d.add_vertex(i == w.size() && (q == 2 || q == 3));
    for (uint32_t i = 0; i < w.size(); ++i) {
        char c = w[i];
        uint32_t pos = i + 1;
        auto v = [&](uint32_t j, uint32_t q) { return j * 4 + q; };
        for (uint32_t q = 0; q < 4; ++q) d.add_edge(v(i, q), v(i + 1, q), kEpsilon);
        if (c == 'b') d.add_edge(v(i, 0), v(i + 1, 1), fm_label(pos, 'y'));
        d.add_edge(v(i, 1), v(i + 1, 2), fm_label(pos, 'x'));
        if (c == 'a') d.add_edge(v(i, 2), v(i + 1, 3), fm_label(pos, 'y'));
    }
    return d;
}

template <class T>
std::vector<T> sorted(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return v;
}

inline std::vector<std::vector<uint32_t>> to_u32(const std::vector<std::vector<BigNat>>& f) {
    std::vector<std::vector<uint32_t>> out;
    for (const auto& s : f) {
        std::vector<uint32_t> t;
        for (const auto& x : s) t.push_back(x.convert_to<uint32_t>());
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace fixtures
