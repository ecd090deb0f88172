#include <doctest.h>

#include "../fixtures.hpp"
#include "slpenum/generators.hpp"
#include "slpenum/oracle.hpp"

#include <set>

using namespace slpenum;

namespace {

using Out = std::vector<std::pair<uint32_t, std::vector<uint32_t>>>;

Out drain(FmSession s, uint64_t* worst_ratio = nullptr) {
    Out out;
    uint64_t worst = 0;
    while (auto o = s.next()) {
        worst = std::max(worst, s.last_steps() / (o->word.size() + 1));
        out.emplace_back(o->target, o->word);
    }
    if (worst_ratio) *worst_ratio = std::max(worst, s.last_steps());
    return out;
}

FmDag random_fm_dag(Rng& rng, uint32_t n, bool with_eps) {
    FmDag d;
    for (uint32_t v = 0; v < n; ++v) d.add_vertex(rng() % 3 == 0);
    for (uint32_t v = 0; v + 1 < n; ++v) {
        uint32_t deg = rng() % 3 + (rng() % 2);
        for (uint32_t k = 0; k < deg; ++k) {
            uint32_t t = v + 1 + rng() % (n - v - 1);
            uint32_t lab = with_eps && rng() % 3 == 0 ? kEpsilon : static_cast<uint32_t>(rng() % 3);
            d.add_edge(v, t, lab);
        }
    }
    return d;
}

}  // namespace

TEST_CASE("annotation transducer outputs") {
    FmDag d = fixtures::fm_product();
    FmIndex idx(d);
    auto got = drain(idx.open(0));
    std::set<std::string> words;
    for (auto& [t, w] : got) words.insert(fixtures::fm_word(w));
    CHECK(words.count("(2,y)(5,x)") == 1);
    CHECK(words.count("(2,y)(3,x)(6,y)") == 1);
    CHECK(fixtures::sorted(got) == fixtures::sorted(brute_fm_paths(d, 0)));
}

TEST_CASE("all-epsilon DAG yields empty words") {
    FmDag d;
    for (int i = 0; i < 5; ++i) d.add_vertex(i >= 3);
    d.add_edge(0, 1, kEpsilon);
    d.add_edge(0, 2, kEpsilon);
    d.add_edge(1, 3, kEpsilon);
    d.add_edge(2, 3, kEpsilon);
    d.add_edge(2, 4, kEpsilon);
    FmIndex idx(d);
    auto got = drain(idx.open(0));
    CHECK(got.size() == 3);
    for (auto& [t, w] : got) {
        CHECK(w.empty());
        CHECK(t >= 3);
    }
}

TEST_CASE("degenerate sources") {
    FmDag d;
    d.add_vertex(true);
    d.add_vertex(false);
    d.add_vertex(false);
    d.add_edge(2, 0, 7);
    FmIndex idx(d);
    CHECK(drain(idx.open(0)) == Out{{0, {}}});
    CHECK(drain(idx.open(1)).empty());
    CHECK(drain(idx.open(2)) == Out{{0, {7}}});
    CHECK_THROWS_AS(idx.open(9), InvalidInput);
}

TEST_CASE("random labelled DAGs agree with naive concatenation") {
    Rng rng(31);
    for (int it = 0; it < 500; ++it) {
        FmDag d = random_fm_dag(rng, 1 + rng() % 12, it % 4 != 0);
        FmIndex idx(d);
        for (uint32_t s = 0; s < d.size(); ++s)
            CHECK(fixtures::sorted(drain(idx.open(s))) == fixtures::sorted(brute_fm_paths(d, s)));
    }
}

TEST_CASE("delay is proportional to the output word") {
    for (uint32_t n : {20u, 2000u, 50000u}) {
        // long epsilon runs broken by a few symbols, with branching at every step
        FmDag d;
        for (uint32_t v = 0; v <= n; ++v) d.add_vertex(v == n);
        uint32_t t = d.add_vertex(true);
        for (uint32_t v = 0; v < n; ++v) {
            d.add_edge(v, v + 1, v % (n / 4) == 0 ? v : kEpsilon);
            d.add_edge(v, t, v % 2 ? kEpsilon : 1000000 + v);
        }
        FmIndex idx(d);
        uint64_t ratio = 0;
        auto got = drain(idx.open(0), &ratio);
        CHECK(got.size() == n + 1);
        CHECK(ratio <= 8);
    }
}
