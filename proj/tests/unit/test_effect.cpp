#include <doctest.h>

#include "slpenum/effect.hpp"
#include "slpenum/error.hpp"

#include <random>

using namespace slpenum;

namespace {

const Shape kShapes[] = {Shape::M00, Shape::M01, Shape::M10a, Shape::M10b, Shape::M11a, Shape::M11b, Shape::M11c};

// Direct semantics, written independently of PreorderEffect::apply.
std::pair<BigNat, BigNat> run(const PreorderEffect& f, const BigNat& x, const BigNat& y) {
    switch (f.shape) {
        case Shape::M00: return {x + f.c, 0};
        case Shape::M01: return {x + f.c, f.d};
        case Shape::M10a: return {x + f.c, 0};
        case Shape::M10b: return {x + y + f.c, 0};
        case Shape::M11a: return {x + f.c, y + f.d};
        case Shape::M11b: return {x + y + f.c, f.d};
        case Shape::M11c: return {x + f.c, f.d};
    }
    return {0, 0};
}

PreorderEffect random_effect(std::mt19937_64& rng, int dom) {
    std::vector<Shape> ok;
    for (Shape s : kShapes)
        if (PreorderEffect::make(s).dom() == dom) ok.push_back(s);
    return PreorderEffect::make(ok[rng() % ok.size()], rng() % 50, rng() % 50);
}

}  // namespace

TEST_CASE("identities") {
    for (Shape s : kShapes) {
        PreorderEffect f = PreorderEffect::make(s, 3, 5);
        CHECK(compose(PreorderEffect::identity(f.dom()), f) == f);
        CHECK(compose(f, PreorderEffect::identity(f.cod())) == f);
    }
    CHECK(PreorderEffect::identity(0) == PreorderEffect::make(Shape::M00));
    CHECK(PreorderEffect::identity(1) == PreorderEffect::make(Shape::M11a));
}

TEST_CASE("object mismatch") {
    CHECK_THROWS_AS(compose(PreorderEffect::make(Shape::M00), PreorderEffect::make(Shape::M11a)), InvalidInput);
}

TEST_CASE("composition is pointwise and associative") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 2000; ++it) {
        PreorderEffect f = random_effect(rng, rng() % 2);
        PreorderEffect g = random_effect(rng, f.cod());
        PreorderEffect h = random_effect(rng, g.cod());
        BigNat x = rng() % 1000, y = rng() % 1000;
        auto fx = run(f, x, y);
        auto want = run(g, fx.first, fx.second);
        auto got = run(compose(f, g), x, y);
        CHECK(got.first == want.first);
        if (g.cod() == 1) CHECK(got.second == want.second);
        CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
        auto applied = compose(f, g).apply(x, y);
        CHECK(applied.first == want.first);
    }
}
