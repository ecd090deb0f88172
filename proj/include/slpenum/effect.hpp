#pragma once

#include "slpenum/bignum.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace slpenum {

// Morphisms of the two-object preorder category. Object 0 carries x, object 1 carries (x, y).
//   M00  x -> x+c          M01  x -> (x+c, d)
//   M10a (x,y) -> x+c      M10b (x,y) -> x+y+c
//   M11a (x,y) -> (x+c, y+d)   M11b (x,y) -> (x+y+c, d)   M11c (x,y) -> (x+c, d)
enum class Shape : uint8_t { M00, M01, M10a, M10b, M11a, M11b, M11c };

const char* shape_name(Shape s);

struct PreorderEffect {
    Shape shape = Shape::M00;
    BigNat c = 0;
    BigNat d = 0;

    static PreorderEffect identity(int object);
    static PreorderEffect make(Shape s, BigNat c = 0, BigNat d = 0);

    int dom() const;
    int cod() const;
    // Whether y flows into the first (resp. second) output component.
    bool y_in_first() const { return shape == Shape::M10b || shape == Shape::M11b; }
    bool y_in_second() const { return shape == Shape::M11a; }

    // Apply to x (dom 0) or (x, y) (dom 1); second result is meaningful iff cod() == 1.
    std::pair<BigNat, BigNat> apply(const BigNat& x, const BigNat& y = 0) const;

    std::string str() const;

    friend bool operator==(const PreorderEffect&, const PreorderEffect&) = default;
};

// f then g. Throws InvalidInput when cod(f) != dom(g).
PreorderEffect compose(const PreorderEffect& f, const PreorderEffect& g);

struct PreorderCategory {
    using Morphism = PreorderEffect;
    static Morphism identity(int object) { return PreorderEffect::identity(object); }
    static Morphism compose(const Morphism& f, const Morphism& g) { return slpenum::compose(f, g); }
};

}  // namespace slpenum
