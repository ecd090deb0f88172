#include "slpenum/effect.hpp"
#include "slpenum/error.hpp"

namespace slpenum {

const char* shape_name(Shape s) {
    switch (s) {
        case Shape::M00: return "M00";
        case Shape::M01: return "M01";
        case Shape::M10a: return "M10a";
        case Shape::M10b: return "M10b";
        case Shape::M11a: return "M11a";
        case Shape::M11b: return "M11b";
        case Shape::M11c: return "M11c";
    }
    return "?";
}

PreorderEffect PreorderEffect::identity(int object) {
    return make(object == 0 ? Shape::M00 : Shape::M11a);
}

PreorderEffect PreorderEffect::make(Shape s, BigNat c, BigNat d) {
    PreorderEffect e;
    e.shape = s;
    e.c = std::move(c);
    if (s == Shape::M01 || s == Shape::M11a || s == Shape::M11b || s == Shape::M11c) e.d = std::move(d);
    return e;
}

int PreorderEffect::dom() const {
    return (shape == Shape::M00 || shape == Shape::M01) ? 0 : 1;
}

int PreorderEffect::cod() const {
    return (shape == Shape::M00 || shape == Shape::M10a || shape == Shape::M10b) ? 0 : 1;
}

std::pair<BigNat, BigNat> PreorderEffect::apply(const BigNat& x, const BigNat& y) const {
    BigNat first = x + c;
    if (y_in_first()) first += y;
    BigNat second = 0;
    if (cod() == 1) second = y_in_second() ? y + d : d;
    return {first, second};
}

std::string PreorderEffect::str() const {
    std::string in = dom() == 0 ? "x" : "(x,y)";
    std::string first = std::string(y_in_first() ? "x+y+" : "x+") + c.str();
    if (cod() == 0) return in + " -> " + first;
    std::string second = y_in_second() ? "y+" + d.str() : d.str();
    return in + " -> (" + first + "," + second + ")";
}

namespace {

Shape shape_of(int dom, int cod, bool b, bool e) {
    if (dom == 0) return cod == 0 ? Shape::M00 : Shape::M01;
    if (cod == 0) return b ? Shape::M10b : Shape::M10a;
    if (b) return Shape::M11b;
    return e ? Shape::M11a : Shape::M11c;
}

}  // namespace

PreorderEffect compose(const PreorderEffect& f, const PreorderEffect& g) {
    if (f.cod() != g.dom()) throw InvalidInput("effect composition: object mismatch");
    // f: X1 = x + bf*y + cf, Y1 = ef*y + df.  g: X2 = X1 + bg*Y1 + cg, Y2 = eg*Y1 + dg.
    bool bf = f.y_in_first(), ef = f.y_in_second();
    bool bg = g.y_in_first(), eg = g.y_in_second();
    PreorderEffect r;
    bool b = bf || (bg && ef);
    bool e = eg && ef;
    r.shape = shape_of(f.dom(), g.cod(), b, e);
    r.c = f.c + g.c;
    if (bg) r.c += f.d;
    if (g.cod() == 1) r.d = eg ? f.d + g.d : g.d;
    return r;
}

}  // namespace slpenum
