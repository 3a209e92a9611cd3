#pragma once

#include "sg/shape.hpp"

namespace sg {

// Invertible affine map (x, y) -> (a x + b y + e, c x + d y + f) with
// exact rational entries, written as the sextuple "a b c d e f".
struct Transform {
    Rat a, b, c, d, e, f;

    static Transform identity();
    static Transform translation(const Rat& dx, const Rat& dy);
    // Validates invertibility.
    static Transform make(Rat a, Rat b, Rat c, Rat d, Rat e, Rat f);

    Rat det() const { return a * d - b * c; }
    Point operator()(const Point& p) const;
    Transform inverse() const;
    // Composition: (u.then(v)) applies u first, then v.
    Transform then(const Transform& v) const;
};

bool operator==(const Transform& s, const Transform& t);
int transform_cmp(const Transform& s, const Transform& t);

// Image of a shape; re-canonicalized. Point labels are carried along.
Shape apply(const Transform& t, const Shape& s);

} // namespace sg
