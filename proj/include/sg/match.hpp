#pragma once

#include "sg/shape.hpp"
#include "sg/transform.hpp"

#include <vector>

namespace sg {

enum class TransformGroup { identity, translations, isometries, similarities };

// A transform under which `a` embeds in the host, together with the image.
// Matches are equal exactly when transform and image both coincide.
struct Match {
    Transform t;
    Shape image;
};

// Enumerates every transform t in the group with part_of(apply(t, a), host),
// in canonical (transform-ordered) sequence without duplicates. Isometries
// are the four axis rotations and four axis/diagonal reflections composed
// with translations; similarities add a positive rational scale.
//
// With determinate = true only matches whose image elements are full
// maximal elements of the host are returned.
//
// Throws InputError when the group admits a continuum of embeddings that
// candidate registration cannot pin down: empty a; indeterminate matching
// of segment shapes whose carriers are all parallel (for every group
// containing translations); similarity matching when all carriers run
// through one point or a point shape has fewer than two points.
std::vector<Match> enumerate_matches(const Shape& a, const Shape& host, TransformGroup group,
                                     bool determinate = false);

} // namespace sg
