#pragma once

#include "sg/shape.hpp"

#include <cstddef>
#include <vector>

namespace sg {

// Finite topology on the parts of one shape: a family of open parts that
// contains the empty shape and the universe and is closed under pairwise
// sum and product. Opens are stored deduplicated in canonical order.
class Topology {
public:
    Topology() = default;

    static Topology indiscrete(const Shape& universe);

    // Smallest topology on the universe containing every subbasis part.
    // Rejects subbasis entries that are not parts of the universe, naming
    // the offending part. Throws CapacityError when the closure would
    // exceed max_opens().
    static Topology generate(const Shape& universe, const std::vector<Shape>& subbasis);

    const Shape& universe() const { return universe_; }
    const std::vector<Shape>& opens() const { return opens_; }
    bool is_open(const Shape& x) const;

    // Smallest refinement whose opens include the given parts. Every
    // currently open part stays open.
    Topology refine(const std::vector<Shape>& parts) const;

    // Sum-irreducible opens: nonzero opens that are not the sum of the
    // strictly smaller opens beneath them. Every open is a sum of basis
    // elements; the empty shape is the empty sum.
    std::vector<Shape> reduced_basis() const;

    // True when every open has an open complement. A complement, when it
    // exists, is unique: the universe-difference of the open.
    bool is_boolean() const;

    // Size cap for generated topologies. Defaults to 4096; the environment
    // variable SGA_TOPOLOGY_CAP overrides it.
    static std::size_t max_opens();

private:
    Shape universe_;
    std::vector<Shape> opens_;
};

bool operator==(const Topology& s, const Topology& t);
inline bool operator!=(const Topology& s, const Topology& t) { return !(s == t); }

} // namespace sg
