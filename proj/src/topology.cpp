#include "sg/topology.hpp"

#include "sg/errors.hpp"
#include "sg/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

namespace sg {

std::size_t Topology::max_opens() {
    if (const char* env = std::getenv("SGA_TOPOLOGY_CAP")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw InputError("SGA_TOPOLOGY_CAP must be a positive integer");
    }
    return 4096;
}

Topology Topology::indiscrete(const Shape& universe) {
    Topology t;
    t.universe_ = universe;
    t.opens_.push_back(Shape::empty(universe.kind()));
    if (!universe.empty_shape()) t.opens_.push_back(universe);
    return t;
}

Topology Topology::generate(const Shape& universe, const std::vector<Shape>& subbasis) {
    for (const auto& p : subbasis)
        if (!part_of(p, universe))
            throw InputError("subbasis part is not a part of the universe: " +
                             shape_literal(p));
    const std::size_t cap = max_opens();
    std::set<Shape, ShapeLess> opens;
    std::deque<Shape> queue;
    auto insert = [&](const Shape& x) {
        if (opens.insert(x).second) {
            if (opens.size() > cap)
                throw CapacityError("topology size cap exceeded (" + std::to_string(cap) +
                                    " opens)");
            queue.push_back(x);
        }
    };
    insert(Shape::empty(universe.kind()));
    insert(universe);
    for (const auto& p : subbasis) insert(p);
    while (!queue.empty()) {
        Shape x = std::move(queue.front());
        queue.pop_front();
        // Snapshot: combining x with opens discovered later is handled
        // when those opens are dequeued with x already in the set.
        std::vector<Shape> current(opens.begin(), opens.end());
        for (const auto& y : current) {
            insert(sum(x, y));
            insert(product(x, y));
        }
    }
    Topology t;
    t.universe_ = universe;
    t.opens_.assign(opens.begin(), opens.end());
    return t;
}

bool Topology::is_open(const Shape& x) const {
    return std::binary_search(opens_.begin(), opens_.end(), x, ShapeLess{});
}

Topology Topology::refine(const std::vector<Shape>& parts) const {
    std::vector<Shape> subbasis = opens_;
    subbasis.insert(subbasis.end(), parts.begin(), parts.end());
    return generate(universe_, subbasis);
}

std::vector<Shape> Topology::reduced_basis() const {
    std::vector<Shape> basis;
    for (const auto& o : opens_) {
        if (o.empty_shape()) continue;
        Shape below = Shape::empty(o.kind());
        for (const auto& x : opens_) {
            if (x == o || !part_of(x, o)) continue;
            below = sum(below, x);
        }
        if (below != o) basis.push_back(o);
    }
    return basis;
}

bool Topology::is_boolean() const {
    for (const auto& o : opens_)
        if (!is_open(difference(universe_, o))) return false;
    return true;
}

bool operator==(const Topology& s, const Topology& t) {
    return s.universe() == t.universe() && s.opens() == t.opens();
}

} // namespace sg
