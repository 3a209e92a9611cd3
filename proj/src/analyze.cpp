#include "sg/analyze.hpp"

#include "sg/errors.hpp"
#include "sg/io.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <utility>

namespace sg {

namespace {

[[noreturn]] void step_fail(std::size_t index, const std::string& what) {
    std::ostringstream os;
    os << "step " << index << ": " << what;
    throw InputError(os.str());
}

// True when every maximal element of the image is a full maximal element
// of the host, the determinate-rule matching condition.
bool elements_maximal_in(const Shape& image, const Shape& host) {
    if (image.kind() == Kind::segments) {
        const auto& hs = host.segments();
        for (const auto& seg : image.segments()) {
            bool hit = std::binary_search(hs.begin(), hs.end(), seg,
                                          [](const Segment& u, const Segment& v) {
                                              return segment_cmp(u, v) < 0;
                                          });
            if (!hit) return false;
        }
        return true;
    }
    const auto& hp = host.points();
    for (const auto& p : image.points()) {
        bool hit = std::binary_search(hp.begin(), hp.end(), p,
                                      [](const LabeledPoint& u, const LabeledPoint& v) {
                                          return labeled_point_cmp(u, v) < 0;
                                      });
        if (!hit) return false;
    }
    return true;
}

} // namespace

Trace::Trace(Shape initial, std::vector<TraceStep> steps) : steps_(std::move(steps)) {
    shapes_.push_back(std::move(initial));
    for (std::size_t i = 1; i <= steps_.size(); ++i) {
        const TraceStep& st = steps_[i - 1];
        const Shape& cur = shapes_.back();
        if (st.rule.lhs.empty_shape()) step_fail(i, "rule left side is empty");
        if (st.rule.lhs.kind() != cur.kind() ||
            (!st.rule.rhs.empty_shape() && st.rule.rhs.kind() != cur.kind()))
            step_fail(i, "rule mixes shape kinds with the trace");
        Shape ta = apply(st.t, st.rule.lhs);
        if (!part_of(ta, cur))
            step_fail(i, "left side image " + shape_literal(ta) +
                             " is not a part of the current shape");
        if (st.rule.determinate && !elements_maximal_in(ta, cur))
            step_fail(i, "determinate rule matches below the maximal elements");
        Shape tb = st.rule.rhs.empty_shape() ? Shape::empty(cur.kind())
                                             : apply(st.t, st.rule.rhs);
        Shape next = sum(difference(cur, ta), tb);
        StepContext ctx{cur, std::move(ta), std::move(tb), next};
        if (!mapping_describes(st.mapping, ctx))
            step_fail(i, "mapping " + formula_str(st.mapping) +
                             " does not describe the step: its image is not a part "
                             "of the successor");
        shapes_.push_back(std::move(next));
    }
}

StepContext Trace::context(std::size_t i) const {
    if (i == 0 || i > steps_.size()) throw InputError("no such step");
    const TraceStep& st = steps_[i - 1];
    const Shape& cur = shapes_[i - 1];
    Shape tb = st.rule.rhs.empty_shape() ? Shape::empty(cur.kind())
                                         : apply(st.t, st.rule.rhs);
    return StepContext{cur, apply(st.t, st.rule.lhs), std::move(tb), shapes_[i]};
}

std::vector<Shape> OpennessPolicy::step_parts(const StepContext& ctx, std::size_t i) const {
    switch (kind) {
    case PolicyKind::ta: return {ctx.ta};
    case PolicyKind::ta_and_complement: return {ctx.ta, difference(ctx.s, ctx.ta)};
    case PolicyKind::explicit_parts:
        if (i == 0 || i > parts.size())
            step_fail(i, "openness policy lists no parts for this step");
        return parts[i - 1];
    }
    throw InputError("unknown policy kind");
}

StepReport check_step(const StepContext& ctx, const Formula& h, const Topology& t_s,
                      const Topology& t_next, std::size_t step_index) {
    if (t_s.universe() != ctx.s || t_next.universe() != ctx.s_next)
        step_fail(step_index, "topology universe does not match the step's shape");
    if (!mapping_describes(h, ctx))
        step_fail(step_index, "mapping " + formula_str(h) + " does not describe the step");

    StepReport rep;
    rep.index = step_index;

    if (!t_s.is_open(ctx.ta))
        rep.violations.push_back({step_index, "lhs-not-open",
                                  "the placed rule left side is not an open part",
                                  {ctx.ta}});

    // Opens of the image topology on S+: successor opens pushed into S+.
    Shape splus = evaluate(h, ctx.s, ctx);
    std::map<Shape, Preimage, ShapeLess> pre;
    for (const Shape& d : t_next.opens()) {
        Shape restricted = product(d, splus);
        if (pre.count(restricted)) continue;
        pre.emplace(restricted, preimage(h, restricted, ctx));
    }
    for (const auto& [d, p] : pre) {
        if (!p.value) {
            std::string why = "the preimage of an open part is undefined";
            if (!p.note.empty()) why += ": " + p.note;
            rep.violations.push_back({step_index, "preimage-undefined", why, {d}});
        } else if (!t_s.is_open(*p.value)) {
            rep.violations.push_back({step_index, "preimage-not-open",
                                      "the preimage of an open part is not open",
                                      {d, *p.value}});
        }
    }

    // The preimage map must preserve pairwise sums and products.
    for (auto d = pre.begin(); d != pre.end(); ++d) {
        if (!d->second.value) continue;
        for (auto e = std::next(d); e != pre.end(); ++e) {
            if (!e->second.value) continue;
            Shape join = sum(d->first, e->first);
            Shape meet = product(d->first, e->first);
            auto j = pre.find(join), m = pre.find(meet);
            assert(j != pre.end() && m != pre.end());
            if (j->second.value &&
                sum(*d->second.value, *e->second.value) != *j->second.value)
                rep.violations.push_back({step_index, "sum-not-preserved",
                                          "the preimage of a sum differs from the sum "
                                          "of the preimages",
                                          {d->first, e->first}});
            if (m->second.value &&
                product(*d->second.value, *e->second.value) != *m->second.value)
                rep.violations.push_back({step_index, "product-not-preserved",
                                          "the preimage of a product differs from the "
                                          "product of the preimages",
                                          {d->first, e->first}});
        }
    }

    rep.continuous = rep.violations.empty();
    return rep;
}

AnalysisReport analyze(const Trace& trace, const OpennessPolicy& policy,
                       const std::optional<Topology>& final_topology, PreimageMode mode) {
    const std::size_t n = trace.step_count();
    if (policy.kind == PolicyKind::explicit_parts && policy.parts.size() != n)
        throw InputError("openness policy lists parts for " +
                         std::to_string(policy.parts.size()) + " steps but the trace has " +
                         std::to_string(n));

    AnalysisReport rep;
    rep.shapes.resize(n + 1);
    rep.steps.resize(n);

    // The final shape: the given topology, or the indiscrete one.
    const Shape& last = trace.shapes().back();
    if (final_topology) {
        if (final_topology->universe() != last)
            throw InputError("final topology is not on the trace's final shape");
        rep.shapes[n].topology = *final_topology;
    } else {
        rep.shapes[n].topology = Topology::indiscrete(last);
    }
    for (const Shape& o : rep.shapes[n].topology.opens())
        rep.shapes[n].opens.push_back(
            {o, o.empty_shape() || o == last ? OpenOrigin::boundary : OpenOrigin::given,
             0, Shape::empty(o.kind())});

    for (std::size_t i = n; i >= 1; --i) {
        StepContext ctx = trace.context(i);
        const Formula& h = trace.steps()[i - 1].mapping;
        const Topology& t_next = rep.shapes[i].topology;

        std::vector<Shape> selected = policy.step_parts(ctx, i);
        Topology t = Topology::generate(ctx.s, selected);
        Shape splus = evaluate(h, ctx.s, ctx);

        // Refine by preimages of the successor opens pushed into S+. With
        // the successor topology fixed, one pass reaches the fixpoint; the
        // loop guards that.
        std::vector<std::pair<Shape, Shape>> added; // (preimage, source open)
        for (int pass = 1;; ++pass) {
            std::vector<Shape> targets = mode == PreimageMode::basis
                                             ? t_next.reduced_basis()
                                             : t_next.opens();
            std::vector<Shape> missing;
            for (const Shape& b : targets) {
                Shape d = product(b, splus);
                Preimage p = preimage(h, d, ctx);
                if (p.value && !t.is_open(*p.value)) {
                    missing.push_back(*p.value);
                    added.emplace_back(*p.value, b);
                }
            }
            if (missing.empty()) break;
            assert(pass == 1 && "preimage refinement must converge in one pass");
            t = t.refine(missing);
        }

        ShapeReport& sr = rep.shapes[i - 1];
        sr.topology = t;
        for (const Shape& o : t.opens()) {
            OpenInfo info{o, OpenOrigin::closure, 0, Shape::empty(o.kind())};
            if (o.empty_shape() || o == ctx.s) {
                info.origin = OpenOrigin::boundary;
            } else if (std::find(selected.begin(), selected.end(), o) != selected.end()) {
                info.origin = OpenOrigin::policy;
            } else {
                for (const auto& [part, source] : added) {
                    if (part == o) {
                        info.origin = OpenOrigin::preimage;
                        info.step = i;
                        info.source = source;
                        break;
                    }
                }
            }
            sr.refined = sr.refined || info.origin == OpenOrigin::preimage;
            sr.opens.push_back(std::move(info));
        }

        rep.steps[i - 1] = check_step(ctx, h, t, t_next, i);
    }

    rep.continuous = std::all_of(rep.steps.begin(), rep.steps.end(),
                                 [](const StepReport& s) { return s.continuous; });
    return rep;
}

AddedParts added_parts(const StepContext& ctx) {
    return {difference(ctx.s, ctx.ta), product(ctx.s, ctx.tb), difference(ctx.tb, ctx.s)};
}

} // namespace sg
