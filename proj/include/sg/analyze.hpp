#pragma once

#include "sg/formula.hpp"
#include "sg/topology.hpp"
#include "sg/transform.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sg {

// A rewrite rule A -> B. The left side must be nonempty; an empty right
// side erases. A determinate rule may match only full maximal elements of
// the host shape.
struct Rule {
    Shape lhs, rhs;
    bool determinate = false;
};

// One recorded application: the rule, the placement transform and the
// mapping h that describes how parts of the current shape travel into the
// successor.
struct TraceStep {
    Rule rule;
    Transform t;
    Formula mapping;
};

// A recorded computation. Successor shapes are derived from the production
// formula S' = (S - t(A)) + t(B); construction validates every step: the
// left side is nonempty, its placed image is a part of the current shape
// (full maximal elements of it for determinate rules), and the declared
// mapping describes the step.
class Trace {
public:
    Trace(Shape initial, std::vector<TraceStep> steps);

    const Shape& initial() const { return shapes_.front(); }
    const std::vector<TraceStep>& steps() const { return steps_; }
    std::size_t step_count() const { return steps_.size(); }

    // S_1 .. S_{n+1}, where S_1 is the initial shape.
    const std::vector<Shape>& shapes() const { return shapes_; }
    // Context of step i, 1-based: S_i, t_i(A_i), t_i(B_i), S_{i+1}.
    StepContext context(std::size_t i) const;

private:
    std::vector<TraceStep> steps_;
    std::vector<Shape> shapes_;
};

// Which parts each step keeps open in the shape it rewrites.
enum class PolicyKind { ta, ta_and_complement, explicit_parts };

struct OpennessPolicy {
    PolicyKind kind = PolicyKind::ta;
    // Entry i-1 holds the parts for step i; used only by explicit_parts.
    std::vector<std::vector<Shape>> parts;

    static OpennessPolicy keep_ta() { return {}; }
    static OpennessPolicy keep_ta_and_complement() {
        return {PolicyKind::ta_and_complement, {}};
    }
    static OpennessPolicy keep_explicit(std::vector<std::vector<Shape>> per_step) {
        return {PolicyKind::explicit_parts, std::move(per_step)};
    }

    // The subbasis this policy selects for the shape of step i.
    std::vector<Shape> step_parts(const StepContext& ctx, std::size_t i) const;
};

struct Violation {
    std::size_t step = 0; // 1-based
    std::string reason;   // stable tag, e.g. "preimage-not-open"
    std::string detail;
    std::vector<Shape> witnesses;
};

struct StepReport {
    std::size_t index = 0; // 1-based
    bool continuous = false;
    std::vector<Violation> violations;
};

// Where an open part of a reported topology came from.
enum class OpenOrigin {
    boundary, // the empty shape or the universe
    policy,   // selected by the openness policy
    given,    // present in a supplied final topology
    preimage, // preimage of an open of the successor topology
    closure,  // produced by closing under sums and products
};

struct OpenInfo {
    Shape part;
    OpenOrigin origin = OpenOrigin::closure;
    std::size_t step = 0; // preimage only: the step whose analysis added it
    Shape source;         // preimage only: the successor open it preimages
};

struct ShapeReport {
    Topology topology;
    std::vector<OpenInfo> opens; // parallel to topology.opens()
    bool refined = false;        // true when any open has preimage origin
};

struct AnalysisReport {
    std::vector<ShapeReport> shapes; // size n+1
    std::vector<StepReport> steps;   // size n
    bool continuous = false;
};

// Verifies the two continuity conditions of one step against fixed
// topologies on its shapes: the placed left side is open, and the preimage
// map on the opens of S+ (successor opens restricted by product with S+)
// is total, lands on opens, and preserves pairwise sums and products.
// Throws InputError when the mapping does not describe the step or the
// topologies are not on the step's shapes.
StepReport check_step(const StepContext& ctx, const Formula& h, const Topology& t_s,
                      const Topology& t_next, std::size_t step_index = 1);

// Whether preimages are taken of reduced-basis elements only or of every
// successor open. Both produce the same refinement; basis mode does less
// work.
enum class PreimageMode { basis, all_opens };

// Retrospective continuity analysis, backward over the trace. The final
// shape gets the supplied topology, or the indiscrete one when none is
// given. Every earlier topology starts from the policy's parts and is
// refined by the preimages of the successor topology's basis elements; each
// step is then re-checked. The report is continuous only if every step
// passes.
AnalysisReport analyze(const Trace& trace, const OpennessPolicy& policy,
                       const std::optional<Topology>& final_topology = {},
                       PreimageMode mode = PreimageMode::basis);

// The three-way split of what a step adds: the remainder S - t(A) that
// survives, the slice of t(B) already embedded in S, and the genuinely new
// material t(B) - S. The three sum to the successor shape.
struct AddedParts {
    Shape kept, re_added, new_part;
};
AddedParts added_parts(const StepContext& ctx);

} // namespace sg
