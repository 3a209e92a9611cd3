#pragma once

#include "sg/shape.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sg {

// Atoms usable in a part-mapping formula: the argument x, the placed rule
// sides t(A) and t(B), and the current host shape S.
enum class FormulaAtom { x, ta, tb, s };

// Binary operations, written + - . ^ in formula text.
enum class FormulaOp { sum, diff, prod, symdiff };

// Immutable expression tree for mappings of parts to parts.
class Formula {
public:
    static Formula atom(FormulaAtom a);
    static Formula combine(FormulaOp op, Formula lhs, Formula rhs);

    bool is_atom() const { return node_->is_atom; }
    FormulaAtom atom_kind() const { return node_->atom; }
    FormulaOp op() const { return node_->op; }
    Formula lhs() const { return Formula(node_->lhs); }
    Formula rhs() const { return Formula(node_->rhs); }

    bool same_as(const Formula& other) const; // structural equality

private:
    struct Node {
        bool is_atom;
        FormulaAtom atom;
        FormulaOp op;
        std::shared_ptr<const Node> lhs, rhs;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Formula text: atoms `x`, `tA`, `tB`, `S`; product `.` binds tighter than
// `+`, `-`, `^`, which associate left at equal precedence; parentheses as
// usual. formula_str prints the canonical spacing and minimal parentheses.
Formula parse_formula(std::string_view text);
std::string formula_str(const Formula& f);

// The standard eleven single-step mapping forms, in catalog order
// T1.1 .. T1.11.
const std::vector<std::pair<std::string, Formula>>& formula_catalog();
// Resolves "T1.k" to its catalog form.
std::optional<Formula> catalog_lookup(std::string_view id);

// One computation step: current shape, placed rule sides, successor shape.
struct StepContext {
    Shape s;
    Shape ta, tb;
    Shape s_next;
};

// Applies the mapping to a part x of ctx.s. Throws InputError when x is
// not a part of ctx.s.
Shape evaluate(const Formula& h, const Shape& x, const StepContext& ctx);

// True when the mapping sends the whole current shape into the successor.
bool mapping_describes(const Formula& h, const StepContext& ctx);

struct Preimage {
    std::optional<Shape> value; // largest part of ctx.s mapping into d
    std::string note;           // why undefined, when it is
};

// Largest part x of ctx.s with evaluate(h, x) a part of d. Uses the exact
// closure equations for the forms x - tA, x - tB and x - (tA ^ tB), and
// falls back to oracle_preimage otherwise.
Preimage preimage(const Formula& h, const Shape& d, const StepContext& ctx);

// Reference computation: enumerates candidate parts as sums of the cells
// of atomize({s, ta, tb, d}) lying inside s. Returns the sum of all
// satisfying parts when that sum itself satisfies, else the unique maximal
// satisfying part, else undefined with an ambiguity note. Beyond
// enumeration capacity an order-preserving mapping is handled by summing
// the satisfying cells directly.
Preimage oracle_preimage(const Formula& h, const Shape& d, const StepContext& ctx);

enum class Verdict {
    suitable,
    not_continuous_nonempty_output, // h(0) != 0
    not_continuous_constant,        // constant nonempty output
    excluded_order_reversing,       // not order-preserving
};

struct Classification {
    Verdict verdict;
    bool vacuous = false; // suitable but constant empty output
    std::string detail;
};

std::string verdict_str(Verdict v);

// Classifies a mapping against one step context. Order-preservation is
// probed on a deterministic sublattice of parts derived from the atomized
// context; constancy on the same samples.
Classification classify(const Formula& h, const StepContext& ctx);

} // namespace sg
