#include "sg/formula.hpp"

#include "sg/errors.hpp"
#include "sg/io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>

namespace sg {

Formula Formula::atom(FormulaAtom a) {
    return Formula(std::make_shared<const Node>(Node{true, a, FormulaOp::sum, nullptr, nullptr}));
}

Formula Formula::combine(FormulaOp op, Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(
        Node{false, FormulaAtom::x, op, std::move(lhs.node_), std::move(rhs.node_)}));
}

bool Formula::same_as(const Formula& other) const {
    const Node *a = node_.get(), *b = other.node_.get();
    if (a->is_atom != b->is_atom) return false;
    if (a->is_atom) return a->atom == b->atom;
    if (a->op != b->op) return false;
    return lhs().same_as(other.lhs()) && rhs().same_as(other.rhs());
}

namespace {

struct FormulaLexer {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        std::ostringstream os;
        os << "formula, column " << pos + 1 << ": expected " << expected;
        if (pos >= src.size()) os << ", found end of input";
        else os << ", found '" << src[pos] << "'";
        throw InputError(os.str());
    }

    bool at_word(std::string_view w) const {
        return src.compare(pos, w.size(), w) == 0;
    }
};

Formula parse_expr(FormulaLexer& lx);

Formula parse_factor(FormulaLexer& lx) {
    lx.skip_ws();
    if (lx.pos >= lx.src.size()) lx.fail("atom x, tA, tB, S or '('");
    if (lx.src[lx.pos] == '(') {
        ++lx.pos;
        Formula inner = parse_expr(lx);
        lx.skip_ws();
        if (lx.pos >= lx.src.size() || lx.src[lx.pos] != ')') lx.fail("')'");
        ++lx.pos;
        return inner;
    }
    if (lx.at_word("tA")) { lx.pos += 2; return Formula::atom(FormulaAtom::ta); }
    if (lx.at_word("tB")) { lx.pos += 2; return Formula::atom(FormulaAtom::tb); }
    if (lx.at_word("x")) { ++lx.pos; return Formula::atom(FormulaAtom::x); }
    if (lx.at_word("S")) { ++lx.pos; return Formula::atom(FormulaAtom::s); }
    lx.fail("atom x, tA, tB, S or '('");
}

Formula parse_term(FormulaLexer& lx) {
    Formula f = parse_factor(lx);
    for (;;) {
        lx.skip_ws();
        if (lx.pos < lx.src.size() && lx.src[lx.pos] == '.') {
            ++lx.pos;
            f = Formula::combine(FormulaOp::prod, f, parse_factor(lx));
        } else {
            return f;
        }
    }
}

Formula parse_expr(FormulaLexer& lx) {
    Formula f = parse_term(lx);
    for (;;) {
        lx.skip_ws();
        if (lx.pos >= lx.src.size()) return f;
        char c = lx.src[lx.pos];
        FormulaOp op;
        if (c == '+') op = FormulaOp::sum;
        else if (c == '-') op = FormulaOp::diff;
        else if (c == '^') op = FormulaOp::symdiff;
        else return f;
        ++lx.pos;
        f = Formula::combine(op, f, parse_term(lx));
    }
}

int prec(FormulaOp op) { return op == FormulaOp::prod ? 2 : 1; }

const char* op_text(FormulaOp op) {
    switch (op) {
    case FormulaOp::sum: return "+";
    case FormulaOp::diff: return "-";
    case FormulaOp::prod: return ".";
    case FormulaOp::symdiff: return "^";
    }
    return "?";
}

const char* atom_text(FormulaAtom a) {
    switch (a) {
    case FormulaAtom::x: return "x";
    case FormulaAtom::ta: return "tA";
    case FormulaAtom::tb: return "tB";
    case FormulaAtom::s: return "S";
    }
    return "?";
}

void emit(const Formula& f, std::string& out, int parent, bool is_right) {
    if (f.is_atom()) {
        out += atom_text(f.atom_kind());
        return;
    }
    int p = prec(f.op());
    bool parens = p < parent || (p == parent && is_right);
    if (parens) out += '(';
    emit(f.lhs(), out, p, false);
    out += ' ';
    out += op_text(f.op());
    out += ' ';
    emit(f.rhs(), out, p, true);
    if (parens) out += ')';
}

bool is_atom_of(const Formula& f, FormulaAtom a) { return f.is_atom() && f.atom_kind() == a; }

bool mentions_x(const Formula& f) {
    if (f.is_atom()) return f.atom_kind() == FormulaAtom::x;
    return mentions_x(f.lhs()) || mentions_x(f.rhs());
}

} // namespace

Formula parse_formula(std::string_view text) {
    FormulaLexer lx{text};
    Formula f = parse_expr(lx);
    lx.skip_ws();
    if (lx.pos < lx.src.size()) lx.fail("operator or end of formula");
    return f;
}

std::string formula_str(const Formula& f) {
    std::string out;
    emit(f, out, 0, false);
    return out;
}

const std::vector<std::pair<std::string, Formula>>& formula_catalog() {
    static const std::vector<std::pair<std::string, Formula>> catalog = [] {
        auto X = Formula::atom(FormulaAtom::x);
        auto TA = Formula::atom(FormulaAtom::ta);
        auto TB = Formula::atom(FormulaAtom::tb);
        using Op = FormulaOp;
        std::vector<std::pair<std::string, Formula>> v;
        v.emplace_back("T1.1", X);
        v.emplace_back("T1.2", Formula::combine(Op::diff, X, Formula::combine(Op::diff, TA, TB)));
        v.emplace_back("T1.3", Formula::combine(Op::prod, X, Formula::combine(Op::sum, TA, TB)));
        v.emplace_back("T1.4", Formula::combine(Op::diff, X, Formula::combine(Op::prod, TA, TB)));
        v.emplace_back("T1.5", Formula::combine(Op::diff, X, TB));
        v.emplace_back("T1.6",
                       Formula::combine(Op::diff, X, Formula::combine(Op::symdiff, TA, TB)));
        v.emplace_back("T1.7", Formula::combine(Op::prod, X, TB));
        v.emplace_back("T1.8",
                       Formula::combine(Op::prod, X, Formula::combine(Op::symdiff, TA, TB)));
        v.emplace_back("T1.9", Formula::combine(Op::diff, X, TA));
        v.emplace_back("T1.10", Formula::combine(Op::diff, X, Formula::combine(Op::sum, TA, TB)));
        v.emplace_back("T1.11",
                       Formula::combine(Op::prod, X, Formula::combine(Op::diff, TB, TA)));
        return v;
    }();
    return catalog;
}

std::optional<Formula> catalog_lookup(std::string_view id) {
    for (const auto& [name, f] : formula_catalog())
        if (name == id) return f;
    return std::nullopt;
}

namespace {

Shape eval_tree(const Formula& f, const Shape& x, const StepContext& ctx) {
    if (f.is_atom()) {
        switch (f.atom_kind()) {
        case FormulaAtom::x: return x;
        case FormulaAtom::ta: return ctx.ta;
        case FormulaAtom::tb: return ctx.tb;
        case FormulaAtom::s: return ctx.s;
        }
    }
    Shape l = eval_tree(f.lhs(), x, ctx);
    Shape r = eval_tree(f.rhs(), x, ctx);
    switch (f.op()) {
    case FormulaOp::sum: return sum(l, r);
    case FormulaOp::diff: return difference(l, r);
    case FormulaOp::prod: return product(l, r);
    case FormulaOp::symdiff: return sym_difference(l, r);
    }
    throw InputError("corrupt formula");
}

} // namespace

Shape evaluate(const Formula& h, const Shape& x, const StepContext& ctx) {
    if (!part_of(x, ctx.s))
        throw InputError("mapping argument is not a part of the current shape: " +
                         shape_literal(x));
    return eval_tree(h, x, ctx);
}

bool mapping_describes(const Formula& h, const StepContext& ctx) {
    return part_of(evaluate(h, ctx.s, ctx), ctx.s_next);
}

Preimage preimage(const Formula& h, const Shape& d, const StepContext& ctx) {
    // Closure equations: for h = x - C the largest preimage of D is
    // S.C + (S - C).D, with C one of tA, tB, tA ^ tB.
    if (!h.is_atom() && h.op() == FormulaOp::diff && is_atom_of(h.lhs(), FormulaAtom::x)) {
        Formula r = h.rhs();
        std::optional<Shape> c;
        if (is_atom_of(r, FormulaAtom::ta)) c = ctx.ta;
        else if (is_atom_of(r, FormulaAtom::tb)) c = ctx.tb;
        else if (!r.is_atom() && r.op() == FormulaOp::symdiff &&
                 ((is_atom_of(r.lhs(), FormulaAtom::ta) && is_atom_of(r.rhs(), FormulaAtom::tb)) ||
                  (is_atom_of(r.lhs(), FormulaAtom::tb) && is_atom_of(r.rhs(), FormulaAtom::ta))))
            c = sym_difference(ctx.ta, ctx.tb);
        if (c) {
            Shape inside = product(ctx.s, *c);
            Shape outside = product(difference(ctx.s, *c), d);
            return Preimage{sum(inside, outside), ""};
        }
    }
    return oracle_preimage(h, d, ctx);
}

namespace {

constexpr std::size_t kOracleEnumLimit = 16; // shape-level subset fallback
constexpr std::size_t kOracleMaskLimit = 22; // bitmask subset enumeration

std::vector<Shape> context_cells(const StepContext& ctx, const Shape* d) {
    std::vector<Shape> context{ctx.s, ctx.ta, ctx.tb};
    if (d) context.push_back(*d);
    std::vector<Shape> cells;
    for (auto& c : atomize(context))
        if (part_of(c, ctx.s)) cells.push_back(std::move(c));
    return cells;
}

// Postfix program evaluating a formula on cell bitmasks. Sound because
// every cell lies entirely inside or outside each named shape, so the
// algebra on within-S parts is the boolean algebra of masks.
struct MaskProgram {
    enum class Code : std::uint8_t { x, ta, tb, s, add, diff, prod, symdiff };
    std::vector<Code> codes;
    std::uint32_t ta_mask = 0, tb_mask = 0, s_mask = 0;
    mutable std::vector<std::uint32_t> stack;

    void compile(const Formula& h) {
        if (h.is_atom()) {
            switch (h.atom_kind()) {
            case FormulaAtom::x: codes.push_back(Code::x); return;
            case FormulaAtom::ta: codes.push_back(Code::ta); return;
            case FormulaAtom::tb: codes.push_back(Code::tb); return;
            case FormulaAtom::s: codes.push_back(Code::s); return;
            }
        }
        compile(h.lhs());
        compile(h.rhs());
        switch (h.op()) {
        case FormulaOp::sum: codes.push_back(Code::add); break;
        case FormulaOp::diff: codes.push_back(Code::diff); break;
        case FormulaOp::prod: codes.push_back(Code::prod); break;
        case FormulaOp::symdiff: codes.push_back(Code::symdiff); break;
        }
    }

    std::uint32_t run(std::uint32_t x) const {
        stack.clear();
        for (Code c : codes) {
            switch (c) {
            case Code::x: stack.push_back(x); break;
            case Code::ta: stack.push_back(ta_mask); break;
            case Code::tb: stack.push_back(tb_mask); break;
            case Code::s: stack.push_back(s_mask); break;
            default: {
                std::uint32_t r = stack.back();
                stack.pop_back();
                std::uint32_t& l = stack.back();
                if (c == Code::add) l |= r;
                else if (c == Code::diff) l &= ~r;
                else if (c == Code::prod) l &= r;
                else l ^= r;
            }
            }
        }
        return stack.back();
    }
};

// The outside-S component of h's output. Candidates live inside S and the
// constants' outside parts are disjoint from S, so this component never
// depends on the candidate.
Shape formula_extra(const Formula& h, const Shape& ta_out, const Shape& tb_out,
                    const Shape& zero) {
    if (h.is_atom()) {
        switch (h.atom_kind()) {
        case FormulaAtom::x: return zero;
        case FormulaAtom::ta: return ta_out;
        case FormulaAtom::tb: return tb_out;
        case FormulaAtom::s: return zero;
        }
    }
    Shape l = formula_extra(h.lhs(), ta_out, tb_out, zero);
    Shape r = formula_extra(h.rhs(), ta_out, tb_out, zero);
    switch (h.op()) {
    case FormulaOp::sum: return sum(l, r);
    case FormulaOp::diff: return difference(l, r);
    case FormulaOp::prod: return product(l, r);
    case FormulaOp::symdiff: return sym_difference(l, r);
    }
    return zero;
}

} // namespace

Preimage oracle_preimage(const Formula& h, const Shape& d, const StepContext& ctx) {
    std::vector<Shape> cells = context_cells(ctx, &d);
    const std::size_t n = cells.size();
    Shape zero = Shape::empty(ctx.s.kind());

    auto mask_of = [&](const Shape& c) {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (part_of(cells[i], c)) m |= (std::uint32_t{1} << i);
        return m;
    };
    auto from_mask = [&](std::uint32_t m) {
        Shape u = zero;
        for (std::size_t i = 0; i < n; ++i)
            if (m & (std::uint32_t{1} << i)) u = sum(u, cells[i]);
        return u;
    };

    if (n <= kOracleMaskLimit) {
        MaskProgram prog;
        prog.compile(h);
        prog.ta_mask = mask_of(ctx.ta);
        prog.tb_mask = mask_of(ctx.tb);
        prog.s_mask = n == 0 ? 0 : (std::uint32_t{1} << n) - 1;
        const std::uint32_t d_mask = mask_of(d);
        Shape ta_out = difference(ctx.ta, ctx.s);
        Shape tb_out = difference(ctx.tb, ctx.s);
        // The route is exact only if the decompositions reconstruct.
        bool exact = from_mask(prog.s_mask) == ctx.s &&
                     sum(from_mask(prog.ta_mask), ta_out) == ctx.ta &&
                     sum(from_mask(prog.tb_mask), tb_out) == ctx.tb &&
                     sum(from_mask(d_mask), difference(d, ctx.s)) == d;
        if (exact) {
            Shape extra = formula_extra(h, ta_out, tb_out, zero);
            if (!part_of(extra, d))
                return Preimage{std::nullopt,
                                "no part of the current shape maps into the target"};
            std::uint32_t sat_union = 0;
            bool any = false;
            for (std::uint32_t m = 0;; ++m) {
                if ((prog.run(m) & ~d_mask) == 0) {
                    any = true;
                    sat_union |= m;
                }
                if (m == prog.s_mask) break;
            }
            if (!any)
                return Preimage{std::nullopt,
                                "no part of the current shape maps into the target"};
            if ((prog.run(sat_union) & ~d_mask) == 0)
                return Preimage{from_mask(sat_union), ""};
            // No greatest satisfying part. A largest-by-count satisfying
            // mask is maximal, as is the largest not below it; report the
            // incomparable pair.
            auto largest = [&](std::uint32_t outside) {
                std::uint32_t best_mask = 0;
                int best_bits = -1;
                for (std::uint32_t m = 0;; ++m) {
                    if ((prog.run(m) & ~d_mask) == 0 && (outside == 0 || (m & ~outside) != 0)) {
                        int bits = std::popcount(m);
                        if (bits > best_bits) {
                            best_bits = bits;
                            best_mask = m;
                        }
                    }
                    if (m == prog.s_mask) break;
                }
                return best_mask;
            };
            std::uint32_t first = largest(0);
            std::uint32_t second = largest(first);
            return Preimage{std::nullopt,
                            "ambiguous preimage: incomparable maximal parts " +
                                shape_literal(from_mask(first)) + " and " +
                                shape_literal(from_mask(second)) +
                                " both map into the target"};
        }
    }

    if (n <= kOracleEnumLimit) {
        std::vector<std::uint32_t> sat;
        std::vector<Shape> sums;
        // Depth-first over subsets, reusing partial sums.
        struct Frame {
            std::uint32_t mask;
            Shape shape;
        };
        std::vector<Frame> stack{{0, zero}};
        while (!stack.empty()) {
            Frame f = std::move(stack.back());
            stack.pop_back();
            // Each frame extends its mask with cells above the top set bit.
            std::size_t next = 0;
            if (f.mask != 0) {
                next = 32 - static_cast<std::size_t>(__builtin_clz(f.mask));
            }
            if (part_of(eval_tree(h, f.shape, ctx), d)) {
                sat.push_back(f.mask);
                sums.push_back(f.shape);
            }
            for (std::size_t i = next; i < n; ++i)
                stack.push_back(
                    Frame{f.mask | (1u << i), sum(f.shape, cells[i])});
        }
        if (sat.empty())
            return Preimage{std::nullopt, "no part of the current shape maps into the target"};
        std::uint32_t all = 0;
        for (auto m : sat) all |= m;
        Shape u = zero;
        for (std::size_t i = 0; i < n; ++i)
            if (all & (1u << i)) u = sum(u, cells[i]);
        if (part_of(eval_tree(h, u, ctx), d)) return Preimage{u, ""};
        // Maximal satisfying subsets.
        std::vector<std::size_t> maximal;
        for (std::size_t i = 0; i < sat.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < sat.size() && !dominated; ++j)
                if (i != j && (sat[i] & sat[j]) == sat[i] && sat[i] != sat[j]) dominated = true;
            if (!dominated) maximal.push_back(i);
        }
        if (maximal.size() == 1) return Preimage{sums[maximal[0]], ""};
        return Preimage{std::nullopt,
                        "ambiguous preimage: incomparable maximal parts " +
                            shape_literal(sums[maximal[0]]) + " and " +
                            shape_literal(sums[maximal[1]]) + " both map into the target"};
    }

    // Beyond enumeration capacity: valid for order-preserving mappings,
    // where the satisfying parts are closed downward and cell-wise.
    if (!part_of(eval_tree(h, zero, ctx), d))
        return Preimage{std::nullopt, "no part of the current shape maps into the target"};
    Shape u = zero;
    for (const auto& c : cells)
        if (part_of(eval_tree(h, c, ctx), d)) u = sum(u, c);
    if (part_of(eval_tree(h, u, ctx), d)) return Preimage{u, ""};
    throw CapacityError("preimage oracle: " + std::to_string(n) +
                        " cells exceed subset enumeration capacity and the mapping is not "
                        "cell-additive");
}

std::string verdict_str(Verdict v) {
    switch (v) {
    case Verdict::suitable: return "Suitable";
    case Verdict::not_continuous_nonempty_output: return "NotContinuous_NonemptyOutput";
    case Verdict::not_continuous_constant: return "NotContinuous_Constant";
    case Verdict::excluded_order_reversing: return "Excluded_OrderReversing";
    }
    return "?";
}

Classification classify(const Formula& h, const StepContext& ctx) {
    Shape zero = Shape::empty(ctx.s.kind());
    std::vector<Shape> cells = context_cells(ctx, nullptr);
    if (cells.size() > kOracleEnumLimit) cells.resize(kOracleEnumLimit);

    std::vector<Shape> samples{zero, ctx.s,
                               ctx.ta,
                               product(ctx.s, ctx.tb),
                               difference(ctx.s, ctx.ta),
                               difference(ctx.s, product(ctx.s, ctx.tb)),
                               product(ctx.s, sym_difference(ctx.ta, ctx.tb)),
                               difference(ctx.s, sym_difference(ctx.ta, ctx.tb))};
    Shape prefix = zero;
    for (const auto& c : cells) {
        samples.push_back(c);
        prefix = sum(prefix, c);
        samples.push_back(prefix);
    }
    std::vector<Shape> parts;
    for (auto& s : samples)
        if (part_of(s, ctx.s)) parts.push_back(std::move(s));
    std::sort(parts.begin(), parts.end(), ShapeLess{});
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());

    std::vector<Shape> images;
    images.reserve(parts.size());
    for (const auto& p : parts) images.push_back(eval_tree(h, p, ctx));

    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (i == j || !part_of(parts[i], parts[j])) continue;
            if (!part_of(images[i], images[j]))
                return Classification{Verdict::excluded_order_reversing, false,
                                      "order reversed on " + shape_literal(parts[i]) +
                                          " inside " + shape_literal(parts[j])};
        }

    bool constant = true;
    for (std::size_t i = 1; i < images.size(); ++i)
        if (images[i] != images[0]) { constant = false; break; }
    if (constant && !parts.empty()) {
        if (!images[0].empty_shape())
            return Classification{Verdict::not_continuous_constant, false,
                                  "constant output " + shape_literal(images[0])};
        return Classification{Verdict::suitable, true, "constant empty output"};
    }

    Shape h0 = eval_tree(h, zero, ctx);
    if (!h0.empty_shape())
        return Classification{Verdict::not_continuous_nonempty_output, false,
                              "empty input maps to " + shape_literal(h0)};
    return Classification{Verdict::suitable, false, ""};
}

} // namespace sg
