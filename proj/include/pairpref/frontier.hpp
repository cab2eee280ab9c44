#pragma once

#include <optional>
#include <string>

#include "pairpref/instance.hpp"
#include "pairpref/solver_strong.hpp"
#include "pairpref/solver_super.hpp"
#include "pairpref/solver_weak.hpp"
#include "pairpref/stability.hpp"

namespace pairpref {

// Tractability frontier of the three complexity tables. Sides are unordered:
// weak is polynomial iff both sides are acyclic or better; strong needs ties
// on one side and asymmetric on the other; super needs poset x asymmetric.
inline bool tractable_cell(StabilityNotion notion, OrderClass a, OrderClass b) {
    OrderClass lo = at_most(a, b) ? a : b;
    OrderClass hi = at_most(a, b) ? b : a;
    switch (notion) {
        case StabilityNotion::Weak: return at_most(hi, OrderClass::Acyclic);
        case StabilityNotion::Strong: return at_most(lo, OrderClass::Ties) && at_most(hi, OrderClass::Asymmetric);
        case StabilityNotion::Super: return at_most(lo, OrderClass::Poset) && at_most(hi, OrderClass::Asymmetric);
    }
    return false;
}

struct DispatchResult {
    std::optional<Matching> matching;
    StrongTrace strong_trace;
    SuperTrace super_trace;
    bool transposed = false;  // solver ran on the side-swapped instance
};

// Routes an instance to the solver owning its cell, transposing the sides
// when only the swapped orientation fits a solver's gate. Throws
// ClassGateViolation naming the cell when the cell is NP-complete.
inline DispatchResult solve_dispatch(StabilityNotion notion, const Instance& inst) {
    auto [cm, cw] = classify_sides(inst);
    if (!tractable_cell(notion, cm, cw))
        fail(Errc::ClassGateViolation,
             std::string(notion_name(notion)) + " stability with (" + order_class_name(cm) + ", " +
                 order_class_name(cw) +
                 ") preferences is an NP-complete cell; use the oracle subcommand for exhaustive search");
    DispatchResult out;
    switch (notion) {
        case StabilityNotion::Weak: {
            out.matching = solve_weak(inst);
            break;
        }
        case StabilityNotion::Strong: {
            if (at_most(cm, OrderClass::Ties) && at_most(cw, OrderClass::Asymmetric)) {
                auto r = solve_strong(inst);
                out.matching = std::move(r.matching);
                out.strong_trace = std::move(r.trace);
            } else {
                auto r = solve_strong(transpose_instance(inst));
                out.transposed = true;
                if (r.matching) out.matching = transpose_matching(*r.matching, inst);
                out.strong_trace = std::move(r.trace);
            }
            break;
        }
        case StabilityNotion::Super: {
            if (at_most(cm, OrderClass::Poset) && at_most(cw, OrderClass::Asymmetric)) {
                auto r = solve_super(inst);
                out.matching = std::move(r.matching);
                out.super_trace = std::move(r.trace);
            } else {
                auto r = solve_super(transpose_instance(inst));
                out.transposed = true;
                if (r.matching) out.matching = transpose_matching(*r.matching, inst);
                out.super_trace = std::move(r.trace);
            }
            break;
        }
    }
    return out;
}

}  // namespace pairpref
