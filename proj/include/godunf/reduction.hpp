#pragma once

#include "godunf/net.hpp"
#include "godunf/oracle.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string_view>
#include <utility>

namespace godunf {

enum class ReducerKind { Null, Flow, ExactOracle };

ReducerKind parse_reducer_kind (std::string_view text);
std::string_view to_string (ReducerKind kind);

// A goal-oriented reduction procedure: from marking m, returns transitions
// that occur in no minimal firing sequence to the goal.  Results are indices
// into `net`.
class Reducer {
  public:
    virtual ~Reducer () = default;
    virtual ReducerKind kind () const = 0;
    virtual TransitionSet useless_trs (const Net &net, const Marking &m, const Goal &goal) const = 0;
};

// Declares nothing useless.
class NullReducer final : public Reducer {
  public:
    ReducerKind kind () const override { return ReducerKind::Null; }
    TransitionSet useless_trs (const Net &net, const Marking &m, const Goal &goal) const override;
};

// Static flow analysis: keeps transitions that are forward-fireable from m
// (ignoring token consumption) and have a flow path to a goal place.  Only
// sound for Subset goals; Exact goals raise InputError.
class FlowReducer final : public Reducer {
  public:
    ReducerKind kind () const override { return ReducerKind::Flow; }
    TransitionSet useless_trs (const Net &net, const Marking &m, const Goal &goal) const override;
};

// Maximal answer: complement of the oracle's useful transitions.
class ExactReducer final : public Reducer {
  public:
    explicit ExactReducer (OracleLimits limits = {}) : limits_ (limits) {}
    ReducerKind kind () const override { return ReducerKind::ExactOracle; }
    TransitionSet useless_trs (const Net &net, const Marking &m, const Goal &goal) const override;

  private:
    OracleLimits limits_;
};

std::unique_ptr<Reducer> make_reducer (ReducerKind kind, OracleLimits limits = {});

TransitionSet null_useless (const Net &net, const Marking &m, const Goal &goal);
TransitionSet flow_useless (const Net &net, const Marking &m, const Goal &goal);
TransitionSet exact_useless (const Net &net, const Marking &m, const Goal &goal,
                             const OracleLimits &limits = {});

// Ug(m, I) = useless_trs(<P,T,F,m> \ I, goal) U I, in the indices of `net`.
TransitionSet ug (const Reducer &reducer, const Net &net, const Marking &m,
                  const TransitionSet &ignored, const Goal &goal);

// Memoised Ug for one (reducer, net, goal).  Results depend only on
// (m, ignored), so they are cached for the lifetime of the object.
class ReductionCache {
  public:
    ReductionCache (const Reducer &reducer, const Net &net, const Goal &goal)
        : reducer_ (reducer), net_ (net), goal_ (goal) {}

    TransitionSet ug (const Marking &m, const TransitionSet &ignored);

    // Actual reducer invocations (cache misses).
    std::size_t calls () const;
    std::size_t lookups () const;

  private:
    const Reducer &reducer_;
    const Net &net_;
    const Goal &goal_;
    mutable std::mutex mutex_;
    std::map<std::pair<Marking, TransitionSet>, TransitionSet> memo_;
    std::size_t calls_ = 0;
    std::size_t lookups_ = 0;
};

} // namespace godunf
