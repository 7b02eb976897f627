#include "godunf/reduction.hpp"

#include "godunf/error.hpp"

#include <deque>
#include <string>

namespace godunf {

ReducerKind parse_reducer_kind (std::string_view text)
{
    if (text == "null")
        return ReducerKind::Null;
    if (text == "flow")
        return ReducerKind::Flow;
    if (text == "oracle")
        return ReducerKind::ExactOracle;
    throw InputError ("unknown reducer '" + std::string (text) + "' (null|flow|oracle)");
}

std::string_view to_string (ReducerKind kind)
{
    switch (kind) {
    case ReducerKind::Null:
        return "null";
    case ReducerKind::Flow:
        return "flow";
    case ReducerKind::ExactOracle:
        return "oracle";
    }
    return "?";
}

TransitionSet null_useless (const Net &net, const Marking &, const Goal &)
{
    return net.no_transitions ();
}

TransitionSet flow_useless (const Net &net, const Marking &m, const Goal &goal)
{
    if (goal.mode != GoalMode::Subset)
        throw InputError ("the flow reducer only supports subset goals");

    // Forward over-approximation: places that may ever be marked.
    PlaceSet reach = m;
    TransitionSet forward = net.no_transitions ();
    for (bool changed = true; changed;) {
        changed = false;
        for (TransitionId t = 0; t < net.num_transitions (); ++t) {
            if (forward.test (t) || !net.pre (t).is_subset_of (reach))
                continue;
            forward.set (t);
            reach |= net.post (t);
            changed = true;
        }
    }

    // Backward: transitions with a flow path t -> p -> t' -> ... -> goal place.
    TransitionSet backward = net.no_transitions ();
    PlaceSet seen = goal.places;
    std::deque<PlaceId> queue;
    for (auto p = seen.find_first (); p != PlaceSet::npos; p = seen.find_next (p))
        queue.push_back (static_cast<PlaceId> (p));
    while (!queue.empty ()) {
        PlaceId p = queue.front ();
        queue.pop_front ();
        for (TransitionId t = 0; t < net.num_transitions (); ++t) {
            if (backward.test (t) || !net.post (t).test (p))
                continue;
            backward.set (t);
            for (auto q : net.pre_places (t)) {
                if (!seen.test (q)) {
                    seen.set (q);
                    queue.push_back (q);
                }
            }
        }
    }
    return ~(forward & backward);
}

TransitionSet exact_useless (const Net &net, const Marking &m, const Goal &goal,
                             const OracleLimits &limits)
{
    return ~useful_transitions (net, m, goal, limits);
}

TransitionSet NullReducer::useless_trs (const Net &net, const Marking &m, const Goal &goal) const
{
    return null_useless (net, m, goal);
}

TransitionSet FlowReducer::useless_trs (const Net &net, const Marking &m, const Goal &goal) const
{
    return flow_useless (net, m, goal);
}

TransitionSet ExactReducer::useless_trs (const Net &net, const Marking &m, const Goal &goal) const
{
    return exact_useless (net, m, goal, limits_);
}

std::unique_ptr<Reducer> make_reducer (ReducerKind kind, OracleLimits limits)
{
    switch (kind) {
    case ReducerKind::Null:
        return std::make_unique<NullReducer> ();
    case ReducerKind::Flow:
        return std::make_unique<FlowReducer> ();
    case ReducerKind::ExactOracle:
        return std::make_unique<ExactReducer> (limits);
    }
    throw InputError ("unknown reducer kind");
}

TransitionSet ug (const Reducer &reducer, const Net &net, const Marking &m,
                  const TransitionSet &ignored, const Goal &goal)
{
    if (ignored.size () != net.num_transitions ())
        throw InputError ("ignored-transition set does not match the net");
    if (ignored.none ())
        return reducer.useless_trs (net, m, goal);

    // The restricted net renumbers transitions; map its answer back by name.
    Net reduced = restrict (net, ignored);
    TransitionSet local = reducer.useless_trs (reduced, m, goal);
    TransitionSet out = ignored;
    for (auto i = local.find_first (); i != TransitionSet::npos; i = local.find_next (i))
        out.set (net.transition (reduced.transition_name (static_cast<TransitionId> (i))));
    return out;
}

TransitionSet ReductionCache::ug (const Marking &m, const TransitionSet &ignored)
{
    std::pair<Marking, TransitionSet> key{m, ignored};
    {
        std::lock_guard lock (mutex_);
        ++lookups_;
        if (auto it = memo_.find (key); it != memo_.end ())
            return it->second;
    }
    TransitionSet result = godunf::ug (reducer_, net_, m, ignored, goal_);
    std::lock_guard lock (mutex_);
    auto [it, fresh] = memo_.emplace (std::move (key), std::move (result));
    if (fresh)
        ++calls_;
    return it->second;
}

std::size_t ReductionCache::calls () const
{
    std::lock_guard lock (mutex_);
    return calls_;
}

std::size_t ReductionCache::lookups () const
{
    std::lock_guard lock (mutex_);
    return lookups_;
}

} // namespace godunf
