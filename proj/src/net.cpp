#include "godunf/net.hpp"

#include "godunf/error.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace godunf {

namespace {

std::vector<PlaceId> to_list (const PlaceSet &s)
{
    std::vector<PlaceId> out;
    for (auto i = s.find_first (); i != PlaceSet::npos; i = s.find_next (i))
        out.push_back (static_cast<PlaceId> (i));
    return out;
}

} // namespace

Net Net::build (std::vector<std::string> places,
                const std::vector<TransitionSpec> &transitions,
                const std::vector<std::string> &initial)
{
    Net net;
    net.place_names_ = std::move (places);
    for (std::size_t i = 0; i < net.place_names_.size (); ++i) {
        const auto &name = net.place_names_[i];
        if (name.empty ())
            throw InputError ("empty place name");
        if (!net.place_index_.emplace (name, static_cast<PlaceId> (i)).second)
            throw InputError ("duplicate place '" + name + "'");
    }

    auto lookup = [&] (const std::string &name, const std::string &ctx) {
        auto it = net.place_index_.find (name);
        if (it == net.place_index_.end ())
            throw InputError ("unknown place '" + name + "' in " + ctx);
        return it->second;
    };

    const auto np = net.place_names_.size ();
    net.consumers_.resize (np);
    for (const auto &spec : transitions) {
        if (spec.name.empty ())
            throw InputError ("empty transition name");
        auto id = static_cast<TransitionId> (net.transition_names_.size ());
        if (!net.transition_index_.emplace (spec.name, id).second)
            throw InputError ("duplicate transition '" + spec.name + "'");
        PlaceSet pre (np), post (np);
        for (const auto &p : spec.pre)
            pre.set (lookup (p, "preset of transition '" + spec.name + "'"));
        for (const auto &p : spec.post)
            post.set (lookup (p, "postset of transition '" + spec.name + "'"));
        if (pre.none ())
            throw InputError ("transition '" + spec.name + "' has an empty preset");
        net.transition_names_.push_back (spec.name);
        net.pre_list_.push_back (to_list (pre));
        net.post_list_.push_back (to_list (post));
        for (auto p : net.pre_list_.back ())
            net.consumers_[p].push_back (id);
        net.pre_.push_back (std::move (pre));
        net.post_.push_back (std::move (post));
    }

    net.initial_ = PlaceSet (np);
    for (const auto &p : initial)
        net.initial_.set (lookup (p, "initial marking"));
    return net;
}

const std::string &Net::place_name (PlaceId p) const
{
    if (p >= num_places ())
        throw InputError ("unknown place index " + std::to_string (p));
    return place_names_[p];
}

const std::string &Net::transition_name (TransitionId t) const
{
    check_transition (t);
    return transition_names_[t];
}

void Net::check_transition (TransitionId t) const
{
    if (t >= num_transitions ())
        throw InputError ("unknown transition index " + std::to_string (t));
}

std::optional<PlaceId> Net::find_place (std::string_view name) const
{
    auto it = place_index_.find (std::string (name));
    if (it == place_index_.end ())
        return std::nullopt;
    return it->second;
}

std::optional<TransitionId> Net::find_transition (std::string_view name) const
{
    auto it = transition_index_.find (std::string (name));
    if (it == transition_index_.end ())
        return std::nullopt;
    return it->second;
}

PlaceId Net::place (std::string_view name) const
{
    if (auto p = find_place (name))
        return *p;
    throw InputError ("unknown place '" + std::string (name) + "'");
}

TransitionId Net::transition (std::string_view name) const
{
    if (auto t = find_transition (name))
        return *t;
    throw InputError ("unknown transition '" + std::string (name) + "'");
}

const PlaceSet &Net::pre (TransitionId t) const
{
    check_transition (t);
    return pre_[t];
}

const PlaceSet &Net::post (TransitionId t) const
{
    check_transition (t);
    return post_[t];
}

const std::vector<PlaceId> &Net::pre_places (TransitionId t) const
{
    check_transition (t);
    return pre_list_[t];
}

const std::vector<PlaceId> &Net::post_places (TransitionId t) const
{
    check_transition (t);
    return post_list_[t];
}

const std::vector<TransitionId> &Net::consumers (PlaceId p) const
{
    if (p >= num_places ())
        throw InputError ("unknown place index " + std::to_string (p));
    return consumers_[p];
}

TransitionSet Net::all_transitions () const
{
    TransitionSet s (num_transitions ());
    s.set ();
    return s;
}

PlaceSet Net::places_of (const std::vector<std::string> &names) const
{
    PlaceSet s = no_places ();
    for (const auto &n : names)
        s.set (place (n));
    return s;
}

TransitionSet Net::transitions_of (const std::vector<std::string> &names) const
{
    TransitionSet s = no_transitions ();
    for (const auto &n : names)
        s.set (transition (n));
    return s;
}

std::vector<TransitionSpec> Net::transition_specs () const
{
    std::vector<TransitionSpec> out;
    for (TransitionId t = 0; t < num_transitions (); ++t) {
        TransitionSpec spec{transition_names_[t], {}, {}};
        for (auto p : pre_list_[t])
            spec.pre.push_back (place_names_[p]);
        for (auto p : post_list_[t])
            spec.post.push_back (place_names_[p]);
        out.push_back (std::move (spec));
    }
    return out;
}

std::vector<std::string> Net::initial_names () const
{
    std::vector<std::string> out;
    for (auto p : to_list (initial_))
        out.push_back (place_names_[p]);
    return out;
}

Goal make_goal (const Net &net, const std::vector<std::string> &places, GoalMode mode)
{
    if (places.empty ())
        throw InputError ("goal must name at least one place");
    return Goal{net.places_of (places), mode};
}

bool enabled (const Net &net, const Marking &m, TransitionId t)
{
    return net.pre (t).is_subset_of (m);
}

Marking fire (const Net &net, const Marking &m, TransitionId t)
{
    if (!enabled (net, m, t))
        throw InputError ("transition '" + net.transition_name (t) +
                          "' is not enabled at " + format_places (net, m));
    return (m - net.pre (t)) | net.post (t);
}

Marking replay (const Net &net, const Marking &m, const Sequence &seq)
{
    Marking cur = m;
    for (auto t : seq)
        cur = fire (net, cur, t);
    return cur;
}

bool fire_is_safe (const Net &net, const Marking &m, TransitionId t)
{
    return !(m - net.pre (t)).intersects (net.post (t));
}

bool goal_holds (const Goal &goal, const Marking &m)
{
    if (goal.mode == GoalMode::Exact)
        return m == goal.places;
    return goal.places.is_subset_of (m);
}

SafetyReport check_safe (const Net &net, std::size_t state_bound)
{
    struct Node {
        Marking marking;
        std::size_t parent;
        TransitionId via;
    };
    constexpr auto kRoot = static_cast<std::size_t> (-1);

    std::vector<Node> nodes;
    std::unordered_map<Marking, std::size_t> seen;
    std::deque<std::size_t> queue;

    auto path_to = [&] (std::size_t i) {
        Sequence seq;
        for (; nodes[i].parent != kRoot; i = nodes[i].parent)
            seq.push_back (nodes[i].via);
        std::reverse (seq.begin (), seq.end ());
        return seq;
    };

    nodes.push_back ({net.initial_marking (), kRoot, 0});
    seen.emplace (net.initial_marking (), 0);
    queue.push_back (0);

    SafetyReport report;
    while (!queue.empty ()) {
        auto i = queue.front ();
        queue.pop_front ();
        for (TransitionId t = 0; t < net.num_transitions (); ++t) {
            const Marking &m = nodes[i].marking;
            if (!enabled (net, m, t))
                continue;
            if (!fire_is_safe (net, m, t)) {
                report.verdict = SafetyReport::Verdict::Unsafe;
                report.markings = nodes.size ();
                report.witness = path_to (i);
                report.witness.push_back (t);
                return report;
            }
            Marking next = (m - net.pre (t)) | net.post (t);
            if (seen.count (next) != 0)
                continue;
            if (nodes.size () >= state_bound) {
                report.verdict = SafetyReport::Verdict::BoundExceeded;
                report.markings = nodes.size ();
                return report;
            }
            seen.emplace (next, nodes.size ());
            queue.push_back (nodes.size ());
            nodes.push_back ({std::move (next), i, t});
        }
    }
    report.markings = nodes.size ();
    return report;
}

void require_safe (const Net &net, std::size_t state_bound)
{
    auto report = check_safe (net, state_bound);
    switch (report.verdict) {
    case SafetyReport::Verdict::Safe:
        return;
    case SafetyReport::Verdict::Unsafe:
        throw UnsafeNetError ("net is not safe: " + format_sequence (net, report.witness) +
                              " puts a second token on a place");
    case SafetyReport::Verdict::BoundExceeded:
        throw ResourceLimitError ("safety check exceeded " + std::to_string (state_bound) +
                                  " markings");
    }
}

Net restrict (const Net &net, const TransitionSet &removed)
{
    if (removed.size () != net.num_transitions ())
        throw InputError ("removed-transition set does not match the net");
    std::vector<TransitionSpec> kept;
    auto specs = net.transition_specs ();
    for (TransitionId t = 0; t < net.num_transitions (); ++t)
        if (!removed.test (t))
            kept.push_back (std::move (specs[t]));
    return Net::build (net.place_names (), kept, net.initial_names ());
}

std::string format_places (const Net &net, const PlaceSet &s)
{
    std::string out = "{";
    bool first = true;
    for (auto i = s.find_first (); i != PlaceSet::npos; i = s.find_next (i)) {
        if (!first)
            out += ",";
        out += net.place_name (static_cast<PlaceId> (i));
        first = false;
    }
    return out + "}";
}

std::string format_transitions (const Net &net, const TransitionSet &s)
{
    std::string out = "{";
    bool first = true;
    for (auto i = s.find_first (); i != TransitionSet::npos; i = s.find_next (i)) {
        if (!first)
            out += ",";
        out += net.transition_name (static_cast<TransitionId> (i));
        first = false;
    }
    return out + "}";
}

std::string format_sequence (const Net &net, const Sequence &seq)
{
    if (seq.empty ())
        return "<empty>";
    std::string out;
    for (std::size_t i = 0; i < seq.size (); ++i) {
        if (i != 0)
            out += " ";
        out += net.transition_name (seq[i]);
    }
    return out;
}

} // namespace godunf
