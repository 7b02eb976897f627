#include "godunf/occurrence.hpp"

#include "godunf/error.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace godunf {

namespace {

bool sorted_contains (const std::vector<std::uint32_t> &v, std::uint32_t x)
{
    return std::binary_search (v.begin (), v.end (), x);
}

} // namespace

Configuration unite (const Configuration &a, const Configuration &b)
{
    Configuration out;
    out.reserve (a.size () + b.size ());
    std::set_union (a.begin (), a.end (), b.begin (), b.end (), std::back_inserter (out));
    return out;
}

Prefix::Prefix (const Net &net) : net_ (&net)
{
    const Marking &m0 = net.initial_marking ();
    for (auto p = m0.find_first (); p != Marking::npos; p = m0.find_next (p)) {
        auto id = static_cast<ConditionId> (conditions_.size ());
        conditions_.push_back ({kBottom, static_cast<PlaceId> (p), {}});
        initial_.push_back (id);
    }
    // Initial conditions are pairwise concurrent.
    co_.resize (initial_.size ());
    for (auto c : initial_)
        for (auto d : initial_)
            if (c != d)
                co_[c].push_back (d);
}

bool Prefix::co (ConditionId a, ConditionId b) const
{
    return sorted_contains (co_.at (a), b);
}

bool Prefix::precedes (EventId a, EventId b) const
{
    return sorted_contains (events_.at (b).local, a);
}

bool Prefix::causally_related (EventId a, EventId b) const
{
    return precedes (a, b) || precedes (b, a);
}

bool Prefix::in_conflict (EventId a, EventId b) const
{
    return !is_conflict_free (*this, unite (events_.at (a).local, events_.at (b).local));
}

EventId Prefix::add_event (TransitionId t, std::vector<ConditionId> preset)
{
    const Net &n = *net_;
    n.check_transition (t);
    std::sort (preset.begin (), preset.end ());
    if (std::adjacent_find (preset.begin (), preset.end ()) != preset.end ())
        throw InputError ("duplicate condition in event preset");

    PlaceSet image = n.no_places ();
    for (auto c : preset) {
        if (c >= conditions_.size ())
            throw InputError ("unknown condition " + std::to_string (c));
        image.set (conditions_[c].place);
    }
    if (image != n.pre (t) || preset.size () != n.pre_places (t).size ())
        throw InputError ("preset does not match pre(" + n.transition_name (t) + ")");
    for (std::size_t i = 0; i < preset.size (); ++i)
        for (std::size_t j = i + 1; j < preset.size (); ++j)
            if (!co (preset[i], preset[j]))
                throw InputError ("event preset is not a co-set");
    if (find_event (t, preset))
        throw InputError ("event already present");

    const auto e = static_cast<EventId> (events_.size ());
    Event ev;
    ev.transition = t;
    ev.preset = preset;

    std::uint32_t depth = 0;
    for (auto c : preset) {
        auto parent = conditions_[c].parent;
        if (parent == kBottom)
            continue;
        ev.local = unite (ev.local, events_[parent].local);
        depth = std::max (depth, events_[parent].depth);
    }
    ev.depth = depth + 1;
    ev.local.push_back (e); // largest index so far

    // Conditions concurrent with every preset condition stay concurrent
    // with the new ones; siblings are concurrent with each other.
    std::vector<ConditionId> inherited = co_[preset.front ()];
    for (std::size_t i = 1; i < preset.size (); ++i) {
        std::vector<ConditionId> tmp;
        const auto &other = co_[preset[i]];
        std::set_intersection (inherited.begin (), inherited.end (), other.begin (),
                               other.end (), std::back_inserter (tmp));
        inherited.swap (tmp);
    }
    // Preset conditions are excluded: none is concurrent with itself.

    for (auto c : preset)
        conditions_[c].consumers.push_back (e);

    const auto first_new = static_cast<ConditionId> (conditions_.size ());
    for (auto p : n.post_places (t)) {
        ev.postset.push_back (static_cast<ConditionId> (conditions_.size ()));
        conditions_.push_back ({e, p, {}});
    }
    const auto end_new = static_cast<ConditionId> (conditions_.size ());
    co_.resize (end_new);
    for (auto c = first_new; c < end_new; ++c) {
        co_[c] = inherited;
        for (auto d = first_new; d < end_new; ++d)
            if (d != c)
                co_[c].push_back (d);
    }
    for (auto d : inherited)
        for (auto c = first_new; c < end_new; ++c)
            co_[d].push_back (c);

    events_.push_back (std::move (ev));
    events_.back ().mark = marking_of (cut_unchecked (events_.back ().local));
    return e;
}

std::optional<EventId> Prefix::find_event (TransitionId t, const std::vector<ConditionId> &preset) const
{
    if (preset.empty () || preset.front () >= conditions_.size ())
        return std::nullopt;
    for (auto e : conditions_[preset.front ()].consumers)
        if (events_[e].transition == t && events_[e].preset == preset)
            return e;
    return std::nullopt;
}

std::size_t Prefix::num_cutoffs () const
{
    return static_cast<std::size_t> (
        std::count_if (events_.begin (), events_.end (), [] (const Event &e) { return e.cutoff; }));
}

bool is_causally_closed (const Prefix &prefix, const Configuration &conf)
{
    for (auto e : conf) {
        if (e >= prefix.num_events ())
            return false;
        for (auto c : prefix.event (e).preset) {
            auto parent = prefix.condition (c).parent;
            if (parent != kBottom && !std::binary_search (conf.begin (), conf.end (), parent))
                return false;
        }
    }
    return true;
}

bool is_conflict_free (const Prefix &prefix, const Configuration &conf)
{
    // Within a set of events, conflict shows up as a condition consumed twice.
    std::vector<ConditionId> consumed;
    for (auto e : conf) {
        const auto &pre = prefix.event (e).preset;
        consumed.insert (consumed.end (), pre.begin (), pre.end ());
    }
    std::sort (consumed.begin (), consumed.end ());
    return std::adjacent_find (consumed.begin (), consumed.end ()) == consumed.end ();
}

bool Prefix::is_configuration (const Configuration &conf) const
{
    if (!std::is_sorted (conf.begin (), conf.end ()) ||
        std::adjacent_find (conf.begin (), conf.end ()) != conf.end ())
        return false;
    return is_causally_closed (*this, conf) && is_conflict_free (*this, conf);
}

std::vector<ConditionId> Prefix::cut_unchecked (const Configuration &conf) const
{
    std::vector<ConditionId> produced = initial_;
    std::vector<ConditionId> consumed;
    for (auto e : conf) {
        const auto &ev = events_[e];
        produced.insert (produced.end (), ev.postset.begin (), ev.postset.end ());
        consumed.insert (consumed.end (), ev.preset.begin (), ev.preset.end ());
    }
    std::sort (produced.begin (), produced.end ());
    std::sort (consumed.begin (), consumed.end ());
    std::vector<ConditionId> out;
    std::set_difference (produced.begin (), produced.end (), consumed.begin (), consumed.end (),
                         std::back_inserter (out));
    return out;
}

Marking Prefix::marking_of (const std::vector<ConditionId> &conds) const
{
    Marking m = net_->no_places ();
    for (auto c : conds)
        m.set (conditions_[c].place);
    return m;
}

std::vector<ConditionId> Prefix::cut (const Configuration &conf) const
{
    if (!is_configuration (conf))
        throw InputError ("not a configuration (must be sorted, causally closed and conflict-free)");
    return cut_unchecked (conf);
}

Marking Prefix::mark (const Configuration &conf) const
{
    return marking_of (cut (conf));
}

std::vector<Extension> Prefix::extensions_of (const Configuration &conf) const
{
    const auto cut_conds = cut (conf);
    std::vector<ConditionId> by_place (net_->num_places (), kBottom);
    for (auto c : cut_conds)
        by_place[conditions_[c].place] = c;

    std::vector<Extension> out;
    for (TransitionId t = 0; t < net_->num_transitions (); ++t) {
        Extension ext{t, {}};
        bool ok = true;
        for (auto p : net_->pre_places (t)) {
            if (by_place[p] == kBottom) {
                ok = false;
                break;
            }
            ext.preset.push_back (by_place[p]);
        }
        if (!ok)
            continue;
        std::sort (ext.preset.begin (), ext.preset.end ());
        out.push_back (std::move (ext));
    }
    return out;
}

namespace {

// Shared replay loop for seq_to_configuration / find_configuration.
template <typename Resolve>
std::optional<Configuration> replay_in_prefix (const Prefix &prefix, const Sequence &seq,
                                               Resolve &&resolve)
{
    const Net &net = prefix.net ();
    std::vector<ConditionId> by_place (net.num_places (), kBottom);
    for (auto c : prefix.initial_conditions ())
        by_place[prefix.condition (c).place] = c;

    Configuration events;
    for (auto t : seq) {
        std::vector<ConditionId> preset;
        for (auto p : net.pre_places (t)) {
            if (by_place[p] == kBottom)
                throw InputError ("sequence is not fireable: '" + net.transition_name (t) +
                                  "' is disabled");
            preset.push_back (by_place[p]);
        }
        std::sort (preset.begin (), preset.end ());
        std::optional<EventId> e = resolve (t, preset);
        if (!e)
            return std::nullopt;
        for (auto p : net.pre_places (t))
            by_place[p] = kBottom;
        for (auto c : prefix.event (*e).postset) {
            auto p = prefix.condition (c).place;
            if (by_place[p] != kBottom)
                throw UnsafeNetError ("sequence puts a second token on '" + net.place_name (p) + "'");
            by_place[p] = c;
        }
        events.push_back (*e);
    }
    std::sort (events.begin (), events.end ());
    return events;
}

} // namespace

Configuration Prefix::seq_to_configuration (const Sequence &seq)
{
    auto result = replay_in_prefix (
        *this, seq, [this] (TransitionId t, const std::vector<ConditionId> &preset) {
            if (auto e = find_event (t, preset))
                return std::optional<EventId> (*e);
            return std::optional<EventId> (add_event (t, preset));
        });
    return *result;
}

std::optional<Configuration> Prefix::find_configuration (const Sequence &seq) const
{
    return replay_in_prefix (*this, seq,
                             [this] (TransitionId t, const std::vector<ConditionId> &preset) {
                                 return find_event (t, preset);
                             });
}

Sequence Prefix::linearize (const Configuration &conf) const
{
    if (!is_configuration (conf))
        throw InputError ("cannot linearize a non-configuration");
    std::vector<bool> done (events_.size (), false);
    Sequence seq;
    for (std::size_t step = 0; step < conf.size (); ++step) {
        EventId best = kBottom;
        for (auto e : conf) {
            if (done[e])
                continue;
            bool ready = true;
            for (auto c : events_[e].preset) {
                auto parent = conditions_[c].parent;
                if (parent != kBottom && !done[parent]) {
                    ready = false;
                    break;
                }
            }
            if (ready && (best == kBottom || events_[e].transition < events_[best].transition))
                best = e;
        }
        done[best] = true;
        seq.push_back (events_[best].transition);
    }
    return seq;
}

void Prefix::check_invariants () const
{
    auto fail = [] (const std::string &what) { throw std::logic_error ("occurrence net: " + what); };

    for (ConditionId c = 0; c < conditions_.size (); ++c) {
        const auto &cond = conditions_[c];
        bool initial = std::binary_search (initial_.begin (), initial_.end (), c);
        if ((cond.parent == kBottom) != initial)
            fail ("condition " + std::to_string (c) + " has inconsistent parent");
        if (cond.parent != kBottom) {
            const auto &post = events_.at (cond.parent).postset;
            if (std::find (post.begin (), post.end (), c) == post.end ())
                fail ("condition " + std::to_string (c) + " missing from parent postset");
        }
    }
    for (EventId e = 0; e < events_.size (); ++e) {
        const auto &ev = events_[e];
        PlaceSet image = net_->no_places ();
        for (auto c : ev.preset) {
            // Parents precede children: causality is acyclic.
            if (conditions_[c].parent != kBottom && conditions_[c].parent >= e)
                fail ("event " + std::to_string (e) + " consumes a later condition");
            image.set (conditions_[c].place);
        }
        if (image != net_->pre (ev.transition))
            fail ("event " + std::to_string (e) + " preset does not match its transition");
        if (ev.postset.size () != net_->post_places (ev.transition).size ())
            fail ("event " + std::to_string (e) + " postset size");
        if (!is_conflict_free (*this, ev.local))
            fail ("event " + std::to_string (e) + " is in self-conflict");
        if (!is_causally_closed (*this, ev.local))
            fail ("local configuration of " + std::to_string (e) + " is not closed");
    }

    auto past = [&] (ConditionId c) -> Configuration {
        auto parent = conditions_[c].parent;
        return parent == kBottom ? Configuration{} : events_[parent].local;
    };
    auto consumed_in = [&] (ConditionId c, const Configuration &conf) {
        for (auto e : conditions_[c].consumers)
            if (std::binary_search (conf.begin (), conf.end (), e))
                return true;
        return false;
    };
    for (ConditionId a = 0; a < conditions_.size (); ++a) {
        for (ConditionId b = a + 1; b < conditions_.size (); ++b) {
            auto pa = past (a), pb = past (b);
            bool causal = consumed_in (a, pb) || consumed_in (b, pa);
            bool conflict = !is_conflict_free (*this, unite (pa, pb));
            bool expected = !causal && !conflict;
            if (co (a, b) != expected || co (b, a) != expected)
                fail ("co relation wrong for conditions " + std::to_string (a) + ", " +
                      std::to_string (b));
        }
    }
}

} // namespace godunf
