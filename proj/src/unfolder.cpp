#include "godunf/unfolder.hpp"

#include "godunf/error.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <unordered_map>

namespace godunf {

PrefixStats shape_stats (const Prefix &prefix)
{
    PrefixStats s;
    s.cutoff_events = prefix.num_cutoffs ();
    s.non_cutoff_events = prefix.num_events () - s.cutoff_events;
    s.conditions = prefix.num_conditions ();
    return s;
}

namespace {

bool from_cutoff (const Prefix &prefix, ConditionId c)
{
    auto parent = prefix.condition (c).parent;
    return parent != kBottom && prefix.event (parent).cutoff;
}

} // namespace

std::vector<Extension> possible_extensions (const Prefix &prefix,
                                            const std::vector<ConditionId> &dirty_in)
{
    const Net &net = prefix.net ();
    std::vector<ConditionId> dirty = dirty_in;
    std::sort (dirty.begin (), dirty.end ());
    dirty.erase (std::unique (dirty.begin (), dirty.end ()), dirty.end ());

    std::vector<Extension> out;
    for (auto c : dirty) {
        if (from_cutoff (prefix, c))
            continue;
        const PlaceId cp = prefix.condition (c).place;

        // Concurrent partners of c usable in a preset, bucketed by place.  A
        // dirty partner must have a larger index so each preset is found once.
        std::unordered_map<PlaceId, std::vector<ConditionId>> partners;
        for (auto d : prefix.co_set (c)) {
            if (from_cutoff (prefix, d))
                continue;
            if (d < c && std::binary_search (dirty.begin (), dirty.end (), d))
                continue;
            partners[prefix.condition (d).place].push_back (d);
        }

        for (auto t : net.consumers (cp)) {
            std::vector<PlaceId> need;
            for (auto p : net.pre_places (t))
                if (p != cp)
                    need.push_back (p);

            std::vector<ConditionId> chosen{c};
            // Depth-first choice of one partner per needed place.
            auto search = [&] (auto &&self, std::size_t i) -> void {
                if (i == need.size ()) {
                    Extension ext{t, chosen};
                    std::sort (ext.preset.begin (), ext.preset.end ());
                    if (!prefix.find_event (t, ext.preset))
                        out.push_back (std::move (ext));
                    return;
                }
                auto it = partners.find (need[i]);
                if (it == partners.end ())
                    return;
                for (auto d : it->second) {
                    bool ok = true;
                    for (std::size_t k = 1; k < chosen.size () && ok; ++k)
                        ok = prefix.co (chosen[k], d);
                    if (!ok)
                        continue;
                    chosen.push_back (d);
                    self (self, i + 1);
                    chosen.pop_back ();
                }
            };
            search (search, 0);
        }
    }
    std::sort (out.begin (), out.end ());
    return out;
}

Prefix unfold (const Net &net, const AdequateOrder &order, const UnfoldHooks &hooks)
{
    struct Pending {
        Extension ext;
        OrderKey key;
        std::uint64_t seq;
    };
    // priority_queue keeps the "largest" on top; invert to pop the minimum.
    auto after = [&order] (const Pending &a, const Pending &b) {
        auto c = order.compare (a.key, b.key);
        if (c != 0)
            return c > 0;
        return a.seq > b.seq;
    };
    std::priority_queue<Pending, std::vector<Pending>, decltype (after)> queue (after);

    Prefix prefix (net);
    std::uint64_t seq = 0;
    auto discover = [&] (const std::vector<ConditionId> &dirty) {
        for (auto &ext : possible_extensions (prefix, dirty)) {
            if (hooks.admit && !hooks.admit (prefix, ext))
                continue;
            OrderKey key = order.key (prefix, ext);
            if (hooks.max_local_size != 0 && key.size > hooks.max_local_size)
                continue;
            queue.push ({std::move (ext), std::move (key), seq++});
        }
    };

    std::unordered_map<Marking, EventId> first_with_mark;
    discover (prefix.initial_conditions ());
    while (!queue.empty ()) {
        Pending next = queue.top ();
        queue.pop ();
        if (prefix.num_events () >= hooks.event_cap)
            throw ResourceLimitError ("unfolding exceeded " + std::to_string (hooks.event_cap) +
                                      " events");
        EventId e = prefix.add_event (next.ext.transition, next.ext.preset);
        if (hooks.detect_cutoffs) {
            auto [it, fresh] = first_with_mark.emplace (prefix.event (e).mark, e);
            if (!fresh)
                prefix.set_cutoff (e);
        }
        if (hooks.inserted)
            hooks.inserted (prefix, e);
        if (!prefix.event (e).cutoff)
            discover (prefix.event (e).postset);
    }
    return prefix;
}

UnfoldResult complete_prefix (const Net &net, const UnfoldOptions &options)
{
    if (!options.assume_safe)
        require_safe (net, options.state_bound);
    const auto start = std::chrono::steady_clock::now ();

    ErvOrder default_order (net);
    const AdequateOrder &order = options.order != nullptr ? *options.order : default_order;
    UnfoldHooks hooks;
    hooks.event_cap = options.event_cap;
    Prefix prefix = unfold (net, order, hooks);

    PrefixStats stats = shape_stats (prefix);
    stats.iterations = 1;
    stats.wall_seconds =
        std::chrono::duration<double> (std::chrono::steady_clock::now () - start).count ();
    return {std::move (prefix), stats};
}

} // namespace godunf
