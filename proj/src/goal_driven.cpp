#include "godunf/goal_driven.hpp"

#include "godunf/error.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <deque>
#include <set>
#include <unordered_set>

namespace godunf {

// ---------------------------------------------------------------- Strategy

Strategy Strategy::parse (std::string_view text)
{
    if (text == "always")
        return always ();
    auto number = [&] (std::string_view digits) {
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars (digits.data (), digits.data () + digits.size (), n);
        if (ec != std::errc{} || ptr != digits.data () + digits.size () || digits.empty ())
            throw InputError ("bad strategy '" + std::string (text) +
                              "' (always|first:N|level:K)");
        return n;
    };
    if (text.starts_with ("first:"))
        return first (number (text.substr (6)));
    if (text.starts_with ("level:"))
        return level_at_most (number (text.substr (6)));
    throw InputError ("bad strategy '" + std::string (text) + "' (always|first:N|level:K)");
}

std::string Strategy::to_string () const
{
    switch (kind) {
    case Kind::Always:
        return "always";
    case Kind::FirstN:
        return "first:" + std::to_string (bound);
    case Kind::LevelAtMost:
        return "level:" + std::to_string (bound);
    }
    return "?";
}

bool Strategy::selects (std::size_t event_index, std::uint32_t depth) const
{
    switch (kind) {
    case Kind::Always:
        return true;
    case Kind::FirstN:
        return event_index < bound;
    case Kind::LevelAtMost:
        return depth <= bound;
    }
    return false;
}

// ------------------------------------------------------------- KeyRegistry

KeyId KeyRegistry::condition (KeyId parent_event, PlaceId place)
{
    auto [it, fresh] = conditions_.emplace (std::pair{parent_event, place}, 0);
    if (fresh)
        it->second = static_cast<KeyId> (size () - 1);
    return it->second;
}

KeyId KeyRegistry::event (TransitionId t, std::vector<KeyId> preset_keys)
{
    std::sort (preset_keys.begin (), preset_keys.end ());
    auto [it, fresh] = events_.emplace (std::pair{t, std::move (preset_keys)}, 0);
    if (fresh)
        it->second = static_cast<KeyId> (size () - 1);
    return it->second;
}

// ---------------------------------------------------------------- AltIndex

AltIndex::AltIndex (const Prefix &prefix)
{
    for (EventId e = 0; e < prefix.num_events (); ++e)
        note (prefix, e);
}

void AltIndex::note (const Prefix &prefix, EventId e)
{
    if (is_target_.size () <= e)
        is_target_.resize (e + 1, false);
    auto &group = by_mark_[prefix.event (e).mark];
    // Every earlier member already became a target when its successor in
    // the group arrived; only the previous latest one changes status.
    if (!group.empty ()) {
        EventId prev = group.back ();
        if (!is_target_[prev]) {
            is_target_[prev] = true;
            targets_.push_back ({prev, prefix.cut (prefix.local_configuration (prev))});
        }
    }
    group.push_back (e);
}

std::vector<Configuration> alt (const Prefix &prefix, const AltIndex &index,
                                const Configuration &base, std::size_t cap)
{
    std::set<Configuration> members{base};
    std::deque<Configuration> work{base};
    while (!work.empty ()) {
        Configuration cur = std::move (work.front ());
        work.pop_front ();
        for (const auto &target : index.targets ()) {
            bool meets = std::any_of (target.cut.begin (), target.cut.end (), [&] (ConditionId c) {
                auto parent = prefix.condition (c).parent;
                return parent != kBottom && std::binary_search (cur.begin (), cur.end (), parent);
            });
            if (!meets)
                continue;
            Configuration next = unite (prefix.local_configuration (target.event), cur);
            if (!is_conflict_free (prefix, next))
                continue;
            if (!members.insert (next).second)
                continue;
            if (members.size () > cap)
                throw ResourceLimitError ("alt() exceeded " + std::to_string (cap) +
                                          " configurations (raise GODUNF_ALT_CAP)");
            work.push_back (std::move (next));
        }
    }
    return {members.begin (), members.end ()};
}

std::vector<Configuration> alt (const Prefix &prefix, const Configuration &base, std::size_t cap)
{
    return alt (prefix, AltIndex (prefix), base, cap);
}

// ------------------------------------------------------ Algorithm building blocks

namespace {

TransitionSet preset_union (const Net &net, const Prefix &prefix,
                            const std::vector<KeyId> &condition_keys, const DeltaMap &delta,
                            EventId e)
{
    TransitionSet out = net.no_transitions ();
    for (auto c : prefix.event (e).preset)
        out |= delta.at (condition_keys.at (c));
    return out;
}

KeyId event_key (KeyRegistry &keys, const Prefix &prefix,
                 const std::vector<KeyId> &condition_keys, EventId e)
{
    const Event &ev = prefix.event (e);
    std::vector<KeyId> preset;
    for (auto c : ev.preset)
        preset.push_back (condition_keys.at (c));
    return keys.event (ev.transition, std::move (preset));
}

} // namespace

TransitionSet useless_of_condition (GdContext &ctx, const Prefix &prefix,
                                    const std::vector<KeyId> &condition_keys,
                                    const AltIndex &index, const DeltaMap &delta, EventId e)
{
    TransitionSet ignored = preset_union (ctx.net, prefix, condition_keys, delta, e);
    if (!ctx.strategy.selects (e, prefix.event (e).depth))
        return ignored;

    std::optional<TransitionSet> meet;
    for (const auto &conf : alt (prefix, index, prefix.local_configuration (e), ctx.alt_cap)) {
        TransitionSet u = ctx.reductions.ug (prefix.mark (conf), ignored);
        if (meet)
            *meet &= u;
        else
            meet = std::move (u);
    }
    return *meet; // alt() always contains the base
}

KeyedPrefix putative_gd_prefix (GdContext &ctx, DeltaMap &delta)
{
    std::vector<KeyId> keys;
    AltIndex index;

    // Initial conditions are created by the Prefix constructor in place
    // order; they get the empty entry when the caller did not seed one.
    for (auto p = ctx.net.initial_marking ().find_first (); p != Marking::npos;
         p = ctx.net.initial_marking ().find_next (p)) {
        KeyId k = ctx.keys.condition (KeyRegistry::kBottomKey, static_cast<PlaceId> (p));
        keys.push_back (k);
        delta.try_emplace (k, ctx.net.no_transitions ());
    }

    UnfoldHooks hooks;
    hooks.event_cap = ctx.event_cap;
    hooks.admit = [&] (const Prefix &, const Extension &ext) {
        for (auto c : ext.preset)
            if (delta.at (keys.at (c)).test (ext.transition))
                return false;
        return true;
    };
    hooks.inserted = [&] (Prefix &prefix, EventId e) {
        index.note (prefix, e);
        KeyId ek = event_key (ctx.keys, prefix, keys, e);
        std::vector<KeyId> fresh;
        for (auto c : prefix.event (e).postset) {
            KeyId k = ctx.keys.condition (ek, prefix.condition (c).place);
            keys.push_back (k);
            if (delta.count (k) == 0)
                fresh.push_back (k);
        }
        if (fresh.empty ())
            return;
        TransitionSet u = useless_of_condition (ctx, prefix, keys, index, delta, e);
        for (auto k : fresh)
            delta.emplace (k, u);
    };

    Prefix prefix = unfold (ctx.net, ctx.order, hooks);
    return {std::move (prefix), std::move (keys)};
}

DeltaMap post_delta (GdContext &ctx, const DeltaMap &delta, const KeyedPrefix &kp)
{
    const Prefix &prefix = kp.prefix;
    DeltaMap next = delta;
    AltIndex index (prefix);

    std::unordered_map<Marking, EventId> representative;
    for (EventId e = 0; e < prefix.num_events (); ++e)
        if (!prefix.event (e).cutoff)
            representative.emplace (prefix.event (e).mark, e);

    // Insertion order is the adequate order on local configurations.
    for (EventId e = 0; e < prefix.num_events (); ++e) {
        const Event &ev = prefix.event (e);
        TransitionSet u = useless_of_condition (ctx, prefix, kp.condition_keys, index, delta, e);
        for (auto c : ev.postset)
            next.at (kp.key (c)) &= u;

        auto it = representative.find (ev.mark);
        if (it == representative.end () || it->second == e)
            continue;
        auto cut_e = prefix.cut (ev.local);
        auto cut_partner = prefix.cut (prefix.local_configuration (it->second));
        for (auto cp : cut_partner) {
            for (auto c : cut_e) {
                if (prefix.condition (c).place != prefix.condition (cp).place)
                    continue;
                TransitionSet allowed = next.at (kp.key (c));
                next.at (kp.key (cp)) &= allowed;
            }
        }
    }
    return next;
}

GdResult gd_prefix (const Net &net, const Goal &goal, const Reducer &reducer,
                    const GdOptions &options)
{
    if (!options.assume_safe)
        require_safe (net, options.state_bound);
    const auto start = std::chrono::steady_clock::now ();

    ErvOrder default_order (net);
    const AdequateOrder &order = options.order != nullptr ? *options.order : default_order;
    ReductionCache reductions (reducer, net, goal);
    KeyRegistry keys;
    GdContext ctx{net, goal, order, options.strategy, reductions, keys,
                  options.alt_cap, options.event_cap};

    DeltaMap next;
    for (auto p = net.initial_marking ().find_first (); p != Marking::npos;
         p = net.initial_marking ().find_next (p))
        next.emplace (keys.condition (KeyRegistry::kBottomKey, static_cast<PlaceId> (p)),
                      net.no_transitions ());

    for (std::size_t iteration = 1;; ++iteration) {
        if (iteration > options.iteration_cap)
            throw ResourceLimitError ("goal-driven prefix did not converge within " +
                                      std::to_string (options.iteration_cap) + " iterations");
        DeltaMap delta = std::move (next);
        KeyedPrefix kp = putative_gd_prefix (ctx, delta);
        next = post_delta (ctx, delta, kp);
        if (options.on_iteration)
            options.on_iteration (iteration, delta, next);
        // Post-delta never adds keys, so map equality is equality on the
        // shared keys.
        if (next == delta) {
            PrefixStats stats = shape_stats (kp.prefix);
            stats.iterations = iteration;
            stats.reducer_calls = reductions.calls ();
            stats.wall_seconds =
                std::chrono::duration<double> (std::chrono::steady_clock::now () - start).count ();
            return {std::move (kp), std::move (delta), stats};
        }
    }
}

// ------------------------------------------------------------- gd_unfold

TransitionSet useless_of_event (const Prefix &prefix, EventId e,
                                const std::vector<TransitionSet> &useless,
                                const Strategy &strategy, ReductionCache &reductions)
{
    const Event &ev = prefix.event (e);
    TransitionSet ignored = prefix.net ().no_transitions ();
    for (auto d : ev.local)
        if (d != e)
            ignored |= useless.at (d);
    if (!strategy.selects (e, ev.depth))
        return ignored;
    return reductions.ug (ev.mark, ignored);
}

GdUnfolding gd_unfold (const Net &net, const Goal &goal, const Reducer &reducer,
                       const Strategy &strategy, std::size_t depth_bound,
                       const UnfoldOptions &options)
{
    if (!options.assume_safe)
        require_safe (net, options.state_bound);
    ErvOrder default_order (net);
    const AdequateOrder &order = options.order != nullptr ? *options.order : default_order;
    ReductionCache reductions (reducer, net, goal);
    std::vector<TransitionSet> useless;

    UnfoldHooks hooks;
    hooks.detect_cutoffs = false;
    hooks.max_local_size = depth_bound;
    hooks.event_cap = options.event_cap;
    hooks.admit = [&] (const Prefix &prefix, const Extension &ext) {
        for (auto c : ext.preset) {
            auto parent = prefix.condition (c).parent;
            if (parent == kBottom)
                continue;
            for (auto d : prefix.local_configuration (parent))
                if (useless.at (d).test (ext.transition))
                    return false;
        }
        return true;
    };
    hooks.inserted = [&] (Prefix &prefix, EventId e) {
        useless.push_back (useless_of_event (prefix, e, useless, strategy, reductions));
    };

    if (depth_bound == 0)
        return {Prefix (net), {}, 0};
    Prefix prefix = unfold (net, order, hooks);
    return {std::move (prefix), std::move (useless), reductions.calls ()};
}

// ------------------------------------------------------------ extraction

PrefixMoves prefix_moves (const Prefix &prefix, std::size_t cap)
{
    const Net &net = prefix.net ();
    PrefixMoves moves;

    struct Node {
        Configuration conf;
        std::vector<ConditionId> cut;
    };
    std::set<Configuration> seen{Configuration{}};
    std::deque<Node> work{{{}, prefix.initial_conditions ()}};

    while (!work.empty ()) {
        Node node = std::move (work.front ());
        work.pop_front ();

        auto &out = moves.try_emplace (prefix.mark (node.conf), net.no_transitions ()).first->second;
        std::set<EventId> candidates;
        for (auto c : node.cut)
            for (auto f : prefix.condition (c).consumers)
                candidates.insert (f);
        for (auto f : candidates) {
            const Event &ev = prefix.event (f);
            bool on_cut = std::all_of (ev.preset.begin (), ev.preset.end (), [&] (ConditionId c) {
                return std::binary_search (node.cut.begin (), node.cut.end (), c);
            });
            if (!on_cut)
                continue;
            out.set (ev.transition);
            if (ev.cutoff)
                continue;
            Configuration conf = node.conf;
            conf.insert (std::lower_bound (conf.begin (), conf.end (), f), f);
            if (!seen.insert (conf).second)
                continue;
            if (seen.size () > cap)
                throw ResourceLimitError ("more than " + std::to_string (cap) +
                                          " prefix configurations");
            std::vector<ConditionId> cut;
            std::set_difference (node.cut.begin (), node.cut.end (), ev.preset.begin (),
                                 ev.preset.end (), std::back_inserter (cut));
            cut.insert (cut.end (), ev.postset.begin (), ev.postset.end ());
            std::sort (cut.begin (), cut.end ());
            work.push_back ({std::move (conf), std::move (cut)});
        }
    }
    return moves;
}

std::vector<GoalConfiguration> extract_goal_configurations (const Prefix &prefix, const Goal &goal,
                                                            std::size_t cap,
                                                            const OracleLimits &limits)
{
    const Net &net = prefix.net ();
    PrefixMoves moves = prefix_moves (prefix, cap);

    // Runs of the prefix-induced marking graph that stop at the goal and
    // never revisit a marking; a minimal sequence is always of this shape.
    std::vector<Sequence> runs;
    std::unordered_set<Marking> on_path{net.initial_marking ()};
    Sequence seq;
    std::size_t nodes = 0;
    auto dfs = [&] (auto &&self, const Marking &cur) -> void {
        if (++nodes > cap)
            throw ResourceLimitError ("goal-run search exceeded " + std::to_string (cap) + " nodes");
        if (goal_holds (goal, cur)) {
            runs.push_back (seq);
            return;
        }
        auto it = moves.find (cur);
        if (it == moves.end ())
            return;
        const TransitionSet &ts = it->second;
        for (auto t = ts.find_first (); t != TransitionSet::npos; t = ts.find_next (t)) {
            Marking next = fire (net, cur, static_cast<TransitionId> (t));
            if (!on_path.insert (next).second)
                continue;
            seq.push_back (static_cast<TransitionId> (t));
            self (self, next);
            seq.pop_back ();
            on_path.erase (next);
        }
    };
    dfs (dfs, net.initial_marking ());

    Prefix scratch (net);
    std::set<Configuration> classes;
    for (const auto &run : runs)
        classes.insert (scratch.seq_to_configuration (run));

    std::vector<GoalConfiguration> out;
    for (const auto &conf : classes) {
        Sequence lin = scratch.linearize (conf);
        auto verdict = is_minimal (net, lin, goal, limits);
        out.push_back ({std::move (lin), verdict.minimal, std::move (verdict.witness)});
    }
    std::sort (out.begin (), out.end (), [] (const auto &a, const auto &b) {
        if (a.linearization.size () != b.linearization.size ())
            return a.linearization.size () < b.linearization.size ();
        return a.linearization < b.linearization;
    });
    return out;
}

} // namespace godunf
