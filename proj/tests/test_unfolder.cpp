#include "support.hpp"

#include "godunf/error.hpp"
#include "godunf/goal_driven.hpp"
#include "godunf/oracle.hpp"
#include "godunf/unfolder.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace godunf;
using namespace godunf::testing;

namespace {

std::vector<std::string> labels (const Prefix &p)
{
    std::vector<std::string> out;
    for (const auto &e : p.events ())
        out.push_back (p.net ().transition_name (e.transition) + (e.cutoff ? "*" : ""));
    return out;
}

std::set<Marking> prefix_markings (const Prefix &p)
{
    std::set<Marking> out;
    for (auto &[m, ts] : prefix_moves (p))
        out.insert (m);
    return out;
}

} // namespace

TEST_CASE ("ERV order examples")
{
    auto d = fig2 ();
    const Net &n = d.net;
    ErvOrder order (n);
    Prefix p (n);
    auto ka = p.seq_to_configuration (seq (n, {"a"}));
    auto kab = p.seq_to_configuration (seq (n, {"a", "b"}));
    auto ka2 = p.seq_to_configuration (seq (n, {"a'"}));
    CHECK (compare (order, p, ka, kab) < 0);
    CHECK (compare (order, p, kab, ka) > 0);
    CHECK (compare (order, p, kab, kab) == 0);
    // Size first: [a'] is smaller than [ab], unlike the figure's scenario.
    CHECK (compare (order, p, ka2, kab) < 0);
    CHECK (compare (order, p, ka, ka2) < 0);

    // The injected test order realises [ab] before [a'].
    CountLexOrder injected (n, {"a'", "b'", "c", "a", "b"});
    CHECK (compare (injected, p, kab, ka2) < 0);
    CHECK (compare (injected, p, ka, kab) < 0);
}

TEST_CASE ("order keys of extensions match keys of the inserted configuration")
{
    auto d = fig2 ();
    const Net &n = d.net;
    ErvOrder order (n);
    Prefix p (n);
    auto kac = p.seq_to_configuration (seq (n, {"a", "c"}));
    Prefix q (n);
    q.seq_to_configuration (seq (n, {"a"}));
    auto exts = q.extensions_of (q.seq_to_configuration (seq (n, {"a"})));
    for (auto &ext : exts) {
        if (ext.transition != n.transition ("c"))
            continue;
        auto k1 = order.key (q, ext);
        auto k2 = order.key (p, kac);
        CHECK (k1.size == k2.size);
        CHECK (k1.parikh == k2.parikh);
        CHECK (k1.foata == k2.foata);
    }
}

TEST_CASE ("complete prefix of TRIV")
{
    auto t = triv ();
    auto r = complete_prefix (t.net);
    CHECK (r.prefix.num_events () == 1);
    CHECK (r.stats.cutoff_events == 0);
    CHECK (r.stats.non_cutoff_events == 1);
    CHECK (r.stats.conditions == 2);
}

TEST_CASE ("complete prefix of FIG2")
{
    auto d = fig2 ();
    auto r = complete_prefix (d.net);
    // Golden value under the size-first order.  Only one c event exists: the
    // second branch reaching {p1,p2} (a' b') is itself a cut-off, so no c is
    // ever appended after it.
    CHECK (labels (r.prefix) ==
           std::vector<std::string>{"a", "a'", "b*", "c", "b'*", "b", "b'*"});
    CHECK (r.stats.non_cutoff_events == 4);
    CHECK (r.stats.cutoff_events == 3);
    CHECK (prefix_markings (r.prefix).size () == 5);
    r.prefix.check_invariants ();

    auto dot_cutoffs = 0;
    for (const auto &e : r.prefix.events ())
        dot_cutoffs += e.cutoff ? 1 : 0;
    CHECK (dot_cutoffs == 3);
}

TEST_CASE ("possible_extensions")
{
    auto d = fig2 ();
    const Net &n = d.net;
    Prefix p (n);
    CHECK (possible_extensions (p, {}).empty ());
    EventId a = p.add_event (n.transition ("a"), p.initial_conditions ());
    std::set<TransitionId> ts;
    for (auto &ext : possible_extensions (p, p.event (a).postset))
        ts.insert (ext.transition);
    CHECK (ts == std::set<TransitionId>{n.transition ("b"), n.transition ("c")});
}

TEST_CASE ("complete prefixes of random nets")
{
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto rc = random_case (base_seed () + i);
        auto r = complete_prefix (rc.net);
        const Prefix &p = r.prefix;
        p.check_invariants ();

        // Completeness: prefix markings are exactly the reachable ones.
        auto reach = reachable_markings (rc.net);
        CHECK (prefix_markings (p) == std::set<Marking> (reach.begin (), reach.end ()));

        // At most one non-cut-off event per marking, and cut-offs point back
        // to an earlier event with the same mark.
        std::map<Marking, int> non_cutoff;
        std::map<Marking, EventId> first;
        for (EventId e = 0; e < p.num_events (); ++e) {
            const auto &ev = p.event (e);
            if (!ev.cutoff)
                ++non_cutoff[ev.mark];
            auto [it, fresh] = first.emplace (ev.mark, e);
            CHECK (ev.cutoff == !fresh);
        }
        for (auto &[m, k] : non_cutoff)
            CHECK (k == 1);

        // Insertion order is monotone in the adequate order.
        ErvOrder order (rc.net);
        for (EventId e = 1; e < p.num_events (); ++e)
            CHECK (compare (order, p, p.local_configuration (e - 1), p.local_configuration (e)) < 0);

        // Saturation: nothing left to extend from non-cut-off conditions.
        std::vector<ConditionId> all (p.num_conditions ());
        for (ConditionId c = 0; c < p.num_conditions (); ++c)
            all[c] = c;
        CHECK (possible_extensions (p, all).empty ());
    }
}

TEST_CASE ("adequate order is preserved by isomorphic extensions")
{
    // Pairs of events with equal marks: extending both local configurations
    // by the same transition keeps their relative order.
    for (std::uint64_t i = 0; i < 20; ++i) {
        auto rc = random_case (base_seed () + 300 + i);
        ErvOrder order (rc.net);
        auto r = complete_prefix (rc.net);
        const Prefix &p = r.prefix;
        Prefix scratch (rc.net);
        for (EventId e = 0; e < p.num_events (); ++e) {
            for (EventId f = e + 1; f < p.num_events (); ++f) {
                if (p.event (e).mark != p.event (f).mark)
                    continue;
                Sequence se = p.linearize (p.local_configuration (e));
                Sequence sf = p.linearize (p.local_configuration (f));
                Marking m = p.event (e).mark;
                for (TransitionId t = 0; t < rc.net.num_transitions (); ++t) {
                    if (!enabled (rc.net, m, t))
                        continue;
                    auto ce = se, cf = sf;
                    ce.push_back (t);
                    cf.push_back (t);
                    auto ke = scratch.seq_to_configuration (ce);
                    auto kf = scratch.seq_to_configuration (cf);
                    CHECK (compare (order, scratch, ke, kf) < 0);
                }
            }
        }
    }
}

TEST_CASE ("event cap")
{
    auto d = fig2 ();
    UnfoldOptions o;
    o.event_cap = 2;
    CHECK_THROWS_AS (complete_prefix (d.net, o), ResourceLimitError);
    Net pump = Net::build ({"p0", "p1"}, {{"t", {"p0"}, {"p0", "p1"}}}, {"p0"});
    CHECK_THROWS_AS (complete_prefix (pump), UnsafeNetError);
}
