#include "support.hpp"

#include "godunf/error.hpp"
#include "godunf/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace godunf::testing {

std::string fixture_path (const std::string &name)
{
    return std::string (GODUNF_NETS_DIR) + "/" + name;
}

NetDocument fig2 () { return load_net (fixture_path ("fig2.net")); }
NetDocument triv () { return load_net (fixture_path ("triv.net")); }

Sequence seq (const Net &net, const std::vector<std::string> &names)
{
    Sequence out;
    for (const auto &n : names)
        out.push_back (net.transition (n));
    return out;
}

Marking marking (const Net &net, const std::vector<std::string> &names)
{
    return net.places_of (names);
}

std::uint64_t base_seed ()
{
    if (const char *v = std::getenv ("GODUNF_SEED"); v != nullptr && *v != '\0')
        return std::strtoull (v, nullptr, 10);
    return kDefaultSeed;
}

RandomCase random_case (std::uint64_t seed)
{
    std::mt19937_64 rng (seed);
    auto pick = [&] (std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t> (lo, hi) (rng);
    };

    std::size_t ncomp = pick (2, 3);
    std::vector<std::vector<std::string>> comps;
    std::vector<std::string> places;
    std::vector<std::string> initial;
    for (std::size_t i = 0; i < ncomp; ++i) {
        std::size_t left = 8 - places.size () - 2 * (ncomp - i - 1);
        std::size_t size = pick (2, std::min<std::size_t> (3, left));
        comps.emplace_back ();
        for (std::size_t j = 0; j < size; ++j) {
            comps.back ().push_back ("c" + std::to_string (i) + "_" + std::to_string (j));
            places.push_back (comps.back ().back ());
        }
        initial.push_back (comps.back ()[pick (0, size - 1)]);
    }

    // Places each component's token can already reach; sources are drawn
    // mostly from these so that few transitions are dead.
    std::vector<std::vector<bool>> reached (ncomp);
    for (std::size_t i = 0; i < ncomp; ++i) {
        reached[i].assign (comps[i].size (), false);
        for (std::size_t j = 0; j < comps[i].size (); ++j)
            if (std::find (initial.begin (), initial.end (), comps[i][j]) != initial.end ())
                reached[i][j] = true;
    }
    auto pick_source = [&] (std::size_t i) {
        if (pick (0, 3) == 0)
            return pick (0, comps[i].size () - 1);
        std::vector<std::size_t> cands;
        for (std::size_t j = 0; j < comps[i].size (); ++j)
            if (reached[i][j])
                cands.push_back (j);
        return cands[pick (0, cands.size () - 1)];
    };

    std::vector<TransitionSpec> specs;
    std::size_t ntrans = pick (4, 10);
    for (std::size_t k = 0; k < ntrans; ++k) {
        // Each transition moves the token of every component it touches;
        // staying put is a read arc.
        std::size_t width = std::discrete_distribution<std::size_t> ({0, 5, 4, 1}) (rng);
        width = std::min (width, ncomp);
        std::vector<std::size_t> all (ncomp);
        for (std::size_t i = 0; i < ncomp; ++i)
            all[i] = i;
        std::shuffle (all.begin (), all.end (), rng);
        std::vector<std::size_t> touched (all.begin (), all.begin () + static_cast<std::ptrdiff_t> (width));
        std::sort (touched.begin (), touched.end ());

        TransitionSpec spec{"t" + std::to_string (k), {}, {}};
        std::vector<std::pair<std::size_t, std::size_t>> moves;
        for (auto i : touched) {
            std::size_t from = pick_source (i);
            std::size_t to = pick (0, comps[i].size () - 1);
            moves.emplace_back (from, to);
        }
        if (std::all_of (moves.begin (), moves.end (), [] (auto &m) { return m.first == m.second; })) {
            auto &m = moves.front ();
            m.second = (m.first + 1) % comps[touched.front ()].size ();
        }
        for (std::size_t x = 0; x < touched.size (); ++x) {
            const auto &c = comps[touched[x]];
            spec.pre.push_back (c[moves[x].first]);
            spec.post.push_back (c[moves[x].second]);
            reached[touched[x]][moves[x].second] = true;
        }
        specs.push_back (std::move (spec));
    }

    Net net = Net::build (places, std::move (specs), initial);

    // Goal: usually 1-2 places of some reachable marking, otherwise 1-2
    // arbitrary places of distinct components.
    std::vector<std::string> goal_places;
    std::size_t gsize = pick (1, 2);
    std::vector<std::size_t> order (ncomp);
    for (std::size_t i = 0; i < ncomp; ++i)
        order[i] = i;
    std::shuffle (order.begin (), order.end (), rng);
    if (pick (0, 4) != 0) {
        auto reach = reachable_markings (net);
        const Marking &m = reach[pick (0, reach.size () - 1)];
        for (std::size_t i = 0; i < gsize; ++i)
            for (const auto &pl : comps[order[i]])
                if (m.test (net.place (pl)))
                    goal_places.push_back (pl);
    } else {
        for (std::size_t i = 0; i < gsize; ++i) {
            const auto &c = comps[order[i]];
            goal_places.push_back (c[pick (0, c.size () - 1)]);
        }
    }
    Goal goal = make_goal (net, goal_places, GoalMode::Subset);
    return {std::move (net), std::move (goal)};
}

namespace {

std::vector<std::uint32_t> ranks_from (const Net &net, const std::vector<std::string> &ranking)
{
    if (ranking.size () != net.num_transitions ())
        throw InputError ("ranking must list every transition once");
    std::vector<std::uint32_t> rank (net.num_transitions (), 0);
    std::vector<bool> seen (net.num_transitions (), false);
    for (std::uint32_t i = 0; i < ranking.size (); ++i) {
        auto t = net.transition (ranking[i]);
        if (seen[t])
            throw InputError ("ranking lists '" + ranking[i] + "' twice");
        seen[t] = true;
        rank[t] = i;
    }
    return rank;
}

std::vector<std::size_t> counts (const std::vector<std::uint32_t> &ranks, std::size_t n)
{
    std::vector<std::size_t> c (n, 0);
    for (auto r : ranks)
        ++c[r];
    return c;
}

} // namespace

CountLexOrder::CountLexOrder (const Net &net, const std::vector<std::string> &ranking)
    : AdequateOrder (ranks_from (net, ranking)), n_ (net.num_transitions ())
{
}

std::weak_ordering CountLexOrder::compare (const OrderKey &a, const OrderKey &b) const
{
    auto cmp = [&] (const std::vector<std::uint32_t> &x, const std::vector<std::uint32_t> &y) {
        auto cx = counts (x, n_);
        auto cy = counts (y, n_);
        return std::lexicographical_compare_three_way (cx.begin (), cx.end (), cy.begin (),
                                                       cy.end ());
    };
    if (auto c = cmp (a.parikh, b.parikh); c != 0)
        return c;
    for (std::size_t i = 0; i < std::min (a.foata.size (), b.foata.size ()); ++i)
        if (auto c = cmp (a.foata[i], b.foata[i]); c != 0)
            return c;
    return a.foata.size () <=> b.foata.size ();
}

} // namespace godunf::testing
