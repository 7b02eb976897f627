#include "godunf/oracle.hpp"

#include "godunf/error.hpp"
#include "godunf/occurrence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace godunf {

bool is_cycling (const Net &net, const Marking &from, const Sequence &seq)
{
    std::unordered_set<Marking> seen{from};
    Marking m = from;
    bool cycling = false;
    for (auto t : seq) {
        m = fire (net, m, t);
        if (!seen.insert (m).second)
            cycling = true; // keep replaying so infeasible sequences still throw
    }
    return cycling;
}

bool is_cycling (const Net &net, const Sequence &seq)
{
    return is_cycling (net, net.initial_marking (), seq);
}

namespace {

// The lattice of sub-multisets of a sequence's transitions.  A node is a
// mixed-radix number: digit i counts occurrences of kinds[i].  Edges add
// one enabled occurrence; since the net is safe, the marking at a node does
// not depend on the path taken to it.
class PermutationLattice {
  public:
    PermutationLattice (const Net &net, const Marking &from, const Sequence &seq,
                        std::size_t max_nodes)
        : net_ (net)
    {
        std::map<TransitionId, std::size_t> counts;
        for (auto t : seq)
            ++counts[t];
        std::size_t total = 1;
        for (auto [t, n] : counts) {
            kinds_.push_back (t);
            counts_.push_back (n);
            strides_.push_back (total);
            if (total > max_nodes / (n + 1))
                throw ResourceLimitError ("permutation lattice exceeds " +
                                          std::to_string (max_nodes) + " nodes");
            total *= n + 1;
        }
        full_ = total - 1;

        // Forward exploration from the empty multiset.
        marking_.emplace (0, from);
        parent_.emplace (0, std::pair<std::size_t, TransitionId>{0, 0});
        std::deque<std::size_t> queue{0};
        while (!queue.empty ()) {
            auto x = queue.front ();
            queue.pop_front ();
            order_.push_back (x);
            for (auto [y, t] : successors (x)) {
                if (marking_.count (y) != 0)
                    continue;
                marking_.emplace (y, fire (net_, marking_.at (x), t));
                parent_.emplace (y, std::pair{x, t});
                queue.push_back (y);
            }
        }

        // Nodes that can still be completed to the full multiset.  BFS order
        // is by increasing multiset size, so reverse it.
        for (auto it = order_.rbegin (); it != order_.rend (); ++it) {
            auto x = *it;
            bool ok = x == full_;
            for (auto [y, t] : successors (x))
                ok = ok || useful_.count (y) != 0;
            if (ok)
                useful_.insert (x);
        }
    }

    bool feasible () const { return useful_.count (0) != 0; }
    std::size_t full () const { return full_; }
    const std::vector<std::size_t> &bfs_order () const { return order_; }
    bool useful (std::size_t x) const { return useful_.count (x) != 0; }
    const Marking &marking (std::size_t x) const { return marking_.at (x); }

    std::vector<std::pair<std::size_t, TransitionId>> successors (std::size_t x) const
    {
        std::vector<std::pair<std::size_t, TransitionId>> out;
        const Marking &m = marking_.at (x);
        for (std::size_t i = 0; i < kinds_.size (); ++i) {
            if ((x / strides_[i]) % (counts_[i] + 1) == counts_[i])
                continue;
            if (enabled (net_, m, kinds_[i]))
                out.emplace_back (x + strides_[i], kinds_[i]);
        }
        return out;
    }

    // Forward path from the empty multiset to x.
    Sequence path_from_root (std::size_t x) const
    {
        Sequence seq;
        for (; x != 0; x = parent_.at (x).first)
            seq.push_back (parent_.at (x).second);
        std::reverse (seq.begin (), seq.end ());
        return seq;
    }

    // Some path from x to the full multiset through useful nodes.
    Sequence path_to_full (std::size_t x) const
    {
        Sequence seq;
        while (x != full_) {
            for (auto [y, t] : successors (x)) {
                if (useful (y)) {
                    seq.push_back (t);
                    x = y;
                    break;
                }
            }
        }
        return seq;
    }

    // Path x -> y through useful nodes, if any.
    std::optional<Sequence> path_between (std::size_t x, std::size_t y) const
    {
        std::unordered_map<std::size_t, std::pair<std::size_t, TransitionId>> from{{x, {x, 0}}};
        std::deque<std::size_t> queue{x};
        while (!queue.empty ()) {
            auto u = queue.front ();
            queue.pop_front ();
            if (u == y) {
                Sequence seq;
                for (; u != x; u = from.at (u).first)
                    seq.push_back (from.at (u).second);
                std::reverse (seq.begin (), seq.end ());
                return seq;
            }
            for (auto [v, t] : successors (u)) {
                if (!useful (v) || from.count (v) != 0)
                    continue;
                from.emplace (v, std::pair{u, t});
                queue.push_back (v);
            }
        }
        return std::nullopt;
    }

  private:
    const Net &net_;
    std::vector<TransitionId> kinds_;
    std::vector<std::size_t> counts_;
    std::vector<std::size_t> strides_;
    std::size_t full_ = 0;
    std::unordered_map<std::size_t, Marking> marking_;
    std::unordered_map<std::size_t, std::pair<std::size_t, TransitionId>> parent_;
    std::vector<std::size_t> order_;
    std::unordered_set<std::size_t> useful_;
};

Sequence concat (Sequence a, const Sequence &b)
{
    a.insert (a.end (), b.begin (), b.end ());
    return a;
}

} // namespace

SequenceVerdict is_minimal (const Net &net, const Marking &from, const Sequence &seq,
                            const Goal &goal, const OracleLimits &limits)
{
    if (!goal_holds (goal, replay (net, from, seq)))
        throw InputError ("sequence does not reach the goal");

    SequenceVerdict verdict{seq, true, std::nullopt};
    PermutationLattice lattice (net, from, seq, limits.max_lattice);

    // Marking the goal strictly before the end.
    if (goal.mode == GoalMode::Subset) {
        for (auto x : lattice.bfs_order ()) {
            if (x != lattice.full () && lattice.useful (x) && goal_holds (goal, lattice.marking (x))) {
                verdict.minimal = false;
                verdict.witness = concat (lattice.path_from_root (x), lattice.path_to_full (x));
                return verdict;
            }
        }
    }

    // Two nodes on one full path with equal markings.
    std::unordered_map<Marking, std::vector<std::size_t>> by_marking;
    for (auto x : lattice.bfs_order ())
        if (lattice.useful (x))
            by_marking[lattice.marking (x)].push_back (x);
    for (auto x : lattice.bfs_order ()) {
        if (!lattice.useful (x))
            continue;
        for (auto y : by_marking.at (lattice.marking (x))) {
            if (y == x)
                continue;
            if (auto mid = lattice.path_between (x, y)) {
                verdict.minimal = false;
                verdict.witness = concat (concat (lattice.path_from_root (x), *mid),
                                          lattice.path_to_full (y));
                return verdict;
            }
        }
    }
    return verdict;
}

SequenceVerdict is_minimal (const Net &net, const Sequence &seq, const Goal &goal,
                            const OracleLimits &limits)
{
    return is_minimal (net, net.initial_marking (), seq, goal, limits);
}

std::vector<Sequence> minimal_sequences (const Net &net, const Marking &m, const Goal &goal,
                                         const OracleLimits &limits)
{
    // Minimal sequences never revisit a marking (the identity permutation
    // would be cycling) and never pass through the goal, so the search stops
    // at both.  Survivors are then filtered; minimality only depends on the
    // multiset of transitions.
    std::vector<Sequence> reaching;
    std::unordered_set<Marking> on_path{m};
    Sequence seq;
    std::size_t nodes = 0;

    auto dfs = [&] (auto &&self, const Marking &cur) -> void {
        if (++nodes > limits.max_nodes)
            throw ResourceLimitError ("minimal-sequence search exceeded " +
                                      std::to_string (limits.max_nodes) + " nodes");
        if (goal_holds (goal, cur)) {
            reaching.push_back (seq);
            return;
        }
        for (TransitionId t = 0; t < net.num_transitions (); ++t) {
            if (!enabled (net, cur, t))
                continue;
            if (!fire_is_safe (net, cur, t))
                throw UnsafeNetError ("net is not safe");
            Marking next = fire (net, cur, t);
            if (!on_path.insert (next).second)
                continue;
            seq.push_back (t);
            self (self, next);
            seq.pop_back ();
            on_path.erase (next);
        }
    };
    dfs (dfs, m);

    std::map<Sequence, bool> verdict_by_multiset;
    std::vector<Sequence> out;
    for (auto &s : reaching) {
        Sequence key = s;
        std::sort (key.begin (), key.end ());
        auto it = verdict_by_multiset.find (key);
        if (it == verdict_by_multiset.end ())
            it = verdict_by_multiset.emplace (key, is_minimal (net, m, s, goal, limits).minimal).first;
        if (it->second)
            out.push_back (std::move (s));
    }
    return out;
}

TransitionSet useful_transitions (const Net &net, const Marking &m, const Goal &goal,
                                  const OracleLimits &limits)
{
    TransitionSet useful = net.no_transitions ();
    for (const auto &s : minimal_sequences (net, m, goal, limits))
        for (auto t : s)
            useful.set (t);
    return useful;
}

std::vector<ConfigurationClass> minimal_configurations (const Net &net, const Goal &goal,
                                                        const OracleLimits &limits)
{
    Prefix scratch (net);
    std::map<Configuration, std::vector<Sequence>> groups;
    for (auto &s : minimal_sequences (net, net.initial_marking (), goal, limits))
        groups[scratch.seq_to_configuration (s)].push_back (std::move (s));

    std::vector<ConfigurationClass> out;
    for (auto &[conf, seqs] : groups)
        out.push_back ({scratch.linearize (conf), std::move (seqs)});
    std::sort (out.begin (), out.end (), [] (const auto &a, const auto &b) {
        if (a.representative.size () != b.representative.size ())
            return a.representative.size () < b.representative.size ();
        return a.representative < b.representative;
    });
    return out;
}

std::vector<Marking> reachable_markings (const Net &net, std::size_t bound)
{
    std::unordered_set<Marking> seen{net.initial_marking ()};
    std::vector<Marking> out{net.initial_marking ()};
    for (std::size_t i = 0; i < out.size (); ++i) {
        for (TransitionId t = 0; t < net.num_transitions (); ++t) {
            if (!enabled (net, out[i], t))
                continue;
            Marking next = fire (net, out[i], t);
            if (seen.insert (next).second) {
                if (out.size () >= bound)
                    throw ResourceLimitError ("more than " + std::to_string (bound) +
                                              " reachable markings");
                out.push_back (std::move (next));
            }
        }
    }
    return out;
}

} // namespace godunf
