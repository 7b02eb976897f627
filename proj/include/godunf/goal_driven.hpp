#pragma once

#include "godunf/occurrence.hpp"
#include "godunf/oracle.hpp"
#include "godunf/order.hpp"
#include "godunf/reduction.hpp"
#include "godunf/unfolder.hpp"

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace godunf {

// Which events trigger an explicit call to the reduction procedure.
struct Strategy {
    enum class Kind { Always, FirstN, LevelAtMost };

    Kind kind = Kind::Always;
    std::size_t bound = 0;

    static Strategy always () { return {Kind::Always, 0}; }
    static Strategy first (std::size_t n) { return {Kind::FirstN, n}; }
    static Strategy level_at_most (std::size_t k) { return {Kind::LevelAtMost, k}; }

    // "always", "first:N" or "level:K".
    static Strategy parse (std::string_view text);
    std::string to_string () const;

    // event_index: position in the prefix under construction;
    // depth: causal depth of the event (1 for events on initial conditions).
    bool selects (std::size_t event_index, std::uint32_t depth) const;
};

// Structural identity of conditions across rebuilt prefixes: a condition is
// <parent event key or bottom, place>, an event is <transition, preset keys>.
using KeyId = std::uint32_t;

class KeyRegistry {
  public:
    static constexpr KeyId kBottomKey = std::numeric_limits<KeyId>::max ();

    KeyId condition (KeyId parent_event, PlaceId place);
    KeyId event (TransitionId t, std::vector<KeyId> preset_keys);

    std::size_t size () const { return conditions_.size () + events_.size (); }

  private:
    std::map<std::pair<KeyId, PlaceId>, KeyId> conditions_;
    std::map<std::pair<TransitionId, std::vector<KeyId>>, KeyId> events_;
};

// Transitions that may be ignored after each condition, keyed by condition
// identity.
using DeltaMap = std::map<KeyId, TransitionSet>;

inline constexpr std::size_t kDefaultAltCap = 10'000;
inline constexpr std::size_t kDefaultIterationCap = 1'000;

// Events e' that have a later event with the same Mark([e']); these are the
// shift targets in the alternating-configuration rule.  Prefixes built by
// the unfolder insert events in increasing order, so "later" is "smaller
// in the adequate order".
class AltIndex {
  public:
    AltIndex () = default;
    explicit AltIndex (const Prefix &prefix);

    // Accounts for a freshly inserted event.
    void note (const Prefix &prefix, EventId e);

    struct Target {
        EventId event;
        std::vector<ConditionId> cut; // cut([event])
    };
    const std::vector<Target> &targets () const { return targets_; }

  private:
    std::unordered_map<Marking, std::vector<EventId>> by_mark_;
    std::vector<Target> targets_;
    std::vector<bool> is_target_;
};

// alt(base): least set containing base and closed under adding [e'] U C'
// whenever e' is a shift target whose cut meets the postset of C' and the
// union is conflict-free.  Throws ResourceLimitError past `cap` members.
std::vector<Configuration> alt (const Prefix &prefix, const AltIndex &index,
                                const Configuration &base, std::size_t cap = kDefaultAltCap);
std::vector<Configuration> alt (const Prefix &prefix, const Configuration &base,
                                std::size_t cap = kDefaultAltCap);

// Shared state of one goal-driven construction.
struct GdContext {
    const Net &net;
    const Goal &goal;
    const AdequateOrder &order;
    Strategy strategy;
    ReductionCache &reductions;
    KeyRegistry &keys;
    std::size_t alt_cap = kDefaultAltCap;
    std::size_t event_cap = kDefaultEventCap;
};

// A prefix together with the structural key of each of its conditions.
struct KeyedPrefix {
    Prefix prefix;
    std::vector<KeyId> condition_keys;

    KeyId key (ConditionId c) const { return condition_keys.at (c); }
};

// Useless(c, delta, P), shared by all postconditions c of event e:
// the union of delta over e's preset when e is not selected by the
// strategy, otherwise the intersection over C* in alt([e]) of
// Ug(Mark(C*), that union).
TransitionSet useless_of_condition (GdContext &ctx, const Prefix &prefix,
                                    const std::vector<KeyId> &condition_keys,
                                    const AltIndex &index, const DeltaMap &delta, EventId e);

// Unfolds while skipping extensions <C', t> with t in delta(c') for some c'
// in C'.  Fresh conditions missing from delta get Useless(c, delta, P).
KeyedPrefix putative_gd_prefix (GdContext &ctx, DeltaMap &delta);

// Recomputes delta against the whole putative prefix and lets each cut-off
// hand its allowances to the matching conditions of its partner.
DeltaMap post_delta (GdContext &ctx, const DeltaMap &delta, const KeyedPrefix &prefix);

struct GdOptions {
    Strategy strategy = Strategy::always ();
    const AdequateOrder *order = nullptr; // nullptr: ErvOrder
    std::size_t alt_cap = kDefaultAltCap;
    std::size_t iteration_cap = kDefaultIterationCap;
    std::size_t event_cap = kDefaultEventCap;
    bool assume_safe = false;
    std::size_t state_bound = kDefaultStateBound;
    // Observes (iteration, delta after the putative build, delta' from Post-delta).
    std::function<void (std::size_t, const DeltaMap &, const DeltaMap &)> on_iteration;
};

struct GdResult {
    KeyedPrefix prefix;
    DeltaMap delta;
    PrefixStats stats;
};

// Iterates putative prefixes until Post-delta leaves delta unchanged.
GdResult gd_prefix (const Net &net, const Goal &goal, const Reducer &reducer,
                    const GdOptions &options = {});

// The goal-driven unfolding truncated to events with |[e]| <= depth_bound:
// no cut-offs, and every event <C, t> with t in Useless of a causal
// predecessor is left out.  `useless` holds Useless(e) per event.
struct GdUnfolding {
    Prefix prefix;
    std::vector<TransitionSet> useless;
    std::size_t reducer_calls = 0;
};

GdUnfolding gd_unfold (const Net &net, const Goal &goal, const Reducer &reducer,
                       const Strategy &strategy, std::size_t depth_bound,
                       const UnfoldOptions &options = {});

// Useless(e) given Useless of every earlier event of the prefix.
TransitionSet useless_of_event (const Prefix &prefix, EventId e,
                                const std::vector<TransitionSet> &useless,
                                const Strategy &strategy, ReductionCache &reductions);

// For every marking M of a cut-off-free configuration C' of the prefix, the
// transitions h(f') of prefix events f' enabled in cut(C').
using PrefixMoves = std::unordered_map<Marking, TransitionSet>;

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

PrefixMoves prefix_moves (const Prefix &prefix, std::size_t cap = kDefaultEnumerationCap);

struct GoalConfiguration {
    Sequence linearization; // canonical
    bool minimal = false;
    std::optional<Sequence> witness;
};

// Configurations reaching the goal that can be read off the prefix: the
// goal-reaching runs of its induced marking graph that never revisit a
// marking, grouped by configuration, each classified by the oracle.
std::vector<GoalConfiguration> extract_goal_configurations (const Prefix &prefix, const Goal &goal,
                                                            std::size_t cap = kDefaultEnumerationCap,
                                                            const OracleLimits &limits = {});

} // namespace godunf
