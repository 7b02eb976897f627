#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace godunf {

using PlaceId = std::uint32_t;
using TransitionId = std::uint32_t;

// Sets over places/transitions of one net; always sized to that net.
using PlaceSet = boost::dynamic_bitset<>;
using TransitionSet = boost::dynamic_bitset<>;

// A marking of a safe net is the set of marked places.
using Marking = PlaceSet;

using Sequence = std::vector<TransitionId>;

struct TransitionSpec {
    std::string name;
    std::vector<std::string> pre;
    std::vector<std::string> post;
};

// A 1-safe place/transition net.  Identifiers are indices into the
// declaration order, which is the canonical order for all tie-breaking.
// Immutable once built.
class Net {
  public:
    // Validates: unique names, declared places only, non-empty presets.
    // Throws InputError naming the offending identifier.
    static Net build (std::vector<std::string> places,
                      const std::vector<TransitionSpec> &transitions,
                      const std::vector<std::string> &initial);

    std::size_t num_places () const { return place_names_.size (); }
    std::size_t num_transitions () const { return transition_names_.size (); }

    const std::string &place_name (PlaceId p) const;
    const std::string &transition_name (TransitionId t) const;

    std::optional<PlaceId> find_place (std::string_view name) const;
    std::optional<TransitionId> find_transition (std::string_view name) const;

    // Throwing lookups (InputError on unknown names).
    PlaceId place (std::string_view name) const;
    TransitionId transition (std::string_view name) const;

    const PlaceSet &pre (TransitionId t) const;
    const PlaceSet &post (TransitionId t) const;
    // Same sets as sorted index lists.
    const std::vector<PlaceId> &pre_places (TransitionId t) const;
    const std::vector<PlaceId> &post_places (TransitionId t) const;

    // Transitions having p in their preset, in canonical order.
    const std::vector<TransitionId> &consumers (PlaceId p) const;

    const Marking &initial_marking () const { return initial_; }

    PlaceSet no_places () const { return PlaceSet (num_places ()); }
    TransitionSet no_transitions () const { return TransitionSet (num_transitions ()); }
    TransitionSet all_transitions () const;

    PlaceSet places_of (const std::vector<std::string> &names) const;
    TransitionSet transitions_of (const std::vector<std::string> &names) const;

    // Declaration-equivalent description, usable to rebuild the net.
    std::vector<std::string> place_names () const { return place_names_; }
    std::vector<TransitionSpec> transition_specs () const;
    std::vector<std::string> initial_names () const;

    void check_transition (TransitionId t) const;

  private:
    Net () = default;

    std::vector<std::string> place_names_;
    std::vector<std::string> transition_names_;
    std::unordered_map<std::string, PlaceId> place_index_;
    std::unordered_map<std::string, TransitionId> transition_index_;
    std::vector<PlaceSet> pre_;
    std::vector<PlaceSet> post_;
    std::vector<std::vector<PlaceId>> pre_list_;
    std::vector<std::vector<PlaceId>> post_list_;
    std::vector<std::vector<TransitionId>> consumers_;
    Marking initial_;
};

enum class GoalMode { Exact, Subset };

// Target of a reachability question.  Exact: the marking must equal
// `places`.  Subset: `places` must all be marked, possibly with others.
struct Goal {
    PlaceSet places;
    GoalMode mode = GoalMode::Subset;
};

Goal make_goal (const Net &net, const std::vector<std::string> &places, GoalMode mode);

bool enabled (const Net &net, const Marking &m, TransitionId t);

// (m \ pre(t)) U post(t).  Throws InputError if t is not enabled.
Marking fire (const Net &net, const Marking &m, TransitionId t);

// Replays `seq` from `m`; throws InputError at the first disabled step.
Marking replay (const Net &net, const Marking &m, const Sequence &seq);

// Firing t at m keeps the net safe: no place already marked and not
// consumed by t receives a second token.
bool fire_is_safe (const Net &net, const Marking &m, TransitionId t);

bool goal_holds (const Goal &goal, const Marking &m);

struct SafetyReport {
    enum class Verdict { Safe, Unsafe, BoundExceeded };
    Verdict verdict = Verdict::Safe;
    std::size_t markings = 0;
    // For Unsafe: a firing sequence whose last step doubles a token.
    Sequence witness;
};

inline constexpr std::size_t kDefaultStateBound = 1'000'000;

SafetyReport check_safe (const Net &net, std::size_t state_bound = kDefaultStateBound);

// Throws UnsafeNetError / ResourceLimitError unless the net is verified safe.
void require_safe (const Net &net, std::size_t state_bound = kDefaultStateBound);

// Deletes `removed` transitions and their arcs.  Places, initial marking
// and the relative order of surviving transitions are unchanged.
Net restrict (const Net &net, const TransitionSet &removed);

std::string format_places (const Net &net, const PlaceSet &s);
std::string format_transitions (const Net &net, const TransitionSet &s);
std::string format_sequence (const Net &net, const Sequence &seq);

} // namespace godunf
