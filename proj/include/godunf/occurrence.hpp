#pragma once

#include "godunf/net.hpp"

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace godunf {

using ConditionId = std::uint32_t;
using EventId = std::uint32_t;

// Parent of an initial condition.
inline constexpr EventId kBottom = std::numeric_limits<EventId>::max ();

struct Condition {
    EventId parent = kBottom;
    PlaceId place = 0;
    std::vector<EventId> consumers;
};

struct Event {
    TransitionId transition = 0;
    std::vector<ConditionId> preset;  // sorted
    std::vector<ConditionId> postset; // one per place of post(transition), place order
    std::vector<EventId> local;       // local configuration [e], sorted, contains e
    std::uint32_t depth = 1;          // Foata level: 1 + max depth of parent events
    Marking mark;                     // Mark([e])
    bool cutoff = false;
};

// A set of events, kept sorted and duplicate-free.
using Configuration = std::vector<EventId>;

// A candidate event <preset, transition>.
struct Extension {
    TransitionId transition = 0;
    std::vector<ConditionId> preset; // sorted

    auto operator<=> (const Extension &) const = default;
};

// A branching process of a safe net: conditions and events with dense
// indices in creation order.  The concurrency relation between conditions
// is maintained incrementally as events are added.
//
// Holds a pointer to the net, which must outlive the prefix.
class Prefix {
  public:
    explicit Prefix (const Net &net);

    const Net &net () const { return *net_; }

    std::size_t num_conditions () const { return conditions_.size (); }
    std::size_t num_events () const { return events_.size (); }
    const Condition &condition (ConditionId c) const { return conditions_.at (c); }
    const Event &event (EventId e) const { return events_.at (e); }
    const std::vector<Condition> &conditions () const { return conditions_; }
    const std::vector<Event> &events () const { return events_; }
    const std::vector<ConditionId> &initial_conditions () const { return initial_; }

    bool co (ConditionId a, ConditionId b) const;
    // Conditions concurrent with c, sorted.
    const std::vector<ConditionId> &co_set (ConditionId c) const { return co_.at (c); }

    // a <= b in the causality order (reflexive).
    bool precedes (EventId a, EventId b) const;
    bool causally_related (EventId a, EventId b) const;
    bool in_conflict (EventId a, EventId b) const;

    // Appends the event <preset, t>.  The preset must be pairwise
    // concurrent with h-image exactly pre(t).  Throws InputError otherwise,
    // or if the event already exists.
    EventId add_event (TransitionId t, std::vector<ConditionId> preset);
    std::optional<EventId> find_event (TransitionId t, const std::vector<ConditionId> &preset) const;

    void set_cutoff (EventId e, bool cutoff = true) { events_.at (e).cutoff = cutoff; }
    std::size_t num_cutoffs () const;

    bool is_configuration (const Configuration &conf) const;
    // (C0 U C*) \ *C, sorted.  Throws InputError for non-configurations.
    std::vector<ConditionId> cut (const Configuration &conf) const;
    Marking mark (const Configuration &conf) const;

    const Configuration &local_configuration (EventId e) const { return events_.at (e).local; }

    // Every <t, coset> with coset a subset of cut(conf) whose h-image is pre(t).
    std::vector<Extension> extensions_of (const Configuration &conf) const;

    // K(seq): replays the firing sequence, adding any missing events.
    // Throws InputError if seq is not fireable.
    Configuration seq_to_configuration (const Sequence &seq);
    // Same replay without adding events; nullopt if some event is missing.
    std::optional<Configuration> find_configuration (const Sequence &seq) const;

    // Canonical linearization: repeatedly fire the enabled event with the
    // smallest transition index.
    Sequence linearize (const Configuration &conf) const;

    // Re-checks the occurrence-net axioms and the co relation from scratch.
    // Quadratic; meant for tests.  Throws std::logic_error on violation.
    void check_invariants () const;

  private:
    std::vector<ConditionId> cut_unchecked (const Configuration &conf) const;
    Marking marking_of (const std::vector<ConditionId> &conds) const;

    const Net *net_;
    std::vector<Condition> conditions_;
    std::vector<Event> events_;
    std::vector<ConditionId> initial_;
    std::vector<std::vector<ConditionId>> co_;
};

bool is_causally_closed (const Prefix &prefix, const Configuration &conf);
bool is_conflict_free (const Prefix &prefix, const Configuration &conf);
Configuration unite (const Configuration &a, const Configuration &b);

} // namespace godunf
