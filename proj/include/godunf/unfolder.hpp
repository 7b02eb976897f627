#pragma once

#include "godunf/occurrence.hpp"
#include "godunf/order.hpp"

#include <functional>
#include <vector>

namespace godunf {

struct PrefixStats {
    std::size_t non_cutoff_events = 0;
    std::size_t cutoff_events = 0;
    std::size_t conditions = 0;
    std::size_t reducer_calls = 0;
    std::size_t iterations = 0;
    double wall_seconds = 0.0;
};

// Event/condition counts of a prefix; the other fields stay zero.
PrefixStats shape_stats (const Prefix &prefix);

inline constexpr std::size_t kDefaultEventCap = 1'000'000;

// New extensions <preset, t> whose preset meets `dirty`: pairwise
// concurrent, h-image pre(t), no condition produced by a cut-off, and not
// already an event of the prefix.  Sorted.
std::vector<Extension> possible_extensions (const Prefix &prefix,
                                            const std::vector<ConditionId> &dirty);

// Customisation points of the generic construction loop.
struct UnfoldHooks {
    // Extensions rejected here are never queued.  Evaluated once, when the
    // extension is discovered.
    std::function<bool (const Prefix &, const Extension &)> admit;
    // Called right after an event is inserted and its cut-off flag set,
    // before its extensions are searched.
    std::function<void (Prefix &, EventId)> inserted;
    bool detect_cutoffs = true;
    // Bound on |[e]|; 0 means unbounded.
    std::size_t max_local_size = 0;
    std::size_t event_cap = kDefaultEventCap;
};

// Repeatedly inserts the order-minimal queued extension.  With cut-off
// detection on, an event whose Mark([e]) equals that of an earlier event is
// flagged and never extended.  Throws ResourceLimitError past event_cap.
Prefix unfold (const Net &net, const AdequateOrder &order, const UnfoldHooks &hooks);

struct UnfoldOptions {
    const AdequateOrder *order = nullptr; // nullptr: ErvOrder over the net
    bool assume_safe = false;
    std::size_t state_bound = kDefaultStateBound;
    std::size_t event_cap = kDefaultEventCap;
};

struct UnfoldResult {
    Prefix prefix;
    PrefixStats stats;
};

// The finite complete prefix.  Verifies safety first unless assume_safe.
UnfoldResult complete_prefix (const Net &net, const UnfoldOptions &options = {});

} // namespace godunf
