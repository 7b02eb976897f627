#pragma once

#include "godunf/net.hpp"

#include <optional>
#include <vector>

namespace godunf {

// Brute-force reference semantics for minimal firing sequences.  Everything
// here enumerates explicitly and is meant for desk-scale nets.

struct OracleLimits {
    // Search nodes visited by minimal_sequences.
    std::size_t max_nodes = 2'000'000;
    // Sub-multisets examined by is_minimal for one sequence.
    std::size_t max_lattice = std::size_t{1} << 20;
};

struct SequenceVerdict {
    Sequence sequence;
    bool minimal = true;
    // A feasible permutation of `sequence` that visits a marking twice or
    // (Subset goals) marks the goal before its end.
    std::optional<Sequence> witness;
};

// Whether the run of seq from `from` visits some marking twice.
// Throws InputError if seq is not fireable.
bool is_cycling (const Net &net, const Marking &from, const Sequence &seq);
bool is_cycling (const Net &net, const Sequence &seq);

// A sequence reaching the goal is minimal iff no feasible reordering of its
// transition multiset is cycling (and, for Subset goals, none marks the goal
// strictly before the end).  Throws InputError if seq is not fireable or does
// not end in the goal.
SequenceVerdict is_minimal (const Net &net, const Marking &from, const Sequence &seq,
                            const Goal &goal, const OracleLimits &limits = {});
SequenceVerdict is_minimal (const Net &net, const Sequence &seq, const Goal &goal,
                            const OracleLimits &limits = {});

// All minimal firing sequences from m to the goal, in lexicographic order
// of transition indices.  Throws ResourceLimitError past the limits.
std::vector<Sequence> minimal_sequences (const Net &net, const Marking &m, const Goal &goal,
                                         const OracleLimits &limits = {});

// Transitions occurring in at least one minimal sequence from m.
TransitionSet useful_transitions (const Net &net, const Marking &m, const Goal &goal,
                                  const OracleLimits &limits = {});

// Minimal sequences from the initial marking grouped by the configuration
// they represent.
struct ConfigurationClass {
    Sequence representative; // canonical linearization
    std::vector<Sequence> sequences;
};

std::vector<ConfigurationClass> minimal_configurations (const Net &net, const Goal &goal,
                                                        const OracleLimits &limits = {});

// Every marking reachable from the initial one.  Throws ResourceLimitError
// past `bound` markings.
std::vector<Marking> reachable_markings (const Net &net, std::size_t bound = kDefaultStateBound);

} // namespace godunf
