#pragma once

#include "godunf/goal_driven.hpp"
#include "godunf/net.hpp"
#include "godunf/occurrence.hpp"
#include "godunf/unfolder.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace godunf {

// Line-oriented net format (see docs/net-format.md):
//
//   # comment
//   places p0 p1 p2
//   trans a : p0 -> p1 p2
//   initial p0
//   goal subset p1 p2
//
// `places` comes first and exactly once; `initial` at most once; `goal`
// is optional.  Names are runs of characters other than whitespace, ':'
// and '#'; "->" separates the preset from the postset.
struct NetDocument {
    Net net;
    std::optional<Goal> goal;
};

// Syntax errors raise ParseError with a position; semantic ones (unknown
// place, empty preset, duplicate name) raise InputError naming the
// identifier.
NetDocument parse_net (std::string_view text);
NetDocument load_net (const std::string &path);

// Canonical text; parse_net(emit_net(d)) reproduces d and emit_net is
// idempotent on its own output.
std::string emit_net (const Net &net, const std::optional<Goal> &goal = std::nullopt);

GoalMode parse_goal_mode (std::string_view text);
std::string_view to_string (GoalMode mode);

// Everything needed to write the optional delta section of a prefix
// document.
struct DeltaReport {
    std::string reducer;
    std::string strategy;
    std::size_t iterations = 0;
    std::size_t reducer_calls = 0;
    const KeyedPrefix *prefix = nullptr;
    const DeltaMap *delta = nullptr;
};

// JSON prefix document: conditions, events, initial conditions, shape
// statistics, and (for goal-driven runs) the delta section.  No timing is
// recorded, so equal prefixes give byte-identical documents.
std::string emit_prefix_json (const Prefix &prefix, const DeltaReport *delta = nullptr);

struct LoadedPrefix {
    Prefix prefix;
    std::optional<std::size_t> iterations;
    std::optional<std::size_t> reducer_calls;
};

// Rebuilds a prefix of `net` from a document; checks every index and name.
LoadedPrefix load_prefix_json (const Net &net, std::string_view text);

// Graphviz: conditions as circles, events as boxes, cut-offs dashed.
std::string emit_dot (const Prefix &prefix);

} // namespace godunf
