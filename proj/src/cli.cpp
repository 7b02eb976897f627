#include "godunf/cli.hpp"

#include "godunf/error.hpp"
#include "godunf/goal_driven.hpp"
#include "godunf/io.hpp"
#include "godunf/oracle.hpp"
#include "godunf/reduction.hpp"
#include "godunf/unfolder.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace godunf {

namespace {

struct Options {
    std::string net_path;
    std::string prefix_path;
    std::string goal;
    std::string goal_mode;
    std::string reducer = "null";
    std::string strategy = "always";
    std::string out_path;
    std::string dot_path;
    bool assume_safe = false;
    std::size_t state_bound = kDefaultStateBound;
};

std::vector<std::string> split_commas (const std::string &text)
{
    std::vector<std::string> out;
    std::stringstream in (text);
    std::string item;
    while (std::getline (in, item, ','))
        if (!item.empty ())
            out.push_back (item);
    return out;
}

// --goal overrides the document's goal line; --goal-mode applies to either.
Goal resolve_goal (const NetDocument &doc, const Options &opt)
{
    if (opt.goal.empty ()) {
        if (!doc.goal)
            throw InputError ("no goal: pass --goal or add a 'goal' line to the net");
        Goal g = *doc.goal;
        if (!opt.goal_mode.empty ())
            g.mode = parse_goal_mode (opt.goal_mode);
        return g;
    }
    GoalMode mode = opt.goal_mode.empty () ? GoalMode::Subset : parse_goal_mode (opt.goal_mode);
    return make_goal (doc.net, split_commas (opt.goal), mode);
}

std::size_t alt_cap_from_env ()
{
    const char *v = std::getenv ("GODUNF_ALT_CAP");
    if (v == nullptr || *v == '\0')
        return kDefaultAltCap;
    char *end = nullptr;
    unsigned long long n = std::strtoull (v, &end, 10);
    if (*end != '\0' || n == 0)
        throw InputError (std::string ("GODUNF_ALT_CAP must be a positive integer, got '") + v + "'");
    return static_cast<std::size_t> (n);
}

void write_file (const std::string &path, const std::string &text)
{
    std::ofstream f (path);
    if (!f)
        throw InputError ("cannot write '" + path + "'");
    f << text;
}

void print_stats (std::ostream &out, const PrefixStats &s, bool with_time = true)
{
    out << "non-cutoff events: " << s.non_cutoff_events << "\n"
        << "cut-off events:    " << s.cutoff_events << "\n"
        << "conditions:        " << s.conditions << "\n"
        << "reducer calls:     " << s.reducer_calls << "\n"
        << "iterations:        " << s.iterations << "\n";
    if (with_time)
        out << "wall time:         " << std::fixed << std::setprecision (3) << s.wall_seconds
            << " s\n";
}

int cmd_check_safe (const Options &opt, std::ostream &out)
{
    auto doc = load_net (opt.net_path);
    auto report = check_safe (doc.net, opt.state_bound);
    switch (report.verdict) {
    case SafetyReport::Verdict::Safe:
        out << "safe (" << report.markings << " reachable markings)\n";
        return kExitOk;
    case SafetyReport::Verdict::Unsafe:
        out << "unsafe: " << format_sequence (doc.net, report.witness) << "\n";
        return kExitInput;
    case SafetyReport::Verdict::BoundExceeded:
        out << "unknown: more than " << opt.state_bound << " reachable markings\n";
        return kExitResource;
    }
    return kExitInput;
}

int cmd_unfold (const Options &opt, std::ostream &out)
{
    auto doc = load_net (opt.net_path);
    UnfoldOptions uo;
    uo.assume_safe = opt.assume_safe;
    uo.state_bound = opt.state_bound;
    auto result = complete_prefix (doc.net, uo);
    if (!opt.out_path.empty ())
        write_file (opt.out_path, emit_prefix_json (result.prefix));
    if (!opt.dot_path.empty ())
        write_file (opt.dot_path, emit_dot (result.prefix));
    print_stats (out, result.stats);
    return kExitOk;
}

GdResult run_gd (const NetDocument &doc, const Goal &goal, const Options &opt)
{
    auto reducer = make_reducer (parse_reducer_kind (opt.reducer));
    GdOptions go;
    go.strategy = Strategy::parse (opt.strategy);
    go.alt_cap = alt_cap_from_env ();
    go.assume_safe = opt.assume_safe;
    go.state_bound = opt.state_bound;
    return gd_prefix (doc.net, goal, *reducer, go);
}

int cmd_gd_unfold (const Options &opt, std::ostream &out)
{
    auto doc = load_net (opt.net_path);
    Goal goal = resolve_goal (doc, opt);
    auto result = run_gd (doc, goal, opt);
    if (!opt.out_path.empty ()) {
        DeltaReport report{opt.reducer,
                           Strategy::parse (opt.strategy).to_string (),
                           result.stats.iterations,
                           result.stats.reducer_calls,
                           &result.prefix,
                           &result.delta};
        write_file (opt.out_path, emit_prefix_json (result.prefix.prefix, &report));
    }
    if (!opt.dot_path.empty ())
        write_file (opt.dot_path, emit_dot (result.prefix.prefix));
    print_stats (out, result.stats);
    return kExitOk;
}

int cmd_minimal_configs (const Options &opt, std::ostream &out)
{
    auto doc = load_net (opt.net_path);
    Goal goal = resolve_goal (doc, opt);
    auto result = run_gd (doc, goal, opt);
    auto configs = extract_goal_configurations (result.prefix.prefix, goal);
    for (const auto &c : configs) {
        out << "K(" << format_sequence (doc.net, c.linearization) << ") "
            << (c.minimal ? "minimal" : "non-minimal");
        if (c.witness)
            out << " (witness: " << format_sequence (doc.net, *c.witness) << ")";
        out << "\n";
    }
    return configs.empty () ? kExitUnreachable : kExitOk;
}

int cmd_oracle (const Options &opt, std::ostream &out)
{
    auto doc = load_net (opt.net_path);
    Goal goal = resolve_goal (doc, opt);
    if (!opt.assume_safe)
        require_safe (doc.net, opt.state_bound);
    auto seqs = minimal_sequences (doc.net, doc.net.initial_marking (), goal);
    for (const auto &s : seqs)
        out << format_sequence (doc.net, s) << "\n";
    return seqs.empty () ? kExitUnreachable : kExitOk;
}

int cmd_stats (const Options &opt, std::ostream &out)
{
    auto doc = load_net (opt.net_path);
    std::ifstream in (opt.prefix_path);
    if (!in)
        throw InputError ("cannot read '" + opt.prefix_path + "'");
    std::stringstream buf;
    buf << in.rdbuf ();
    auto loaded = load_prefix_json (doc.net, buf.str ());
    PrefixStats s = shape_stats (loaded.prefix);
    s.iterations = loaded.iterations.value_or (1);
    s.reducer_calls = loaded.reducer_calls.value_or (0);
    print_stats (out, s, false);
    out << "wall time:         n/a (not recorded in prefix documents)\n";
    return kExitOk;
}

} // namespace

int run_cli (const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Complete and goal-driven unfolding prefixes of safe Petri nets", "godunf"};
    app.require_subcommand (1);
    Options opt;

    auto net_arg = [&] (CLI::App *sub) {
        sub->add_option ("net", opt.net_path, "net file")->required ();
        sub->add_flag ("--assume-safe", opt.assume_safe, "skip the safety check");
        sub->add_option ("--state-bound", opt.state_bound, "state bound of the safety check");
    };
    auto goal_args = [&] (CLI::App *sub) {
        sub->add_option ("--goal", opt.goal, "comma-separated goal places");
        sub->add_option ("--goal-mode", opt.goal_mode, "exact|subset");
    };
    auto gd_args = [&] (CLI::App *sub) {
        sub->add_option ("--reducer", opt.reducer, "null|flow|oracle")->capture_default_str ();
        sub->add_option ("--strategy", opt.strategy, "always|first:N|level:K")->capture_default_str ();
    };
    auto out_args = [&] (CLI::App *sub) {
        sub->add_option ("--out", opt.out_path, "write the prefix document (JSON)");
        sub->add_option ("--dot", opt.dot_path, "write a Graphviz rendering");
    };

    auto *check = app.add_subcommand ("check-safe", "verify that the net is 1-safe");
    net_arg (check);
    auto *unf = app.add_subcommand ("unfold", "build the complete finite prefix");
    net_arg (unf);
    out_args (unf);
    auto *gd = app.add_subcommand ("gd-unfold", "build the goal-driven prefix");
    net_arg (gd);
    goal_args (gd);
    gd_args (gd);
    out_args (gd);
    auto *mc = app.add_subcommand ("minimal-configs",
                                   "list goal configurations of the goal-driven prefix");
    net_arg (mc);
    goal_args (mc);
    gd_args (mc);
    auto *orc = app.add_subcommand ("oracle", "brute-force minimal firing sequences");
    net_arg (orc);
    goal_args (orc);
    auto *st = app.add_subcommand ("stats", "statistics of a saved prefix document");
    st->add_option ("net", opt.net_path, "net file")->required ();
    st->add_option ("prefix", opt.prefix_path, "prefix document")->required ();

    try {
        std::vector<std::string> reversed (args.rbegin (), args.rend ());
        app.parse (reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit (e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*check)
            return cmd_check_safe (opt, out);
        if (*unf)
            return cmd_unfold (opt, out);
        if (*gd)
            return cmd_gd_unfold (opt, out);
        if (*mc)
            return cmd_minimal_configs (opt, out);
        if (*orc)
            return cmd_oracle (opt, out);
        if (*st)
            return cmd_stats (opt, out);
    } catch (const ResourceLimitError &e) {
        err << "godunf: resource limit: " << e.what () << "\n";
        return kExitResource;
    } catch (const Error &e) {
        err << "godunf: " << e.what () << "\n";
        return kExitInput;
    }
    return kExitInput;
}

int run_cli (int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back (argv[i]);
    return run_cli (args, out, err);
}

} // namespace godunf
