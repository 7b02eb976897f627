#include "support.hpp"

#include "godunf/error.hpp"
#include "godunf/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace godunf;
using namespace godunf::testing;

namespace {

std::string slurp (const std::string &path)
{
    std::ifstream in (path);
    std::stringstream s;
    s << in.rdbuf ();
    return s.str ();
}

std::size_t count (const std::string &text, const std::string &needle)
{
    std::size_t n = 0;
    for (auto pos = text.find (needle); pos != std::string::npos; pos = text.find (needle, pos + 1))
        ++n;
    return n;
}

} // namespace

TEST_CASE ("parse TRIV and FIG2")
{
    auto t = parse_net (slurp (fixture_path ("triv.net")));
    CHECK (t.net.num_places () == 2);
    CHECK (t.net.num_transitions () == 1);
    CHECK (t.net.pre (0) == t.net.places_of ({"p0"}));
    CHECK (t.net.initial_marking () == t.net.places_of ({"p0"}));
    REQUIRE (t.goal);
    CHECK (t.goal->mode == GoalMode::Exact);

    auto f = fig2 ();
    CHECK (f.net.num_transitions () == 5);
    CHECK (f.net.transition_name (1) == "a'");
    CHECK (f.net.post (f.net.transition ("c")) == f.net.places_of ({"p4", "p2"}));
    REQUIRE (f.goal);
    CHECK (f.goal->places == f.net.places_of ({"p3", "p4"}));
    CHECK (f.goal->mode == GoalMode::Subset);
}

TEST_CASE ("round trip")
{
    for (const char *name : {"triv.net", "fig2.net"}) {
        auto d = load_net (fixture_path (name));
        std::string once = emit_net (d.net, d.goal);
        auto again = parse_net (once);
        CHECK (emit_net (again.net, again.goal) == once);
    }
    for (std::uint64_t i = 0; i < 30; ++i) {
        auto rc = random_case (base_seed () + i);
        std::string text = emit_net (rc.net, rc.goal);
        auto back = parse_net (text);
        CHECK (emit_net (back.net, back.goal) == text);
        CHECK (back.net.transition_specs ().size () == rc.net.num_transitions ());
    }
    CHECK (emit_net (fig2 ().net, fig2 ().goal) ==
           "places p0 p1 p2 p3 p4\n"
           "trans a : p0 -> p1 p2\n"
           "trans a' : p0 -> p1 p3\n"
           "trans b : p2 -> p3\n"
           "trans b' : p3 -> p2\n"
           "trans c : p1 p2 -> p2 p4\n"
           "initial p0\n"
           "goal subset p3 p4\n");
}

TEST_CASE ("parse errors")
{
    auto err = [] (const std::string &text) -> std::string {
        try {
            parse_net (text);
        } catch (const InputError &e) {
            return e.what ();
        }
        return "";
    };
    CHECK (err ("places p0\ntrans t : p0 -> q9\n").find ("'q9'") != std::string::npos);
    CHECK (err ("places p0\ntrans t : p0 -> q9\n").find ("line 2") != std::string::npos);
    CHECK (err ("places p0\ntrans t : -> p0\n").find ("empty preset") != std::string::npos);
    CHECK (err ("places p0 p0\n").find ("duplicate place 'p0'") != std::string::npos);
    CHECK (err ("places p0\ntrans t : p0 ->\ntrans t : p0 ->\n").find ("'t'") != std::string::npos);

    try {
        parse_net ("places p0\ntrans t p0 -> p0\n");
        FAIL ("expected a parse error");
    } catch (const ParseError &e) {
        CHECK (e.line () == 2);
        CHECK (e.column () == 9);
    }
    CHECK_THROWS_AS (parse_net ("trans t : p0 -> p0\n"), ParseError);
    CHECK_THROWS_AS (parse_net ("places p0\nfoo\n"), ParseError);
    CHECK_THROWS_AS (parse_net ("places p0\ntrans t : p0 p0\n"), ParseError);
    CHECK_THROWS_AS (parse_net ("places p0\ngoal maybe p0\n"), ParseError);
    CHECK_THROWS_AS (parse_net ("places p0\ninitial p0\ninitial p0\n"), ParseError);
    CHECK_THROWS_AS (parse_net (""), ParseError);
    // comments and blank lines are fine
    CHECK_NOTHROW (parse_net ("# hi\n\nplaces p0 # trailing\ninitial p0\n"));
}

TEST_CASE ("prefix documents")
{
    auto d = fig2 ();
    auto r = complete_prefix (d.net);
    std::string doc = emit_prefix_json (r.prefix);
    CHECK (doc == emit_prefix_json (complete_prefix (d.net).prefix));
    auto back = load_prefix_json (d.net, doc);
    CHECK (emit_prefix_json (back.prefix) == doc);
    CHECK_FALSE (back.iterations);

    ExactReducer exact;
    auto g = gd_prefix (d.net, *d.goal, exact);
    DeltaReport rep{"oracle", "always", g.stats.iterations, g.stats.reducer_calls, &g.prefix, &g.delta};
    std::string gdoc = emit_prefix_json (g.prefix.prefix, &rep);
    CHECK (gdoc.find ("\"delta\"") != std::string::npos);
    auto gb = load_prefix_json (d.net, gdoc);
    CHECK (gb.iterations == g.stats.iterations);
    CHECK (gb.reducer_calls == g.stats.reducer_calls);

    // Null gd-prefix documents equal the complete prefix's up to the delta
    // section.
    NullReducer null;
    auto gn = gd_prefix (d.net, *d.goal, null);
    auto ndoc = emit_prefix_json (gn.prefix.prefix);
    CHECK (ndoc == doc);

    CHECK_THROWS_AS (load_prefix_json (d.net, "{"), InputError);
    CHECK_THROWS_AS (load_prefix_json (d.net, "{}"), InputError);
    std::string broken = doc;
    broken.replace (broken.find ("\"transition\": \"a\""), 17, "\"transition\": \"zz\"");
    CHECK_THROWS_AS (load_prefix_json (d.net, broken), InputError);
}

TEST_CASE ("dot")
{
    auto tdoc = triv ();
    auto t = complete_prefix (tdoc.net);
    std::string dot = emit_dot (t.prefix);
    CHECK (count (dot, "shape=circle") == 2);
    CHECK (count (dot, "shape=box") == 1);
    CHECK (count (dot, " -> ") == 2);

    auto fdoc = fig2 ();
    auto f = complete_prefix (fdoc.net);
    std::string fd = emit_dot (f.prefix);
    CHECK (count (fd, "style=dashed") == f.stats.cutoff_events);
    CHECK (fd == emit_dot (complete_prefix (fdoc.net).prefix));
    CHECK (fd.find ("label=\"a'\"") != std::string::npos);
}
