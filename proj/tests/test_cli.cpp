#include "support.hpp"

#include "godunf/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace godunf;
using namespace godunf::testing;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli (std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli (args, out, err);
    return {code, out.str (), err.str ()};
}

std::string slurp (const std::filesystem::path &p)
{
    std::ifstream in (p);
    std::stringstream s;
    s << in.rdbuf ();
    return s.str ();
}

std::filesystem::path temp_dir ()
{
    auto dir = std::filesystem::temp_directory_path () / "godunf_cli_test";
    std::filesystem::create_directories (dir);
    return dir;
}

} // namespace

TEST_CASE ("check-safe")
{
    auto r = cli ({"check-safe", fixture_path ("fig2.net")});
    CHECK (r.code == kExitOk);
    CHECK (r.out == "safe (5 reachable markings)\n");

    auto pump = temp_dir () / "pump.net";
    std::ofstream (pump) << "places p0 p1\ntrans t : p0 -> p0 p1\ninitial p0\n";
    auto u = cli ({"check-safe", pump.string ()});
    CHECK (u.code == kExitInput);
    CHECK (u.out == "unsafe: t t\n");
    CHECK (cli ({"unfold", pump.string ()}).code == kExitInput);
    CHECK (cli ({"check-safe", fixture_path ("fig2.net"), "--state-bound", "2"}).code ==
           kExitResource);
}

TEST_CASE ("unfold and gd-unfold documents")
{
    auto dir = temp_dir ();
    auto r = cli ({"unfold", fixture_path ("fig2.net"), "--out", (dir / "u.json").string (), "--dot",
                   (dir / "u.dot").string ()});
    CHECK (r.code == kExitOk);
    CHECK (r.out.find ("non-cutoff events: 4") != std::string::npos);
    CHECK (r.out.find ("cut-off events:    3") != std::string::npos);
    CHECK (r.out.find ("wall time:") != std::string::npos);
    CHECK (slurp (dir / "u.dot").find ("digraph") == 0);

    auto g = cli ({"gd-unfold", fixture_path ("fig2.net"), "--goal", "p3,p4", "--goal-mode", "subset",
                   "--reducer", "null", "--strategy", "always", "--out", (dir / "g.json").string ()});
    CHECK (g.code == kExitOk);
    // Identical modulo the delta section.
    auto u = nlohmann::json::parse (slurp (dir / "u.json"));
    auto gj = nlohmann::json::parse (slurp (dir / "g.json"));
    REQUIRE (gj.contains ("delta"));
    gj.erase ("delta");
    CHECK (u.dump (2) == gj.dump (2));
    CHECK (slurp (dir / "u.json") ==
           [&] {
               auto text = slurp (dir / "g.json");
               auto full = nlohmann::ordered_json::parse (text);
               full.erase ("delta");
               return full.dump (2) + "\n";
           }());

    auto e = cli ({"gd-unfold", fixture_path ("fig2.net"), "--goal", "p3,p4", "--goal-mode", "subset",
                   "--reducer", "oracle", "--strategy", "always", "--out", (dir / "e.json").string ()});
    CHECK (e.code == kExitOk);
    CHECK (e.out.find ("iterations:        2") != std::string::npos);

    auto s = cli ({"stats", fixture_path ("fig2.net"), (dir / "e.json").string ()});
    CHECK (s.code == kExitOk);
    CHECK (s.out.find ("non-cutoff events: 4") != std::string::npos);
    CHECK (s.out.find ("cut-off events:    2") != std::string::npos);
    CHECK (s.out.find ("iterations:        2") != std::string::npos);
}

TEST_CASE ("minimal-configs and oracle")
{
    auto r = cli ({"minimal-configs", fixture_path ("fig2.net"), "--goal", "p3,p4", "--goal-mode",
                   "subset", "--reducer", "oracle", "--strategy", "always"});
    CHECK (r.code == kExitOk);
    CHECK (r.out == "K(a c b) minimal\nK(a' b' c b) minimal\n");

    auto t = cli ({"minimal-configs", fixture_path ("triv.net"), "--goal", "p0", "--goal-mode", "subset"});
    CHECK (t.code == kExitOk);
    CHECK (t.out == "K(<empty>) minimal\n");

    // Goal from the document.
    auto d = cli ({"minimal-configs", fixture_path ("fig2.net"), "--reducer", "flow"});
    CHECK (d.code == kExitOk);
    CHECK (d.out == r.out);

    auto un = cli ({"minimal-configs", fixture_path ("fig2.net"), "--goal", "p0,p4"});
    CHECK (un.code == kExitUnreachable);
    CHECK (un.out.empty ());

    auto o = cli ({"oracle", fixture_path ("fig2.net")});
    CHECK (o.code == kExitOk);
    CHECK (o.out == "a c b\na' b' c b\n");
    CHECK (cli ({"oracle", fixture_path ("fig2.net"), "--goal", "p0,p4"}).code == kExitUnreachable);
}

TEST_CASE ("errors map to exit codes")
{
    CHECK (cli ({}).code == kExitInput);
    CHECK (cli ({"frobnicate"}).code == kExitInput);
    CHECK (cli ({"unfold", "/nonexistent/x.net"}).code == kExitInput);
    CHECK (cli ({"gd-unfold", fixture_path ("fig2.net"), "--reducer", "gored"}).code == kExitInput);
    CHECK (cli ({"gd-unfold", fixture_path ("fig2.net"), "--strategy", "first:x"}).code == kExitInput);
    CHECK (cli ({"gd-unfold", fixture_path ("fig2.net"), "--goal", "p9"}).code == kExitInput);
    CHECK (cli ({"gd-unfold", fixture_path ("triv.net")}).code == kExitOk); // exact goal from file
    auto flow_exact = cli ({"gd-unfold", fixture_path ("triv.net"), "--reducer", "flow"});
    CHECK (flow_exact.code == kExitInput);
    CHECK (flow_exact.err.find ("subset") != std::string::npos);
    CHECK (cli ({"--help"}).code == kExitOk);

#ifndef _WIN32
    // Two interchangeable y1 -> y3 moves after v: alt([v]) has two members.
    auto twin = temp_dir () / "twin.net";
    std::ofstream (twin) << "places y0 y1 y3 q\ntrans v : y0 -> y1 q\ntrans z : y1 -> y3\n"
                            "trans z2 : y1 -> y3\ninitial y0\ngoal subset y3\n";
    CHECK (cli ({"gd-unfold", twin.string ()}).code == kExitOk);
    setenv ("GODUNF_ALT_CAP", "1", 1);
    auto capped = cli ({"gd-unfold", twin.string ()});
    unsetenv ("GODUNF_ALT_CAP");
    CHECK (capped.code == kExitResource);
    CHECK (capped.err.find ("GODUNF_ALT_CAP") != std::string::npos);
#endif
}
