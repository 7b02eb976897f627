#include "godunf/io.hpp"

#include "godunf/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace godunf {

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize (std::string_view line, std::size_t lineno)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size ()) {
        char ch = line[i];
        if (ch == '#')
            break;
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++i;
            continue;
        }
        if (ch == ':') {
            out.push_back ({":", i + 1});
            ++i;
            continue;
        }
        if (line.substr (i, 2) == "->") {
            out.push_back ({"->", i + 1});
            i += 2;
            continue;
        }
        std::size_t start = i;
        while (i < line.size () && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != ':' && line[i] != '#' && line.substr (i, 2) != "->")
            ++i;
        out.push_back ({std::string (line.substr (start, i - start)), start + 1});
    }
    if (!out.empty () && out.front ().text == "->")
        throw ParseError (lineno, out.front ().column, "unexpected '->'");
    return out;
}

std::vector<std::string> names (const std::vector<Token> &toks, std::size_t from, std::size_t to,
                                std::size_t lineno)
{
    std::vector<std::string> out;
    for (std::size_t i = from; i < to; ++i) {
        if (toks[i].text == ":" || toks[i].text == "->")
            throw ParseError (lineno, toks[i].column, "unexpected '" + toks[i].text + "'");
        out.push_back (toks[i].text);
    }
    return out;
}

} // namespace

GoalMode parse_goal_mode (std::string_view text)
{
    if (text == "exact")
        return GoalMode::Exact;
    if (text == "subset")
        return GoalMode::Subset;
    throw InputError ("unknown goal mode '" + std::string (text) + "' (exact|subset)");
}

std::string_view to_string (GoalMode mode)
{
    return mode == GoalMode::Exact ? "exact" : "subset";
}

NetDocument parse_net (std::string_view text)
{
    std::optional<std::vector<std::string>> places;
    std::set<std::string> declared;
    std::vector<TransitionSpec> specs;
    std::optional<std::vector<std::string>> initial;
    std::optional<std::pair<GoalMode, std::vector<std::string>>> goal;

    // Semantic checks done here so that the message carries a position.
    auto check_places = [&] (const std::vector<Token> &toks, std::size_t from, std::size_t to,
                             std::size_t lineno) {
        for (std::size_t i = from; i < to; ++i)
            if (declared.count (toks[i].text) == 0)
                throw InputError ("line " + std::to_string (lineno) + ", column " +
                                  std::to_string (toks[i].column) + ": unknown place '" +
                                  toks[i].text + "'");
    };

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size ()) {
        auto nl = text.find ('\n', pos);
        std::string_view line =
            text.substr (pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size () + 1 : nl + 1;
        ++lineno;

        auto toks = tokenize (line, lineno);
        if (toks.empty ())
            continue;
        const std::string &kw = toks[0].text;

        if (kw == "places") {
            if (places)
                throw ParseError (lineno, toks[0].column, "duplicate 'places' line");
            places = names (toks, 1, toks.size (), lineno);
            for (const auto &p : *places)
                if (!declared.insert (p).second)
                    throw InputError ("line " + std::to_string (lineno) + ": duplicate place '" +
                                      p + "'");
        } else if (!places) {
            throw ParseError (lineno, toks[0].column, "expected 'places' first");
        } else if (kw == "trans") {
            // trans NAME : PRE... -> POST...
            if (toks.size () < 3 || toks[1].text == ":" || toks[1].text == "->")
                throw ParseError (lineno, toks.size () > 1 ? toks[1].column : line.size () + 1,
                                  "expected transition name");
            if (toks[2].text != ":")
                throw ParseError (lineno, toks[2].column, "expected ':'");
            std::size_t arrow = 3;
            while (arrow < toks.size () && toks[arrow].text != "->")
                ++arrow;
            if (arrow == toks.size ())
                throw ParseError (lineno, line.size () + 1, "expected '->'");
            auto pre = names (toks, 3, arrow, lineno);
            auto post = names (toks, arrow + 1, toks.size (), lineno);
            check_places (toks, 3, arrow, lineno);
            check_places (toks, arrow + 1, toks.size (), lineno);
            if (pre.empty ())
                throw InputError ("line " + std::to_string (lineno) + ": transition '" +
                                  toks[1].text + "' has an empty preset");
            specs.push_back ({toks[1].text, std::move (pre), std::move (post)});
        } else if (kw == "initial") {
            if (initial)
                throw ParseError (lineno, toks[0].column, "duplicate 'initial' line");
            initial = names (toks, 1, toks.size (), lineno);
            check_places (toks, 1, toks.size (), lineno);
        } else if (kw == "goal") {
            if (goal)
                throw ParseError (lineno, toks[0].column, "duplicate 'goal' line");
            if (toks.size () < 2)
                throw ParseError (lineno, line.size () + 1, "expected goal mode");
            GoalMode mode;
            try {
                mode = parse_goal_mode (toks[1].text);
            } catch (const InputError &) {
                throw ParseError (lineno, toks[1].column, "expected 'exact' or 'subset'");
            }
            check_places (toks, 2, toks.size (), lineno);
            goal.emplace (mode, names (toks, 2, toks.size (), lineno));
        } else {
            throw ParseError (lineno, toks[0].column, "unknown keyword '" + kw + "'");
        }
    }
    if (!places)
        throw ParseError (lineno, 1, "missing 'places' line");

    NetDocument doc{Net::build (*places, std::move (specs), initial.value_or (std::vector<std::string>{})),
                    std::nullopt};
    if (goal)
        doc.goal = make_goal (doc.net, goal->second, goal->first);
    return doc;
}

NetDocument load_net (const std::string &path)
{
    std::ifstream in (path);
    if (!in)
        throw InputError ("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf ();
    return parse_net (buf.str ());
}

std::string emit_net (const Net &net, const std::optional<Goal> &goal)
{
    std::string out = "places";
    for (const auto &p : net.place_names ())
        out += " " + p;
    out += "\n";
    for (const auto &spec : net.transition_specs ()) {
        out += "trans " + spec.name + " :";
        for (const auto &p : spec.pre)
            out += " " + p;
        out += " ->";
        for (const auto &p : spec.post)
            out += " " + p;
        out += "\n";
    }
    out += "initial";
    for (const auto &p : net.initial_names ())
        out += " " + p;
    out += "\n";
    if (goal) {
        out += "goal ";
        out += to_string (goal->mode);
        for (auto p = goal->places.find_first (); p != PlaceSet::npos; p = goal->places.find_next (p))
            out += " " + net.place_name (static_cast<PlaceId> (p));
        out += "\n";
    }
    return out;
}

// ------------------------------------------------------------ prefix JSON

std::string emit_prefix_json (const Prefix &prefix, const DeltaReport *delta)
{
    using nlohmann::ordered_json;
    const Net &net = prefix.net ();

    ordered_json conditions = ordered_json::array ();
    for (ConditionId c = 0; c < prefix.num_conditions (); ++c) {
        const auto &cond = prefix.condition (c);
        conditions.push_back ({{"id", c},
                               {"parent", cond.parent == kBottom ? ordered_json (nullptr)
                                                                 : ordered_json (cond.parent)},
                               {"place", net.place_name (cond.place)}});
    }
    ordered_json events = ordered_json::array ();
    for (EventId e = 0; e < prefix.num_events (); ++e) {
        const auto &ev = prefix.event (e);
        events.push_back ({{"id", e},
                           {"transition", net.transition_name (ev.transition)},
                           {"preset", ev.preset},
                           {"postset", ev.postset},
                           {"cutoff", ev.cutoff}});
    }
    PrefixStats s = shape_stats (prefix);
    ordered_json doc = {{"conditions", conditions},
                        {"events", events},
                        {"initial", prefix.initial_conditions ()},
                        {"stats",
                         {{"non_cutoff_events", s.non_cutoff_events},
                          {"cutoff_events", s.cutoff_events},
                          {"conditions", s.conditions}}}};

    if (delta != nullptr) {
        ordered_json entries = ordered_json::array ();
        if (delta->prefix != nullptr && delta->delta != nullptr) {
            for (ConditionId c = 0; c < delta->prefix->prefix.num_conditions (); ++c) {
                auto it = delta->delta->find (delta->prefix->key (c));
                if (it == delta->delta->end ())
                    continue;
                ordered_json ignored = ordered_json::array ();
                for (auto t = it->second.find_first (); t != TransitionSet::npos;
                     t = it->second.find_next (t))
                    ignored.push_back (net.transition_name (static_cast<TransitionId> (t)));
                entries.push_back ({{"condition", c}, {"ignored", ignored}});
            }
        }
        doc["delta"] = {{"reducer", delta->reducer},
                        {"strategy", delta->strategy},
                        {"iterations", delta->iterations},
                        {"reducer_calls", delta->reducer_calls},
                        {"entries", entries}};
    }
    return doc.dump (2) + "\n";
}

LoadedPrefix load_prefix_json (const Net &net, std::string_view text)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse (text);
    } catch (const json::exception &ex) {
        throw InputError (std::string ("bad prefix document: ") + ex.what ());
    }

    try {
        LoadedPrefix out{Prefix (net), std::nullopt, std::nullopt};
        Prefix &prefix = out.prefix;

        const auto &conds = doc.at ("conditions");
        const auto &initial = doc.at ("initial");
        if (initial.get<std::vector<ConditionId>> () != prefix.initial_conditions ())
            throw InputError ("initial conditions do not match the net's initial marking");

        for (const auto &ev : doc.at ("events")) {
            EventId id = ev.at ("id").get<EventId> ();
            if (id != prefix.num_events ())
                throw InputError ("event ids must be dense and ordered");
            TransitionId t = net.transition (ev.at ("transition").get<std::string> ());
            auto preset = ev.at ("preset").get<std::vector<ConditionId>> ();
            for (auto c : preset)
                if (c >= prefix.num_conditions ())
                    throw InputError ("event " + std::to_string (id) +
                                      " consumes a condition that does not exist yet");
            EventId e = prefix.add_event (t, preset);
            if (ev.at ("postset").get<std::vector<ConditionId>> () != prefix.event (e).postset)
                throw InputError ("postset of event " + std::to_string (id) + " is inconsistent");
            if (ev.at ("cutoff").get<bool> ())
                prefix.set_cutoff (e);
        }

        if (conds.size () != prefix.num_conditions ())
            throw InputError ("condition count does not match the events");
        for (const auto &c : conds) {
            ConditionId id = c.at ("id").get<ConditionId> ();
            if (id >= prefix.num_conditions ())
                throw InputError ("unknown condition id " + std::to_string (id));
            const auto &cond = prefix.condition (id);
            EventId parent = c.at ("parent").is_null () ? kBottom : c.at ("parent").get<EventId> ();
            if (parent != cond.parent || net.place (c.at ("place").get<std::string> ()) != cond.place)
                throw InputError ("condition " + std::to_string (id) + " is inconsistent");
        }

        if (doc.contains ("delta")) {
            out.iterations = doc["delta"].at ("iterations").get<std::size_t> ();
            out.reducer_calls = doc["delta"].at ("reducer_calls").get<std::size_t> ();
        }
        return out;
    } catch (const json::exception &ex) {
        throw InputError (std::string ("bad prefix document: ") + ex.what ());
    }
}

// ------------------------------------------------------------------- DOT

namespace {

std::string dot_escape (const std::string &s)
{
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\')
            out += '\\';
        out += ch;
    }
    return out;
}

} // namespace

std::string emit_dot (const Prefix &prefix)
{
    const Net &net = prefix.net ();
    std::ostringstream out;
    out << "digraph prefix {\n";
    for (ConditionId c = 0; c < prefix.num_conditions (); ++c)
        out << "  c" << c << " [shape=circle,label=\""
            << dot_escape (net.place_name (prefix.condition (c).place)) << "\"];\n";
    for (EventId e = 0; e < prefix.num_events (); ++e) {
        const auto &ev = prefix.event (e);
        out << "  e" << e << " [shape=box,label=\"" << dot_escape (net.transition_name (ev.transition))
            << "\"" << (ev.cutoff ? ",style=dashed" : "") << "];\n";
    }
    for (EventId e = 0; e < prefix.num_events (); ++e) {
        const auto &ev = prefix.event (e);
        for (auto c : ev.preset)
            out << "  c" << c << " -> e" << e << ";\n";
        for (auto c : ev.postset)
            out << "  e" << e << " -> c" << c << ";\n";
    }
    out << "}\n";
    return out.str ();
}

} // namespace godunf
