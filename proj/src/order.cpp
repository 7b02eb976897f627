#include "godunf/order.hpp"

#include <algorithm>
#include <numeric>

namespace godunf {

OrderKey AdequateOrder::key (const Prefix &prefix, const Configuration &conf) const
{
    return make_key (prefix, conf, nullptr);
}

OrderKey AdequateOrder::key (const Prefix &prefix, const Extension &ext) const
{
    Configuration past;
    for (auto c : ext.preset) {
        auto parent = prefix.condition (c).parent;
        if (parent != kBottom)
            past = unite (past, prefix.event (parent).local);
    }
    return make_key (prefix, past, &ext);
}

OrderKey AdequateOrder::make_key (const Prefix &prefix, const Configuration &events,
                                  const Extension *extra) const
{
    OrderKey key;
    auto place = [&] (TransitionId t, std::uint32_t depth) {
        auto r = rank_.at (t);
        key.parikh.push_back (r);
        if (key.foata.size () < depth)
            key.foata.resize (depth);
        key.foata[depth - 1].push_back (r);
    };

    for (auto e : events) {
        const auto &ev = prefix.event (e);
        place (ev.transition, ev.depth);
    }
    key.size = events.size ();
    if (extra != nullptr) {
        // The new event sits one level above its deepest parent.
        std::uint32_t depth = 0;
        for (auto c : extra->preset) {
            auto parent = prefix.condition (c).parent;
            if (parent != kBottom)
                depth = std::max (depth, prefix.event (parent).depth);
        }
        place (extra->transition, depth + 1);
        ++key.size;
    }
    std::sort (key.parikh.begin (), key.parikh.end ());
    for (auto &level : key.foata)
        std::sort (level.begin (), level.end ());
    return key;
}

namespace {

std::vector<std::uint32_t> identity_rank (std::size_t n)
{
    std::vector<std::uint32_t> r (n);
    std::iota (r.begin (), r.end (), 0u);
    return r;
}

std::weak_ordering lex (const std::vector<std::uint32_t> &a, const std::vector<std::uint32_t> &b)
{
    return std::lexicographical_compare_three_way (a.begin (), a.end (), b.begin (), b.end ());
}

} // namespace

ErvOrder::ErvOrder (const Net &net) : AdequateOrder (identity_rank (net.num_transitions ())) {}

std::weak_ordering ErvOrder::compare (const OrderKey &a, const OrderKey &b) const
{
    if (auto c = a.size <=> b.size; c != 0)
        return c;
    if (auto c = lex (a.parikh, b.parikh); c != 0)
        return c;
    const auto n = std::min (a.foata.size (), b.foata.size ());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = lex (a.foata[i], b.foata[i]); c != 0)
            return c;
    return a.foata.size () <=> b.foata.size ();
}

std::weak_ordering compare (const AdequateOrder &order, const Prefix &prefix,
                            const Configuration &a, const Configuration &b)
{
    if (auto c = order.compare (order.key (prefix, a), order.key (prefix, b)); c != 0)
        return c;
    return lex (a, b);
}

} // namespace godunf
