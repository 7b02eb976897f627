#pragma once

#include "godunf/io.hpp"
#include "godunf/net.hpp"
#include "godunf/order.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace godunf::testing {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

NetDocument fig2 ();
NetDocument triv ();
std::string fixture_path (const std::string &name);

// Names -> transition ids.
Sequence seq (const Net &net, const std::vector<std::string> &names);
Marking marking (const Net &net, const std::vector<std::string> &names);

// A product of 2-3 small state machines (one token each, hence safe) with
// up to 10 transitions synchronising 1-3 components; at most 8 places.
// The goal is a random Subset goal of 1-2 places in distinct components.
struct RandomCase {
    Net net;
    Goal goal;
};
RandomCase random_case (std::uint64_t seed);

// Count-lexicographic Parikh order without the size stage, under an
// explicit transition ranking (fewer occurrences of a lower-ranked
// transition is smaller), refined by the Foata levels compared the same
// way.  On FIG2 with ranking a', b', c, a, b it places [ab] before [a'].
class CountLexOrder final : public AdequateOrder {
  public:
    CountLexOrder (const Net &net, const std::vector<std::string> &ranking);
    std::weak_ordering compare (const OrderKey &a, const OrderKey &b) const override;

  private:
    std::size_t n_;
};

// Seed for the random suites: GODUNF_SEED if set, else kDefaultSeed.
std::uint64_t base_seed ();

} // namespace godunf::testing
