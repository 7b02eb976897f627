#pragma once

#include "godunf/occurrence.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace godunf {

// Order-relevant summary of a finite configuration.  Transitions appear as
// ranks (position in the order's transition ranking), not as identifiers.
struct OrderKey {
    std::size_t size = 0;
    // Parikh vector as the sorted multiset of ranks.
    std::vector<std::uint32_t> parikh;
    // Foata normal form: per causal level, the sorted multiset of ranks.
    std::vector<std::vector<std::uint32_t>> foata;
};

// A strict order on finite configurations used to pick extensions and to
// decide cut-offs.  Implementations must refine strict inclusion and be
// preserved by finite extensions.
class AdequateOrder {
  public:
    virtual ~AdequateOrder () = default;

    virtual std::weak_ordering compare (const OrderKey &a, const OrderKey &b) const = 0;

    const std::vector<std::uint32_t> &transition_rank () const { return rank_; }

    OrderKey key (const Prefix &prefix, const Configuration &conf) const;
    // Key of [e] for the not-yet-inserted event e = ext.
    OrderKey key (const Prefix &prefix, const Extension &ext) const;

  protected:
    explicit AdequateOrder (std::vector<std::uint32_t> transition_rank)
        : rank_ (std::move (transition_rank)) {}

  private:
    OrderKey make_key (const Prefix &prefix, const Configuration &events,
                       const Extension *extra) const;

    std::vector<std::uint32_t> rank_;
};

// Size, then Parikh vector, then Foata normal form, each compared
// lexicographically over sorted rank sequences.  Total on the
// configurations of a safe net's unfolding.  Ranks follow declaration order.
class ErvOrder final : public AdequateOrder {
  public:
    explicit ErvOrder (const Net &net);

    std::weak_ordering compare (const OrderKey &a, const OrderKey &b) const override;
};

// Compares two configurations of one prefix; falls back to the sorted event
// indices so that only identical configurations compare equal.
std::weak_ordering compare (const AdequateOrder &order, const Prefix &prefix,
                            const Configuration &a, const Configuration &b);

} // namespace godunf
