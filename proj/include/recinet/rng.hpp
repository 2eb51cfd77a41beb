#pragma once

#include <cstdint>

#include "recinet/graph.hpp"

namespace recinet {

/// Counter-keyed splittable generator. Every (seed, sample, dyad) triple
/// opens its own deterministic stream, so samples can be produced by any
/// number of workers in any order and still come out bit-identical.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t sample, std::uint64_t dyad);

    std::uint64_t next_u64();

    /// Uniform draw in (0, 1], safe as a log argument.
    double next_unit();

private:
    std::uint64_t state_;
};

/// Shifted geometric on {1, 2, ...} with P(k) = (1-q) q^(k-1), by inverse
/// transform ceil(log(u)/log(q)); u must lie in (0, 1]. Throws on overflow.
Weight sample_geometric1(double q, double u);

/// Geometric on {0, 1, ...} with P(k) = (1-q) q^k.
Weight sample_geometric0(double q, double u);

}  // namespace recinet
