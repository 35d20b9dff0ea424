#pragma once

#include "privfn/rational.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace privfn {

// Draws an index from an exact rational pmf. When the common denominator fits
// a 64-bit draw the sample is exact; otherwise it falls back to a long-double
// CDF walk. weights need not be normalized but must be nonnegative with a
// positive sum.
int sample_rational_pmf(const std::vector<Rational>& weights, std::mt19937_64& rng);

// Same, over sparse (index, weight) pairs.
int sample_rational_pmf(const std::vector<std::pair<int, Rational>>& weights, std::mt19937_64& rng);

// Precomputed sampler for repeated draws from the same pmf. Exact whenever the
// scaled masses fit 64 bits, long-double CDF otherwise.
class RationalSampler {
public:
    explicit RationalSampler(const std::vector<Rational>& weights);

    int operator()(std::mt19937_64& rng) const;

private:
    bool exact_ = false;
    std::uint64_t range_ = 0;
    std::vector<std::uint64_t> cumulative_; // exact path
    std::vector<long double> cdf_;          // fallback path
};

// Stateless mix of (seed, stream) into an engine seed; used for per-trial
// sub-seeding so concurrent trial execution cannot change results.
std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t stream);

} // namespace privfn
