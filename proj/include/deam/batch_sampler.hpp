#pragma once

#include <cstdint>
#include <vector>

#include "deam/rng.hpp"

namespace deam {

enum class SamplingStrategy { ShuffleEachEpoch, SequentialWrap };

// Deterministic mini-batch index stream. Under ShuffleEachEpoch every index
// appears exactly once per epoch (last batch may be short); SequentialWrap
// emits fixed-size windows over 0..n-1 with wraparound.
class BatchSampler {
public:
    BatchSampler(std::size_t n, std::size_t batch_size, SamplingStrategy strategy,
                 std::uint64_t seed);

    std::vector<std::size_t> next();

    std::size_t batch_size() const { return batch_size_; }

private:
    std::size_t n_;
    std::size_t batch_size_;
    SamplingStrategy strategy_;
    Rng rng_;
    std::vector<std::size_t> perm_;
    std::size_t cursor_ = 0;
};

} // namespace deam
