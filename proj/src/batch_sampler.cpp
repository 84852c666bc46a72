#include "deam/batch_sampler.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace deam {

BatchSampler::BatchSampler(std::size_t n, std::size_t batch_size, SamplingStrategy strategy,
                           std::uint64_t seed)
    : n_(n), batch_size_(std::min(batch_size, n)), strategy_(strategy), rng_(seed) {
    if (n == 0) throw std::invalid_argument("BatchSampler: dataset is empty");
    if (batch_size == 0) throw std::invalid_argument("BatchSampler: batch_size must be >= 1");
    if (strategy_ == SamplingStrategy::ShuffleEachEpoch) {
        perm_.resize(n_);
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    }
}

std::vector<std::size_t> BatchSampler::next() {
    std::vector<std::size_t> batch;
    batch.reserve(batch_size_);
    if (strategy_ == SamplingStrategy::SequentialWrap) {
        for (std::size_t k = 0; k < batch_size_; ++k) {
            batch.push_back(cursor_);
            cursor_ = (cursor_ + 1) % n_;
        }
        return batch;
    }
    // ShuffleEachEpoch
    if (cursor_ == 0) rng_.shuffle(perm_);
    const std::size_t take = std::min(batch_size_, n_ - cursor_);
    batch.assign(perm_.begin() + static_cast<std::ptrdiff_t>(cursor_),
                 perm_.begin() + static_cast<std::ptrdiff_t>(cursor_ + take));
    cursor_ += take;
    if (cursor_ >= n_) cursor_ = 0;
    return batch;
}

} // namespace deam
