#ifndef PANELAR_SUMMATION_HPP
#define PANELAR_SUMMATION_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace panelar {

// Pairwise (cascade) summation: error grows O(log n) in ulps instead of
// O(n) for running accumulation. Matters for per-section sums with T up
// to 1e6 and strongly graded explosive terms.
inline double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 32) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

// Streaming front end: accepts terms one at a time, reduces fixed-size
// blocks pairwise, then reduces the block sums pairwise. Equivalent
// rounding behavior to materializing all terms, without the memory.
class CascadeAccumulator {
  public:
    void add(double term) {
        block_[fill_++] = term;
        if (fill_ == kBlock) {
            block_sums_.push_back(pairwise_sum(std::span<const double>(block_, kBlock)));
            fill_ = 0;
        }
    }

    double total() const {
        double tail = pairwise_sum(std::span<const double>(block_, fill_));
        return pairwise_sum(block_sums_) + tail;
    }

  private:
    static constexpr std::size_t kBlock = 2048;
    double block_[kBlock];
    std::size_t fill_ = 0;
    std::vector<double> block_sums_;
};

} // namespace panelar

#endif // PANELAR_SUMMATION_HPP
