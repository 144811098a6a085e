#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace grassharm {

/// Calls fn(i) for every i in [0, count) on up to `workers` threads. fn must
/// only write to slots owned by i; ordering of side effects is unspecified.
template <typename Fn>
void parallel_for(std::int64_t count, int workers, Fn&& fn)
{
    workers = std::max(1, workers);
    if (workers == 1 || count < 2) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::jthread> pool;
    const auto threads = static_cast<int>(std::min<std::int64_t>(workers, count));
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::int64_t i = next++; i < count; i = next++) fn(i);
        });
}

/// Kahan-compensated running sum.
class KahanSum {
public:
    void add(double x)
    {
        const double y = x - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace grassharm
