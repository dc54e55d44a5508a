// Coarse-grained mutex queue. Baseline for the benchmarks and the blocking
// counterexample for the suspension probe.

#ifndef RINGQ_LOCK_QUEUE_HPP_
#define RINGQ_LOCK_QUEUE_HPP_

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>

#include "ringq/hooks.hpp"

namespace ringq {

template <class T, class Hooks = NoHooks>
class LockQueue {
public:
    /// capacity_order 0xffffffff (the default) means unbounded.
    static constexpr std::uint32_t kUnbounded = 0xffffffffu;

    explicit LockQueue(std::uint32_t capacity_order = kUnbounded)
        : capacity_(capacity_order == kUnbounded ? 0 : (std::uint64_t{1} << capacity_order)),
          bounded_(capacity_order != kUnbounded) {}

    bool enqueue(const T& value) {
        std::lock_guard<std::mutex> lock(mu_);
        Hooks::pause_point();
        if (bounded_ && items_.size() >= capacity_) {
            return false;
        }
        items_.push_back(value);
        return true;
    }

    [[nodiscard]] std::optional<T> dequeue() {
        std::lock_guard<std::mutex> lock(mu_);
        Hooks::pause_point();
        if (items_.empty()) {
            return std::nullopt;
        }
        T value = items_.front();
        items_.pop_front();
        return value;
    }

    [[nodiscard]] std::uint64_t capacity() const noexcept { return capacity_; }

private:
    std::mutex mu_;
    std::deque<T> items_;
    std::uint64_t capacity_;
    bool bounded_;
};

}  // namespace ringq

#endif  // RINGQ_LOCK_QUEUE_HPP_
