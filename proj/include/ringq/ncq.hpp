// Naive circular queue: a CAS-based bounded MPMC queue of small integer
// indices with tail-helping. Serves as the baseline design that the scalable
// queue improves on.

#ifndef RINGQ_NCQ_HPP_
#define RINGQ_NCQ_HPP_

#include <atomic>
#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>

#include "ringq/hooks.hpp"
#include "ringq/ring.hpp"

namespace ringq {

enum class RingInit { Empty, Full };

/// Bounded MPMC queue of indices in [0, capacity). An entry can be enqueued
/// only while fewer than `capacity()` elements are live; callers uphold that
/// by moving indices between two rings (see ValueQueue), so enqueue never
/// reports "full". A dequeuer that finds Head one cycle ahead of the entry it
/// points at reports empty; any other cycle mismatch means the loaded counter
/// was stale and the operation retries.
template <class Hooks = NoHooks>
class Ncq {
public:
    explicit Ncq(std::uint32_t capacity_order, RingInit init = RingInit::Empty,
                 std::uint32_t remap_shift = kDefaultRemapShift)
        : cfg_{capacity_order, remap_shift},
          layout_(capacity_order),
          entries_(std::make_unique<std::atomic<std::uint64_t>[]>(cfg_.capacity())) {
        const std::uint64_t n = cfg_.capacity();
        if (init == RingInit::Empty) {
            for (std::uint64_t pos = 0; pos < n; ++pos) {
                entries_[pos].store(layout_.pack(0, 0), std::memory_order_relaxed);
            }
            head_.store(n, std::memory_order_relaxed);
        } else {
            for (std::uint64_t pos = 0; pos < n; ++pos) {
                entries_[cfg_.remap(pos)].store(layout_.pack(0, pos), std::memory_order_relaxed);
            }
            head_.store(0, std::memory_order_relaxed);
        }
        tail_.store(n, std::memory_order_relaxed);
    }

    Ncq(const Ncq&) = delete;
    Ncq& operator=(const Ncq&) = delete;

    [[nodiscard]] std::uint64_t capacity() const noexcept { return cfg_.capacity(); }

    void enqueue(std::uint64_t index) {
        assert(index < capacity());
        for (;;) {
            std::uint64_t tail = tail_.load(std::memory_order_acquire);
            const std::uint64_t slot = cfg_.remap(tail & cfg_.pos_mask());
            std::uint64_t entry = entries_[slot].load(std::memory_order_acquire);
            const std::uint64_t tail_cycle = layout_.counter_cycle(tail);
            if (layout_.cycle(entry) == tail_cycle) {
                // Another enqueuer installed this slot but has not advanced
                // Tail yet; help it along and retry.
                tail_.compare_exchange_strong(tail, tail + 1, std::memory_order_acq_rel,
                                              std::memory_order_relaxed);
                continue;
            }
            if (((layout_.cycle(entry) + 1) & layout_.cycle_mask()) != tail_cycle) {
                continue;  // Tail snapshot is at least one full round stale.
            }
            if (entries_[slot].compare_exchange_strong(entry, layout_.pack(tail_cycle, index),
                                                       std::memory_order_release,
                                                       std::memory_order_relaxed)) {
                Hooks::pause_point();
                tail_.compare_exchange_strong(tail, tail + 1, std::memory_order_acq_rel,
                                              std::memory_order_relaxed);
                return;
            }
        }
    }

    [[nodiscard]] std::optional<std::uint64_t> dequeue() {
        for (;;) {
            std::uint64_t head = head_.load(std::memory_order_acquire);
            const std::uint64_t slot = cfg_.remap(head & cfg_.pos_mask());
            const std::uint64_t entry = entries_[slot].load(std::memory_order_acquire);
            const std::uint64_t head_cycle = layout_.counter_cycle(head);
            if (layout_.cycle(entry) != head_cycle) {
                if (((layout_.cycle(entry) + 1) & layout_.cycle_mask()) == head_cycle) {
                    return std::nullopt;
                }
                continue;  // Head snapshot is stale.
            }
            if (head_.compare_exchange_strong(head, head + 1, std::memory_order_acq_rel,
                                              std::memory_order_relaxed)) {
                Hooks::pause_point();
                return layout_.index(entry);
            }
        }
    }

    // Diagnostic snapshots; meaningful only at quiescence.
    [[nodiscard]] std::uint64_t raw_head() const noexcept {
        return head_.load(std::memory_order_acquire);
    }
    [[nodiscard]] std::uint64_t raw_tail() const noexcept {
        return tail_.load(std::memory_order_acquire);
    }
    [[nodiscard]] std::uint64_t raw_entry(std::uint64_t slot) const noexcept {
        return entries_[slot].load(std::memory_order_acquire);
    }
    [[nodiscard]] const NcqLayout& layout() const noexcept { return layout_; }
    [[nodiscard]] const RingConfig& config() const noexcept { return cfg_; }

private:
    RingConfig cfg_;
    NcqLayout layout_;
    std::unique_ptr<std::atomic<std::uint64_t>[]> entries_;
    alignas(kCacheLineSize) std::atomic<std::uint64_t> head_{0};
    alignas(kCacheLineSize) std::atomic<std::uint64_t> tail_{0};
};

}  // namespace ringq

#endif  // RINGQ_NCQ_HPP_
