// Scalable circular queue: FAA on Head/Tail, a physical ring of twice the
// logical capacity, threshold-based livelock prevention, IsSafe marking for
// overtaken slots, consumption by atomic OR, and a finalize bit that closes
// the ring to further insertions (used by the unbounded queue).

#ifndef RINGQ_SCQ_HPP_
#define RINGQ_SCQ_HPP_

#include <atomic>
#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>

#include "ringq/hooks.hpp"
#include "ringq/ring.hpp"

namespace ringq {

/// Bounded MPMC queue of indices in [0, capacity()). The physical ring holds
/// 2n slots for a logical capacity of n, so enqueuers that skip occupied slots
/// always find an unused one within 2n positions of the last dequeuer. At most
/// n elements may ever be live (two-queue discipline), hence enqueue has no
/// "full" outcome; it fails only when the ring was finalized and the caller
/// asked to observe that.
///
/// The threshold starts at -1 (empty) and is raised to 3n-1 by every
/// successful insert; dequeuers that fail to find an element decrement it and
/// give up at zero, which both detects emptiness without touching Head and
/// stops dequeuers from invalidating enqueuers' slots forever.
template <class Hooks = NoHooks>
class Scq {
public:
    static constexpr int kDefaultDequeueSpin = 256;
    static constexpr std::uint64_t kFinalizeBit = std::uint64_t{1} << 63;

    explicit Scq(std::uint32_t capacity_order, RingInit init = RingInit::Empty,
                 std::uint32_t remap_shift = kDefaultRemapShift,
                 int dequeue_spin = kDefaultDequeueSpin)
        : cfg_{capacity_order + 1, remap_shift},
          layout_(capacity_order + 1),
          dequeue_spin_(dequeue_spin),
          entries_(std::make_unique<std::atomic<std::uint64_t>[]>(cfg_.capacity())) {
        const std::uint64_t ring = cfg_.capacity();  // 2n
        for (std::uint64_t pos = 0; pos < ring; ++pos) {
            entries_[pos].store(layout_.pack(0, true, layout_.bottom()),
                                std::memory_order_relaxed);
        }
        head_.store(ring, std::memory_order_relaxed);
        tail_.store(ring, std::memory_order_relaxed);
        threshold_.store(-1, std::memory_order_relaxed);
        if (init == RingInit::Full) {
            for (std::uint64_t idx = 0; idx < capacity(); ++idx) {
                enqueue(idx);
            }
        }
    }

    Scq(const Scq&) = delete;
    Scq& operator=(const Scq&) = delete;

    /// Logical capacity n (half the physical ring).
    [[nodiscard]] std::uint64_t capacity() const noexcept { return cfg_.capacity() / 2; }

    /// Inserts an index. Returns false only when `finalize_check` is set and
    /// the ring has been finalized; a plain enqueue always succeeds.
    bool enqueue(std::uint64_t index, bool finalize_check = false) {
        assert(index < capacity());
        const std::int64_t threshold_full = threshold_ceiling();
        for (;;) {
            const std::uint64_t tail = tail_.fetch_add(1, std::memory_order_acq_rel);
            Hooks::pause_point();
            if (finalize_check && (tail & kFinalizeBit) != 0) {
                return false;
            }
            const std::uint64_t pos = tail & ~kFinalizeBit;
            const std::uint64_t slot = cfg_.remap(pos & cfg_.pos_mask());
            const std::uint64_t tail_cycle = layout_.counter_cycle(pos);
            std::uint64_t entry = entries_[slot].load(std::memory_order_acquire);
            while (cycle_lt(layout_.cycle(entry), tail_cycle, layout_.cycle_width()) &&
                   layout_.index(entry) == layout_.bottom() &&
                   (layout_.is_safe(entry) || head_.load(std::memory_order_acquire) <= pos)) {
                if (!entries_[slot].compare_exchange_weak(
                        entry, layout_.pack(tail_cycle, true, index), std::memory_order_release,
                        std::memory_order_acquire)) {
                    continue;  // Re-evaluate with the freshly loaded entry, same tail.
                }
                if (threshold_.load(std::memory_order_relaxed) != threshold_full) {
                    threshold_.store(threshold_full, std::memory_order_release);
                }
                return true;
            }
            // Slot unusable for this tail position (occupied by an earlier
            // cycle, already recycled, or unsafe with dequeuers ahead): take a
            // fresh position.
        }
    }

    [[nodiscard]] std::optional<std::uint64_t> dequeue() {
        if (threshold_.load(std::memory_order_acquire) < 0) {
            return std::nullopt;  // Empty; stays off Head entirely.
        }
        for (;;) {
            const std::uint64_t head = head_.fetch_add(1, std::memory_order_acq_rel);
            Hooks::pause_point();
            const std::uint64_t slot = cfg_.remap(head & cfg_.pos_mask());
            const std::uint64_t head_cycle = layout_.counter_cycle(head);
            int spins = dequeue_spin_;
            std::uint64_t entry = entries_[slot].load(std::memory_order_acquire);
            for (;;) {
                if (layout_.cycle(entry) == head_cycle) {
                    // The slot cannot be recycled before it is consumed; only
                    // its IsSafe bit may still change. OR-ing the index mask
                    // marks it consumed while preserving cycle and IsSafe.
                    entries_[slot].fetch_or(layout_.index_mask(), std::memory_order_acq_rel);
                    return layout_.index(entry);
                }
                // Arrived before the matching enqueuer: give it a moment
                // before invalidating the slot.
                if (layout_.index(entry) == layout_.bottom() &&
                    cycle_lt(layout_.cycle(entry), head_cycle, layout_.cycle_width()) &&
                    spins-- > 0) {
                    entry = entries_[slot].load(std::memory_order_acquire);
                    continue;
                }
                std::uint64_t replacement;
                if (layout_.index(entry) == layout_.bottom()) {
                    replacement = layout_.pack(head_cycle, layout_.is_safe(entry),
                                               layout_.bottom());
                } else {
                    // Unconsumed element from an older cycle: clear IsSafe so
                    // its (late) enqueuer must check for dequeuers ahead.
                    replacement = layout_.pack(layout_.cycle(entry), false, layout_.index(entry));
                }
                if (cycle_lt(layout_.cycle(entry), head_cycle, layout_.cycle_width())) {
                    if (!entries_[slot].compare_exchange_weak(entry, replacement,
                                                              std::memory_order_acq_rel,
                                                              std::memory_order_acquire)) {
                        continue;  // Entry changed under us; re-inspect it.
                    }
                }
                const std::uint64_t tail =
                    tail_.load(std::memory_order_acquire) & ~kFinalizeBit;
                if (tail <= head + 1) {
                    catchup(tail, head + 1);
                    threshold_.fetch_add(-1, std::memory_order_acq_rel);
                    return std::nullopt;
                }
                if (threshold_.fetch_add(-1, std::memory_order_acq_rel) <= 0) {
                    return std::nullopt;
                }
                break;  // Move on to the next head position.
            }
        }
    }

    /// Permanently closes the ring to finalize-checking enqueuers. Idempotent.
    void finalize() noexcept { tail_.fetch_or(kFinalizeBit, std::memory_order_acq_rel); }

    void set_threshold(std::int64_t v) noexcept {
        threshold_.store(v, std::memory_order_release);
    }

    [[nodiscard]] std::int64_t threshold_ceiling() const noexcept {
        return 3 * static_cast<std::int64_t>(capacity()) - 1;
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
    [[nodiscard]] std::int64_t threshold() const noexcept {
        return threshold_.load(std::memory_order_acquire);
    }
    [[nodiscard]] bool finalized() const noexcept {
        return (tail_.load(std::memory_order_acquire) & kFinalizeBit) != 0;
    }
    [[nodiscard]] const ScqLayout& layout() const noexcept { return layout_; }
    [[nodiscard]] const RingConfig& config() const noexcept { return cfg_; }

private:
    // Drags a lagging Tail up to Head so enqueuers do not walk slot by slot
    // through positions dequeuers have already abandoned.
    void catchup(std::uint64_t tail, std::uint64_t head) noexcept {
        while (!tail_.compare_exchange_weak(tail, head | (tail & kFinalizeBit),
                                            std::memory_order_acq_rel,
                                            std::memory_order_acquire)) {
            head = head_.load(std::memory_order_acquire);
            tail = tail_.load(std::memory_order_acquire);
            if ((tail & ~kFinalizeBit) >= head) {
                break;
            }
        }
    }

    RingConfig cfg_;     // Physical geometry: 2n slots.
    ScqLayout layout_;
    int dequeue_spin_;
    std::unique_ptr<std::atomic<std::uint64_t>[]> entries_;
    alignas(kCacheLineSize) std::atomic<std::uint64_t> head_{0};
    alignas(kCacheLineSize) std::atomic<std::uint64_t> tail_{0};
    alignas(kCacheLineSize) std::atomic<std::int64_t> threshold_{-1};
};

}  // namespace ringq

#endif  // RINGQ_SCQ_HPP_
