// Bounded MPMC queue of opaque fixed-size values built from two index rings:
// fq hands out free slots of a payload array, aq carries the filled ones.
// The same free list doubles as a fixed-size allocator (pool_alloc/pool_free).

#ifndef RINGQ_VALUE_QUEUE_HPP_
#define RINGQ_VALUE_QUEUE_HPP_

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <type_traits>

#include "ringq/ncq.hpp"
#include "ringq/scq.hpp"

namespace ringq {

template <class Q>
concept FinalizableIndexQueue = requires(Q q, std::uint64_t i, std::int64_t t) {
    { q.enqueue(i, true) } -> std::convertible_to<bool>;
    q.finalize();
    q.set_threshold(t);
};

/// A producer takes a slot index from fq, fills the payload cell, and hands
/// the index to aq; a consumer reverses that. Index conservation (every index
/// lives in exactly one of aq, fq, or an operating thread's hands) is what
/// makes the plain payload cells race-free: a cell is only touched by the
/// thread currently holding its index.
template <class T, class IndexQueue = Scq<>>
class ValueQueue {
    static_assert(std::is_trivially_copyable_v<T>,
                  "payload cells are copied in and out as raw values");

public:
    explicit ValueQueue(std::uint32_t capacity_order)
        : aq_(capacity_order, RingInit::Empty),
          fq_(capacity_order, RingInit::Full),
          data_(std::make_unique<T[]>(std::uint64_t{1} << capacity_order)),
          capacity_(std::uint64_t{1} << capacity_order) {}

    ValueQueue(const ValueQueue&) = delete;
    ValueQueue& operator=(const ValueQueue&) = delete;

    [[nodiscard]] std::uint64_t capacity() const noexcept { return capacity_; }

    /// False means all n payload slots were taken at linearization time.
    bool enqueue(const T& value) {
        const auto index = fq_.dequeue();
        if (!index) {
            return false;
        }
        data_[*index] = value;
        aq_.enqueue(*index);
        return true;
    }

    [[nodiscard]] std::optional<T> dequeue() {
        const auto index = aq_.dequeue();
        if (!index) {
            return std::nullopt;
        }
        T value = data_[*index];
        fq_.enqueue(*index);
        return value;
    }

    /// Insertion path for the unbounded queue: on a full ring it finalizes aq
    /// and fails; if a concurrent finalize beat the aq insert, the slot index
    /// goes back to fq (which is never finalized) and the call fails.
    bool enqueue_or_finalize(const T& value)
        requires FinalizableIndexQueue<IndexQueue>
    {
        const auto index = fq_.dequeue();
        if (!index) {
            aq_.finalize();
            return false;
        }
        data_[*index] = value;
        if (!aq_.enqueue(*index, /*finalize_check=*/true)) {
            fq_.enqueue(*index);
            return false;
        }
        return true;
    }

    void reset_aq_threshold()
        requires FinalizableIndexQueue<IndexQueue>
    {
        aq_.set_threshold(aq_.threshold_ceiling());
    }

    // Fixed-size allocator view over the free list.
    [[nodiscard]] std::optional<std::uint64_t> pool_alloc() { return fq_.dequeue(); }
    void pool_free(std::uint64_t index) { fq_.enqueue(index); }
    [[nodiscard]] T& slot(std::uint64_t index) noexcept { return data_[index]; }

    [[nodiscard]] IndexQueue& aq() noexcept { return aq_; }
    [[nodiscard]] IndexQueue& fq() noexcept { return fq_; }

private:
    IndexQueue aq_;
    IndexQueue fq_;
    std::unique_ptr<T[]> data_;
    std::uint64_t capacity_;
};

}  // namespace ringq

#endif  // RINGQ_VALUE_QUEUE_HPP_
