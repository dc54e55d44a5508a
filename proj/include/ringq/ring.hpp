// Shared ring primitives: entry packing, wraparound-safe cycle comparison and
// the cache-line remapping permutation used by both bounded ring queues.

#ifndef RINGQ_RING_HPP_
#define RINGQ_RING_HPP_

#include <cstddef>
#include <cstdint>

namespace ringq {

inline constexpr std::size_t kCacheLineSize = 64;

/// log2(number of 8-byte ring entries that share one cache line).
inline constexpr std::uint32_t kDefaultRemapShift = 3;

/// Geometry of one physical ring: capacity 2^order slots, entry positions
/// permuted so that adjacent positions land on different cache lines.
struct RingConfig {
    std::uint32_t order = 0;                       // log2(capacity)
    std::uint32_t remap_shift = kDefaultRemapShift;

    [[nodiscard]] constexpr std::uint64_t capacity() const noexcept {
        return std::uint64_t{1} << order;
    }
    [[nodiscard]] constexpr std::uint64_t pos_mask() const noexcept { return capacity() - 1; }

    /// Left-rotation of the order-bit position by remap_shift bits. A bijection
    /// on [0, capacity); consecutive positions map >= 2^remap_shift slots apart
    /// and a slot group is not revisited for 2^(order-remap_shift) steps.
    /// Identity for the degenerate order <= remap_shift rings.
    [[nodiscard]] constexpr std::uint64_t remap(std::uint64_t pos) const noexcept {
        if (order <= remap_shift) {
            return pos;
        }
        const std::uint32_t low_bits = order - remap_shift;
        return ((pos & ((std::uint64_t{1} << low_bits) - 1)) << remap_shift) | (pos >> low_bits);
    }
};

/// True iff `a` precedes `b` under modular ordering, i.e. (a - b) mod 2^width
/// reinterpreted as a signed width-bit value is negative. Valid for any window
/// of fewer than 2^(width-1) consecutive cycles.
[[nodiscard]] constexpr bool cycle_lt(std::uint64_t a, std::uint64_t b,
                                      std::uint32_t width) noexcept {
    const std::uint64_t diff = (a - b) & ((width < 64) ? ((std::uint64_t{1} << width) - 1) : ~std::uint64_t{0});
    return (diff >> (width - 1)) != 0;
}

/// SCQ entry layout on one 64-bit word: index in bits [0, order), the IsSafe
/// flag at bit `order`, the (truncated) cycle above it. The bottom sentinel is
/// the all-ones index, so consuming a slot is a bitwise OR of index_mask().
struct ScqLayout {
    std::uint32_t order;

    explicit constexpr ScqLayout(std::uint32_t ring_order) noexcept : order(ring_order) {}

    [[nodiscard]] constexpr std::uint32_t cycle_width() const noexcept { return 63 - order; }
    [[nodiscard]] constexpr std::uint64_t index_mask() const noexcept {
        return (std::uint64_t{1} << order) - 1;
    }
    [[nodiscard]] constexpr std::uint64_t bottom() const noexcept { return index_mask(); }
    [[nodiscard]] constexpr std::uint64_t safe_bit() const noexcept {
        return std::uint64_t{1} << order;
    }
    [[nodiscard]] constexpr std::uint64_t cycle_mask() const noexcept {
        return (std::uint64_t{1} << cycle_width()) - 1;
    }

    [[nodiscard]] constexpr std::uint64_t pack(std::uint64_t cycle, bool is_safe,
                                               std::uint64_t index) const noexcept {
        return ((cycle & cycle_mask()) << (order + 1)) |
               (is_safe ? safe_bit() : std::uint64_t{0}) | (index & index_mask());
    }
    [[nodiscard]] constexpr std::uint64_t cycle(std::uint64_t raw) const noexcept {
        return raw >> (order + 1);
    }
    [[nodiscard]] constexpr bool is_safe(std::uint64_t raw) const noexcept {
        return (raw & safe_bit()) != 0;
    }
    [[nodiscard]] constexpr std::uint64_t index(std::uint64_t raw) const noexcept {
        return raw & index_mask();
    }

    /// Cycle of a Head/Tail counter value, truncated to the entry field width.
    [[nodiscard]] constexpr std::uint64_t counter_cycle(std::uint64_t counter) const noexcept {
        return (counter >> order) & cycle_mask();
    }
};

/// NCQ entry layout: index in bits [0, order), cycle above it. No IsSafe bit
/// and no reserved sentinel; every index value is a valid payload.
struct NcqLayout {
    std::uint32_t order;

    explicit constexpr NcqLayout(std::uint32_t ring_order) noexcept : order(ring_order) {}

    [[nodiscard]] constexpr std::uint32_t cycle_width() const noexcept { return 64 - order; }
    [[nodiscard]] constexpr std::uint64_t index_mask() const noexcept {
        return (std::uint64_t{1} << order) - 1;
    }
    [[nodiscard]] constexpr std::uint64_t cycle_mask() const noexcept {
        return (cycle_width() < 64) ? ((std::uint64_t{1} << cycle_width()) - 1) : ~std::uint64_t{0};
    }

    [[nodiscard]] constexpr std::uint64_t pack(std::uint64_t cycle,
                                               std::uint64_t index) const noexcept {
        return ((cycle & cycle_mask()) << order) | (index & index_mask());
    }
    [[nodiscard]] constexpr std::uint64_t cycle(std::uint64_t raw) const noexcept {
        return raw >> order;
    }
    [[nodiscard]] constexpr std::uint64_t index(std::uint64_t raw) const noexcept {
        return raw & index_mask();
    }

    [[nodiscard]] constexpr std::uint64_t counter_cycle(std::uint64_t counter) const noexcept {
        return (counter >> order) & cycle_mask();
    }
};

}  // namespace ringq

#endif  // RINGQ_RING_HPP_
