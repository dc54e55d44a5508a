#include <cstdint>
#include <random>
#include <vector>

#include <doctest.h>

#include "ringq/ring.hpp"

using ringq::cycle_lt;
using ringq::NcqLayout;
using ringq::RingConfig;
using ringq::ScqLayout;

namespace {

// Reference permutation: bit i of the order-bit position moves to
// bit (i + shift) mod order. Independent of the shifted/masked formula in
// RingConfig::remap.
std::uint64_t rotate_reference(std::uint64_t pos, std::uint32_t order, std::uint32_t shift) {
    if (order <= shift) {
        return pos;
    }
    std::uint64_t out = 0;
    for (std::uint32_t bit = 0; bit < order; ++bit) {
        if (pos & (std::uint64_t{1} << bit)) {
            out |= std::uint64_t{1} << ((bit + shift) % order);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("cache remap: pinned values") {
    RingConfig cfg{4, 2};
    CHECK(cfg.remap(0) == 0);
    CHECK(cfg.remap(1) == 4);
    CHECK(cfg.remap(5) == 5);
}

TEST_CASE("cache remap matches the bitwise rotation reference") {
    for (std::uint32_t order = 1; order <= 10; ++order) {
        for (std::uint32_t shift = 0; shift < order; ++shift) {
            RingConfig cfg{order, shift};
            for (std::uint64_t pos = 0; pos < cfg.capacity(); ++pos) {
                CAPTURE(order);
                CAPTURE(shift);
                CAPTURE(pos);
                REQUIRE(cfg.remap(pos) == rotate_reference(pos, order, shift));
            }
        }
    }
}

TEST_CASE("cache remap is a bijection for every order up to 20") {
    std::vector<bool> seen;
    for (std::uint32_t order = 1; order <= 20; ++order) {
        for (std::uint32_t shift = 0; shift < order; ++shift) {
            RingConfig cfg{order, shift};
            seen.assign(cfg.capacity(), false);
            for (std::uint64_t pos = 0; pos < cfg.capacity(); ++pos) {
                const std::uint64_t slot = cfg.remap(pos);
                REQUIRE(slot < cfg.capacity());
                REQUIRE_FALSE(seen[slot]);
                seen[slot] = true;
            }
        }
    }
}

TEST_CASE("cache remap separates adjacent positions and delays line reuse") {
    for (std::uint32_t order = 2; order <= 12; ++order) {
        for (std::uint32_t shift = 1; shift < order; ++shift) {
            RingConfig cfg{order, shift};
            const std::uint64_t period = cfg.capacity() >> shift;
            for (std::uint64_t pos = 0; pos + 1 < cfg.capacity(); ++pos) {
                const std::uint64_t line_a = cfg.remap(pos) >> shift;
                const std::uint64_t line_b = cfg.remap(pos + 1) >> shift;
                REQUIRE(line_a != line_b);
                // The same line comes around only once per 2^(order-shift) steps.
                REQUIRE(line_a == pos % period);
            }
        }
    }
}

TEST_CASE("cache remap is the identity for degenerate orders") {
    RingConfig cfg{2, 3};
    for (std::uint64_t pos = 0; pos < cfg.capacity(); ++pos) {
        CHECK(cfg.remap(pos) == pos);
    }
}

TEST_CASE("cycle_lt: pinned values") {
    CHECK_FALSE(cycle_lt(0, 0, 61));
    CHECK(cycle_lt(0, 1, 61));
    CHECK(cycle_lt((std::uint64_t{1} << 61) - 1, 0, 61));  // wraparound: diff is -1
}

TEST_CASE("cycle_lt is a strict total order across the wrap point") {
    constexpr std::uint32_t width = 8;
    constexpr std::uint64_t mask = (1u << width) - 1;
    constexpr std::uint64_t window = 1u << (width - 1);  // 2^(width-1) cycles
    const std::uint64_t start = mask - window / 2;       // straddles 255 -> 0
    for (std::uint64_t i = 0; i < window; ++i) {
        for (std::uint64_t j = 0; j < window; ++j) {
            const std::uint64_t a = (start + i) & mask;
            const std::uint64_t b = (start + j) & mask;
            CAPTURE(a);
            CAPTURE(b);
            REQUIRE(cycle_lt(a, b, width) == (i < j));
        }
    }
}

TEST_CASE("scq entry packing: pinned values") {
    ScqLayout layout(3);
    CHECK(layout.bottom() == 7);
    CHECK(layout.pack(0, true, layout.bottom()) == 15);
    CHECK(layout.pack(0, true, 0) == 8);
    CHECK(layout.cycle(8) == 0);
    CHECK(layout.is_safe(8));
    CHECK(layout.index(8) == 0);

    // Consuming by OR touches only the index field.
    const std::uint64_t occupied = layout.pack(5, false, 2);
    const std::uint64_t consumed = occupied | layout.index_mask();
    CHECK(layout.cycle(consumed) == 5);
    CHECK_FALSE(layout.is_safe(consumed));
    CHECK(layout.index(consumed) == layout.bottom());
}

TEST_CASE("scq and ncq packing round-trips on random field tuples") {
    std::mt19937_64 rng(0x5ca1ab1eu);
    for (int i = 0; i < 100000; ++i) {
        const std::uint32_t order = 1 + static_cast<std::uint32_t>(rng() % 20);
        ScqLayout scq(order);
        const std::uint64_t cycle = rng() & scq.cycle_mask();
        const bool safe = (rng() & 1) != 0;
        const std::uint64_t index = rng() & scq.index_mask();
        const std::uint64_t raw = scq.pack(cycle, safe, index);
        REQUIRE(scq.cycle(raw) == cycle);
        REQUIRE(scq.is_safe(raw) == safe);
        REQUIRE(scq.index(raw) == index);

        NcqLayout ncq(order);
        const std::uint64_t ncycle = rng() & ncq.cycle_mask();
        const std::uint64_t nindex = rng() & ncq.index_mask();
        const std::uint64_t nraw = ncq.pack(ncycle, nindex);
        REQUIRE(ncq.cycle(nraw) == ncycle);
        REQUIRE(ncq.index(nraw) == nindex);
    }
}

TEST_CASE("consume-by-OR preserves cycle and IsSafe over exhaustive small fields") {
    for (std::uint32_t order = 1; order <= 8; ++order) {
        ScqLayout layout(order);
        std::vector<std::uint64_t> cycles;
        for (std::uint64_t c = 0; c < 256; ++c) {
            cycles.push_back(c);
            cycles.push_back((layout.cycle_mask() - c) & layout.cycle_mask());
        }
        for (const std::uint64_t cycle : cycles) {
            for (int safe = 0; safe < 2; ++safe) {
                for (std::uint64_t index = 0; index <= layout.index_mask(); ++index) {
                    const std::uint64_t raw = layout.pack(cycle, safe != 0, index);
                    const std::uint64_t consumed = raw | layout.index_mask();
                    REQUIRE(layout.cycle(consumed) == cycle);
                    REQUIRE(layout.is_safe(consumed) == (safe != 0));
                    REQUIRE(layout.index(consumed) == layout.bottom());
                }
            }
        }
    }
}

TEST_CASE("counter cycle and slot position decompose ring counters") {
    ScqLayout layout(3);
    RingConfig cfg{3, 0};
    CHECK(layout.counter_cycle(8) == 1);
    CHECK(layout.counter_cycle(7) == 0);
    CHECK((8 & cfg.pos_mask()) == 0);
    CHECK((13 & cfg.pos_mask()) == 5);

    // The finalize bit must be masked before deriving a cycle from Tail.
    const std::uint64_t fin = std::uint64_t{1} << 63;
    CHECK(layout.counter_cycle((8 | fin) & ~fin) == 1);
}
