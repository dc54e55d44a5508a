#include <cstdint>
#include <deque>
#include <optional>
#include <random>

#include <doctest.h>

#include "ringq/ncq.hpp"

using ringq::Ncq;
using ringq::RingInit;

TEST_CASE("empty ncq reports empty without moving head") {
    Ncq<> q(2);
    CHECK(q.raw_head() == 4);
    CHECK(q.raw_tail() == 4);
    CHECK_FALSE(q.dequeue().has_value());
    CHECK(q.raw_head() == 4);
}

TEST_CASE("first enqueue installs at the remapped slot with tail's cycle") {
    Ncq<> q(2);  // n = 4, remap degenerates to identity
    q.enqueue(2);
    CHECK(q.raw_tail() == 5);
    const std::uint64_t entry = q.raw_entry(q.config().remap(0));
    CHECK(q.layout().cycle(entry) == 1);
    CHECK(q.layout().index(entry) == 2);
}

TEST_CASE("singleton round trip") {
    Ncq<> q(2);
    q.enqueue(0);
    CHECK(q.dequeue() == 0);
    CHECK_FALSE(q.dequeue().has_value());
}

TEST_CASE("sequential FIFO order") {
    Ncq<> q(2);
    for (std::uint64_t i = 0; i < 4; ++i) {
        q.enqueue(i);
    }
    for (std::uint64_t i = 0; i < 4; ++i) {
        CHECK(q.dequeue() == i);
    }
    CHECK_FALSE(q.dequeue().has_value());
}

TEST_CASE("full-initialized ring serves 0..n-1 then reports empty") {
    Ncq<> q(2, RingInit::Full);
    CHECK(q.raw_head() == 0);
    CHECK(q.raw_tail() == 4);
    for (std::uint64_t i = 0; i < 4; ++i) {
        CHECK(q.dequeue() == i);
    }
    CHECK_FALSE(q.dequeue().has_value());
}

TEST_CASE("ring survives cycle advance past one lap") {
    Ncq<> q(2);
    for (std::uint64_t i = 0; i < 4; ++i) {
        q.enqueue(i);
        CHECK(q.dequeue() == i);
    }
    // Counters now at cycle 2.
    q.enqueue(3);
    CHECK(q.dequeue() == 3);
    CHECK_FALSE(q.dequeue().has_value());
}

TEST_CASE("capacity-1 ring works across many laps") {
    Ncq<> q(0);
    for (int lap = 0; lap < 100; ++lap) {
        q.enqueue(0);
        CHECK(q.dequeue() == 0);
        CHECK_FALSE(q.dequeue().has_value());
    }
}

TEST_CASE("random sequential runs match a bounded FIFO model") {
    std::mt19937_64 rng(7);
    for (std::uint32_t order : {0u, 1u, 4u}) {
        Ncq<> q(order);
        const std::uint64_t n = q.capacity();
        std::deque<std::uint64_t> model;
        for (int step = 0; step < 20000; ++step) {
            // Two-queue discipline: never enqueue with n elements live.
            const bool do_enqueue = model.size() < n && (model.empty() || (rng() & 1) != 0);
            if (do_enqueue) {
                const std::uint64_t v = rng() % n;
                q.enqueue(v);
                model.push_back(v);
            } else {
                const auto got = q.dequeue();
                if (model.empty()) {
                    REQUIRE_FALSE(got.has_value());
                } else {
                    REQUIRE(got == model.front());
                    model.pop_front();
                }
            }
        }
    }
}
