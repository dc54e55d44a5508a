// Unbounded MPMC queue: a lock-free list of bounded value rings. A full ring
// is finalized so no new elements can slip in, a fresh ring is linked behind
// it, and drained rings are unlinked and handed to the hazard reclaimer.

#ifndef RINGQ_LSCQ_HPP_
#define RINGQ_LSCQ_HPP_

#include <atomic>
#include <cassert>
#include <cstdint>
#include <optional>

#include "ringq/hazard.hpp"
#include "ringq/hooks.hpp"
#include "ringq/scq.hpp"
#include "ringq/value_queue.hpp"

namespace ringq {

template <class T, class Hooks = NoHooks>
class Lscq {
public:
    struct Stats {
        std::uint64_t live_nodes;      // allocated and not yet destroyed
        std::uint64_t max_live_nodes;  // high-water mark of live_nodes
        std::uint64_t total_nodes;     // ever allocated
    };

    explicit Lscq(std::uint32_t ring_order = 12, std::size_t max_threads = 128)
        : ring_order_(ring_order), hazard_(max_threads) {
        Node* first = make_node();
        list_head_.store(first, std::memory_order_relaxed);
        list_tail_.store(first, std::memory_order_relaxed);
    }

    ~Lscq() {
        hazard_.drain_unchecked();
        Node* node = list_head_.load(std::memory_order_relaxed);
        while (node != nullptr) {
            Node* next = node->next.load(std::memory_order_relaxed);
            destroy_node(node);
            node = next;
        }
    }

    Lscq(const Lscq&) = delete;
    Lscq& operator=(const Lscq&) = delete;

    void enqueue(const T& value) {
        for (;;) {
            Node* tail_node = hazard_.protect(list_tail_);
            Node* next = tail_node->next.load(std::memory_order_acquire);
            if (next != nullptr) {
                list_tail_.compare_exchange_strong(tail_node, next, std::memory_order_acq_rel,
                                                   std::memory_order_relaxed);
                continue;  // Tail pointer lagged behind; move it.
            }
            if (tail_node->ring.enqueue_or_finalize(value)) {
                hazard_.clear();
                return;
            }
            // Ring full and now finalized: link a fresh ring seeded with the
            // value. Losing the link race discards the fresh ring (it was
            // never published) and retries on the winner's node.
            Node* fresh = make_node();
            bool seeded = fresh->ring.enqueue(value);
            assert(seeded);
            (void)seeded;
            Node* expected = nullptr;
            if (tail_node->next.compare_exchange_strong(expected, fresh,
                                                        std::memory_order_acq_rel,
                                                        std::memory_order_relaxed)) {
                list_tail_.compare_exchange_strong(tail_node, fresh, std::memory_order_acq_rel,
                                                   std::memory_order_relaxed);
                hazard_.clear();
                return;
            }
            destroy_node(fresh);
        }
    }

    [[nodiscard]] std::optional<T> dequeue() {
        for (;;) {
            Node* head_node = hazard_.protect(list_head_);
            if (auto value = head_node->ring.dequeue()) {
                hazard_.clear();
                return value;
            }
            Node* next = head_node->next.load(std::memory_order_acquire);
            if (next == nullptr) {
                hazard_.clear();
                return std::nullopt;
            }
            // The ring is finalized but enqueuers that reserved a slot before
            // the finalize may still complete. Re-arm the threshold so this
            // pass can invalidate their slots (or take their element), then
            // retry once before unlinking.
            head_node->ring.reset_aq_threshold();
            if (auto value = head_node->ring.dequeue()) {
                hazard_.clear();
                return value;
            }
            if (list_head_.compare_exchange_strong(head_node, next, std::memory_order_acq_rel,
                                                   std::memory_order_relaxed)) {
                hazard_.clear();
                hazard_.retire(head_node, &delete_node_callback);
            }
        }
    }

    [[nodiscard]] Stats stats() const noexcept {
        return {live_nodes_.load(std::memory_order_acquire),
                max_live_.load(std::memory_order_acquire),
                total_nodes_.load(std::memory_order_acquire)};
    }

    /// Runs a reclamation pass; useful after quiescence to settle live_nodes.
    std::size_t reclaim() { return hazard_.scan(); }

    [[nodiscard]] std::uint64_t ring_capacity() const noexcept {
        return std::uint64_t{1} << ring_order_;
    }

private:
    struct Node {
        ValueQueue<T, Scq<Hooks>> ring;
        std::atomic<Node*> next{nullptr};
        Lscq* owner;

        Node(std::uint32_t order, Lscq* own) : ring(order), owner(own) {}
    };

    Node* make_node() {
        Node* node = new Node(ring_order_, this);
        total_nodes_.fetch_add(1, std::memory_order_relaxed);
        const std::uint64_t live = live_nodes_.fetch_add(1, std::memory_order_acq_rel) + 1;
        std::uint64_t seen = max_live_.load(std::memory_order_relaxed);
        while (seen < live &&
               !max_live_.compare_exchange_weak(seen, live, std::memory_order_relaxed)) {
        }
        return node;
    }

    void destroy_node(Node* node) {
        live_nodes_.fetch_sub(1, std::memory_order_acq_rel);
        delete node;
    }

    static void delete_node_callback(void* p) {
        Node* node = static_cast<Node*>(p);
        node->owner->destroy_node(node);
    }

    std::uint32_t ring_order_;
    HazardDomain hazard_;
    alignas(kCacheLineSize) std::atomic<Node*> list_head_{nullptr};
    alignas(kCacheLineSize) std::atomic<Node*> list_tail_{nullptr};
    std::atomic<std::uint64_t> live_nodes_{0};
    std::atomic<std::uint64_t> max_live_{0};
    std::atomic<std::uint64_t> total_nodes_{0};
};

}  // namespace ringq

#endif  // RINGQ_LSCQ_HPP_
