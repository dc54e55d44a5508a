// Deferred reclamation for the unbounded queue's ring nodes: one hazard slot
// per registered thread, a lock-free retired list, and a scan that destroys
// retired objects no slot still points at.

#ifndef RINGQ_HAZARD_HPP_
#define RINGQ_HAZARD_HPP_

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ringq/ring.hpp"

namespace ringq {

class HazardDomain;

namespace detail {

// Domains register here so that thread-exit cleanup can tell a live domain
// from one that has already been destroyed.
struct DomainRegistry {
    std::mutex mu;
    std::unordered_map<std::uint64_t, HazardDomain*> live;

    static DomainRegistry& instance() {
        static DomainRegistry registry;
        return registry;
    }
};

inline std::uint64_t next_domain_id() {
    static std::atomic<std::uint64_t> serial{1};
    return serial.fetch_add(1, std::memory_order_relaxed);
}

struct SlotCache {
    struct Entry {
        std::uint64_t domain_id;
        void* slot;
    };
    std::vector<Entry> entries;

    ~SlotCache();

    static SlotCache& mine() {
        thread_local SlotCache cache;
        return cache;
    }
};

}  // namespace detail

/// Threads claim a slot implicitly on their first protect() against a domain
/// and hold it until they exit (or the domain dies). Each operation protects
/// at most one node, so a single pointer per thread suffices.
class HazardDomain {
public:
    explicit HazardDomain(std::size_t max_threads = 128)
        : id_(detail::next_domain_id()),
          slot_count_(max_threads),
          slots_(std::make_unique<Slot[]>(max_threads)) {
        auto& reg = detail::DomainRegistry::instance();
        std::lock_guard<std::mutex> lock(reg.mu);
        reg.live.emplace(id_, this);
    }

    ~HazardDomain() {
        {
            auto& reg = detail::DomainRegistry::instance();
            std::lock_guard<std::mutex> lock(reg.mu);
            reg.live.erase(id_);
        }
        drain_unchecked();
    }

    HazardDomain(const HazardDomain&) = delete;
    HazardDomain& operator=(const HazardDomain&) = delete;

    /// Publishes the pointer read from `src` in this thread's slot and
    /// re-validates it, so the referent cannot be destroyed while protected.
    template <class T>
    T* protect(const std::atomic<T*>& src) {
        Slot& slot = my_slot();
        T* candidate = src.load(std::memory_order_acquire);
        for (;;) {
            slot.ptr.store(candidate, std::memory_order_release);
            std::atomic_thread_fence(std::memory_order_seq_cst);
            T* current = src.load(std::memory_order_acquire);
            if (current == candidate) {
                return candidate;
            }
            candidate = current;
        }
    }

    void clear() { my_slot().ptr.store(nullptr, std::memory_order_release); }

    /// Hands an unlinked object to the reclaimer. Destroyed by some later
    /// scan() once no slot references it.
    void retire(void* obj, void (*deleter)(void*)) {
        auto* record = new Retired{obj, deleter, retired_head_.load(std::memory_order_relaxed)};
        while (!retired_head_.compare_exchange_weak(record->next, record,
                                                    std::memory_order_release,
                                                    std::memory_order_relaxed)) {
        }
        retired_count_.fetch_add(1, std::memory_order_relaxed);
        scan();
    }

    /// Destroys every retired object not currently protected. Returns the
    /// number destroyed.
    std::size_t scan() {
        Retired* batch = retired_head_.exchange(nullptr, std::memory_order_acq_rel);
        if (batch == nullptr) {
            return 0;
        }
        std::atomic_thread_fence(std::memory_order_seq_cst);
        std::vector<const void*> hazards;
        hazards.reserve(16);
        for (std::size_t i = 0; i < slot_count_; ++i) {
            if (!slots_[i].active.load(std::memory_order_acquire)) {
                continue;
            }
            if (const void* p = slots_[i].ptr.load(std::memory_order_acquire)) {
                hazards.push_back(p);
            }
        }
        std::size_t destroyed = 0;
        while (batch != nullptr) {
            Retired* next = batch->next;
            bool protected_now = false;
            for (const void* h : hazards) {
                if (h == batch->obj) {
                    protected_now = true;
                    break;
                }
            }
            if (protected_now) {
                batch->next = retired_head_.load(std::memory_order_relaxed);
                while (!retired_head_.compare_exchange_weak(batch->next, batch,
                                                            std::memory_order_release,
                                                            std::memory_order_relaxed)) {
                }
            } else {
                retired_count_.fetch_sub(1, std::memory_order_relaxed);
                batch->deleter(batch->obj);
                delete batch;
                ++destroyed;
            }
            batch = next;
        }
        return destroyed;
    }

    /// Destroys everything retired, ignoring hazard slots. Only valid when no
    /// thread can still hold a reference (destructor-time quiescence).
    void drain_unchecked() {
        Retired* batch = retired_head_.exchange(nullptr, std::memory_order_acq_rel);
        while (batch != nullptr) {
            Retired* next = batch->next;
            retired_count_.fetch_sub(1, std::memory_order_relaxed);
            batch->deleter(batch->obj);
            delete batch;
            batch = next;
        }
    }

    [[nodiscard]] std::size_t retired_count() const noexcept {
        return retired_count_.load(std::memory_order_acquire);
    }

private:
    friend struct detail::SlotCache;

    struct alignas(kCacheLineSize) Slot {
        std::atomic<const void*> ptr{nullptr};
        std::atomic<bool> active{false};
    };
    struct Retired {
        void* obj;
        void (*deleter)(void*);
        Retired* next;
    };

    Slot& my_slot() {
        auto& cache = detail::SlotCache::mine();
        for (const auto& entry : cache.entries) {
            if (entry.domain_id == id_) {
                return *static_cast<Slot*>(entry.slot);
            }
        }
        for (std::size_t i = 0; i < slot_count_; ++i) {
            bool expected = false;
            if (slots_[i].active.compare_exchange_strong(expected, true,
                                                         std::memory_order_acq_rel)) {
                cache.entries.push_back({id_, &slots_[i]});
                return slots_[i];
            }
        }
        throw std::runtime_error("HazardDomain: per-thread slot capacity exhausted");
    }

    void release_slot(void* slot_ptr) {
        auto* slot = static_cast<Slot*>(slot_ptr);
        slot->ptr.store(nullptr, std::memory_order_release);
        slot->active.store(false, std::memory_order_release);
    }

    std::uint64_t id_;
    std::size_t slot_count_;
    std::unique_ptr<Slot[]> slots_;
    std::atomic<Retired*> retired_head_{nullptr};
    std::atomic<std::size_t> retired_count_{0};
};

namespace detail {

inline SlotCache::~SlotCache() {
    auto& reg = DomainRegistry::instance();
    std::lock_guard<std::mutex> lock(reg.mu);
    for (const auto& entry : entries) {
        auto it = reg.live.find(entry.domain_id);
        if (it != reg.live.end()) {
            it->second->release_slot(entry.slot);
        }
    }
}

}  // namespace detail

}  // namespace ringq

#endif  // RINGQ_HAZARD_HPP_
