#ifndef COLLINEAR_DETAIL_VISITED_SET_HPP
#define COLLINEAR_DETAIL_VISITED_SET_HPP

#include <cstdint>
#include <vector>

namespace collinear::detail {

/// Open-addressing set of (depth, x, y) triples. clear() is O(1): slots
/// carry a generation stamp and stale generations read as empty.
class VisitedSet {
public:
    VisitedSet() { rehash(1u << 12); }

    void clear() noexcept {
        size_ = 0;
        if (++generation_ == 0) {
            for (auto& s : slots_) s.generation = 0;
            generation_ = 1;
        }
    }

    std::size_t size() const noexcept { return size_; }

    /// Returns true if the key was absent.
    bool insert(std::int32_t depth, std::int64_t x, std::int64_t y) {
        if ((size_ + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
        return place(depth, x, y);
    }

private:
    struct Slot {
        std::int64_t x;
        std::int64_t y;
        std::int32_t depth;
        std::uint32_t generation;
    };

    static std::uint64_t hash(std::int32_t d, std::int64_t x, std::int64_t y) noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ULL;
        h ^= (h >> 29) + static_cast<std::uint64_t>(y) * 0xC2B2AE3D27D4EB4FULL;
        h ^= (h >> 31) + static_cast<std::uint64_t>(static_cast<std::uint32_t>(d)) * 0x165667B19E3779F9ULL;
        h ^= h >> 32;
        return h * 0xD6E8FEB86659FD93ULL;
    }

    bool place(std::int32_t d, std::int64_t x, std::int64_t y) {
        const std::size_t mask = slots_.size() - 1;
        for (std::size_t i = static_cast<std::size_t>(hash(d, x, y) >> 7) & mask;; i = (i + 1) & mask) {
            Slot& s = slots_[i];
            if (s.generation != generation_) {
                s = {x, y, d, generation_};
                ++size_;
                return true;
            }
            if (s.x == x && s.y == y && s.depth == d) return false;
        }
    }

    void rehash(std::size_t capacity) {
        std::vector<Slot> old;
        old.swap(slots_);
        const std::uint32_t old_gen = generation_;
        slots_.assign(capacity, Slot{0, 0, 0, 0});
        generation_ = 1;
        size_ = 0;
        for (const auto& s : old)
            if (s.generation == old_gen && old_gen != 0) place(s.depth, s.x, s.y);
    }

    std::vector<Slot> slots_;
    std::uint32_t generation_ = 1;
    std::size_t size_ = 0;
};

}  // namespace collinear::detail

#endif  // COLLINEAR_DETAIL_VISITED_SET_HPP
