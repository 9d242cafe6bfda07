#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace gbf {

// Fixed-universe bitset for element sets of one group (universe = group order).
class Mask {
public:
    Mask() = default;
    explicit Mask(unsigned universe) : bits_((universe + 63) / 64, 0), universe_(universe) {}

    void set(unsigned i) { bits_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(unsigned i) { bits_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(unsigned i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
    unsigned universe() const { return universe_; }

    unsigned count() const {
        unsigned c = 0;
        for (uint64_t w : bits_) c += static_cast<unsigned>(__builtin_popcountll(w));
        return c;
    }

    bool subset_of(const Mask& o) const {
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~o.bits_[i]) return false;
        return true;
    }

    Mask operator&(const Mask& o) const {
        Mask r(universe_);
        for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
        return r;
    }

    bool operator==(const Mask& o) const = default;

    // Sorted element list.
    std::vector<uint16_t> elements() const {
        std::vector<uint16_t> out;
        out.reserve(count());
        for (unsigned i = 0; i < universe_; ++i)
            if (test(i)) out.push_back(static_cast<uint16_t>(i));
        return out;
    }

    size_t hash() const {
        size_t h = universe_;
        for (uint64_t w : bits_) h ^= std::hash<uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    std::vector<uint64_t> bits_;
    unsigned universe_ = 0;
};

struct MaskHash {
    size_t operator()(const Mask& m) const { return m.hash(); }
};

}  // namespace gbf
