// Packed membership set of blue vertices; the process state.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pzf {

class BlueSet {
public:
    BlueSet() = default;
    explicit BlueSet(int n) : n_(n), words_((static_cast<size_t>(n) + 63) / 64, 0) {}

    static BlueSet all(int n) {
        BlueSet s(n);
        for (int v = 0; v < n; ++v) s.set(v);
        return s;
    }
    static BlueSet of(int n, const std::vector<int>& vertices) {
        BlueSet s(n);
        for (int v : vertices) s.set(v);
        return s;
    }

    int universe_size() const { return n_; }
    int count() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool full() const { return count_ == n_; }

    bool test(int v) const { return (words_[static_cast<size_t>(v) >> 6] >> (v & 63)) & 1; }

    void set(int v) {
        if (v < 0 || v >= n_) throw std::out_of_range("BlueSet: vertex out of range");
        uint64_t& w = words_[static_cast<size_t>(v) >> 6];
        uint64_t bit = uint64_t{1} << (v & 63);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }

    bool is_subset_of(const BlueSet& other) const {
        if (n_ != other.n_) return false;
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    friend bool operator==(const BlueSet&, const BlueSet&) = default;

    template <class F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t w = words_[i];
            while (w) {
                int bit = __builtin_ctzll(w);
                f(static_cast<int>(i * 64) + bit);
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count_);
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    // Mask view for the exact solvers (universe must fit a 32-bit mask).
    uint32_t to_mask() const {
        if (n_ > 32) throw std::invalid_argument("BlueSet: universe too large for mask view");
        return words_.empty() ? 0u : static_cast<uint32_t>(words_[0]);
    }
    static BlueSet from_mask(int n, uint32_t mask) {
        if (n > 32) throw std::invalid_argument("BlueSet: universe too large for mask view");
        BlueSet s(n);
        for (int v = 0; v < n; ++v)
            if ((mask >> v) & 1) s.set(v);
        return s;
    }

private:
    int n_ = 0;
    int count_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace pzf
