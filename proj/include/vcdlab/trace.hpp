#pragma once

#include "errors.hpp"

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace vcdlab {

/// Bit vector recording a hypothesis restricted to a finite point set.
class Trace {
public:
    Trace() = default;
    explicit Trace(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    /// Low `size` bits of `mask`, bit i = point i.
    static Trace from_mask(std::uint64_t mask, std::size_t size) {
        if (size > 64) throw CapExceeded("Trace::from_mask supports at most 64 points");
        Trace t(size);
        if (size > 0) t.words_[0] = size == 64 ? mask : (mask & ((std::uint64_t{1} << size) - 1));
        return t;
    }

    /// Parses a string of '0'/'1' characters, point 0 first.
    static Trace parse(std::string_view bits) {
        Trace t(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                t.set(i, true);
            else if (bits[i] != '0')
                throw SchemaError("trace strings may only contain '0' and '1'");
        }
        return t;
    }

    std::size_t size() const noexcept { return size_; }

    bool operator[](std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }

    void set(std::size_t i, bool value) noexcept {
        const std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (value)
            words_[i / 64] |= bit;
        else
            words_[i / 64] &= ~bit;
    }

    std::size_t popcount() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    Trace complement() const {
        Trace t(size_);
        for (std::size_t i = 0; i < words_.size(); ++i) t.words_[i] = ~words_[i];
        if (size_ % 64 != 0) t.words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
        return t;
    }

    /// Number of positions where the two traces differ.
    std::size_t hamming(const Trace& other) const {
        if (other.size_ != size_) throw DimensionMismatch(size_, other.size_);
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] ^ other.words_[i]));
        return c;
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if ((*this)[i]) s[i] = '1';
        return s;
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ size_;
        for (auto w : words_) {
            h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

    friend bool operator==(const Trace&, const Trace&) = default;
    friend auto operator<=>(const Trace&, const Trace&) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct TraceHash {
    std::size_t operator()(const Trace& t) const noexcept { return t.hash(); }
};

} // namespace vcdlab
