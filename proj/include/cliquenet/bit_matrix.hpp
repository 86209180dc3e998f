#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cliquenet {

/// Dense row-major bit matrix. Each row is padded to a whole number of
/// 64-bit words so that a row can be scanned word by word.
class BitMatrix {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + word_bits - 1) / word_bits),
          words_(rows * stride_, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool test(std::size_t r, std::size_t c) const noexcept {
        return (words_[r * stride_ + c / word_bits] >> (c % word_bits)) & 1u;
    }

    /// Sets the bit and reports whether it was previously clear.
    bool set(std::size_t r, std::size_t c) noexcept {
        Word& w = words_[r * stride_ + c / word_bits];
        const Word mask = Word{1} << (c % word_bits);
        const bool fresh = (w & mask) == 0;
        w |= mask;
        return fresh;
    }

    std::span<const Word> row(std::size_t r) const noexcept {
        return {words_.data() + r * stride_, stride_};
    }

    template <class F>
    void for_each_in_row(std::size_t r, F&& f) const {
        const auto words = row(r);
        for (std::size_t k = 0; k < words.size(); ++k) {
            Word w = words[k];
            while (w) {
                f(k * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::size_t count() const noexcept {
        std::size_t n = 0;
        for (auto w : words_)
            n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    std::size_t row_count(std::size_t r) const noexcept {
        std::size_t n = 0;
        for (auto w : row(r))
            n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> words_;
};

} // namespace cliquenet
