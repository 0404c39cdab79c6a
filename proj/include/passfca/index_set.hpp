#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace passfca {

struct attribute_tag {};
struct object_tag {};

/// Set of indices drawn from a fixed universe [0, universe), packed 64 per word.
///
/// The tag keeps attribute sets and object sets from being mixed up; both
/// share the same representation. Iteration visits members in ascending order.
template <class Tag>
class IndexSet {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    class const_iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = std::size_t;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = std::size_t;

        const_iterator() = default;
        const_iterator(const IndexSet* set, std::size_t word) : set_(set), word_(word) { settle(); }

        std::size_t operator*() const { return word_ * word_bits + static_cast<std::size_t>(std::countr_zero(bits_)); }

        const_iterator& operator++()
        {
            bits_ &= bits_ - 1;
            if (bits_ == 0) {
                ++word_;
                settle();
            }
            return *this;
        }
        const_iterator operator++(int)
        {
            auto copy = *this;
            ++*this;
            return copy;
        }

        friend bool operator==(const const_iterator& a, const const_iterator& b)
        {
            return a.word_ == b.word_ && a.bits_ == b.bits_;
        }

    private:
        void settle()
        {
            bits_ = 0;
            while (word_ < set_->words_.size()) {
                bits_ = set_->words_[word_];
                if (bits_ != 0) return;
                ++word_;
            }
            bits_ = 0;
        }

        const IndexSet* set_ = nullptr;
        std::size_t word_ = 0;
        word_type bits_ = 0;
    };

    IndexSet() = default;
    explicit IndexSet(std::size_t universe) : universe_(universe), words_((universe + word_bits - 1) / word_bits, 0) {}
    IndexSet(std::size_t universe, std::initializer_list<std::size_t> members) : IndexSet(universe)
    {
        for (auto m : members) insert(m);
    }
    template <class Range>
    static IndexSet from_range(std::size_t universe, const Range& members)
    {
        IndexSet s(universe);
        for (auto m : members) s.insert(static_cast<std::size_t>(m));
        return s;
    }
    static IndexSet full(std::size_t universe)
    {
        IndexSet s(universe);
        for (auto& w : s.words_) w = ~word_type{0};
        s.trim();
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept
    {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    bool empty() const noexcept
    {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }
    bool is_full() const noexcept { return size() == universe_; }

    bool contains(std::size_t i) const noexcept
    {
        return i < universe_ && (words_[i / word_bits] >> (i % word_bits) & 1u) != 0;
    }
    void insert(std::size_t i)
    {
        check_index(i);
        words_[i / word_bits] |= word_type{1} << (i % word_bits);
    }
    void erase(std::size_t i)
    {
        check_index(i);
        words_[i / word_bits] &= ~(word_type{1} << (i % word_bits));
    }
    void clear() noexcept
    {
        for (auto& w : words_) w = 0;
    }

    /// Drops every member >= bound.
    void keep_below(std::size_t bound) noexcept
    {
        if (bound >= universe_) return;
        std::size_t w = bound / word_bits;
        std::size_t bit = bound % word_bits;
        words_[w] &= bit == 0 ? 0 : (~word_type{0} >> (word_bits - bit));
        for (++w; w < words_.size(); ++w) words_[w] = 0;
    }

    /// True iff some member is strictly less than bound.
    bool any_below(std::size_t bound) const noexcept
    {
        if (bound > universe_) bound = universe_;
        std::size_t full_words = bound / word_bits;
        for (std::size_t w = 0; w < full_words; ++w)
            if (words_[w] != 0) return true;
        std::size_t bit = bound % word_bits;
        return bit != 0 && (words_[full_words] & (~word_type{0} >> (word_bits - bit))) != 0;
    }

    /// True iff (*this \ other) has a member strictly less than bound.
    bool any_new_below(const IndexSet& other, std::size_t bound) const
    {
        check_universe(other);
        if (bound > universe_) bound = universe_;
        std::size_t full_words = bound / word_bits;
        for (std::size_t w = 0; w < full_words; ++w)
            if ((words_[w] & ~other.words_[w]) != 0) return true;
        std::size_t bit = bound % word_bits;
        return bit != 0 && (words_[full_words] & ~other.words_[full_words] & (~word_type{0} >> (word_bits - bit))) != 0;
    }

    bool is_subset_of(const IndexSet& other) const
    {
        check_universe(other);
        for (std::size_t w = 0; w < words_.size(); ++w)
            if ((words_[w] & ~other.words_[w]) != 0) return false;
        return true;
    }
    bool intersects(const IndexSet& other) const
    {
        check_universe(other);
        for (std::size_t w = 0; w < words_.size(); ++w)
            if ((words_[w] & other.words_[w]) != 0) return true;
        return false;
    }

    IndexSet& operator|=(const IndexSet& other)
    {
        check_universe(other);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
        return *this;
    }
    IndexSet& operator&=(const IndexSet& other)
    {
        check_universe(other);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
        return *this;
    }
    IndexSet& operator-=(const IndexSet& other)
    {
        check_universe(other);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
        return *this;
    }
    friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
    friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
    friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

    const_iterator begin() const { return const_iterator(this, 0); }
    const_iterator end() const { return const_iterator(this, words_.size()); }

    std::vector<std::size_t> to_vector() const { return {begin(), end()}; }
    const std::vector<word_type>& words() const noexcept { return words_; }

private:
    void check_index(std::size_t i) const
    {
        if (i >= universe_)
            throw std::invalid_argument("index " + std::to_string(i) + " out of range for universe of size " +
                                        std::to_string(universe_));
    }
    void check_universe(const IndexSet& other) const
    {
        if (other.universe_ != universe_)
            throw std::invalid_argument("index sets over different universes (" + std::to_string(universe_) +
                                        " vs " + std::to_string(other.universe_) + ")");
    }
    void trim() noexcept
    {
        if (universe_ % word_bits != 0 && !words_.empty())
            words_.back() &= ~word_type{0} >> (word_bits - universe_ % word_bits);
    }

    std::size_t universe_ = 0;
    std::vector<word_type> words_;
};

using AttributeSet = IndexSet<attribute_tag>;
using ObjectSet = IndexSet<object_tag>;

/// Lectic order over subsets of the same universe: A < B iff the smallest
/// index in the symmetric difference belongs to B.
template <class Tag>
bool lectic_less(const IndexSet<Tag>& a, const IndexSet<Tag>& b)
{
    if (a.universe() != b.universe()) throw std::invalid_argument("lectic_less: different universes");
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (std::size_t w = 0; w < wa.size(); ++w) {
        auto diff = wa[w] ^ wb[w];
        if (diff != 0) return (wb[w] & (diff & (~diff + 1))) != 0;
    }
    return false;
}

} // namespace passfca
