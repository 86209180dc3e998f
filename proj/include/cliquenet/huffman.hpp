#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "topology.hpp"

namespace cliquenet {

/// Prefix-free code over the symbols of one message position.
///
/// Construction is deterministic: among nodes of equal weight, leaves merge
/// before internal nodes, leaves in increasing symbol order and internal
/// nodes in creation order. The first node popped becomes the `0` branch.
class HuffmanCodebook {
public:
    HuffmanCodebook() = default;

    static HuffmanCodebook build(const std::map<Symbol, std::uint64_t>& frequencies) {
        if (frequencies.empty())
            throw InvalidArgument("cannot build a Huffman code over an empty alphabet");
        if (frequencies.size() == 1)
            return from_codewords({{frequencies.begin()->first, "0"}});

        struct Node {
            std::uint64_t weight;
            bool internal;
            std::uint64_t order; // symbol for leaves, creation index for internal nodes
            int left = -1, right = -1;
            Symbol symbol = 0;
        };
        std::vector<Node> nodes;
        nodes.reserve(2 * frequencies.size());
        using Key = std::tuple<std::uint64_t, bool, std::uint64_t, int>;
        std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
        for (const auto& [symbol, weight] : frequencies) {
            nodes.push_back({weight, false, symbol, -1, -1, symbol});
            heap.emplace(weight, false, symbol, static_cast<int>(nodes.size() - 1));
        }
        std::uint64_t created = 0;
        while (heap.size() > 1) {
            const int a = std::get<3>(heap.top());
            heap.pop();
            const int b = std::get<3>(heap.top());
            heap.pop();
            const auto w = nodes[a].weight + nodes[b].weight;
            nodes.push_back({w, true, created, a, b, 0});
            heap.emplace(w, true, created++, static_cast<int>(nodes.size() - 1));
        }

        std::map<Symbol, std::string> codes;
        std::vector<std::pair<int, std::string>> todo{{std::get<3>(heap.top()), ""}};
        while (!todo.empty()) {
            auto [idx, prefix] = std::move(todo.back());
            todo.pop_back();
            const Node& n = nodes[idx];
            if (!n.internal) {
                codes[n.symbol] = prefix;
                continue;
            }
            todo.emplace_back(n.right, prefix + '1');
            todo.emplace_back(n.left, prefix + '0');
        }
        return from_codewords(std::move(codes));
    }

    /// Builds a codebook from explicit codewords; rejects codes that are
    /// empty, contain characters other than 0/1, or are not prefix-free.
    static HuffmanCodebook from_codewords(std::map<Symbol, std::string> codes) {
        HuffmanCodebook book;
        for (const auto& [symbol, word] : codes) {
            if (word.empty())
                throw InvalidArgument("empty codeword for symbol " + std::to_string(symbol));
            int node = 0;
            for (char ch : word) {
                if (ch != '0' && ch != '1')
                    throw InvalidArgument("codeword characters must be 0 or 1");
                if (book.trie_[node].symbol)
                    throw InvalidArgument("code is not prefix-free at symbol " + std::to_string(symbol));
                const int bit = ch - '0';
                if (book.trie_[node].child[bit] < 0) {
                    book.trie_[node].child[bit] = static_cast<int>(book.trie_.size());
                    book.trie_.push_back({});
                }
                node = book.trie_[node].child[bit];
            }
            if (book.trie_[node].symbol || book.trie_[node].child[0] >= 0 || book.trie_[node].child[1] >= 0)
                throw InvalidArgument("code is not prefix-free at symbol " + std::to_string(symbol));
            book.trie_[node].symbol = symbol;
        }
        book.codes_ = std::move(codes);
        return book;
    }

    const std::map<Symbol, std::string>& codewords() const noexcept { return codes_; }

    const std::string* codeword(Symbol s) const {
        auto it = codes_.find(s);
        return it == codes_.end() ? nullptr : &it->second;
    }

    /// Reads one codeword from `bits` starting at `pos`; advances `pos` on success.
    std::optional<Symbol> read(const std::vector<bool>& bits, std::size_t& pos) const {
        int node = 0;
        std::size_t p = pos;
        while (!trie_[node].symbol) {
            if (p >= bits.size())
                return std::nullopt;
            node = trie_[node].child[bits[p++] ? 1 : 0];
            if (node < 0)
                return std::nullopt;
        }
        pos = p;
        return trie_[node].symbol;
    }

    double kraft_sum() const {
        double sum = 0.0;
        for (const auto& [s, w] : codes_)
            sum += std::ldexp(1.0, -static_cast<int>(w.size()));
        return sum;
    }

    std::size_t max_length() const {
        std::size_t m = 0;
        for (const auto& [s, w] : codes_)
            m = std::max(m, w.size());
        return m;
    }

    friend bool operator==(const HuffmanCodebook& a, const HuffmanCodebook& b) { return a.codes_ == b.codes_; }

private:
    struct TrieNode {
        int child[2] = {-1, -1};
        std::optional<Symbol> symbol;
    };

    std::map<Symbol, std::string> codes_;
    std::vector<TrieNode> trie_ = std::vector<TrieNode>(1);
};

} // namespace cliquenet
