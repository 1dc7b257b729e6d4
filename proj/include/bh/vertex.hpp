#ifndef BH_VERTEX_HPP
#define BH_VERTEX_HPP

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>
#include <string_view>

#include "bh/errors.hpp"

namespace bh {

// Dimensions beyond 8 would blow past desk scale anyway (4^8 = 65536 vertices).
inline constexpr int kMaxDim = 8;

enum class Parity { Even, Odd };

// A vertex of BH_n: n digits over {0,1,2,3}, digit 0 leftmost.
class Vertex {
public:
    Vertex() = default;

    Vertex(std::initializer_list<int> digits) {
        if (digits.size() == 0 || digits.size() > kMaxDim)
            throw Error("vertex: bad digit count");
        n_ = static_cast<std::uint8_t>(digits.size());
        int i = 0;
        for (int d : digits) {
            if (d < 0 || d > 3) throw Error("vertex: digit out of range");
            d_[i++] = static_cast<std::uint8_t>(d);
        }
    }

    static Vertex from_string(std::string_view s) {
        if (s.empty() || s.size() > kMaxDim)
            throw ParseError("vertex string has bad length: '" + std::string(s) + "'");
        Vertex v;
        v.n_ = static_cast<std::uint8_t>(s.size());
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '3')
                throw ParseError("vertex digit not in {0,1,2,3}: '" + std::string(s) + "'");
            v.d_[i] = static_cast<std::uint8_t>(s[i] - '0');
        }
        return v;
    }

    int size() const { return n_; }
    int digit(int i) const { return d_[static_cast<size_t>(i)]; }

    Vertex with_digit(int i, int val) const {
        Vertex v = *this;
        v.d_[static_cast<size_t>(i)] = static_cast<std::uint8_t>(((val % 4) + 4) % 4);
        return v;
    }

    // Drop digit j: the label of this vertex inside its partition block.
    Vertex dropped(int j) const {
        Vertex v;
        v.n_ = static_cast<std::uint8_t>(n_ - 1);
        int k = 0;
        for (int i = 0; i < n_; ++i)
            if (i != j) v.d_[k++] = d_[static_cast<size_t>(i)];
        return v;
    }

    Vertex inserted(int j, int val) const {
        Vertex v;
        v.n_ = static_cast<std::uint8_t>(n_ + 1);
        int k = 0;
        for (int i = 0; i < v.n_; ++i) {
            if (i == j) v.d_[i] = static_cast<std::uint8_t>(val);
            else v.d_[i] = d_[static_cast<size_t>(k++)];
        }
        return v;
    }

    Parity parity() const { return d_[0] % 2 == 0 ? Parity::Even : Parity::Odd; }
    bool even() const { return d_[0] % 2 == 0; }

    std::string str() const {
        std::string s(static_cast<size_t>(n_), '0');
        for (int i = 0; i < n_; ++i) s[static_cast<size_t>(i)] = static_cast<char>('0' + d_[static_cast<size_t>(i)]);
        return s;
    }

    // Lexicographic rank among all vertices of the same dimension.
    size_t rank() const {
        size_t r = 0;
        for (int i = 0; i < n_; ++i) r = r * 4 + d_[static_cast<size_t>(i)];
        return r;
    }

    static Vertex from_rank(int n, size_t r) {
        Vertex v;
        v.n_ = static_cast<std::uint8_t>(n);
        for (int i = n - 1; i >= 0; --i) {
            v.d_[static_cast<size_t>(i)] = static_cast<std::uint8_t>(r & 3);
            r >>= 2;
        }
        return v;
    }

    friend bool operator==(const Vertex& a, const Vertex& b) {
        if (a.n_ != b.n_) return false;
        for (int i = 0; i < a.n_; ++i)
            if (a.d_[static_cast<size_t>(i)] != b.d_[static_cast<size_t>(i)]) return false;
        return true;
    }
    friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }
    friend bool operator<(const Vertex& a, const Vertex& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (int i = 0; i < a.n_; ++i)
            if (a.d_[static_cast<size_t>(i)] != b.d_[static_cast<size_t>(i)])
                return a.d_[static_cast<size_t>(i)] < b.d_[static_cast<size_t>(i)];
        return false;
    }
    friend bool operator<=(const Vertex& a, const Vertex& b) { return a < b || a == b; }
    friend bool operator>(const Vertex& a, const Vertex& b) { return b < a; }

private:
    std::array<std::uint8_t, kMaxDim> d_{};
    std::uint8_t n_ = 0;
};

} // namespace bh

#endif
