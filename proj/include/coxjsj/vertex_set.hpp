#ifndef COXJSJ_VERTEX_SET_HPP
#define COXJSJ_VERTEX_SET_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace coxjsj {

using Vertex = int;

inline constexpr int max_vertices = 64;

/// Set of vertices of a defining graph, stored as a bitmask over canonical indices.
class VertexSet {
public:
    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
    VertexSet(std::initializer_list<Vertex> vs) {
        for (Vertex v : vs)
            insert(v);
    }

    static constexpr VertexSet single(Vertex v) { return VertexSet(std::uint64_t{1} << v); }
    static constexpr VertexSet first_n(int n) {
        return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(Vertex v) const { return (bits_ >> v) & 1u; }
    constexpr bool contains(VertexSet o) const { return (o.bits_ & ~bits_) == 0; }
    constexpr bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }
    constexpr Vertex min() const { return std::countr_zero(bits_); }

    constexpr void insert(Vertex v) { bits_ |= std::uint64_t{1} << v; }
    constexpr void erase(Vertex v) { bits_ &= ~(std::uint64_t{1} << v); }

    constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
    constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
    constexpr VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
    constexpr VertexSet &operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
    constexpr VertexSet &operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
    constexpr VertexSet &operator-=(VertexSet o) { bits_ &= ~o.bits_; return *this; }

    constexpr bool operator==(const VertexSet &) const = default;

    /// Orders sets by their sorted member lists, so enumeration output follows label order.
    friend std::strong_ordering operator<=>(VertexSet a, VertexSet b) {
        std::uint64_t x = a.bits_, y = b.bits_;
        while (x && y) {
            int i = std::countr_zero(x), j = std::countr_zero(y);
            if (i != j)
                return i <=> j;
            x &= x - 1;
            y &= y - 1;
        }
        if (!x && !y)
            return std::strong_ordering::equal;
        return x ? std::strong_ordering::greater : std::strong_ordering::less;
    }

    class iterator {
    public:
        using value_type = Vertex;
        using difference_type = std::ptrdiff_t;
        constexpr iterator() = default;
        constexpr explicit iterator(std::uint64_t b) : b_(b) {}
        constexpr Vertex operator*() const { return std::countr_zero(b_); }
        constexpr iterator &operator++() { b_ &= b_ - 1; return *this; }
        constexpr iterator operator++(int) { iterator t = *this; ++*this; return t; }
        constexpr bool operator==(const iterator &) const = default;

    private:
        std::uint64_t b_ = 0;
    };

    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    std::vector<Vertex> to_vector() const { return {begin(), end()}; }

private:
    std::uint64_t bits_ = 0;
};

} // namespace coxjsj

template <>
struct std::hash<coxjsj::VertexSet> {
    std::size_t operator()(coxjsj::VertexSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};

#endif
