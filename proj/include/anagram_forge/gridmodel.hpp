#pragma once

// The 2 x n grid, its colourings, blocks of consecutive columns, and the
// layout that turns a string of block symbols into a coloured grid.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace anagram_forge {

enum class Row : std::uint8_t { Top = 0, Bottom = 1 };

/// a_j is (Top, j), b_j is (Bottom, j).
struct GridVertex {
    Row row = Row::Top;
    std::uint32_t column = 0;

    /// Dense id: 2 * column + (row == Bottom). Orders vertices column-major.
    std::uint32_t id() const { return 2 * column + static_cast<std::uint32_t>(row); }
    static GridVertex from_id(std::uint32_t id) { return {static_cast<Row>(id & 1u), id >> 1}; }

    /// "a3" / "b0"
    std::string name() const;
    static GridVertex parse(std::string_view name);

    friend bool operator==(const GridVertex&, const GridVertex&) = default;
    friend std::strong_ordering operator<=>(const GridVertex& x, const GridVertex& y) {
        return x.id() <=> y.id();
    }
};

inline GridVertex top(std::uint32_t column) { return {Row::Top, column}; }
inline GridVertex bottom(std::uint32_t column) { return {Row::Bottom, column}; }

using Colour = std::uint32_t;

/// A c-colouring of G_n. Colours are 1-based.
class GridColouring {
public:
    GridColouring() = default;
    /// Throws std::invalid_argument on row-length mismatch or colours outside [1, c].
    GridColouring(std::size_t c, std::vector<Colour> top, std::vector<Colour> bottom);

    static GridColouring uniform(std::size_t n, std::size_t c, Colour colour);

    std::size_t n() const { return top_.size(); }
    std::size_t c() const { return c_; }
    const std::vector<Colour>& top_row() const { return top_; }
    const std::vector<Colour>& bottom_row() const { return bottom_; }
    Colour at(GridVertex v) const { return v.row == Row::Top ? top_.at(v.column) : bottom_.at(v.column); }

    /// Left-right mirror image.
    GridColouring mirrored() const;

    bool operator==(const GridColouring&) const = default;

private:
    std::size_t c_ = 1;
    std::vector<Colour> top_;
    std::vector<Colour> bottom_;
};

/// The colouring induced on a run of consecutive columns, re-indexed from 0.
struct BlockColouring {
    GridColouring colouring;

    std::size_t width() const { return colouring.n(); }
    bool operator==(const BlockColouring&) const = default;
};

/// One letter of a block string: a colourful block of width 4k.
struct BlockSymbol {
    std::size_t k = 1;
    BlockColouring phi;

    bool operator==(const BlockSymbol&) const = default;
};

struct BlockString {
    std::size_t c = 1;
    std::size_t ell = 1;
    /// Colouring of every 4-wide boring block.
    BlockColouring phi_star;
    std::vector<BlockSymbol> symbols;

    /// Throws std::invalid_argument when widths or colour counts disagree.
    void validate() const;
};

/// Horizontal neighbours in the same row plus the vertical partner, sorted.
std::vector<GridVertex> neighbours(GridVertex v, std::size_t n);
bool adjacent(GridVertex u, GridVertex v);

BlockColouring extract_block(const GridColouring& phi, std::size_t i, std::size_t j);
/// Throws when blocks disagree on the colour count.
GridColouring concat_blocks(const std::vector<BlockColouring>& blocks);
std::vector<BlockColouring> split_blocks(const GridColouring& phi, std::size_t width);

/// Offsets 4 * (i + k_1 + ... + k_i) for i = 0..m.
std::vector<std::size_t> layout_offsets(const BlockString& s);

struct ColumnRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t width() const { return end - begin; }
    bool operator==(const ColumnRange&) const = default;
};

/// Boring block Q_i, i in [0, m]: columns [offsets[i], offsets[i] + 4).
ColumnRange boring_block(const std::vector<std::size_t>& offsets, std::size_t i);
/// Colourful block H_i, i in [1, m]: columns [offsets[i-1] + 4, offsets[i]).
ColumnRange colourful_block(const std::vector<std::size_t>& offsets, std::size_t i);

/// Colouring of G_{n_s + 4}: boring blocks Q_0..Q_m carry phi_star and the
/// colourful block H_i carries symbol i's colouring.
GridColouring realize_sigma_string(const BlockString& s);

}  // namespace anagram_forge
