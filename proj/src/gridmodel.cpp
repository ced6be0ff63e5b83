#include "anagram_forge/gridmodel.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace anagram_forge {

std::string GridVertex::name() const {
    return (row == Row::Top ? "a" : "b") + std::to_string(column);
}

GridVertex GridVertex::parse(std::string_view name) {
    if (name.size() < 2 || (name[0] != 'a' && name[0] != 'b')) {
        throw std::invalid_argument("bad vertex name '" + std::string(name) + "'");
    }
    std::uint32_t column = 0;
    auto digits = name.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), column);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw std::invalid_argument("bad vertex name '" + std::string(name) + "'");
    }
    return {name[0] == 'a' ? Row::Top : Row::Bottom, column};
}

GridColouring::GridColouring(std::size_t c, std::vector<Colour> top, std::vector<Colour> bottom)
    : c_(c), top_(std::move(top)), bottom_(std::move(bottom)) {
    if (c_ == 0) throw std::invalid_argument("colour count must be positive");
    if (top_.size() != bottom_.size()) throw std::invalid_argument("grid rows differ in length");
    auto in_range = [this](Colour x) { return x >= 1 && x <= c_; };
    if (!std::all_of(top_.begin(), top_.end(), in_range) || !std::all_of(bottom_.begin(), bottom_.end(), in_range)) {
        throw std::invalid_argument("colour outside [1, " + std::to_string(c_) + "]");
    }
}

GridColouring GridColouring::uniform(std::size_t n, std::size_t c, Colour colour) {
    return GridColouring(c, std::vector<Colour>(n, colour), std::vector<Colour>(n, colour));
}

GridColouring GridColouring::mirrored() const {
    return GridColouring(c_, std::vector<Colour>(top_.rbegin(), top_.rend()),
                         std::vector<Colour>(bottom_.rbegin(), bottom_.rend()));
}

void BlockString::validate() const {
    if (ell == 0) throw std::invalid_argument("ell must be positive");
    if (phi_star.width() != 4) throw std::invalid_argument("phi_star must be 4 columns wide");
    if (phi_star.colouring.c() != c) throw std::invalid_argument("phi_star colour count differs from c");
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const auto& sym = symbols[i];
        if (sym.k == 0 || sym.k > ell) {
            throw std::invalid_argument("symbol " + std::to_string(i + 1) + " has k outside [1, ell]");
        }
        if (sym.phi.width() != 4 * sym.k) {
            throw std::invalid_argument("symbol " + std::to_string(i + 1) + " colouring is not 4k wide");
        }
        if (sym.phi.colouring.c() != c) {
            throw std::invalid_argument("symbol " + std::to_string(i + 1) + " colour count differs from c");
        }
    }
}

std::vector<GridVertex> neighbours(GridVertex v, std::size_t n) {
    if (v.column >= n) throw std::out_of_range("vertex " + v.name() + " outside G_" + std::to_string(n));
    std::vector<GridVertex> out;
    if (v.column > 0) out.push_back({v.row, v.column - 1});
    out.push_back({v.row == Row::Top ? Row::Bottom : Row::Top, v.column});
    if (v.column + 1 < n) out.push_back({v.row, v.column + 1});
    std::sort(out.begin(), out.end());
    return out;
}

bool adjacent(GridVertex u, GridVertex v) {
    if (u.row == v.row) return u.column + 1 == v.column || v.column + 1 == u.column;
    return u.column == v.column;
}

BlockColouring extract_block(const GridColouring& phi, std::size_t i, std::size_t j) {
    if (i > j || j > phi.n()) throw std::out_of_range("block range outside colouring");
    return {GridColouring(phi.c(), std::vector<Colour>(phi.top_row().begin() + i, phi.top_row().begin() + j),
                          std::vector<Colour>(phi.bottom_row().begin() + i, phi.bottom_row().begin() + j))};
}

GridColouring concat_blocks(const std::vector<BlockColouring>& blocks) {
    if (blocks.empty()) return GridColouring(1, {}, {});
    const std::size_t c = blocks.front().colouring.c();
    std::vector<Colour> top;
    std::vector<Colour> bottom;
    for (const auto& b : blocks) {
        if (b.colouring.c() != c) throw std::invalid_argument("blocks disagree on colour count");
        top.insert(top.end(), b.colouring.top_row().begin(), b.colouring.top_row().end());
        bottom.insert(bottom.end(), b.colouring.bottom_row().begin(), b.colouring.bottom_row().end());
    }
    return GridColouring(c, std::move(top), std::move(bottom));
}

std::vector<BlockColouring> split_blocks(const GridColouring& phi, std::size_t width) {
    if (width == 0 || phi.n() % width != 0) {
        throw std::invalid_argument("block width " + std::to_string(width) + " does not divide n = " +
                                    std::to_string(phi.n()));
    }
    std::vector<BlockColouring> out;
    out.reserve(phi.n() / width);
    for (std::size_t i = 0; i < phi.n(); i += width) out.push_back(extract_block(phi, i, i + width));
    return out;
}

std::vector<std::size_t> layout_offsets(const BlockString& s) {
    std::vector<std::size_t> offsets{0};
    std::size_t k_sum = 0;
    for (std::size_t i = 1; i <= s.symbols.size(); ++i) {
        k_sum += s.symbols[i - 1].k;
        offsets.push_back(4 * (i + k_sum));
    }
    return offsets;
}

ColumnRange boring_block(const std::vector<std::size_t>& offsets, std::size_t i) {
    return {offsets.at(i), offsets.at(i) + 4};
}

ColumnRange colourful_block(const std::vector<std::size_t>& offsets, std::size_t i) {
    if (i == 0) throw std::out_of_range("colourful blocks are numbered from 1");
    return {offsets.at(i - 1) + 4, offsets.at(i)};
}

GridColouring realize_sigma_string(const BlockString& s) {
    s.validate();
    const auto offsets = layout_offsets(s);
    const std::size_t width = offsets.back() + 4;
    std::vector<Colour> top(width, 0);
    std::vector<Colour> bottom(width, 0);
    auto paint = [&](ColumnRange range, const GridColouring& block) {
        for (std::size_t j = 0; j < range.width(); ++j) {
            top[range.begin + j] = block.top_row()[j];
            bottom[range.begin + j] = block.bottom_row()[j];
        }
    };
    for (std::size_t i = 0; i < offsets.size(); ++i) paint(boring_block(offsets, i), s.phi_star.colouring);
    for (std::size_t i = 1; i <= s.symbols.size(); ++i) paint(colourful_block(offsets, i), s.symbols[i - 1].phi.colouring);
    return GridColouring(s.c, std::move(top), std::move(bottom));
}

}  // namespace anagram_forge
