#include "bitmatrix.hpp"

#include <stdexcept>

namespace nbldpc {

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    bits_.assign(static_cast<size_t>(rows) * words_per_row(), 0);
}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

BitMatrix BitMatrix::from_columns(const std::vector<int>& cols, int rows) {
    BitMatrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (int i = 0; i < rows; ++i)
            if (cols[j] >> i & 1) m.set(i, j, 1);
    return m;
}

int BitMatrix::get(int r, int c) const {
    return static_cast<int>(bits_[static_cast<size_t>(r) * words_per_row() + c / 64] >> (c % 64)) & 1;
}

void BitMatrix::set(int r, int c, int v) {
    uint64_t& w = bits_[static_cast<size_t>(r) * words_per_row() + c / 64];
    if (v)
        w |= 1ULL << (c % 64);
    else
        w &= ~(1ULL << (c % 64));
}

int BitMatrix::column(int c) const {
    if (rows_ > 32) throw std::logic_error("column(): too many rows for an int pattern");
    int v = 0;
    for (int i = 0; i < rows_; ++i) v |= get(i, c) << i;
    return v;
}

void BitMatrix::xor_row(int dst, int src) {
    int wpr = words_per_row();
    for (int w = 0; w < wpr; ++w)
        bits_[static_cast<size_t>(dst) * wpr + w] ^= bits_[static_cast<size_t>(src) * wpr + w];
}

BitMatrix BitMatrix::rref() const {
    BitMatrix m = *this;
    int pivot_row = 0;
    for (int c = 0; c < m.cols_ && pivot_row < m.rows_; ++c) {
        int sel = -1;
        for (int r = pivot_row; r < m.rows_; ++r)
            if (m.get(r, c)) { sel = r; break; }
        if (sel < 0) continue;
        if (sel != pivot_row) {
            // swap rows by XOR trick on whole rows
            m.xor_row(pivot_row, sel);
            m.xor_row(sel, pivot_row);
            m.xor_row(pivot_row, sel);
        }
        for (int r = 0; r < m.rows_; ++r)
            if (r != pivot_row && m.get(r, c)) m.xor_row(r, pivot_row);
        ++pivot_row;
    }
    return m;
}

int BitMatrix::rank() const {
    BitMatrix m = rref();
    int rk = 0;
    for (int r = 0; r < m.rows_; ++r) {
        bool nonzero = false;
        for (int w = 0; w < m.words_per_row(); ++w)
            if (m.bits_[static_cast<size_t>(r) * m.words_per_row() + w]) { nonzero = true; break; }
        if (nonzero) ++rk;
    }
    return rk;
}

bool BitMatrix::operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
}

}  // namespace nbldpc
