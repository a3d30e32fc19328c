#pragma once

#include <cstdint>
#include <vector>

namespace nbldpc {

// Dense matrix over GF(2), rows stored as bit words.
class BitMatrix {
public:
    BitMatrix() : rows_(0), cols_(0) {}
    BitMatrix(int rows, int cols);

    static BitMatrix identity(int n);
    // Columns given as integers: column j has bit i set iff cols[j]>>i & 1.
    static BitMatrix from_columns(const std::vector<int>& cols, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int get(int r, int c) const;
    void set(int r, int c, int v);

    // Column c as an integer bit pattern (rows must be <= 32).
    int column(int c) const;

    // Row r XOR-ed into row dst.
    void xor_row(int dst, int src);

    int rank() const;
    BitMatrix rref() const;

    bool operator==(const BitMatrix& o) const;

private:
    int words_per_row() const { return (cols_ + 63) / 64; }

    int rows_, cols_;
    std::vector<uint64_t> bits_;  // row-major, words_per_row() words per row
};

}  // namespace nbldpc
