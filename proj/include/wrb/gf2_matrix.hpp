#ifndef WRB_GF2_MATRIX_H
#define WRB_GF2_MATRIX_H

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace wrb {

// Dense GF(2) matrix, rows packed into 64-bit words.
class GF2Matrix {
public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols);
  static GF2Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    uint64_t& w = data_[r * wpr_ + (c >> 6)];
    uint64_t m = uint64_t(1) << (c & 63);
    if (v) w |= m; else w &= ~m;
  }
  void flip(std::size_t r, std::size_t c) { data_[r * wpr_ + (c >> 6)] ^= uint64_t(1) << (c & 63); }

  const uint64_t* row(std::size_t r) const { return data_.data() + r * wpr_; }
  uint64_t* row(std::size_t r) { return data_.data() + r * wpr_; }
  void xor_row(std::size_t dst, std::size_t src);      // row dst += row src
  void xor_row_from(std::size_t dst, const GF2Matrix& other, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);
  bool row_is_zero(std::size_t r) const;

  GF2Matrix operator*(const GF2Matrix& rhs) const;
  GF2Matrix operator+(const GF2Matrix& rhs) const;
  GF2Matrix& operator^=(const GF2Matrix& rhs);         // entrywise xor
  bool operator==(const GF2Matrix& rhs) const;

  GF2Matrix transpose() const;
  GF2Matrix pow(uint64_t e) const;                     // square matrices only

  // Column-select / stacking helpers.
  GF2Matrix submatrix(const std::vector<std::size_t>& row_idx,
                      const std::vector<std::size_t>& col_idx) const;
  static GF2Matrix vstack(const GF2Matrix& top, const GF2Matrix& bottom);

  // In-place row echelon form; returns rank. If pivot_cols is non-null the pivot
  // column of echelon row i is written to (*pivot_cols)[i].
  std::size_t echelonize(std::vector<std::size_t>* pivot_cols = nullptr);
  std::size_t rank() const;

  // Basis of the right nullspace {x : A x = 0}, one solution per row.
  GF2Matrix nullspace() const;
  // Inverse of a square invertible matrix; throws domain_error otherwise.
  GF2Matrix inverse() const;
  bool is_invertible() const;
  bool is_zero() const;

  // Solve x A = b for a single row vector b (1 x cols); returns empty on failure.
  // A is this matrix with rows spanning the row space.
  std::vector<uint64_t> hash0() const; // raw words, usable as a map key
  std::string to_string() const;

  // Matrix-vector products with packed vectors (length = cols in words).
  std::vector<uint64_t> mul_vector(const std::vector<uint64_t>& v) const;  // A * v (v column)

private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<uint64_t> data_;
};

// Echelon basis of the row space of A (deduplicated, RREF rows, zero rows dropped).
GF2Matrix row_space_basis(const GF2Matrix& a);

// Express row vector b in terms of the rows of basis (which need not be echelonized);
// returns coefficient vector or empty if b is outside the span.
std::vector<uint8_t> express_in_rows(const GF2Matrix& basis, const uint64_t* b_words,
                                     std::size_t cols);

} // namespace wrb

#endif
