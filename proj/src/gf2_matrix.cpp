#include "wrb/gf2_matrix.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "wrb/errors.hpp"

namespace wrb {

GF2Matrix::GF2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void GF2Matrix::xor_row(std::size_t dst, std::size_t src) {
  uint64_t* d = row(dst);
  const uint64_t* s = row(src);
  for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void GF2Matrix::xor_row_from(std::size_t dst, const GF2Matrix& other, std::size_t src) {
  uint64_t* d = row(dst);
  const uint64_t* s = other.row(src);
  for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void GF2Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  uint64_t* pa = row(a);
  uint64_t* pb = row(b);
  for (std::size_t w = 0; w < wpr_; ++w) std::swap(pa[w], pb[w]);
}

bool GF2Matrix::row_is_zero(std::size_t r) const {
  const uint64_t* p = row(r);
  for (std::size_t w = 0; w < wpr_; ++w)
    if (p[w]) return false;
  return true;
}

GF2Matrix GF2Matrix::operator*(const GF2Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw domain_error("GF2Matrix: size mismatch in product");
  GF2Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const uint64_t* a = row(i);
    uint64_t* o = out.row(i);
    for (std::size_t w = 0; w < wpr_; ++w) {
      uint64_t bits = a[w];
      while (bits) {
        std::size_t j = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        const uint64_t* b = rhs.row(j);
        for (std::size_t v = 0; v < rhs.wpr_; ++v) o[v] ^= b[v];
      }
    }
  }
  return out;
}

GF2Matrix GF2Matrix::operator+(const GF2Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw domain_error("GF2Matrix: size mismatch in sum");
  GF2Matrix out = *this;
  out ^= rhs;
  return out;
}

GF2Matrix& GF2Matrix::operator^=(const GF2Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw domain_error("GF2Matrix: size mismatch in xor");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] ^= rhs.data_[i];
  return *this;
}

bool GF2Matrix::operator==(const GF2Matrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

GF2Matrix GF2Matrix::transpose() const {
  GF2Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const uint64_t* a = row(i);
    for (std::size_t w = 0; w < wpr_; ++w) {
      uint64_t bits = a[w];
      while (bits) {
        std::size_t j = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        out.set(j, i, true);
      }
    }
  }
  return out;
}

GF2Matrix GF2Matrix::pow(uint64_t e) const {
  if (rows_ != cols_) throw domain_error("GF2Matrix: pow of non-square matrix");
  GF2Matrix acc = identity(rows_);
  GF2Matrix base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

GF2Matrix GF2Matrix::submatrix(const std::vector<std::size_t>& row_idx,
                               const std::vector<std::size_t>& col_idx) const {
  GF2Matrix out(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j)
      if (get(row_idx[i], col_idx[j])) out.set(i, j, true);
  return out;
}

GF2Matrix GF2Matrix::vstack(const GF2Matrix& top, const GF2Matrix& bottom) {
  if (top.cols_ != bottom.cols_) throw domain_error("GF2Matrix: vstack width mismatch");
  GF2Matrix out(top.rows_ + bottom.rows_, top.cols_);
  std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(),
            out.data_.begin() + static_cast<std::ptrdiff_t>(top.rows_ * top.wpr_));
  return out;
}

std::size_t GF2Matrix::echelonize(std::vector<std::size_t>* pivot_cols) {
  std::size_t r = 0;
  if (pivot_cols) pivot_cols->clear();
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t w = c >> 6;
    uint64_t m = uint64_t(1) << (c & 63);
    std::size_t pr = rows_;
    for (std::size_t i = r; i < rows_; ++i) {
      if (row(i)[w] & m) { pr = i; break; }
    }
    if (pr == rows_) continue;
    swap_rows(r, pr);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != r && (row(i)[w] & m)) xor_row(i, r);
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

std::size_t GF2Matrix::rank() const {
  GF2Matrix copy = *this;
  return copy.echelonize();
}

GF2Matrix GF2Matrix::nullspace() const {
  GF2Matrix work = *this;
  std::vector<std::size_t> pivots;
  std::size_t r = work.echelonize(&pivots);
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  GF2Matrix out(cols_ - r, cols_);
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    out.set(k, c, true);
    // back-substitute: pivot row i has pivot at pivots[i]
    for (std::size_t i = 0; i < r; ++i) {
      if (work.get(i, c)) out.set(k, pivots[i], true);
    }
    ++k;
  }
  return out;
}

bool GF2Matrix::is_invertible() const {
  return rows_ == cols_ && rank() == rows_;
}

bool GF2Matrix::is_zero() const {
  for (uint64_t w : data_)
    if (w) return false;
  return true;
}

GF2Matrix GF2Matrix::inverse() const {
  if (rows_ != cols_) throw domain_error("GF2Matrix: inverse of non-square matrix");
  GF2Matrix work = *this;
  GF2Matrix inv = identity(rows_);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t w = c >> 6;
    uint64_t m = uint64_t(1) << (c & 63);
    std::size_t pr = rows_;
    for (std::size_t i = r; i < rows_; ++i)
      if (work.row(i)[w] & m) { pr = i; break; }
    if (pr == rows_) throw domain_error("GF2Matrix: matrix is singular");
    work.swap_rows(r, pr);
    inv.swap_rows(r, pr);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != r && (work.row(i)[w] & m)) {
        work.xor_row(i, r);
        inv.xor_row(i, r);
      }
    }
    ++r;
  }
  return inv;
}

std::vector<uint64_t> GF2Matrix::hash0() const { return data_; }

std::string GF2Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (get(i, j) ? '1' : '0');
    os << '\n';
  }
  return os.str();
}

std::vector<uint64_t> GF2Matrix::mul_vector(const std::vector<uint64_t>& v) const {
  // v is a packed column vector of length cols_; result length rows_ (packed).
  std::vector<uint64_t> out((rows_ + 63) / 64, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const uint64_t* a = row(i);
    uint64_t acc = 0;
    for (std::size_t w = 0; w < wpr_; ++w) acc ^= a[w] & v[w];
    if (std::popcount(acc) & 1) out[i >> 6] |= uint64_t(1) << (i & 63);
  }
  return out;
}

GF2Matrix row_space_basis(const GF2Matrix& a) {
  GF2Matrix work = a;
  std::size_t r = work.echelonize();
  GF2Matrix out(r, a.cols());
  for (std::size_t i = 0; i < r; ++i) out.xor_row_from(i, work, i);
  return out;
}

std::vector<uint8_t> express_in_rows(const GF2Matrix& basis, const uint64_t* b_words,
                                     std::size_t cols) {
  if (basis.cols() != cols) throw domain_error("express_in_rows: width mismatch");
  std::size_t n = basis.rows();
  std::size_t wpr = basis.words_per_row();
  // Augment each row with its coefficient indicator and eliminate.
  GF2Matrix work(n + 1, cols + n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t w = 0; w < wpr; ++w) work.row(i)[w] = basis.row(i)[w];
    work.set(i, cols + i, true);
  }
  for (std::size_t w = 0; w < wpr; ++w) work.row(n)[w] = b_words[w];
  work.set(n, cols + n, true);
  // Eliminate using only the first `cols` columns as pivots.
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r <= n; ++c) {
    std::size_t w = c >> 6;
    uint64_t m = uint64_t(1) << (c & 63);
    std::size_t pr = n + 1;
    for (std::size_t i = r; i <= n; ++i)
      if (work.row(i)[w] & m) { pr = i; break; }
    if (pr == n + 1) continue;
    work.swap_rows(r, pr);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != r && (work.row(i)[w] & m)) work.xor_row(i, r);
    ++r;
  }
  // Find a row that is zero on the value columns but has the b indicator set.
  for (std::size_t i = 0; i <= n; ++i) {
    bool zero = true;
    for (std::size_t c = 0; c < cols && zero; ++c)
      if (work.get(i, c)) zero = false;
    if (zero && work.get(i, cols + n)) {
      std::vector<uint8_t> coeffs(n, 0);
      for (std::size_t j = 0; j < n; ++j) coeffs[j] = work.get(i, cols + j) ? 1 : 0;
      return coeffs;
    }
  }
  return {};
}

} // namespace wrb
