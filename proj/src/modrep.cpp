#include "wrb/modrep.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wrb/config.hpp"
#include "wrb/errors.hpp"
#include "wrb/group_ops.hpp"

namespace wrb {

namespace {

// ---- packed bit helpers ------------------------------------------------------

std::size_t words_for(std::size_t bits) { return (bits + 63) >> 6; }

// dst ^= src << off, where src holds nbits (clean padding above nbits).
void xor_bits_into(uint64_t* dst, std::size_t dst_words, std::size_t off,
                   const uint64_t* src, std::size_t nbits) {
  std::size_t w = off >> 6, s = off & 63, nw = words_for(nbits);
  if (s == 0) {
    for (std::size_t k = 0; k < nw; ++k) dst[w + k] ^= src[k];
  } else {
    for (std::size_t k = 0; k < nw; ++k) {
      uint64_t v = src[k];
      dst[w + k] ^= v << s;
      if (w + k + 1 < dst_words) dst[w + k + 1] ^= v >> (64 - s);
    }
  }
}

// dst = src[off .. off+nbits), dst has words_for(nbits) words.
void extract_bits(const uint64_t* src, std::size_t src_words, std::size_t off,
                  uint64_t* dst, std::size_t nbits) {
  std::size_t w = off >> 6, s = off & 63, nw = words_for(nbits);
  for (std::size_t k = 0; k < nw; ++k) {
    uint64_t v = (w + k < src_words) ? src[w + k] >> s : 0;
    if (s && w + k + 1 < src_words) v |= src[w + k + 1] << (64 - s);
    dst[k] = v;
  }
  if (nbits & 63) dst[nw - 1] &= ~uint64_t(0) >> (64 - (nbits & 63));
}

void flatten_matrix_into(GF2Matrix& dst, std::size_t dst_row, const GF2Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    xor_bits_into(dst.row(dst_row), dst.words_per_row(), r * m.cols(), m.row(r), m.cols());
}

GF2Matrix unflatten_row(const uint64_t* words, std::size_t nwords, std::size_t rows,
                        std::size_t cols) {
  GF2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    extract_bits(words, nwords, r * cols, m.row(r), cols);
  return m;
}

// Lexicographic comparison of two coordinate rows (coordinate 0 first, 0 < 1).
bool row_lex_less(const GF2Matrix& a, std::size_t ra, const GF2Matrix& b, std::size_t rb) {
  const uint64_t* x = a.row(ra);
  const uint64_t* y = b.row(rb);
  std::size_t nw = a.words_per_row();
  for (std::size_t k = 0; k < nw; ++k) {
    uint64_t d = x[k] ^ y[k];
    if (d) {
      std::size_t bit = std::countr_zero(d);
      return !((x[k] >> bit) & 1);
    }
  }
  return false;
}

bool rows_equal(const GF2Matrix& a, std::size_t ra, const GF2Matrix& b, std::size_t rb) {
  return std::memcmp(a.row(ra), b.row(rb), a.words_per_row() * 8) == 0;
}

// ---- row-space expresser -----------------------------------------------------

// Gauss-Jordan form of an independent row basis with an identity augmentation,
// so any vector in the span can be expressed in one elimination pass and the
// recorded tail gives coefficients with respect to the original rows.
struct RowExpresser {
  std::size_t n = 0;  // ambient width
  std::size_t k = 0;  // basis size
  GF2Matrix aug;      // k x (n + k)
  std::vector<std::size_t> pivots;

  explicit RowExpresser(const GF2Matrix& basis) {
    n = basis.cols();
    k = basis.rows();
    aug = GF2Matrix(k, n + k);
    for (std::size_t r = 0; r < k; ++r) {
      xor_bits_into(aug.row(r), aug.words_per_row(), 0, basis.row(r), n);
      aug.set(r, n + r, true);
    }
    pivots.assign(k, 0);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t j = 0; j < r; ++j)
        if (aug.get(r, pivots[j])) aug.xor_row(r, j);
      std::size_t p = n;
      for (std::size_t w = 0; w < words_for(n); ++w) {
        uint64_t v = aug.row(r)[w];
        if (w == words_for(n) - 1 && (n & 63)) v &= ~uint64_t(0) >> (64 - (n & 63));
        if (v) { p = w * 64 + std::countr_zero(v); break; }
      }
      if (p == n) throw internal_error("RowExpresser: dependent basis rows");
      pivots[r] = p;
      for (std::size_t j = 0; j < r; ++j)
        if (aug.get(j, p)) aug.xor_row(j, r);
    }
  }

  // Write coefficients (k bits) into out.row(out_row); false if b is outside the span.
  bool express(const uint64_t* b, GF2Matrix& out, std::size_t out_row) const {
    std::vector<uint64_t> t(words_for(n + k), 0);
    std::memcpy(t.data(), b, words_for(n) * 8);
    if (n & 63) t[words_for(n) - 1] &= ~uint64_t(0) >> (64 - (n & 63));
    for (std::size_t r = 0; r < k; ++r) {
      if ((t[pivots[r] >> 6] >> (pivots[r] & 63)) & 1)
        for (std::size_t w = 0; w < t.size(); ++w) t[w] ^= aug.row(r)[w];
    }
    for (std::size_t c = 0; c < n; ++c)
      if ((t[c >> 6] >> (c & 63)) & 1) return false;
    std::vector<uint64_t> coeff(words_for(k), 0);
    extract_bits(t.data(), t.size(), n, coeff.data(), k);
    xor_bits_into(out.row(out_row), out.words_per_row(), 0, coeff.data(), k);
    return true;
  }

  GF2Matrix express_checked(const uint64_t* b, const char* what) const {
    GF2Matrix out(1, k);
    if (!express(b, out, 0)) throw internal_error(std::string(what) + ": vector outside the expected span");
    return out;
  }
};

// ---- GF(2) polynomials (bit i = coefficient of T^i) ---------------------------

using Poly = std::vector<uint64_t>;

int pdeg(const Poly& p) {
  for (std::size_t w = p.size(); w-- > 0;)
    if (p[w]) return int(w * 64 + 63 - std::countl_zero(p[w]));
  return -1;
}

void ptrim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

bool pget(const Poly& p, std::size_t i) {
  return (i >> 6) < p.size() && ((p[i >> 6] >> (i & 63)) & 1);
}

void pflip(Poly& p, std::size_t i) {
  if ((i >> 6) >= p.size()) p.resize((i >> 6) + 1, 0);
  p[i >> 6] ^= uint64_t(1) << (i & 63);
}

// a ^= b << k
void pxor_shift(Poly& a, const Poly& b, std::size_t k) {
  int db = pdeg(b);
  if (db < 0) return;
  std::size_t need = words_for(std::size_t(db) + k + 1);
  if (a.size() < need) a.resize(need, 0);
  xor_bits_into(a.data(), a.size(), k, b.data(), std::size_t(db) + 1);
}

Poly pmul(const Poly& a, const Poly& b) {
  Poly r;
  int da = pdeg(a);
  for (int i = 0; i <= da; ++i)
    if (pget(a, i)) pxor_shift(r, b, i);
  ptrim(r);
  return r;
}

void pmod_inplace(Poly& a, const Poly& m) {
  int dm = pdeg(m);
  if (dm < 0) throw internal_error("poly: modulus is zero");
  int da;
  while ((da = pdeg(a)) >= dm) pxor_shift(a, m, std::size_t(da - dm));
  ptrim(a);
}

Poly pmod(Poly a, const Poly& m) {
  pmod_inplace(a, m);
  return a;
}

Poly pdiv(Poly a, const Poly& m) {
  int dm = pdeg(m);
  if (dm < 0) throw internal_error("poly: division by zero");
  Poly q;
  int da;
  while ((da = pdeg(a)) >= dm) {
    pflip(q, std::size_t(da - dm));
    pxor_shift(a, m, std::size_t(da - dm));
  }
  ptrim(q);
  return q;
}

Poly pgcd(Poly a, Poly b) {
  ptrim(a);
  ptrim(b);
  while (pdeg(b) >= 0) {
    pmod_inplace(a, b);
    std::swap(a, b);
  }
  return a;
}

// u with u*a == gcd(a, b) (mod b); used with coprime inputs to invert a mod b.
Poly pinv_mod(const Poly& a, const Poly& b) {
  Poly r0 = pmod(a, b), r1 = b, s0{1}, s1;
  while (pdeg(r1) >= 0) {
    Poly q = pdiv(r0, r1);
    Poly r2 = r0;
    pxor_shift(r2, pmul(q, r1), 0);
    ptrim(r2);
    Poly s2 = s0;
    pxor_shift(s2, pmul(q, s1), 0);
    ptrim(s2);
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
  }
  if (pdeg(r0) != 0) throw internal_error("poly: inputs not coprime in pinv_mod");
  return pmod(s0, b);
}

Poly pderiv(const Poly& a) {
  Poly r;
  int da = pdeg(a);
  for (int i = 1; i <= da; i += 2)
    if (pget(a, i)) pflip(r, i - 1);
  ptrim(r);
  return r;
}

// sqrt of a polynomial with only even-degree terms (a = c(T)^2 over GF(2)).
Poly psqrt(const Poly& a) {
  Poly r;
  int da = pdeg(a);
  for (int i = 0; i <= da; i += 2)
    if (pget(a, i)) pflip(r, i / 2);
  return r;
}

bool poly_less(const Poly& a, const Poly& b) {
  int da = pdeg(a), db = pdeg(b);
  if (da != db) return da < db;
  for (int i = da; i >= 0; --i) {
    bool xa = pget(a, i), xb = pget(b, i);
    if (xa != xb) return !xa;
  }
  return false;
}

bool poly_eq(const Poly& a, const Poly& b) {
  int da = pdeg(a);
  if (da != pdeg(b)) return false;
  for (int i = 0; i <= da; ++i)
    if (pget(a, i) != pget(b, i)) return false;
  return true;
}

// Distinct irreducible factors of a squarefree polynomial (Berlekamp over GF(2)).
std::vector<Poly> berlekamp_distinct(const Poly& f) {
  int n = pdeg(f);
  if (n <= 1) return {f};
  // Frobenius matrix: row i = T^(2i) mod f.
  GF2Matrix q{std::size_t(n), std::size_t(n)};
  Poly cur{1};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= pdeg(cur); ++j)
      if (pget(cur, j)) q.set(std::size_t(i), std::size_t(j), true);
    Poly next;
    pxor_shift(next, cur, 2);
    pmod_inplace(next, f);
    cur = std::move(next);
  }
  GF2Matrix qi = q + GF2Matrix::identity(std::size_t(n));
  GF2Matrix kernel = qi.transpose().nullspace();  // rows v with v(T)^2 = v(T) mod f
  std::size_t k = kernel.rows();
  std::vector<Poly> factors{f};
  if (k == 1) return factors;
  for (std::size_t vrow = 0; vrow < k && factors.size() < k; ++vrow) {
    Poly v;
    for (int j = 0; j < n; ++j)
      if (kernel.get(vrow, std::size_t(j))) pflip(v, j);
    std::vector<Poly> next;
    for (const Poly& g : factors) {
      if (pdeg(g) <= 1 || factors.size() + next.size() >= k + 1) { next.push_back(g); continue; }
      Poly g1 = pgcd(g, pmod(v, g));
      int d1 = pdeg(g1);
      if (d1 > 0 && d1 < pdeg(g)) {
        next.push_back(g1);
        next.push_back(pdiv(g, g1));
      } else {
        next.push_back(g);
      }
    }
    factors = std::move(next);
  }
  if (factors.size() != k) throw internal_error("Berlekamp: factor count mismatch");
  std::sort(factors.begin(), factors.end(), poly_less);
  return factors;
}

// Distinct irreducible factors of an arbitrary nonconstant polynomial, char 2.
std::vector<Poly> factor_distinct(const Poly& f) {
  if (pdeg(f) <= 0) return {};
  Poly d = pderiv(f);
  std::vector<Poly> out;
  if (pdeg(d) < 0) {
    out = factor_distinct(psqrt(f));  // f = g(T)^2
  } else {
    Poly g = pgcd(f, d);
    if (pdeg(g) == 0) {
      out = berlekamp_distinct(f);
    } else {
      out = factor_distinct(pdiv(f, g));
      std::vector<Poly> more = factor_distinct(g);
      out.insert(out.end(), more.begin(), more.end());
    }
  }
  std::sort(out.begin(), out.end(), poly_less);
  out.erase(std::unique(out.begin(), out.end(), poly_eq), out.end());
  return out;
}

// ---- abstract algebra by structure constants ----------------------------------

// Internal carrier-free view: coordinates only. The public GF2Algebra stores the
// same data plus its matrix basis; structural algorithms run here.
struct AbsAlg {
  uint32_t dim = 0;
  GF2Matrix structure;  // (dim*dim) x dim, row i*dim+j = coords of b_i * b_j
  GF2Matrix one;        // 1 x dim
};

AbsAlg abs_of(const GF2Algebra& a) { return AbsAlg{a.dim, a.structure, a.one}; }

GF2Matrix abs_mul(const AbsAlg& a, const GF2Matrix& x, const GF2Matrix& y) {
  GF2Matrix z(1, a.dim);
  for (uint32_t i = 0; i < a.dim; ++i) {
    if (!x.get(0, i)) continue;
    for (uint32_t j = 0; j < a.dim; ++j)
      if (y.get(0, j)) z.xor_row_from(0, a.structure, std::size_t(i) * a.dim + j);
  }
  return z;
}

// Matrix of right multiplication by z on coordinate rows: row j = coords(b_j * z).
// Multiplicative: reg(xy) = reg(x) * reg(y); faithful since the algebra is unital.
GF2Matrix abs_right_reg(const AbsAlg& a, const GF2Matrix& z) {
  GF2Matrix m(a.dim, a.dim);
  for (uint32_t j = 0; j < a.dim; ++j)
    for (uint32_t i = 0; i < a.dim; ++i)
      if (z.get(0, i)) m.xor_row_from(j, a.structure, std::size_t(j) * a.dim + i);
  return m;
}

bool abs_commutative(const AbsAlg& a) {
  for (uint32_t i = 0; i < a.dim; ++i)
    for (uint32_t j = i + 1; j < a.dim; ++j)
      if (!rows_equal(a.structure, std::size_t(i) * a.dim + j,
                      a.structure, std::size_t(j) * a.dim + i))
        return false;
  return true;
}

// Characteristic polynomial of a square GF(2) matrix via Krylov chains: the
// chains give a block-triangular form whose blocks are companion matrices, so
// the product of the chain relation polynomials is det(T*I - M).
Poly char_poly(const GF2Matrix& m) {
  std::size_t n = m.rows();
  Poly cp{1};
  if (n == 0) return cp;
  std::size_t width = n + n + 1;  // head | chain coefficients
  GF2Matrix ech(0, 0);
  std::vector<std::vector<uint64_t>> rows;  // echelon rows, full width
  std::vector<std::size_t> piv;
  std::vector<std::size_t> block_rows;  // indices of rows added by the current block
  std::size_t wwords = words_for(width);
  auto head_pivot = [&](const std::vector<uint64_t>& v) -> std::size_t {
    for (std::size_t w = 0; w < words_for(n); ++w) {
      uint64_t x = v[w];
      if (w == words_for(n) - 1 && (n & 63)) x &= ~uint64_t(0) >> (64 - (n & 63));
      if (x) return w * 64 + std::countr_zero(x);
    }
    return n;
  };
  std::size_t rank = 0;
  for (std::size_t start = 0; start < n && rank < n; ++start) {
    std::vector<uint64_t> raw(words_for(n), 0);  // current chain vector, head only
    raw[start >> 6] |= uint64_t(1) << (start & 63);
    std::size_t chain = 0;
    block_rows.clear();
    while (true) {
      std::vector<uint64_t> v(wwords, 0);
      std::memcpy(v.data(), raw.data(), raw.size() * 8);
      v[(n + chain) >> 6] |= uint64_t(1) << ((n + chain) & 63);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t p = piv[r];
        if ((v[p >> 6] >> (p & 63)) & 1)
          for (std::size_t w = 0; w < wwords; ++w) v[w] ^= rows[r][w];
      }
      std::size_t p = head_pivot(v);
      if (p == n) {
        if (chain > 0) {
          Poly mu;
          for (std::size_t j = 0; j <= chain; ++j)
            if ((v[(n + j) >> 6] >> ((n + j) & 63)) & 1) pflip(mu, j);
          cp = pmul(cp, mu);
          rank += chain;
          for (std::size_t r : block_rows) {  // clear the block-local coefficients
            for (std::size_t bit = n; bit < width; ++bit)
              if ((rows[r][bit >> 6] >> (bit & 63)) & 1) rows[r][bit >> 6] ^= uint64_t(1) << (bit & 63);
          }
        }
        break;
      }
      block_rows.push_back(rows.size());
      rows.push_back(v);
      piv.push_back(p);
      ++chain;
      // raw = raw * M
      std::vector<uint64_t> next(words_for(n), 0);
      for (std::size_t i = 0; i < n; ++i)
        if ((raw[i >> 6] >> (i & 63)) & 1)
          for (std::size_t w = 0; w < words_for(n); ++w) next[w] ^= m.row(i)[w];
      raw = std::move(next);
      if (chain > n) throw internal_error("char_poly: chain exceeded dimension");
    }
  }
  if (pdeg(cp) != int(n)) throw internal_error("char_poly: degree mismatch");
  return cp;
}

// c_k: coefficient of T^(n-k) in the characteristic polynomial (c_1 = trace).
bool char_coeff(const Poly& cp, std::size_t n, std::size_t k) {
  return pget(cp, n - k);
}

// ---- radical (iterated kernels of 2-power trace forms) ------------------------

struct QuotientAbs;
QuotientAbs quotient_abs(const AbsAlg& a, const GF2Matrix& j_rows);

// Iterated kernels of f_i(x, y) = c_{2^i}(xy) on the right regular
// representation. Plain traces are identically zero whenever the composition
// multiplicities are even, so the 2-power characteristic coefficients are used;
// on each successive kernel the next form is GF(2)-linear and the final kernel
// is J(A). The result is verified independently when `verify` is set.
GF2Matrix radical_abs(const AbsAlg& a, bool verify);

struct QuotientAbs {
  AbsAlg alg;
  GF2Matrix jr;                       // RREF rows of J in parent coordinates
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> free_cols;
  uint32_t parent_dim = 0;

  GF2Matrix project(const GF2Matrix& v) const {  // 1 x parent_dim -> 1 x alg.dim
    GF2Matrix t = v;
    for (std::size_t r = 0; r < jr.rows(); ++r)
      if (t.get(0, pivots[r])) t.xor_row_from(0, jr, r);
    GF2Matrix out(1, alg.dim);
    for (std::size_t i = 0; i < free_cols.size(); ++i)
      if (t.get(0, free_cols[i])) out.set(0, i, true);
    return out;
  }

  GF2Matrix lift(const GF2Matrix& w) const {  // 1 x alg.dim -> 1 x parent_dim
    GF2Matrix out(1, parent_dim);
    for (std::size_t i = 0; i < free_cols.size(); ++i)
      if (w.get(0, i)) out.set(0, free_cols[i], true);
    return out;
  }
};

QuotientAbs quotient_abs(const AbsAlg& a, const GF2Matrix& j_rows) {
  QuotientAbs q;
  q.parent_dim = a.dim;
  q.jr = row_space_basis(j_rows);
  {
    GF2Matrix tmp = q.jr;
    tmp.echelonize(&q.pivots);
  }
  std::vector<bool> is_piv(a.dim, false);
  for (std::size_t c : q.pivots) is_piv[c] = true;
  for (std::size_t c = 0; c < a.dim; ++c)
    if (!is_piv[c]) q.free_cols.push_back(c);
  uint32_t bd = uint32_t(q.free_cols.size());
  q.alg.dim = bd;
  q.alg.structure = GF2Matrix(std::size_t(bd) * bd, bd);
  for (uint32_t i = 0; i < bd; ++i) {
    GF2Matrix bi(1, a.dim);
    bi.set(0, q.free_cols[i], true);
    for (uint32_t j = 0; j < bd; ++j) {
      GF2Matrix bj(1, a.dim);
      bj.set(0, q.free_cols[j], true);
      GF2Matrix z = q.project(abs_mul(a, bi, bj));
      q.alg.structure.xor_row_from(std::size_t(i) * bd + j, z, 0);
    }
  }
  q.alg.one = q.project(a.one);
  return q;
}

GF2Matrix radical_abs(const AbsAlg& a, bool verify) {
  if (a.dim == 0) return GF2Matrix(0, 0);
  GF2Matrix s = GF2Matrix::identity(a.dim);
  for (uint32_t level = 0; (uint64_t(1) << level) <= a.dim && s.rows() > 0; ++level) {
    std::vector<GF2Matrix> regs(s.rows());
    for (std::size_t r = 0; r < s.rows(); ++r) {
      GF2Matrix xr(1, a.dim);
      xr.xor_row_from(0, s, r);
      regs[r] = abs_right_reg(a, xr);
    }
    GF2Matrix c(s.rows(), s.rows());
    for (std::size_t r = 0; r < s.rows(); ++r)
      for (std::size_t cc = 0; cc < s.rows(); ++cc) {
        Poly cp = char_poly(regs[r] * regs[cc]);
        if (char_coeff(cp, a.dim, std::size_t(1) << level)) c.set(r, cc, true);
      }
    GF2Matrix w = c.transpose().nullspace();  // rows w with w * C = 0
    s = w * s;
  }
  s = row_space_basis(s);
  if (verify) {
    // nilpotency: span of products shrinks to zero
    GF2Matrix cur = s;
    for (uint32_t iter = 0; cur.rows() > 0; ++iter) {
      if (iter > a.dim) throw internal_error("radical: candidate is not nilpotent");
      GF2Matrix prod(cur.rows() * s.rows(), a.dim);
      for (std::size_t r = 0; r < cur.rows(); ++r) {
        GF2Matrix xr(1, a.dim);
        xr.xor_row_from(0, cur, r);
        for (std::size_t t = 0; t < s.rows(); ++t) {
          GF2Matrix yt(1, a.dim);
          yt.xor_row_from(0, s, t);
          GF2Matrix z = abs_mul(a, xr, yt);
          prod.xor_row_from(r * s.rows() + t, z, 0);
        }
      }
      cur = row_space_basis(prod);
    }
    // two-sided ideal
    if (s.rows() > 0) {
      RowExpresser se(s);
      GF2Matrix scratch(1, s.rows());
      for (std::size_t r = 0; r < s.rows(); ++r) {
        GF2Matrix xr(1, a.dim);
        xr.xor_row_from(0, s, r);
        for (uint32_t i = 0; i < a.dim; ++i) {
          GF2Matrix ei(1, a.dim);
          ei.set(0, i, true);
          GF2Matrix left = abs_mul(a, ei, xr);
          GF2Matrix right = abs_mul(a, xr, ei);
          GF2Matrix out(1, s.rows());
          if (!se.express(left.row(0), out, 0)) throw internal_error("radical: not a left ideal");
          out = GF2Matrix(1, s.rows());
          if (!se.express(right.row(0), out, 0)) throw internal_error("radical: not a right ideal");
        }
      }
    }
    // quotient must be semisimple
    QuotientAbs q = quotient_abs(a, s);
    if (radical_abs(q.alg, false).rows() != 0)
      throw internal_error("radical: quotient has a nonzero radical");
  }
  return s;
}

// ---- primitive idempotents -----------------------------------------------------

Poly abs_minpoly(const AbsAlg& a, const GF2Matrix& s) {
  std::size_t n = a.dim;
  std::size_t width = n + n + 2;
  std::vector<std::vector<uint64_t>> rows;
  std::vector<std::size_t> piv;
  std::size_t wwords = words_for(width);
  GF2Matrix cur = a.one;
  for (std::size_t k = 0;; ++k) {
    if (k > n) throw internal_error("minpoly: degree exceeded dimension");
    std::vector<uint64_t> v(wwords, 0);
    std::memcpy(v.data(), cur.row(0), cur.words_per_row() * 8);
    v[(n + k) >> 6] |= uint64_t(1) << ((n + k) & 63);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::size_t p = piv[r];
      if ((v[p >> 6] >> (p & 63)) & 1)
        for (std::size_t w = 0; w < wwords; ++w) v[w] ^= rows[r][w];
    }
    std::size_t p = n;
    for (std::size_t w = 0; w < words_for(n); ++w) {
      uint64_t x = v[w];
      if (w == words_for(n) - 1 && (n & 63)) x &= ~uint64_t(0) >> (64 - (n & 63));
      if (x) { p = w * 64 + std::countr_zero(x); break; }
    }
    if (p == n) {
      Poly mu;
      for (std::size_t j = 0; j <= k; ++j)
        if ((v[(n + j) >> 6] >> ((n + j) & 63)) & 1) pflip(mu, j);
      return mu;
    }
    rows.push_back(v);
    piv.push_back(p);
    cur = abs_mul(a, cur, s);
  }
}

GF2Matrix abs_eval_poly(const AbsAlg& a, const Poly& p, const GF2Matrix& s) {
  GF2Matrix r(1, a.dim);
  for (int i = pdeg(p); i >= 0; --i) {
    r = abs_mul(a, r, s);
    if (pget(p, std::size_t(i))) r ^= a.one;
  }
  return r;
}

// Corner algebra u A u spanned by independent rows span (k x a.dim) with unit u.
struct CornerAbs {
  AbsAlg alg;
  GF2Matrix span;  // corner coords row * span = parent coords
};

CornerAbs corner_abs(const AbsAlg& a, const GF2Matrix& span, const GF2Matrix& unit) {
  CornerAbs c;
  c.span = span;
  uint32_t k = uint32_t(span.rows());
  c.alg.dim = k;
  c.alg.structure = GF2Matrix(std::size_t(k) * k, k);
  RowExpresser se(span);
  for (uint32_t i = 0; i < k; ++i) {
    GF2Matrix bi(1, a.dim);
    bi.xor_row_from(0, span, i);
    for (uint32_t j = 0; j < k; ++j) {
      GF2Matrix bj(1, a.dim);
      bj.xor_row_from(0, span, j);
      GF2Matrix z = abs_mul(a, bi, bj);
      if (!se.express(z.row(0), c.alg.structure, std::size_t(i) * k + j))
        throw internal_error("corner algebra: span not multiplicatively closed");
    }
  }
  c.alg.one = se.express_checked(unit.row(0), "corner algebra unit");
  return c;
}

GF2Matrix corner_span_of(const AbsAlg& a, const GF2Matrix& e) {
  GF2Matrix rows(a.dim, a.dim);
  for (uint32_t j = 0; j < a.dim; ++j) {
    GF2Matrix ej(1, a.dim);
    ej.set(0, j, true);
    GF2Matrix z = abs_mul(a, abs_mul(a, e, ej), e);
    rows.xor_row_from(j, z, 0);
  }
  return row_space_basis(rows);
}

// Splitting idempotent search in a semisimple non-commutative algebra: find s
// whose minimal polynomial has at least two distinct irreducible factors, and
// cut with the classical coprime-component idempotent of GF(2)[s].
GF2Matrix find_splitting_idempotent(const AbsAlg& a) {
  std::size_t budget = 8 * std::size_t(a.dim) + 64;
  uint64_t lcg = 0x9e3779b97f4a7c15ull;
  std::size_t emitted = 0;
  auto next_candidate = [&]() -> GF2Matrix {
    GF2Matrix s(1, a.dim);
    if (emitted < a.dim) {
      s.set(0, emitted, true);
    } else {
      std::size_t pairs = std::size_t(a.dim) * (a.dim - 1) / 2;
      if (emitted - a.dim < pairs) {
        std::size_t t = emitted - a.dim;
        std::size_t i = 0;
        while (t >= a.dim - 1 - i) { t -= a.dim - 1 - i; ++i; }
        s.set(0, i, true);
        s.set(0, i + 1 + t, true);
      } else {
        for (uint32_t c = 0; c < a.dim; ++c) {
          lcg = lcg * 6364136223846793005ull + 1442695040888963407ull;
          if ((lcg >> 33) & 1) s.set(0, c, true);
        }
      }
    }
    ++emitted;
    return s;
  };
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    GF2Matrix s = next_candidate();
    if (s.is_zero() || s == a.one) continue;
    Poly mu = abs_minpoly(a, s);
    std::vector<Poly> parts = factor_distinct(mu);
    if (parts.size() < 2) continue;
    const Poly& p1 = parts[0];
    Poly mu2 = mu;
    Poly mu1{1};
    while (true) {
      Poly rem = pmod(mu2, p1);
      if (pdeg(rem) >= 0) break;
      mu2 = pdiv(mu2, p1);
      mu1 = pmul(mu1, p1);
    }
    Poly v = pinv_mod(mu2, mu1);
    Poly w = pmod(pmul(v, mu2), mu);
    GF2Matrix e = abs_eval_poly(a, w, s);
    if (e.is_zero() || e == a.one) throw internal_error("splitting idempotent degenerated");
    if (!(abs_mul(a, e, e) == e)) throw internal_error("splitting element is not idempotent");
    return e;
  }
  throw internal_error("no splitting idempotent found within the attempt budget");
}

// Primitive idempotents of a SEMISIMPLE algebra, as parent-coordinate rows.
std::vector<GF2Matrix> split_simple(const AbsAlg& a) {
  if (a.dim == 1 || abs_commutative(a)) return {a.one};  // division algebra (Wedderburn)
  GF2Matrix e1 = find_splitting_idempotent(a);
  GF2Matrix e2 = a.one;
  e2 ^= e1;
  std::vector<GF2Matrix> out;
  for (const GF2Matrix* e : {&e1, &e2}) {
    CornerAbs c = corner_abs(a, corner_span_of(a, *e), *e);
    std::vector<GF2Matrix> sub = split_simple(c.alg);
    for (const GF2Matrix& f : sub) out.push_back(f * c.span);
  }
  return out;
}

std::vector<GF2Matrix> semisimple_primitives(const AbsAlg& b) {
  if (b.dim == 0) return {};
  if (b.dim == 1) return {b.one};
  // center: z with z*b_i = b_i*z for every i
  GF2Matrix k(std::size_t(b.dim) * b.dim, b.dim);
  for (uint32_t i = 0; i < b.dim; ++i) {
    GF2Matrix d(b.dim, b.dim);
    for (uint32_t j = 0; j < b.dim; ++j) {
      d.xor_row_from(j, b.structure, std::size_t(j) * b.dim + i);  // right mult by b_i
      d.xor_row_from(j, b.structure, std::size_t(i) * b.dim + j);  // left mult by b_i
    }
    GF2Matrix dt = d.transpose();
    for (uint32_t j = 0; j < b.dim; ++j)
      k.xor_row_from(std::size_t(i) * b.dim + j, dt, j);
  }
  GF2Matrix center = k.nullspace();
  if (center.rows() == 0) throw internal_error("semisimple algebra with empty center");
  // kernel of the linear map z -> z^2 + z on the commutative center: spanned by
  // the primitive central idempotents.
  RowExpresser ce(center);
  GF2Matrix phi(center.rows(), center.rows());
  for (std::size_t r = 0; r < center.rows(); ++r) {
    GF2Matrix zr(1, b.dim);
    zr.xor_row_from(0, center, r);
    GF2Matrix y = abs_mul(b, zr, zr);
    y ^= zr;
    if (!ce.express(y.row(0), phi, r)) throw internal_error("center not closed under squaring");
  }
  GF2Matrix w = phi.transpose().nullspace();
  GF2Matrix idem_basis = w * center;  // rows: central idempotents spanning the kernel
  std::size_t nfactors = idem_basis.rows();
  std::vector<GF2Matrix> blocks{b.one};
  for (std::size_t r = 0; r < idem_basis.rows(); ++r) {
    GF2Matrix f(1, b.dim);
    f.xor_row_from(0, idem_basis, r);
    std::vector<GF2Matrix> next;
    for (const GF2Matrix& e : blocks) {
      GF2Matrix ef = abs_mul(b, e, f);
      GF2Matrix rest = e;
      rest ^= ef;
      if (!ef.is_zero()) next.push_back(ef);
      if (!rest.is_zero()) next.push_back(rest);
    }
    blocks = std::move(next);
  }
  if (blocks.size() != nfactors)
    throw internal_error("central idempotent refinement does not match the factor count");
  // order the simple factors: increasing dimension, then lexicographic coordinates
  std::vector<std::pair<std::size_t, GF2Matrix>> ordered;
  for (const GF2Matrix& eps : blocks) {
    GF2Matrix ideal(b.dim, b.dim);
    for (uint32_t j = 0; j < b.dim; ++j) {
      GF2Matrix ej(1, b.dim);
      ej.set(0, j, true);
      GF2Matrix z = abs_mul(b, eps, ej);
      ideal.xor_row_from(j, z, 0);
    }
    ordered.emplace_back(ideal.rank(), eps);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const std::pair<std::size_t, GF2Matrix>& x, const std::pair<std::size_t, GF2Matrix>& y) {
              if (x.first != y.first) return x.first < y.first;
              return row_lex_less(x.second, 0, y.second, 0);
            });
  std::vector<GF2Matrix> out;
  for (std::size_t bi = 0; bi < ordered.size(); ++bi) {
    const GF2Matrix& eps = ordered[bi].second;
    CornerAbs c = corner_abs(b, corner_span_of(b, eps), eps);
    std::vector<GF2Matrix> prim = split_simple(c.alg);
    for (const GF2Matrix& f : prim) out.push_back(f * c.span);
  }
  return out;
}

// Complete orthogonal primitive idempotents of A, lifted from A/J, in the
// documented order. Lifting is by repeated squaring: the defect x^2 + x lies
// in J and squares at each step, so it vanishes within dim+2 iterations.
std::vector<GF2Matrix> primitive_idempotent_coords(const AbsAlg& a) {
  GF2Matrix j = radical_abs(a, true);
  QuotientAbs q = quotient_abs(a, j);
  std::vector<GF2Matrix> prim_b = semisimple_primitives(q.alg);
  std::vector<GF2Matrix> lifted;
  GF2Matrix sum(1, a.dim);
  for (const GF2Matrix& eb : prim_b) {
    GF2Matrix avail = a.one;
    avail ^= sum;
    GF2Matrix x = abs_mul(a, abs_mul(a, avail, q.lift(eb)), avail);
    uint32_t guard = 0;
    while (true) {
      GF2Matrix x2 = abs_mul(a, x, x);
      if (x2 == x) break;
      x = std::move(x2);
      if (++guard > a.dim + 2) throw internal_error("idempotent lifting did not stabilize");
    }
    if (!(q.project(x) == eb)) throw internal_error("lifted idempotent has the wrong residue");
    sum ^= x;
    lifted.push_back(std::move(x));
  }
  if (!(sum == a.one)) throw internal_error("primitive idempotents do not sum to the identity");
  for (std::size_t i = 0; i < lifted.size(); ++i)
    for (std::size_t jj = 0; jj < lifted.size(); ++jj)
      if (i != jj && !abs_mul(a, lifted[i], lifted[jj]).is_zero())
        throw internal_error("lifted idempotents are not orthogonal");
  return lifted;
}

// ---- module internals ----------------------------------------------------------

std::vector<int> word_of(const PermGroup& g, uint32_t e) {
  std::vector<int> gens;
  while (e != 0) {
    gens.push_back(g.bfs_gen(e));
    e = g.bfs_parent(e);
  }
  std::reverse(gens.begin(), gens.end());
  return gens;
}

Perm point_perm_of(const GModule& m, uint32_t e) {
  Perm p(m.dim);
  for (int gi : word_of(m.group, e)) p = p * m.point_action[std::size_t(gi)];
  return p;
}

GF2Algebra make_algebra(std::vector<GF2Matrix> basis, const GF2Matrix& unit, const char* what) {
  GF2Algebra al;
  al.dim = uint32_t(basis.size());
  al.rep_dim = uint32_t(unit.rows());
  al.basis = std::move(basis);
  std::size_t r2 = std::size_t(al.rep_dim) * al.rep_dim;
  al.flat = GF2Matrix(al.dim, r2);
  for (uint32_t i = 0; i < al.dim; ++i) flatten_matrix_into(al.flat, i, al.basis[i]);
  {
    GF2Matrix probe = al.flat;
    if (probe.echelonize() != al.dim)
      throw internal_error(std::string(what) + ": basis matrices are dependent");
  }
  RowExpresser fx(al.flat);
  GF2Matrix funit(1, r2);
  flatten_matrix_into(funit, 0, unit);
  al.one = fx.express_checked(funit.row(0), what);
  al.structure = GF2Matrix(std::size_t(al.dim) * al.dim, al.dim);
  GF2Matrix fprod(1, r2);
  for (uint32_t i = 0; i < al.dim; ++i)
    for (uint32_t j = 0; j < al.dim; ++j) {
      GF2Matrix p = al.basis[i] * al.basis[j];
      std::memset(fprod.row(0), 0, fprod.words_per_row() * 8);
      flatten_matrix_into(fprod, 0, p);
      if (!fx.express(fprod.row(0), al.structure, std::size_t(i) * al.dim + j))
        throw internal_error(std::string(what) + ": basis is not multiplicatively closed");
    }
  return al;
}

// Basis of End_kG(M) as matrices. Permutation modules use the orbit partition
// of the generated group acting on basis-index pairs, which is exactly the
// solution set of the stacked commutation equations for permutation matrices;
// other modules solve those equations densely.
std::vector<GF2Matrix> endo_basis(const GModule& m) {
  std::size_t n = m.dim;
  std::vector<GF2Matrix> basis;
  if (m.is_permutation_module()) {
    std::vector<int32_t> orb(n * n, -1);
    std::vector<std::size_t> queue;
    int32_t next = 0;
    for (std::size_t startpair = 0; startpair < n * n; ++startpair) {
      if (orb[startpair] >= 0) continue;
      orb[startpair] = next;
      queue.assign(1, startpair);
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        std::size_t i = queue[qi] / n, j = queue[qi] % n;
        for (const Perm& p : m.point_action) {
          std::size_t tgt = std::size_t(p[uint16_t(i)]) * n + p[uint16_t(j)];
          if (orb[tgt] < 0) {
            orb[tgt] = next;
            queue.push_back(tgt);
          }
        }
      }
      ++next;
    }
    basis.assign(std::size_t(next), GF2Matrix(n, n));
    for (std::size_t pair = 0; pair < n * n; ++pair)
      basis[std::size_t(orb[pair])].set(pair / n, pair % n, true);
    // cross-check for transitive actions: the commutant dimension equals the
    // number of point-stabilizer orbits
    uint64_t go = m.group.order();
    std::vector<uint16_t> img0(go, 0);
    for (uint32_t e = 1; e < go; ++e)
      img0[e] = m.point_action[std::size_t(m.group.bfs_gen(e))][img0[m.group.bfs_parent(e)]];
    std::vector<bool> hit(n, false);
    std::size_t hits = 0;
    for (uint32_t e = 0; e < go; ++e)
      if (!hit[img0[e]]) { hit[img0[e]] = true; ++hits; }
    if (hits == n) {
      std::vector<std::size_t> root(n);
      for (std::size_t i = 0; i < n; ++i) root[i] = i;
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (root[x] != x) { root[x] = root[root[x]]; x = root[x]; }
        return x;
      };
      for (uint32_t e = 0; e < go; ++e) {
        if (img0[e] != 0) continue;
        Perm p = point_perm_of(m, e);
        for (std::size_t x = 0; x < n; ++x) {
          std::size_t a = find(x), b = find(p[uint16_t(x)]);
          if (a != b) root[a] = b;
        }
      }
      std::size_t orbits = 0;
      for (std::size_t x = 0; x < n; ++x)
        if (find(x) == x) ++orbits;
      if (orbits != basis.size())
        throw internal_error("commutant dimension disagrees with the stabilizer orbit count");
    }
  } else {
    if (n > 128) throw resource_error("endomorphism_algebra: dense solve limited to dimension 128");
    std::size_t n2 = n * n;
    GF2Matrix k(m.action.size() * n2, n2);
    for (std::size_t gi = 0; gi < m.action.size(); ++gi) {
      const GF2Matrix& ag = m.action[gi];
      std::size_t off = gi * n2;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          std::size_t rw = off + i * n + j;
          for (std::size_t c = 0; c < n; ++c) {
            if (ag.get(i, c)) k.flip(rw, c * n + j);  // F A_g term
            if (ag.get(c, j)) k.flip(rw, i * n + c);  // A_g F term
          }
        }
    }
    GF2Matrix sol = k.nullspace();
    for (std::size_t r = 0; r < sol.rows(); ++r)
      basis.push_back(unflatten_row(sol.row(r), sol.words_per_row(), n, n));
  }
  return basis;
}

// Shared Brauer-construction state: the fixed-point space, the span of the
// relative traces from the maximal subgroups, and the induced quotient module
// over the normalizer.
struct BrauerData {
  GModule mod;
  Subgroup q;
  Subgroup normalizer;
  GF2Matrix fixed;                    // f x n rows spanning M^Q
  GF2Matrix rel;                      // RREF rows, coordinates w.r.t. fixed
  std::vector<std::size_t> rel_pivots;
  std::vector<std::size_t> free_idx;  // fixed-row indices representing the quotient basis
  GF2Matrix post;                     // qdim x qdim basis adjustment (fixed-point basis)
  GF2Matrix reps;                     // qdim x n ambient representatives of the final basis
};

GF2Matrix fixed_space(const GModule& m, const std::vector<uint32_t>& gen_elems) {
  std::size_t n = m.dim;
  if (gen_elems.empty()) return GF2Matrix::identity(n);
  GF2Matrix stack(gen_elems.size() * n, n);
  std::size_t off = 0;
  for (uint32_t e : gen_elems) {
    GF2Matrix a = action_of(m, e);
    a ^= GF2Matrix::identity(n);
    GF2Matrix at = a.transpose();
    for (std::size_t r = 0; r < n; ++r) stack.xor_row_from(off + r, at, r);
    off += n;
  }
  return row_space_basis(stack.nullspace());
}

void reduce_by_rel(const BrauerData& d, GF2Matrix& row) {
  for (std::size_t r = 0; r < d.rel.rows(); ++r)
    if (row.get(0, d.rel_pivots[r])) row.xor_row_from(0, d.rel, r);
}

// Quotient coordinates of an ambient row; empty optional if outside M^Q.
std::optional<GF2Matrix> brauer_project(const BrauerData& d, const RowExpresser& fx,
                                        const uint64_t* ambient_row) {
  GF2Matrix c(1, d.fixed.rows());
  if (!fx.express(ambient_row, c, 0)) return std::nullopt;
  reduce_by_rel(d, c);
  GF2Matrix freec(1, d.free_idx.size());
  for (std::size_t i = 0; i < d.free_idx.size(); ++i)
    if (c.get(0, d.free_idx[i])) freec.set(0, i, true);
  return freec * d.post;
}

BrauerData brauer_core(const GModule& m, const Subgroup& q0) {
  Subgroup q = rebase_subgroup(m.group, q0);
  if (!is_power_of_two(q.order()))
    throw domain_error("brauer_construction: Q must be a 2-group");
  std::size_t n = m.dim;
  BrauerData d;
  d.q = q;
  d.fixed = fixed_space(m, q.generator_indices());
  RowExpresser fx(d.fixed);
  // relative traces from the maximal subgroups
  std::vector<GF2Matrix> trace_rows;
  std::size_t total_rows = 0;
  {
    std::vector<Subgroup> subs = all_subgroups(q);
    for (const Subgroup& r : subs) {
      if (r.order() * 2 != q.order()) continue;
      GF2Matrix fr = fixed_space(m, r.generator_indices());
      uint32_t t = 0;
      bool found = false;
      for (uint32_t e : q.elements())
        if (!r.contains_index(e)) { t = e; found = true; break; }
      if (!found) throw internal_error("maximal subgroup without complement element");
      GF2Matrix at = action_of(m, t);
      at ^= GF2Matrix::identity(n);
      GF2Matrix img = fr * at;
      GF2Matrix coords(img.rows(), d.fixed.rows());
      for (std::size_t rr = 0; rr < img.rows(); ++rr)
        if (!fx.express(img.row(rr), coords, rr))
          throw internal_error("relative trace escapes the fixed-point space");
      trace_rows.push_back(std::move(coords));
      total_rows += img.rows();
    }
  }
  GF2Matrix rel_stack(total_rows, d.fixed.rows());
  {
    std::size_t off = 0;
    for (const GF2Matrix& t : trace_rows) {
      for (std::size_t r = 0; r < t.rows(); ++r) rel_stack.xor_row_from(off + r, t, r);
      off += t.rows();
    }
  }
  d.rel = row_space_basis(rel_stack);
  {
    GF2Matrix tmp = d.rel;
    tmp.echelonize(&d.rel_pivots);
  }
  std::vector<bool> is_piv(d.fixed.rows(), false);
  for (std::size_t c : d.rel_pivots) is_piv[c] = true;
  for (std::size_t c = 0; c < d.fixed.rows(); ++c)
    if (!is_piv[c]) d.free_idx.push_back(c);
  std::size_t qdim = d.free_idx.size();
  d.post = GF2Matrix::identity(qdim);
  d.normalizer = normalizer_in(Subgroup::full(m.group), q);

  // quotient action of the normalizer generators
  const std::vector<uint32_t>& ngens = d.normalizer.generator_indices();
  std::vector<GF2Matrix> qact;
  for (uint32_t ge : ngens) {
    GF2Matrix a = action_of(m, ge);
    GF2Matrix w = d.fixed * a;
    GF2Matrix c(d.fixed.rows(), d.fixed.rows());
    for (std::size_t r = 0; r < w.rows(); ++r)
      if (!fx.express(w.row(r), c, r))
        throw internal_error("normalizer does not preserve the fixed-point space");
    // the trace span must be preserved as well
    for (std::size_t r = 0; r < d.rel.rows(); ++r) {
      GF2Matrix img(1, d.fixed.rows());
      for (std::size_t i = 0; i < d.fixed.rows(); ++i)
        if (d.rel.get(r, i)) img.xor_row_from(0, c, i);
      reduce_by_rel(d, img);
      for (std::size_t i : d.free_idx)
        if (img.get(0, i))
          throw internal_error("normalizer does not preserve the relative trace span");
    }
    GF2Matrix aq(qdim, qdim);
    for (std::size_t k = 0; k < qdim; ++k) {
      GF2Matrix rowc(1, d.fixed.rows());
      rowc.xor_row_from(0, c, d.free_idx[k]);
      reduce_by_rel(d, rowc);
      for (std::size_t i = 0; i < qdim; ++i)
        if (rowc.get(0, d.free_idx[i])) aq.set(k, i, true);
    }
    qact.push_back(std::move(aq));
  }

  d.mod.group = d.normalizer.as_group();
  d.mod.dim = uint32_t(qdim);
  d.mod.action = std::move(qact);
  d.reps = GF2Matrix(qdim, n);
  for (std::size_t k = 0; k < qdim; ++k)
    d.reps.xor_row_from(k, d.fixed, d.free_idx[k]);

  if (m.is_permutation_module()) {
    // fixed basis points give the natural permutation basis of the quotient
    std::vector<std::size_t> fixed_pts;
    {
      std::vector<bool> fixedp(n, true);
      for (uint32_t e : q.generator_indices()) {
        Perm p = point_perm_of(m, e);
        for (std::size_t x = 0; x < n; ++x)
          if (p[uint16_t(x)] != x) fixedp[x] = false;
      }
      for (std::size_t x = 0; x < n; ++x)
        if (fixedp[x]) fixed_pts.push_back(x);
    }
    if (fixed_pts.size() != qdim)
      throw internal_error("Brauer quotient dimension differs from the fixed-point count");
    if (qdim > 0) {
      GF2Matrix t(qdim, qdim);
      GF2Matrix unit(1, n);
      for (std::size_t k = 0; k < qdim; ++k) {
        std::memset(unit.row(0), 0, unit.words_per_row() * 8);
        unit.set(0, fixed_pts[k], true);
        std::optional<GF2Matrix> pc = brauer_project(d, fx, unit.row(0));
        if (!pc) throw internal_error("fixed basis point outside the fixed-point space");
        t.xor_row_from(k, *pc, 0);
      }
      if (!t.is_invertible())
        throw internal_error("fixed basis points do not span the Brauer quotient");
      GF2Matrix tinv = t.inverse();
      std::vector<std::size_t> pos(n, qdim);
      for (std::size_t k = 0; k < qdim; ++k) pos[fixed_pts[k]] = k;
      for (std::size_t gi = 0; gi < ngens.size(); ++gi) {
        GF2Matrix adj = t * d.mod.action[gi] * tinv;
        Perm p = point_perm_of(m, ngens[gi]);
        Perm small(qdim);
        std::vector<uint16_t> img(qdim);
        GF2Matrix expect(qdim, qdim);
        for (std::size_t k = 0; k < qdim; ++k) {
          std::size_t y = p[uint16_t(fixed_pts[k])];
          if (pos[y] == qdim)
            throw internal_error("normalizer does not permute the fixed basis points");
          img[k] = uint16_t(pos[y]);
          expect.set(k, pos[y], true);
        }
        if (!(adj == expect))
          throw internal_error("Brauer quotient action is not the fixed-point permutation action");
        d.mod.action[gi] = std::move(adj);
        d.mod.point_action.push_back(Perm(std::move(img)));
      }
      d.post = tinv;
      d.reps = GF2Matrix(qdim, n);
      for (std::size_t k = 0; k < qdim; ++k) d.reps.set(k, fixed_pts[k], true);
      if (!m.basis_labels.empty()) {
        for (std::size_t k = 0; k < qdim; ++k)
          d.mod.basis_labels.push_back(m.basis_labels[fixed_pts[k]]);
      }
    }
  }
  return d;
}

}  // namespace

// ---- public module construction -----------------------------------------------

GF2Matrix all_ones_row(std::size_t n) {
  GF2Matrix j(1, n);
  for (std::size_t c = 0; c < n; ++c) j.set(0, c, true);
  return j;
}

GModule perm_module(const PermGroup& g, const Subgroup& h0) {
  if (!g.valid()) throw domain_error("perm_module: invalid group");
  Subgroup h = rebase_subgroup(g, h0);
  uint64_t index = g.order() / h.order();
  if (index > config::max_module_dim())
    throw resource_error("perm_module: index " + std::to_string(index) +
                         " exceeds the module dimension limit");
  std::size_t dim = std::size_t(index);
  uint64_t go = g.order();
  std::vector<uint32_t> coset_of(go, UINT32_MAX);
  std::vector<uint32_t> reps;
  const std::vector<uint32_t>& helems = h.elements();
  for (uint32_t e = 0; e < go; ++e) {
    if (coset_of[e] != UINT32_MAX) continue;
    uint32_t c = uint32_t(reps.size());
    reps.push_back(e);
    for (uint32_t he : helems) coset_of[g.mul(he, e)] = c;
  }
  if (reps.size() != dim) throw internal_error("perm_module: coset count mismatch");
  GModule m;
  m.group = g;
  m.dim = uint32_t(dim);
  const std::vector<Perm>& gens = g.generators();
  for (const Perm& gp : gens) {
    uint32_t ge = g.index_of_checked(gp);
    std::vector<uint16_t> img(dim);
    std::vector<bool> seen(dim, false);
    for (std::size_t c = 0; c < dim; ++c) {
      uint32_t tgt = coset_of[g.mul(reps[c], ge)];
      img[c] = uint16_t(tgt);
      if (seen[tgt]) throw internal_error("perm_module: coset action not a bijection");
      seen[tgt] = true;
    }
    GF2Matrix a(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) a.set(c, img[c], true);
    m.action.push_back(std::move(a));
    m.point_action.push_back(Perm(std::move(img)));
  }
  for (std::size_t c = 0; c < dim; ++c)
    m.basis_labels.push_back(g.element(reps[c]).to_cycle_string());
  // confirm the coset action is a homomorphism when the element sweep is cheap
  if (go * index <= (uint64_t(1) << 23)) {
    PermGroup cg = PermGroup::from_generators(m.point_action, dim);
    GroupHom hom(g, cg, m.point_action);
    if (!hom.validate()) throw internal_error("perm_module: coset action is not a homomorphism");
  }
  return m;
}

GF2Matrix action_of(const GModule& m, uint32_t element_index) {
  GF2Matrix r = GF2Matrix::identity(m.dim);
  for (int gi : word_of(m.group, element_index)) r = r * m.action[std::size_t(gi)];
  return r;
}

GModule restrict_module(const GModule& m, const Subgroup& h0) {
  Subgroup h = rebase_subgroup(m.group, h0);
  GModule r;
  r.group = h.as_group();
  r.dim = m.dim;
  r.basis_labels = m.basis_labels;
  const std::vector<uint32_t>& gidx = h.generator_indices();
  for (uint32_t e : gidx) {
    r.action.push_back(action_of(m, e));
    if (m.is_permutation_module()) r.point_action.push_back(point_perm_of(m, e));
  }
  return r;
}

ModuleSummand restrict_module(const ModuleSummand& s, const Subgroup& h) {
  ModuleSummand r;
  r.parent = restrict_module(s.parent, h);
  r.idempotent = s.idempotent;
  r.image_basis = s.image_basis;
  r.dim = s.dim;
  return r;
}

GModule as_module(const ModuleSummand& s) {
  GModule r;
  r.group = s.parent.group;
  r.dim = s.dim;
  if (s.dim == 0) {
    r.action.assign(s.parent.action.size(), GF2Matrix(0, 0));
    return r;
  }
  RowExpresser ib(s.image_basis);
  for (const GF2Matrix& a : s.parent.action) {
    GF2Matrix w = s.image_basis * a;
    GF2Matrix b(s.dim, s.dim);
    for (std::size_t rr = 0; rr < w.rows(); ++rr)
      if (!ib.express(w.row(rr), b, rr))
        throw internal_error("as_module: image basis is not invariant");
    r.action.push_back(std::move(b));
  }
  return r;
}

// ---- endomorphism algebras -------------------------------------------------------

GF2Algebra endomorphism_algebra(const GModule& m) {
  if (m.dim == 0) {
    GF2Algebra al;
    al.dim = 0;
    al.rep_dim = 0;
    al.one = GF2Matrix(1, 0);
    al.structure = GF2Matrix(0, 0);
    al.flat = GF2Matrix(0, 0);
    return al;
  }
  return make_algebra(endo_basis(m), GF2Matrix::identity(m.dim), "endomorphism algebra");
}

GF2Algebra endomorphism_algebra(const ModuleSummand& s) {
  if (s.dim == 0) {
    GF2Algebra al;
    al.dim = 0;
    al.rep_dim = 0;
    al.one = GF2Matrix(1, 0);
    al.structure = GF2Matrix(0, 0);
    al.flat = GF2Matrix(0, 0);
    return al;
  }
  std::vector<GF2Matrix> parent_basis = endo_basis(s.parent);
  RowExpresser ib(s.image_basis);
  std::size_t d = s.dim;
  std::vector<GF2Matrix> corner;
  GF2Matrix acc(parent_basis.size(), d * d);
  std::size_t kept = 0;
  for (const GF2Matrix& f : parent_basis) {
    GF2Matrix cf = s.idempotent * f * s.idempotent;
    GF2Matrix w = s.image_basis * cf;
    GF2Matrix small(d, d);
    for (std::size_t r = 0; r < d; ++r)
      if (!ib.express(w.row(r), small, r))
        throw internal_error("corner algebra: projected endomorphism escapes the image");
    // keep a maximal independent subset in discovery order
    GF2Matrix flat(1, d * d);
    flatten_matrix_into(flat, 0, small);
    GF2Matrix probe(kept + 1, d * d);
    for (std::size_t r = 0; r < kept; ++r) probe.xor_row_from(r, acc, r);
    probe.xor_row_from(kept, flat, 0);
    if (probe.rank() == kept + 1) {
      acc.xor_row_from(kept, flat, 0);
      ++kept;
      corner.push_back(std::move(small));
    }
  }
  return make_algebra(std::move(corner), GF2Matrix::identity(d), "corner algebra");
}

GF2Matrix alg_mul(const GF2Algebra& a, const GF2Matrix& x, const GF2Matrix& y) {
  return abs_mul(abs_of(a), x, y);
}

GF2Matrix alg_matrix(const GF2Algebra& a, const GF2Matrix& coords) {
  GF2Matrix m(a.rep_dim, a.rep_dim);
  for (uint32_t i = 0; i < a.dim; ++i)
    if (coords.get(0, i)) m ^= a.basis[i];
  return m;
}

GF2Algebra algebra_from_basis(std::vector<GF2Matrix> basis, const GF2Matrix& unit) {
  return make_algebra(std::move(basis), unit, "algebra_from_basis");
}

GF2Matrix alg_express(const GF2Algebra& a, const GF2Matrix& m) {
  if (m.rows() != a.rep_dim || m.cols() != a.rep_dim)
    throw domain_error("alg_express: matrix shape mismatch");
  GF2Matrix flat(1, std::size_t(a.rep_dim) * a.rep_dim);
  flatten_matrix_into(flat, 0, m);
  RowExpresser fx(a.flat);
  GF2Matrix out(1, a.dim);
  if (!fx.express(flat.row(0), out, 0))
    throw domain_error("alg_express: matrix outside the algebra");
  return out;
}

// ---- structure theory -------------------------------------------------------------

GF2Matrix radical(const GF2Algebra& a) { return radical_abs(abs_of(a), true); }

std::pair<bool, uint32_t> is_local(const GF2Algebra& a) {
  GF2Matrix j = radical_abs(abs_of(a), true);
  uint32_t rdim = a.dim - uint32_t(j.rows());
  return {rdim == 1, rdim};
}

std::vector<ModuleSummand> decompose(const GModule& m) {
  std::vector<ModuleSummand> out;
  if (m.dim == 0) return out;
  GF2Algebra endo = endomorphism_algebra(m);
  std::vector<GF2Matrix> prim = primitive_idempotent_coords(abs_of(endo));
  GF2Matrix sum(m.dim, m.dim);
  uint32_t total = 0;
  for (const GF2Matrix& coords : prim) {
    ModuleSummand s;
    s.parent = m;
    s.idempotent = alg_matrix(endo, coords);
    if (!(s.idempotent * s.idempotent == s.idempotent))
      throw internal_error("decompose: summand projector is not idempotent");
    for (const GF2Matrix& a : m.action)
      if (!(a * s.idempotent == s.idempotent * a))
        throw internal_error("decompose: summand projector does not commute with the action");
    for (const ModuleSummand& prev : out)
      if (!(prev.idempotent * s.idempotent).is_zero() ||
          !(s.idempotent * prev.idempotent).is_zero())
        throw internal_error("decompose: summand projectors are not orthogonal");
    sum ^= s.idempotent;
    s.image_basis = row_space_basis(s.idempotent);
    s.dim = uint32_t(s.image_basis.rows());
    total += s.dim;
    out.push_back(std::move(s));
  }
  if (!(sum == GF2Matrix::identity(m.dim)))
    throw internal_error("decompose: summand projectors do not sum to the identity");
  if (total != m.dim) throw internal_error("decompose: summand dimensions do not sum to dim M");
  return out;
}

std::vector<ModuleSummand> decompose(const ModuleSummand& s) {
  std::vector<ModuleSummand> out;
  if (s.dim == 0) return out;
  GF2Algebra corner = endomorphism_algebra(s);
  std::vector<GF2Matrix> prim = primitive_idempotent_coords(abs_of(corner));
  // ambient form of a corner endomorphism phi: R * phi * IB, where E = R * IB
  RowExpresser ib(s.image_basis);
  GF2Matrix r(s.parent.dim, s.dim);
  for (std::size_t row = 0; row < s.parent.dim; ++row)
    if (!ib.express(s.idempotent.row(row), r, row))
      throw internal_error("decompose: projector rows escape the image basis");
  GF2Matrix sum(s.parent.dim, s.parent.dim);
  uint32_t total = 0;
  for (const GF2Matrix& coords : prim) {
    GF2Matrix phi = alg_matrix(corner, coords);
    ModuleSummand part;
    part.parent = s.parent;
    part.idempotent = r * phi * s.image_basis;
    if (!(part.idempotent * part.idempotent == part.idempotent))
      throw internal_error("decompose: refined projector is not idempotent");
    for (const GF2Matrix& a : s.parent.action)
      if (!(a * part.idempotent == part.idempotent * a))
        throw internal_error("decompose: refined projector does not commute with the action");
    sum ^= part.idempotent;
    part.image_basis = row_space_basis(part.idempotent);
    part.dim = uint32_t(part.image_basis.rows());
    total += part.dim;
    out.push_back(std::move(part));
  }
  if (!(sum == s.idempotent))
    throw internal_error("decompose: refined projectors do not sum to the original");
  if (total != s.dim)
    throw internal_error("decompose: refined dimensions do not sum to the summand dimension");
  return out;
}

// ---- Scott module, Brauer construction, vertex -------------------------------------

ModuleSummand scott_module(const PermGroup& g, const Subgroup& h) {
  GModule m = perm_module(g, h);
  std::vector<ModuleSummand> parts = decompose(m);
  GF2Matrix j = all_ones_row(m.dim);
  std::size_t found = parts.size();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    GF2Matrix ji = j * parts[i].idempotent;
    if (ji.is_zero()) continue;
    if (!(ji == j))
      throw internal_error("scott_module: all-ones vector split across summands");
    if (found != parts.size())
      throw internal_error("scott_module: all-ones vector in two summands");
    found = i;
  }
  if (found == parts.size())
    throw internal_error("scott_module: no summand contains the all-ones vector");
  // self-duality witness: the coordinate-sum functional is nonzero on the image
  bool odd = false;
  for (std::size_t r = 0; r < parts[found].image_basis.rows() && !odd; ++r) {
    std::size_t pc = 0;
    for (std::size_t w = 0; w < parts[found].image_basis.words_per_row(); ++w)
      pc += std::size_t(std::popcount(parts[found].image_basis.row(r)[w]));
    odd = (pc & 1) != 0;
  }
  if (!odd)
    throw internal_error("scott_module: coordinate-sum functional vanishes on the summand");
  return parts[found];
}

GModule brauer_construction(const GModule& m, const Subgroup& q) {
  return brauer_core(m, q).mod;
}

ModuleSummand brauer_construction(const ModuleSummand& s, const Subgroup& q) {
  BrauerData d = brauer_core(s.parent, q);
  RowExpresser fx(d.fixed);
  std::size_t qdim = d.mod.dim;
  GF2Matrix ebar(qdim, qdim);
  for (std::size_t k = 0; k < qdim; ++k) {
    GF2Matrix img(1, s.parent.dim);
    img.xor_row_from(0, d.reps, k);
    img = img * s.idempotent;
    std::optional<GF2Matrix> pc = brauer_project(d, fx, img.row(0));
    if (!pc) throw internal_error("brauer_construction: projector does not preserve M^Q");
    ebar.xor_row_from(k, *pc, 0);
  }
  if (!(ebar * ebar == ebar))
    throw internal_error("brauer_construction: induced projector is not idempotent");
  for (const GF2Matrix& a : d.mod.action)
    if (!(a * ebar == ebar * a))
      throw internal_error("brauer_construction: induced projector does not commute");
  ModuleSummand out;
  out.parent = d.mod;
  out.idempotent = std::move(ebar);
  out.image_basis = row_space_basis(out.idempotent);
  out.dim = uint32_t(out.image_basis.rows());
  return out;
}

namespace {

// Orbit partition of basis-index pairs under a list of point permutations.
std::pair<std::vector<int32_t>, int32_t> pair_orbit_table(std::size_t n,
                                                          const std::vector<Perm>& perms) {
  std::vector<int32_t> orb(n * n, -1);
  std::vector<std::size_t> queue;
  int32_t next = 0;
  for (std::size_t start = 0; start < n * n; ++start) {
    if (orb[start] >= 0) continue;
    orb[start] = next;
    queue.assign(1, start);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t i = queue[qi] / n, j = queue[qi] % n;
      for (const Perm& p : perms) {
        std::size_t tgt = std::size_t(p[uint16_t(i)]) * n + p[uint16_t(j)];
        if (orb[tgt] < 0) {
          orb[tgt] = next;
          queue.push_back(tgt);
        }
      }
    }
    ++next;
  }
  return {std::move(orb), next};
}

std::vector<uint32_t> right_coset_reps(const PermGroup& g, const Subgroup& h) {
  std::vector<uint32_t> reps;
  std::vector<bool> seen(g.order(), false);
  const std::vector<uint32_t>& helems = h.elements();
  for (uint32_t e = 0; e < g.order(); ++e) {
    if (seen[e]) continue;
    reps.push_back(e);
    for (uint32_t he : helems) seen[g.mul(he, e)] = true;
  }
  return reps;
}

// Point permutation of every group element on the module basis, by BFS.
std::vector<Perm> all_point_perms(const GModule& m) {
  uint64_t go = m.group.order();
  std::vector<Perm> img;
  img.reserve(go);
  img.push_back(Perm(m.dim));
  for (uint32_t e = 1; e < go; ++e)
    img.push_back(img[m.group.bfs_parent(e)] * m.point_action[std::size_t(m.group.bfs_gen(e))]);
  return img;
}

// Higman test for a summand of a permutation module: the relative trace of an
// h-orbital matrix B inside the G-orbital O is (coset parity) * A_O, so the
// trace ideal restricted to the corner is spanned by {e A_O e : O carries an
// h-suborbital met by an odd number of right cosets}.
bool higman_orbital(const ModuleSummand& s, const Subgroup& h) {
  const GModule& m = s.parent;
  const PermGroup& g = m.group;
  std::size_t n = m.dim;
  std::vector<Perm> hperms;
  for (const Perm& p : h.generators()) {
    uint32_t e = g.index_of_checked(p);
    Perm q(n);
    for (int gi : word_of(g, e)) q = q * m.point_action[std::size_t(gi)];
    hperms.push_back(std::move(q));
  }
  std::pair<std::vector<int32_t>, int32_t> horb = pair_orbit_table(n, hperms);
  std::pair<std::vector<int32_t>, int32_t> gorb = pair_orbit_table(n, m.point_action);
  std::vector<uint32_t> reps = right_coset_reps(g, h);
  std::vector<Perm> pp = all_point_perms(m);
  // first-discovered representative pair of each G-orbital
  std::vector<std::size_t> rep_pair(std::size_t(gorb.second), 0);
  {
    std::vector<bool> found(std::size_t(gorb.second), false);
    for (std::size_t pr = 0; pr < n * n; ++pr) {
      int32_t o = gorb.first[pr];
      if (!found[std::size_t(o)]) {
        found[std::size_t(o)] = true;
        rep_pair[std::size_t(o)] = pr;
      }
    }
  }
  std::vector<GF2Matrix> span_rows;
  for (int32_t o = 0; o < gorb.second; ++o) {
    std::size_t x = rep_pair[std::size_t(o)] / n, y = rep_pair[std::size_t(o)] % n;
    std::vector<uint8_t> parity(std::size_t(horb.second), 0);
    for (uint32_t r : reps) {
      const Perm& pinv = pp[g.inv(r)];
      parity[std::size_t(horb.first[std::size_t(pinv[uint16_t(x)]) * n + pinv[uint16_t(y)]])] ^= 1;
    }
    bool odd = false;
    for (uint8_t pbit : parity)
      if (pbit) { odd = true; break; }
    if (!odd) continue;
    GF2Matrix ao(n, n);
    for (std::size_t pr = 0; pr < n * n; ++pr)
      if (gorb.first[pr] == o) ao.set(pr / n, pr % n, true);
    span_rows.push_back(s.idempotent * ao * s.idempotent);
  }
  GF2Matrix stack(span_rows.size(), n * n);
  for (std::size_t r = 0; r < span_rows.size(); ++r)
    flatten_matrix_into(stack, r, span_rows[r]);
  stack = row_space_basis(stack);
  GF2Matrix target(1, n * n);
  flatten_matrix_into(target, 0, s.idempotent);
  if (stack.rows() == 0) return target.is_zero();
  RowExpresser se(stack);
  GF2Matrix out(1, stack.rows());
  return se.express(target.row(0), out, 0);
}

}  // namespace

bool is_relatively_projective(const ModuleSummand& s, const Subgroup& h0) {
  if (s.dim == 0) return true;
  if (s.parent.is_permutation_module())
    return higman_orbital(s, rebase_subgroup(s.parent.group, h0));
  GModule w = as_module(s);
  const PermGroup& g = w.group;
  Subgroup h = rebase_subgroup(g, h0);
  std::size_t d = w.dim;
  if (d > 128) throw resource_error("is_relatively_projective: solve limited to dimension 128");
  std::vector<uint32_t> reps = right_coset_reps(g, h);
  std::size_t d2 = d * d;
  const std::vector<uint32_t>& hgens = h.generator_indices();
  GF2Matrix sys(hgens.size() * d2 + d2, d2 + 1);
  // commutation with the h-generators: F B_h + B_h F = 0
  for (std::size_t gi = 0; gi < hgens.size(); ++gi) {
    GF2Matrix b = action_of(w, hgens[gi]);
    std::size_t off = gi * d2;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        std::size_t rw = off + i * d + j;
        for (std::size_t c = 0; c < d; ++c) {
          if (b.get(c, j)) sys.flip(rw, i * d + c);  // F B_h
          if (b.get(i, c)) sys.flip(rw, c * d + j);  // B_h F
        }
      }
  }
  // relative trace equals the identity: sum over cosets of B(r)^-1 F B(r) = I
  std::size_t tr_off = hgens.size() * d2;
  for (uint32_t e : reps) {
    GF2Matrix binv = action_of(w, g.inv(e));
    GF2Matrix bt = action_of(w, e).transpose();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t a = 0; a < d; ++a) {
        if (!binv.get(i, a)) continue;
        for (std::size_t j = 0; j < d; ++j)
          xor_bits_into(sys.row(tr_off + i * d + j), sys.words_per_row(), a * d, bt.row(j), d);
      }
  }
  for (std::size_t i = 0; i < d; ++i) sys.flip(tr_off + i * d + i, d2);
  std::vector<std::size_t> pivots;
  sys.echelonize(&pivots);
  for (std::size_t p : pivots)
    if (p == d2) return false;  // inconsistent system
  return true;
}

namespace {

void require_indecomposable(const ModuleSummand& s) {
  std::pair<bool, uint32_t> loc = is_local(endomorphism_algebra(s));
  if (!loc.first)
    throw precondition_error("vertex: endomorphism algebra is not local with residue GF(2)");
}

// Index-2 subgroups of a 2-group V <= G: preimages of the hyperplanes of
// V/Phi(V), with Phi(V) generated by the squares.
std::vector<Subgroup> index2_subgroups(const PermGroup& g, const Subgroup& v) {
  std::vector<uint32_t> sq;
  for (uint32_t e : v.elements()) sq.push_back(g.mul(e, e));
  std::sort(sq.begin(), sq.end());
  sq.erase(std::unique(sq.begin(), sq.end()), sq.end());
  Subgroup phi = Subgroup::generated_indices(g, sq);
  std::vector<uint32_t> basis;
  Subgroup cur = phi;
  for (uint32_t e : v.elements()) {
    if (cur.contains_index(e)) continue;
    basis.push_back(e);
    std::vector<uint32_t> gens = cur.generator_indices();
    gens.push_back(e);
    cur = Subgroup::generated_indices(g, std::move(gens));
    if (cur.order() == v.order()) break;
  }
  if (cur.order() != v.order())
    throw internal_error("index2_subgroups: Frattini basis does not generate");
  std::size_t r = basis.size();
  std::vector<Subgroup> out;
  for (uint32_t mask = 1; mask < (uint32_t(1) << r); ++mask) {
    std::size_t pivot = std::size_t(std::countr_zero(mask));
    std::vector<uint32_t> gens = phi.generator_indices();
    for (std::size_t i = 0; i < r; ++i) {
      if (i == pivot) continue;
      gens.push_back((mask >> i) & 1 ? g.mul(basis[i], basis[pivot]) : basis[i]);
    }
    Subgroup w = Subgroup::generated_indices(g, std::move(gens));
    if (w.order() * 2 != v.order())
      throw internal_error("index2_subgroups: hyperplane preimage has the wrong order");
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Subgroup vertex(const ModuleSummand& s) {
  require_indecomposable(s);
  const PermGroup& g = s.parent.group;
  Subgroup v = sylow_2(g);
  if (!is_relatively_projective(s, v))
    throw internal_error("vertex: module is not even Sylow-projective");
  for (;;) {
    bool descended = false;
    std::vector<Subgroup> maxs = index2_subgroups(g, v);
    for (Subgroup& w : maxs) {
      if (is_relatively_projective(s, w)) {
        v = std::move(w);
        descended = true;
        break;
      }
    }
    if (!descended) break;
  }
  std::vector<Subgroup> cls = conjugates_in(Subgroup::full(g), v);
  return *std::min_element(cls.begin(), cls.end());
}

Subgroup vertex(const ModuleSummand& s, const Subgroup& anchor0) {
  require_indecomposable(s);
  const PermGroup& g = s.parent.group;
  Subgroup anchor = rebase_subgroup(g, anchor0);
  if (!is_power_of_two(anchor.order()))
    throw domain_error("vertex: anchor must be a 2-group");
  if (!is_relatively_projective(s, anchor))
    throw internal_error("vertex: module is not projective relative to the anchor");
  std::vector<Subgroup> candidates;
  {
    PermGroup ap = anchor.as_group();
    for (const Subgroup& c : subgroups_up_to_conjugacy(ap))
      candidates.push_back(rebase_subgroup(g, c));
  }
  std::sort(candidates.begin(), candidates.end());
  for (const Subgroup& q : candidates)
    if (is_relatively_projective(s, q)) return q;
  throw internal_error("vertex: anchored scan found no projective subgroup");
}

// ---- module comparison ---------------------------------------------------------------

GF2Matrix intertwiner_space(const GModule& x, const GModule& y) {
  if (!x.group.valid() || !y.group.valid()) throw domain_error("intertwiner_space: invalid module");
  if (x.group.generators() != y.group.generators())
    throw domain_error("intertwiner_space: modules over different generator lists");
  std::size_t dx = x.dim, dy = y.dim;
  if (dx * dy > (std::size_t(1) << 14))
    throw resource_error("intertwiner_space: solve limited to 16384 unknowns");
  if (dx == 0 || dy == 0) return GF2Matrix(0, dx * dy);
  GF2Matrix k(x.action.size() * dx * dy, dx * dy);
  for (std::size_t gi = 0; gi < x.action.size(); ++gi) {
    const GF2Matrix& a = x.action[gi];
    const GF2Matrix& b = y.action[gi];
    std::size_t off = gi * dx * dy;
    for (std::size_t i = 0; i < dx; ++i)
      for (std::size_t j = 0; j < dy; ++j) {
        std::size_t rw = off + i * dy + j;
        for (std::size_t c = 0; c < dx; ++c)
          if (a.get(i, c)) k.flip(rw, c * dy + j);  // A_g T
        for (std::size_t c = 0; c < dy; ++c)
          if (b.get(c, j)) k.flip(rw, i * dy + c);  // T B_g
      }
  }
  return k.nullspace();
}

GF2Matrix module_isomorphism(const GModule& x, const GModule& y) {
  if (x.dim != y.dim) return GF2Matrix();
  if (x.dim == 0) return GF2Matrix(0, 0);
  GF2Matrix h1 = intertwiner_space(x, y);
  if (h1.rows() == 0) return GF2Matrix();
  GF2Matrix h2 = intertwiner_space(y, x);
  for (std::size_t i = 0; i < h1.rows(); ++i) {
    GF2Matrix u = unflatten_row(h1.row(i), h1.words_per_row(), x.dim, y.dim);
    for (std::size_t j = 0; j < h2.rows(); ++j) {
      GF2Matrix v = unflatten_row(h2.row(j), h2.words_per_row(), y.dim, x.dim);
      if ((u * v).is_invertible()) return u;
    }
  }
  return GF2Matrix();
}

}  // namespace wrb
