#include "wrb/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wrb/errors.hpp"

namespace wrb {

uint64_t lcm_u64(uint64_t a, uint64_t b) { return a / std::gcd(a, b) * b; }

Perm::Perm(std::size_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), 0);
}

Perm::Perm(std::vector<uint16_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (uint16_t v : img_) {
    if (v >= img_.size() || seen[v]) throw domain_error("Perm: image vector is not a bijection");
    seen[v] = true;
  }
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<uint16_t>>& cycles) {
  std::vector<uint16_t> img(degree);
  std::iota(img.begin(), img.end(), 0);
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      uint16_t from = cyc[i];
      uint16_t to = cyc[(i + 1) % cyc.size()];
      if (from >= degree || to >= degree) throw domain_error("Perm: cycle point out of range");
      if (used[from]) throw domain_error("Perm: cycles are not disjoint");
      used[from] = true;
      img[from] = to;
    }
  }
  return Perm(std::move(img));
}

Perm Perm::parse_cycles(const std::string& text, std::size_t degree, int line) {
  std::vector<std::vector<uint16_t>> cycles;
  std::size_t i = 0;
  auto col = [&](std::size_t pos) { return static_cast<int>(pos) + 1; };
  auto skip_ws = [&] { while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i; };
  skip_ws();
  if (i == text.size()) throw parse_error("expected permutation", line, col(i));
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') throw parse_error("expected '('", line, col(i));
    ++i;
    std::vector<uint16_t> cyc;
    while (true) {
      skip_ws();
      if (i == text.size()) throw parse_error("unterminated cycle", line, col(i));
      if (text[i] == ')') { ++i; break; }
      if (text[i] == ',') { ++i; continue; }
      if (!isdigit(static_cast<unsigned char>(text[i])))
        throw parse_error("expected point or ')'", line, col(i));
      std::size_t start = i;
      unsigned long v = 0;
      while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 65535) throw parse_error("point too large", line, col(start));
        ++i;
      }
      if (v >= degree) throw parse_error("point exceeds degree", line, col(start));
      cyc.push_back(static_cast<uint16_t>(v));
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
  }
  skip_ws();
  if (i != text.size()) throw parse_error("trailing characters after permutation", line, col(i));
  try {
    return from_cycles(degree, cycles);
  } catch (const domain_error& e) {
    throw parse_error(e.what(), line, 1);
  }
}

Perm Perm::operator*(const Perm& rhs) const {
  if (degree() != rhs.degree()) throw domain_error("Perm: degree mismatch in product");
  std::vector<uint16_t> img(degree());
  for (std::size_t x = 0; x < degree(); ++x) img[x] = rhs.img_[img_[x]];
  Perm out;
  out.img_ = std::move(img);
  return out;
}

Perm Perm::inverse() const {
  std::vector<uint16_t> img(degree());
  for (std::size_t x = 0; x < degree(); ++x) img[img_[x]] = static_cast<uint16_t>(x);
  Perm out;
  out.img_ = std::move(img);
  return out;
}

Perm Perm::conjugated_by(const Perm& g) const { return g.inverse() * (*this) * g; }

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < degree(); ++x)
    if (img_[x] != x) return false;
  return true;
}

uint64_t Perm::order() const {
  uint64_t ord = 1;
  std::vector<bool> seen(degree(), false);
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x]) continue;
    uint64_t len = 0;
    std::size_t y = x;
    do {
      seen[y] = true;
      y = img_[y];
      ++len;
    } while (y != x);
    ord = lcm_u64(ord, len);
  }
  return ord;
}

bool Perm::commutes_with(const Perm& other) const {
  for (std::size_t x = 0; x < degree(); ++x)
    if (other.img_[img_[x]] != img_[other.img_[x]]) return false;
  return true;
}

std::vector<std::vector<uint16_t>> Perm::cycles() const {
  std::vector<std::vector<uint16_t>> out;
  std::vector<bool> seen(degree(), false);
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x] || img_[x] == x) { seen[x] = true; continue; }
    std::vector<uint16_t> cyc;
    std::size_t y = x;
    do {
      seen[y] = true;
      cyc.push_back(static_cast<uint16_t>(y));
      y = img_[y];
    } while (y != x);
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string Perm::to_cycle_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& cyc : cs) {
    os << '(';
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (i) os << ' ';
      os << cyc[i];
    }
    os << ')';
  }
  return os.str();
}

Perm Perm::shifted(std::size_t offset, std::size_t new_degree) const {
  if (offset + degree() > new_degree) throw domain_error("Perm: shift exceeds new degree");
  std::vector<uint16_t> img(new_degree);
  std::iota(img.begin(), img.end(), 0);
  for (std::size_t x = 0; x < degree(); ++x)
    img[x + offset] = static_cast<uint16_t>(img_[x] + offset);
  Perm out;
  out.img_ = std::move(img);
  return out;
}

} // namespace wrb
