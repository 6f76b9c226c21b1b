#ifndef WRB_PERM_H
#define WRB_PERM_H

#include <cstdint>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace wrb {

// Permutation of {0, ..., degree-1}, stored as the image vector.
// Products compose left to right: x^(p*q) = (x^p)^q, matching conjugation
// p^g = g^-1 p g so that (p^g)^h = p^(gh).
class Perm {
public:
  Perm() = default;
  explicit Perm(std::size_t degree);                 // identity
  explicit Perm(std::vector<uint16_t> images);
  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<uint16_t>>& cycles);
  // Parse disjoint-cycle notation, e.g. "(0 1 2)(3 4)" or "()" for the identity.
  // Points are 0-based. line/for error reporting in catalog files.
  static Perm parse_cycles(const std::string& text, std::size_t degree, int line = 1);

  std::size_t degree() const { return img_.size(); }
  uint16_t operator[](uint16_t x) const { return img_[x]; }
  const std::vector<uint16_t>& images() const { return img_; }

  Perm operator*(const Perm& rhs) const;             // apply *this, then rhs
  Perm inverse() const;
  Perm conjugated_by(const Perm& g) const;           // g^-1 * (*this) * g
  bool is_identity() const;
  uint64_t order() const;                            // lcm of cycle lengths
  bool commutes_with(const Perm& other) const;

  bool operator==(const Perm& rhs) const { return img_ == rhs.img_; }
  bool operator!=(const Perm& rhs) const { return img_ != rhs.img_; }
  bool operator<(const Perm& rhs) const { return img_ < rhs.img_; }

  std::vector<std::vector<uint16_t>> cycles() const; // nontrivial cycles, sorted
  std::string to_cycle_string() const;

  // Embed into a larger domain: points shift by offset, degree becomes new_degree.
  Perm shifted(std::size_t offset, std::size_t new_degree) const;

private:
  std::vector<uint16_t> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (uint16_t v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

uint64_t lcm_u64(uint64_t a, uint64_t b);

} // namespace wrb

#endif
