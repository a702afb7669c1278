#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mevmix {

// Largest supported dimension; inclusion-exclusion enumerates 2^d subsets.
inline constexpr std::size_t kMaxDimension = 30;

// Nonempty subset of the coordinate set {0, ..., d-1}, stored as a bitmask.
// Coordinates are zero-based in the library; the CLI and JSON use one-based
// coordinate numbers.
class SubsetMask {
 public:
  // Throws domain_error for an empty mask or bits beyond kMaxDimension.
  explicit SubsetMask(std::uint32_t bits);

  // Zero-based coordinates; duplicates are ignored.
  static SubsetMask from_indices(const std::vector<std::size_t>& indices);
  static SubsetMask singleton(std::size_t index);
  // {0, ..., d-1}
  static SubsetMask full(std::size_t dimension);

  std::uint32_t bits() const { return bits_; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool contains(std::size_t index) const {
    return index < 32 && ((bits_ >> index) & 1u) != 0;
  }
  bool is_subset_of(SubsetMask other) const { return (bits_ & ~other.bits_) == 0; }
  // True when every member is < dimension.
  bool fits(std::size_t dimension) const;
  // Zero-based members in increasing order.
  std::vector<std::size_t> indices() const;
  // e.g. "{1,3}" with one-based coordinates.
  std::string to_string() const;

  friend bool operator==(SubsetMask, SubsetMask) = default;

 private:
  std::uint32_t bits_;
};

// Throws domain_error unless the mask fits the dimension and d <= kMaxDimension.
void check_subset(SubsetMask mask, std::size_t dimension);

// Calls f(SubsetMask) for every nonempty subset of `mask`, in increasing
// bit-pattern order.
template <class F>
void for_each_nonempty_subset(SubsetMask mask, F&& f) {
  const std::uint32_t all = mask.bits();
  std::uint32_t b = 0;
  do {
    b = (b - all) & all;  // next submask in increasing order
    f(SubsetMask(b));
  } while (b != all);
}

}  // namespace mevmix
