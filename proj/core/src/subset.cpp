#include "mevmix/subset.hpp"

#include <string>

#include "mevmix/error.hpp"

namespace mevmix {

SubsetMask::SubsetMask(std::uint32_t bits) : bits_(bits) {
  if (bits == 0) throw domain_error("subset mask is empty");
  if ((bits >> kMaxDimension) != 0)
    throw domain_error("subset mask has coordinates beyond the supported dimension " +
                       std::to_string(kMaxDimension));
}

SubsetMask SubsetMask::from_indices(const std::vector<std::size_t>& indices) {
  std::uint32_t bits = 0;
  for (auto i : indices) {
    if (i >= kMaxDimension)
      throw domain_error("coordinate " + std::to_string(i + 1) + " exceeds the supported dimension " +
                         std::to_string(kMaxDimension));
    bits |= std::uint32_t{1} << i;
  }
  return SubsetMask(bits);
}

SubsetMask SubsetMask::singleton(std::size_t index) { return from_indices({index}); }

SubsetMask SubsetMask::full(std::size_t dimension) {
  if (dimension == 0 || dimension > kMaxDimension)
    throw domain_error("dimension " + std::to_string(dimension) + " outside [1, " +
                       std::to_string(kMaxDimension) + "]");
  return SubsetMask(static_cast<std::uint32_t>((std::uint64_t{1} << dimension) - 1));
}

bool SubsetMask::fits(std::size_t dimension) const {
  if (dimension >= 32) return true;
  return (bits_ >> dimension) == 0;
}

std::vector<std::size_t> SubsetMask::indices() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::size_t i = 0; i < 32; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::string SubsetMask::to_string() const {
  std::string s = "{";
  bool first = true;
  for (auto i : indices()) {
    if (!first) s += ',';
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

void check_subset(SubsetMask mask, std::size_t dimension) {
  if (dimension == 0 || dimension > kMaxDimension)
    throw domain_error("dimension " + std::to_string(dimension) + " outside [1, " +
                       std::to_string(kMaxDimension) + "]");
  if (!mask.fits(dimension))
    throw domain_error("subset " + mask.to_string() + " is not within dimension " +
                       std::to_string(dimension));
}

}  // namespace mevmix
