#include <doctest.h>

#include <set>

#include "mevmix/error.hpp"
#include "mevmix/subset.hpp"

using namespace mevmix;

TEST_SUITE("subset") {
  TEST_CASE("empty mask is rejected") { CHECK_THROWS_AS(SubsetMask(0), domain_error); }

  TEST_CASE("coordinates beyond 30 are rejected") {
    CHECK_THROWS_AS(SubsetMask::from_indices({30}), domain_error);
    CHECK_NOTHROW(SubsetMask::from_indices({29}));
    CHECK_THROWS_AS(SubsetMask::full(31), domain_error);
  }

  TEST_CASE("members, size and printing") {
    const auto s = SubsetMask::from_indices({2, 0, 2});
    CHECK(s.size() == 2);
    CHECK(s.indices() == std::vector<std::size_t>{0, 2});
    CHECK(s.to_string() == "{1,3}");
    CHECK(s.fits(3));
    CHECK_FALSE(s.fits(2));
    CHECK(SubsetMask::singleton(1).is_subset_of(SubsetMask::full(2)));
  }

  TEST_CASE("check_subset enforces dimension") {
    CHECK_THROWS_AS(check_subset(SubsetMask::from_indices({3}), 3), domain_error);
    CHECK_NOTHROW(check_subset(SubsetMask::from_indices({2}), 3));
  }

  TEST_CASE("enumeration visits each nonempty submask once, in increasing order") {
    for (std::uint32_t bits : {0b1u, 0b1011u, 0b11111u, 0b1000100u}) {
      std::vector<std::uint32_t> seen;
      for_each_nonempty_subset(SubsetMask(bits), [&](SubsetMask b) { seen.push_back(b.bits()); });
      std::vector<std::uint32_t> expected;
      for (std::uint32_t b = 1; b <= bits; ++b)
        if ((b & ~bits) == 0) expected.push_back(b);
      CHECK(seen == expected);
    }
  }
}
