#include <catch2/catch_amalgamated.hpp>

#include "pum/kernels.hpp"

using Catch::Approx;
using pum::KernelFamily;
using pum::RadialKernel;

namespace {
constexpr KernelFamily kAllFamilies[] = {
    KernelFamily::gaussian, KernelFamily::wendland0, KernelFamily::wendland2,
    KernelFamily::wendland4, KernelFamily::matern0,  KernelFamily::matern2,
    KernelFamily::matern4,
};
}

TEST_CASE("kernel closed forms") {
  const RadialKernel w2{KernelFamily::wendland2, 1.0};
  CHECK(w2(0.0) == 1.0);
  CHECK(w2(1.0) == 0.0);
  CHECK(w2(0.5) == Approx(0.1875).margin(1e-15));  // (1-r)^4 (4r+1) = 0.0625 * 3

  const RadialKernel m2{KernelFamily::matern2, 1.0};
  CHECK(m2(0.0) == 1.0);
  CHECK(m2(2.0) == Approx(3.0 * std::exp(-2.0)).margin(1e-15));

  for (KernelFamily family : kAllFamilies) CHECK(RadialKernel{family, 1.0}(0.0) == 1.0);
}

TEST_CASE("kernel smoothness classes") {
  CHECK(RadialKernel{KernelFamily::wendland2}.smoothness() == 2);
  CHECK(RadialKernel{KernelFamily::matern4}.smoothness() == 4);
  CHECK(RadialKernel{KernelFamily::wendland0}.smoothness() == 0);
  CHECK(RadialKernel{KernelFamily::matern0}.smoothness() == 0);
  CHECK(RadialKernel{KernelFamily::wendland4}.smoothness() == 4);
  CHECK(RadialKernel{KernelFamily::matern2}.smoothness() == 2);
  CHECK_FALSE(RadialKernel{KernelFamily::gaussian}.smoothness().has_value());
}

TEST_CASE("kernel compact support") {
  for (KernelFamily family :
       {KernelFamily::wendland0, KernelFamily::wendland2, KernelFamily::wendland4}) {
    const RadialKernel kernel{family, 2.0};
    CHECK(kernel.compact_support());
    CHECK(kernel.support_radius() == 0.5);
    CHECK(kernel(0.5) == 0.0);
    CHECK(kernel(0.75) == 0.0);
    CHECK(kernel(0.49) > 0.0);
  }
  for (KernelFamily family : {KernelFamily::gaussian, KernelFamily::matern0, KernelFamily::matern2,
                              KernelFamily::matern4}) {
    const RadialKernel kernel{family, 1.0};
    CHECK_FALSE(kernel.compact_support());
    CHECK(std::isinf(kernel.support_radius()));
    CHECK(kernel(3.0) > 0.0);
    CHECK(kernel(30.0) > 0.0);
  }
}

TEST_CASE("kernels are nonnegative and non-increasing on [0, 3]") {
  constexpr int samples = 10000;
  for (KernelFamily family : kAllFamilies) {
    const RadialKernel kernel{family, 1.0};
    double previous = kernel(0.0);
    for (int i = 1; i < samples; ++i) {
      const double r = 3.0 * i / (samples - 1);
      const double value = kernel(r);
      REQUIRE(value >= 0.0);
      REQUIRE(value <= previous + 1e-14);
      previous = value;
    }
  }
}

TEST_CASE("shape scaling identity is exact") {
  for (KernelFamily family : kAllFamilies)
    for (double shape : {0.5, 2.5, 17.0})
      for (double r : {0.0, 0.01, 0.3, 1.0, 2.7}) {
        const RadialKernel scaled{family, shape};
        const RadialKernel unit{family, 1.0};
        CHECK(scaled(r) == unit(shape * r));
      }
}

TEST_CASE("kernel argument validation") {
  const RadialKernel kernel{KernelFamily::wendland2, 1.0};
  CHECK_THROWS_AS(kernel(-0.1), pum::InputError);
  CHECK_THROWS_AS(kernel(std::numeric_limits<double>::quiet_NaN()), pum::InputError);
  CHECK_THROWS_AS(kernel(std::numeric_limits<double>::infinity()), pum::InputError);
}

TEST_CASE("kernel names") {
  CHECK(pum::family_from_name("wendland2") == KernelFamily::wendland2);
  CHECK(pum::family_from_name("MATERN4") == KernelFamily::matern4);
  CHECK(pum::family_from_name("Gaussian") == KernelFamily::gaussian);
  CHECK_THROWS_AS(pum::family_from_name("cauchy"), pum::InputError);
  for (KernelFamily family : kAllFamilies)
    CHECK(pum::family_from_name(pum::family_name(family)) == family);

  CHECK_THROWS_AS(pum::make_kernel("wendland2", 0.0), pum::InputError);
  CHECK_THROWS_AS(pum::make_kernel("wendland2", -1.0), pum::InputError);
  CHECK(pum::make_kernel("matern2", 2.0).shape == 2.0);
}
