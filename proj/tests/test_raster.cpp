#include <random>
#include <string>

#include "avdsprep/raster.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace avdsprep;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header, std::initializer_list<int> payload) {
  std::vector<std::uint8_t> b(header.begin(), header.end());
  for (int v : payload) b.push_back(static_cast<std::uint8_t>(v));
  return b;
}

Plane row(std::initializer_list<double> values) {
  Plane p(1, static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) p(0, i++) = v;
  return p;
}

}  // namespace

TEST_CASE("load_pnm decodes gray and color rasters") {
  const Image gray = load_pnm(bytes_of("P5\n2 1\n255\n", {0, 255}));
  CHECK(gray.order() == ChannelOrder::Gray);
  CHECK(gray.plane(0)(0, 0) == 0.0);
  CHECK(gray.plane(0)(0, 1) == 255.0);

  const Image color = load_pnm(bytes_of("P6\n1 1\n255\n", {10, 20, 30}));
  REQUIRE(color.order() == ChannelOrder::BGR);
  CHECK(color.plane(0)(0, 0) == 30.0);
  CHECK(color.plane(1)(0, 0) == 20.0);
  CHECK(color.plane(2)(0, 0) == 10.0);
}

TEST_CASE("load_pnm handles comments and 16-bit samples") {
  const Image commented = load_pnm(bytes_of("P5 # a comment\n# another\n1 1\n255\n", {42}));
  CHECK(commented.plane(0)(0, 0) == 42.0);

  // 65535 -> 255, 0 -> 0, 32768 -> 255 * 32768 / 65535
  const Image wide = load_pnm(bytes_of("P5\n3 1\n65535\n", {0xff, 0xff, 0, 0, 0x80, 0}));
  CHECK(wide.plane(0)(0, 0) == 255.0);
  CHECK(wide.plane(0)(0, 1) == 0.0);
  CHECK(wide.plane(0)(0, 2) == doctest::Approx(255.0 * 32768.0 / 65535.0).epsilon(1e-15));
}

TEST_CASE("load_pnm error paths") {
  CHECK_THROWS_AS((void)load_pnm(bytes_of("P4\n1 1\n", {0})), MalformedHeader);
  CHECK_THROWS_AS((void)load_pnm(bytes_of("P2\n1 1\n255\n", {0})), MalformedHeader);
  CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\n0 1\n255\n", {})), MalformedHeader);
  CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\nx 1\n255\n", {})), MalformedHeader);
  CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\n2 2\n255\n", {1, 2, 3})), Truncated);
  CHECK_THROWS_AS((void)load_pnm(bytes_of("P6\n1 1\n65535\n", {1, 2, 3, 4, 5})), Truncated);
  CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\n1 1\n0\n", {0})), UnsupportedMaxval);
  CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\n1 1\n70000\n", {0, 0})), UnsupportedMaxval);
  CHECK_THROWS_AS((void)load_pnm(bytes_of("P", {})), MalformedHeader);
}

TEST_CASE("save_pnm writes canonical headers and rounds half away from zero") {
  const auto gray = save_pnm(Image(row({0, 255})));
  CHECK(gray == bytes_of("P5\n2 1\n255\n", {0, 255}));

  CHECK(save_pnm(Image(row({127.5}))).back() == 128);
  CHECK(save_pnm(Image(row({127.49}))).back() == 127);

  const auto color = save_pnm(Image(row({30}), row({20}), row({10})));
  CHECK(color == bytes_of("P6\n1 1\n255\n", {10, 20, 30}));
}

TEST_CASE("property: load(save(x)) == x for integer-valued images") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const auto h = testing::random_extent(rng, 1, 9);
    const auto w = testing::random_extent(rng, 1, 9);
    const Image img = trial % 2 == 0
                          ? Image(testing::random_levels(rng, h, w))
                          : Image(testing::random_levels(rng, h, w), testing::random_levels(rng, h, w),
                                  testing::random_levels(rng, h, w));
    CHECK(load_pnm(save_pnm(img)) == img);
  }
}

TEST_CASE("to_gray luma weights") {
  CHECK(to_gray(Image(row({42})))(0, 0) == 42.0);
  CHECK(to_gray(Image(row({255}), row({255}), row({255})))(0, 0) == 255.0);
  CHECK(to_gray(Image(row({0}), row({0}), row({255})))(0, 0) == doctest::Approx(76.245).epsilon(1e-14));
}

TEST_CASE("property: to_gray stays within the channel range") {
  std::mt19937_64 rng(11);
  const Plane b = testing::random_plane(rng, 8, 8);
  const Plane g = testing::random_plane(rng, 8, 8);
  const Plane r = testing::random_plane(rng, 8, 8);
  const Plane gray = to_gray(Image(b, g, r));
  CHECK((gray >= b.min(g).min(r)).all());
  CHECK((gray <= b.max(g).max(r)).all());
}

TEST_CASE("histogram binning") {
  const Histogram h = histogram(row({0, 0, 255}), 256);
  CHECK(h.bins[0] == 2);
  CHECK(h.bins[255] == 1);

  const Histogram two = histogram(row({0, 128, 255}), 2);
  CHECK(two.bins[0] == 1);
  CHECK(two.bins[1] == 2);

  for (std::size_t bins : {1u, 3u, 17u, 256u}) {
    const Histogram c = histogram(Plane::Constant(3, 4, 99.0), bins);
    CHECK(std::count_if(c.bins.begin(), c.bins.end(), [](auto v) { return v != 0; }) == 1);
  }
  CHECK_THROWS_AS((void)histogram(row({1}), 0), InvalidConfig);
  CHECK(histogram_csv(histogram(row({0, 255}), 2)) == "bin,count\n0,1\n1,1\n");
}

TEST_CASE("property: histogram counts sum to the pixel count") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = testing::random_extent(rng, 1, 12);
    const auto w = testing::random_extent(rng, 1, 12);
    const Plane p = testing::random_plane(rng, h, w);
    const auto bins = static_cast<std::size_t>(testing::random_extent(rng, 1, 300));
    CHECK(histogram(p, bins).total() == h * w);
    const Pdf pdf = normalize(histogram(p, bins));
    double s = 0;
    for (double v : pdf.probs) s += v;
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }
}

TEST_CASE("window_at mirror padding") {
  Plane p(2, 2);
  p << 1, 2, 3, 4;
  const Plane corner = window_at(p, 0, 0, 1);
  Plane expected(3, 3);
  expected << 4, 3, 4, 2, 1, 2, 4, 3, 4;
  CHECK((corner == expected).all());

  Plane big(4, 4);
  big << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16;
  CHECK((window_at(big, 1, 1, 1) == big.block(0, 0, 3, 3)).all());
  CHECK((window_at(Plane::Constant(3, 3, 5.0), 2, 0, 3) == 5.0).all());

  CHECK(mirror_index(-1, 5) == 1);
  CHECK(mirror_index(5, 5) == 3);
  CHECK(mirror_index(-3, 1) == 0);
}

TEST_CASE("property: window_at only returns plane samples and matches a reflection oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = testing::random_extent(rng, 1, 6);
    const auto w = testing::random_extent(rng, 1, 6);
    const Plane p = testing::random_plane(rng, h, w);
    const auto half = testing::random_extent(rng, 0, 7);
    const auto x = testing::random_extent(rng, 0, w - 1);
    const auto y = testing::random_extent(rng, 0, h - 1);
    const Plane win = window_at(p, x, y, half);
    REQUIRE(win.size() == (2 * half + 1) * (2 * half + 1));
    for (Eigen::Index dy = -half; dy <= half; ++dy)
      for (Eigen::Index dx = -half; dx <= half; ++dx)
        CHECK(win(dy + half, dx + half) == oracle::sample(p, y + dy, x + dx));
  }
}
