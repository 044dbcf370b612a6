#include <doctest.h>

#include "sidebench/core.hpp"

#include <cmath>
#include <random>

using namespace sidebench;

TEST_CASE("depth map normalizes zero, negative and non-finite values to invalid") {
  Image<double> v(1, 5);
  v << 1.5, 0.0, -2.0, std::nan(""), INFINITY;
  const DepthMap d(v);
  CHECK(d.valid(0, 0));
  CHECK(d(0, 0) == 1.5);
  for (int u = 1; u < 5; ++u) CHECK_FALSE(d.valid(0, u));
  CHECK(d.valid_mask().count() == 1);
}

TEST_CASE("depth map rejects empty dimensions") {
  CHECK_THROWS_AS(DepthMap(0, 3), Error);
  CHECK_THROWS_AS(DepthMap(Image<double>(0, 0)), Error);
}

TEST_CASE("valid_pixels") {
  SUBCASE("fully valid maps without mask are all true") {
    const DepthMap a(Image<double>::Constant(3, 4, 2.0));
    CHECK(valid_pixels(a, a).all());
  }
  SUBCASE("one invalid in gt and a different one in pred leaves T = 2") {
    Image<double> gt(2, 2), pred(2, 2);
    gt << 1, 0, 1, 1;
    pred << 1, 1, 1, 0;
    const Mask v = valid_pixels(DepthMap(pred), DepthMap(gt));
    CHECK(popcount(v) == 2);
    CHECK_FALSE(v(0, 1));
    CHECK_FALSE(v(1, 1));
  }
  SUBCASE("invalid mask excludes pixels") {
    const DepthMap a(Image<double>::Constant(2, 2, 1.0));
    Mask inv = Mask::Constant(2, 2, false);
    inv(1, 0) = true;
    const Mask v = valid_pixels(a, a, &inv);
    CHECK(popcount(v) == 3);
    CHECK_FALSE(v(1, 0));
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(valid_pixels(DepthMap(2, 2), DepthMap(3, 2)), Error);
    const DepthMap a(Image<double>::Constant(2, 2, 1.0));
    Mask inv = Mask::Constant(3, 2, false);
    CHECK_THROWS_AS(valid_pixels(a, a, &inv), Error);
  }
}

TEST_CASE("valid_pixels is monotone under added invalid flags") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> depth(-0.5, 5.0);
  std::bernoulli_distribution flag(0.2);
  for (int trial = 0; trial < 50; ++trial) {
    Image<double> gt(6, 6), pred(6, 6);
    for (Eigen::Index i = 0; i < gt.size(); ++i) {
      gt.data()[i] = depth(rng);
      pred.data()[i] = depth(rng);
    }
    Mask inv = Mask::Constant(6, 6, false);
    Eigen::Index previous = popcount(valid_pixels(DepthMap(pred), DepthMap(gt), &inv));
    for (int k = 0; k < 10; ++k) {
      for (Eigen::Index i = 0; i < inv.size(); ++i) inv.data()[i] = inv.data()[i] || flag(rng);
      const auto t = popcount(valid_pixels(DepthMap(pred), DepthMap(gt), &inv));
      CHECK(t <= previous);
      previous = t;
    }
  }
}

TEST_CASE("intrinsics validation") {
  CHECK_NOTHROW(CameraIntrinsics{500, 500, 320, 240}.check(640, 480));
  CHECK_THROWS_AS((CameraIntrinsics{0, 500, 320, 240}.check(640, 480)), Error);
  CHECK_THROWS_AS((CameraIntrinsics{500, 500, 640, 240}.check(640, 480)), Error);
  CHECK_THROWS_AS((CameraIntrinsics{500, 500, 10, -1}.check(640, 480)), Error);
}

TEST_CASE("metric config defaults and validation") {
  MetricConfig cfg;
  CHECK(cfg.delta_base == 1.25);
  CHECK(cfg.bin_width == 1.0);
  CHECK(cfg.dt_truncation == 10.0);
  CHECK(cfg.dde_ref_depth == 3.0);
  CHECK(cfg.max_depth == 50.0);
  CHECK(cfg.ransac.iterations == 500);
  CHECK(cfg.ransac.inlier_threshold == 0.01);
  CHECK(cfg.ransac.seed == 42);
  CHECK_NOTHROW(cfg.check());
  cfg.delta_base = 1.0;
  CHECK_THROWS_AS(cfg.check(), Error);
}

TEST_CASE("intrinsics resolve from image size when unset") {
  MetricConfig cfg;
  const auto k = resolve_intrinsics(cfg, 640, 480);
  CHECK(k.fx == 525.0);
  CHECK(k.fy == 525.0);
  CHECK(k.cx == 319.5);
  CHECK(k.cy == 239.5);
  cfg.intrinsics = {300, 310, 0, 0};
  const auto k2 = resolve_intrinsics(cfg, 640, 480);
  CHECK(k2.cx == 0.0);
  CHECK(k2.fy == 310.0);
}

TEST_CASE("mask labels round-trip through names") {
  for (auto l : {MaskLabel::wall, MaskLabel::floor, MaskLabel::table, MaskLabel::transparent, MaskLabel::invalid}) {
    CHECK(parse_mask_label(to_string(l)) == l);
  }
  CHECK_FALSE(parse_mask_label("ceiling").has_value());
}
