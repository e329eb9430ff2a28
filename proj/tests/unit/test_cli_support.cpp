#include <doctest.h>

#include "larsson/errors.hpp"
#include "larsson/render.hpp"
#include "larsson/run_config.hpp"
#include "larsson/type_space.hpp"

using namespace larsson;

namespace {

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("config parsing and defaults") {
  const RunConfig cfg = config_from_json(R"({"a":0.26,"b":0.01})");
  const Params p = cfg.params();
  CHECK(p.a == 0.26);
  CHECK(classify(p) == RegionClass::Simple);
  CHECK(cfg.trials == 1000);
  CHECK(cfg.mode == "shared");

  CHECK_THROWS_AS(config_from_json(R"({"b":0.01})").params(), ParseError);
  CHECK_THROWS_AS(config_from_json("{nonsense"), ParseError);
  CHECK_THROWS_AS(config_from_json(R"({"a":0.26,"b":0.01,"mode":"x"})"),
                  ParseError);
  CHECK_THROWS_AS(config_from_json(R"({"a":0.30,"b":0.05})").params(),
                  InvalidParams);

  // Round trip keeps the values.
  const RunConfig cfg2 = config_from_json(config_to_json(cfg));
  CHECK(cfg2.a == cfg.a);
  CHECK(cfg2.seed == cfg.seed);
  CHECK(cfg2.out_dir == cfg.out_dir);
}

TEST_CASE("figures are deterministic") {
  const Params p = validate(0.26, 0.01);
  RenderBundle bundle;
  bundle.params = &p;
  const std::string one = render(bundle, RenderKind::Region);
  const std::string two = render(bundle, RenderKind::Region);
  CHECK(one == two);
  CHECK(one.find("<svg") != std::string::npos);
  CHECK(one.find("polyline") != std::string::npos);  // the boundary curve
}

TEST_CASE("construction figure has 2^n marks per level") {
  const Params p = validate(0.26, 0.01);
  OffsetTree tree(p, 4, 9, 1);
  RenderBundle bundle;
  bundle.params = &p;
  bundle.tree1 = &tree;
  bundle.depth = 4;
  const std::string svg = render(bundle, RenderKind::CantorLevels);
  // Levels 0..4 hold 1 + 2 + 4 + 8 + 16 interval rectangles.
  CHECK(count_occurrences(svg, "<rect") == 31);
}

TEST_CASE("kernel figure shows the three slanted stripes") {
  const Params p = validate(0.28, 0.05);
  const TypeSpace T = build_type_space(p, default_epsilon(p));
  RenderBundle bundle;
  bundle.params = &p;
  bundle.typespace = &T;
  const std::string svg = render(bundle, RenderKind::KernelStripes);
  CHECK(count_occurrences(svg, "<polygon") == 3);
  CHECK(render(bundle, RenderKind::KernelStripes) == svg);
}

TEST_CASE("missing bundle data is reported") {
  RenderBundle empty;
  CHECK_THROWS_AS(render(empty, RenderKind::Region), MissingData);
  CHECK_THROWS_AS(render(empty, RenderKind::Squares), MissingData);
  CHECK_THROWS_AS(render(empty, RenderKind::KernelStripes), MissingData);
}

TEST_SUITE_END();
