// Strict configuration files and the header round trip.

#include <doctest.h>

#include <cmath>

#include "szeta/config.hpp"
#include "szeta/error.hpp"
#include "szeta/orbits.hpp"

using namespace szeta;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::InvalidConfig;
}

void check_same(const RunConfig& a, const RunConfig& b) {
  CHECK(a.group.angle_degrees == b.group.angle_degrees);
  CHECK(a.group.num_circles == b.group.num_circles);
  REQUIRE(a.group.circles.size() == b.group.circles.size());
  for (std::size_t i = 0; i < a.group.circles.size(); ++i) {
    CHECK(a.group.circles[i].center == b.group.circles[i].center);
    CHECK(a.group.circles[i].radius == b.group.circles[i].radius);
  }
  CHECK(a.M == b.M);
  CHECK(a.mode == b.mode);
  CHECK(a.tolerances.newton_tol == b.tolerances.newton_tol);
  CHECK(a.tolerances.quad_tol == b.tolerances.quad_tol);
  CHECK(a.tolerances.power_tol == b.tolerances.power_tol);
}

}  // namespace

TEST_CASE("defaults") {
  const auto c = parse_config("");
  REQUIRE(c.group.angle_degrees.has_value());
  CHECK(*c.group.angle_degrees == 30.0);
  CHECK(c.group.num_circles == 3);
  CHECK(c.M == 13);
  CHECK(c.mode == ZetaMode::Conformal);
  CHECK(c.tolerances.newton_tol == 1e-12);
  CHECK(c.tolerances.quad_tol == 1e-8);
  CHECK(c.tolerances.power_tol == 1e-14);
  CHECK(c.threads == 1);
}

TEST_CASE("full file") {
  const auto c = parse_config(R"(
# comment
[group]
angle_degrees = 110
num_circles = 3
[zeta]
M = 22
mode = selberg
[tolerances]
newton_tol = 1e-10
quad_tol = 2.5e-9
power_tol = 1e-13
[run]
cache = orbits.cache
output = out.csv
threads = 4
)");
  CHECK(*c.group.angle_degrees == 110.0);
  CHECK(c.M == 22);
  CHECK(c.mode == ZetaMode::Selberg);
  CHECK(c.tolerances.quad_tol == 2.5e-9);
  CHECK(c.cache == "orbits.cache");
  CHECK(c.output == "out.csv");
  CHECK(c.threads == 4);
}

TEST_CASE("strict parsing") {
  CHECK(code_of([] { parse_config("[group]\nangle = 30\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("[extra]\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("[group\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("M = 13\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("[zeta]\nM 13\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("[zeta]\nM = 13x\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("[zeta]\nM = 12.5\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("[group]\nangle_degrees = thirty\n"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("[zeta]\nmode = riemann\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_config("[group]\ncircles = 1 2\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("angle and circles are exclusive") {
  CHECK(code_of([] {
          parse_config("[group]\nangle_degrees = 30\ncircles = 1.1 0 0.3; -0.5 0.9 0.3\n");
        }) == ErrorCode::ParseError);
}

TEST_CASE("range checks") {
  CHECK(code_of([] { parse_config("[zeta]\nM = 30\n"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { parse_config("[zeta]\nM = 0\n"); }) == ErrorCode::InvalidConfig);
  CHECK(parse_config("[zeta]\nM = 24\n").M == kMaxTruncation);
  CHECK(code_of([] { parse_config("[tolerances]\nquad_tol = -1e-8\n"); }) ==
        ErrorCode::InvalidConfig);
  CHECK(code_of([] { parse_config("[tolerances]\nnewton_tol = 0\n"); }) ==
        ErrorCode::InvalidConfig);
  CHECK(code_of([] { parse_config("[run]\nthreads = 0\n"); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("serialize round trip") {
  RunConfig c;
  c.group.angle_degrees = 37.123456789012345;
  c.M = 11;
  c.mode = ZetaMode::Selberg;
  c.tolerances.newton_tol = 3.3e-13;
  c.tolerances.quad_tol = 1.0 / 3.0 * 1e-8;
  check_same(parse_config(serialize_config(c)), c);
}

TEST_CASE("header block round trip from an output file") {
  RunConfig c;
  c.group.angle_degrees = 40.0;
  c.M = 9;
  const std::string file = "# szeta eval\n# command: szeta eval --theta 40\n" +
                           config_header_block(c) + "s_re,s_im\n0.5,1\n";
  check_same(config_from_text(file), c);
  CHECK(code_of([&] {
          config_from_text(std::string(kConfigBegin) + "\n# [zeta]\n# M = 3\n");
        }) == ErrorCode::ParseError);
}

TEST_CASE("explicit circles round trip preserves the group") {
  RunConfig c;
  c.group.angle_degrees = 50.0;
  const auto symmetric = make_group(c.group);

  RunConfig explicit_circles;
  explicit_circles.group.angle_degrees.reset();
  explicit_circles.group.circles = symmetric.circles;
  const auto back = parse_config(serialize_config(explicit_circles));
  CHECK_FALSE(back.group.angle_degrees.has_value());
  check_same(back, explicit_circles);
  CHECK(fingerprint(make_group(back.group)) == fingerprint(symmetric));
}
