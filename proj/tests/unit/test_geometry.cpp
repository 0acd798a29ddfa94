#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/rational.hpp>
#include <filesystem>
#include <set>

#include "exact.hpp"
#include "generators.hpp"
#include "padyn/builtins.hpp"
#include "padyn/errors.hpp"
#include "padyn/formats.hpp"
#include "padyn/geometry.hpp"

using namespace padyn;
using namespace padyn::testing;

namespace {

using Q = boost::rational<BigInt>;

Q as_q(std::uint64_t num, std::uint64_t den) { return Q(BigInt(num), BigInt(den)); }

// Cells occupied by unit-square points, by exact rational floors.
std::set<std::pair<BigInt, BigInt>> reference_cells(const PointSet2D& set, int m) {
  const BigInt side = big_pow(set.p, static_cast<unsigned>(m));
  auto cell = [&](const Q& v) {
    BigInt c = boost::rational_cast<BigInt>(Q(v * side));  // truncation is floor for v >= 0
    return c >= side ? side - 1 : c;
  };
  std::set<std::pair<BigInt, BigInt>> out;
  for (const auto& pt : set.points) {
    Q x = as_q(pt.x_num, pt.x_den), y = as_q(pt.y_num, pt.y_den);
    if (set.frame == Frame::GraphSquare) {
      x = (x - 1) / Q(BigInt(set.p));
      y = (y - 1) / Q(BigInt(set.p));
    }
    out.insert({cell(x), cell(y)});
  }
  return out;
}

}  // namespace

TEST_CASE("image points of the shift") {
  const auto set = image_points(builtins::shift(2, 1), 1);
  REQUIRE(set.points.size() == 4);
  const std::vector<std::pair<Q, Q>> expected{
      {Q(0), Q(0)}, {Q(1, 4), Q(0)}, {Q(1, 2), Q(1, 2)}, {Q(3, 4), Q(1, 2)}};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& pt = set.points[i];
    CHECK(as_q(pt.x_num, pt.x_den) == expected[i].first);
    CHECK(as_q(pt.y_num, pt.y_den) == expected[i].second);
  }
}

TEST_CASE("image points of identity and zero") {
  for (const auto& pt : image_points(function_of(builtins::identity(3)), 2).points) {
    CHECK(as_q(pt.x_num, pt.x_den) == as_q(pt.y_num, pt.y_den));
  }
  for (const auto& pt : image_points(builtins::zero(2, 1), 3).points) CHECK(pt.y_num == 0);
  CHECK(image_points_upto(builtins::shift(3, 1), 3).points.size() == 9 + 27 + 81);
  CHECK_THROWS_AS(image_points(builtins::shift(2, 1), 8, Budget{100}), BudgetError);
}

TEST_CASE("cover examples") {
  const auto ident = cover_fraction(image_points_upto(function_of(builtins::identity(2)), 3), 3);
  CHECK(ident.side == 8);
  CHECK(ident.occupied == 8);
  CHECK(ident.fraction() == doctest::Approx(1.0 / 8));
  for (std::uint64_t c = 0; c < 8; ++c) CHECK(ident.cell(c, c));

  const auto zero = cover_fraction(image_points_upto(builtins::zero(3, 1), 3), 2);
  CHECK(zero.occupied == 9);
  for (std::uint64_t c = 0; c < 9; ++c) CHECK(zero.cell(c, 0));

  // x = 1 lands in the last column instead of falling off the grid.
  PointSet2D corner;
  corner.p = 2;
  corner.levels = {1};
  corner.points = {{1, 1, 1, 1}};
  CHECK(cover_fraction(corner, 2).cell(3, 3));
}

TEST_CASE("cover agrees with exact rational floors") {
  SeriesGenerator gen(3, 1, 6, 30, 21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto set = image_points_upto(as_oracle(gen.series(SeriesShape::Arbitrary)), 4);
    for (int m = 1; m <= 3; ++m) {
      const auto report = cover_fraction(set, m);
      const auto cells = reference_cells(set, m);
      CHECK(report.occupied == cells.size());
      for (const auto& [c, r] : cells) {
        CHECK(report.cell(c.convert_to<std::uint64_t>(), r.convert_to<std::uint64_t>()));
      }
    }
  }
}

TEST_CASE("cover grows with the level count") {
  SeriesGenerator gen(2, 1, 8, 20, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = as_oracle(gen.series(SeriesShape::DelayBound));
    for (int m = 1; m <= 4; ++m) {
      for (int K = 1; K < 6; ++K) {
        const auto lo = cover_fraction(image_points_upto(f, K), m);
        const auto hi = cover_fraction(image_points_upto(f, K + 1), m);
        for (std::size_t i = 0; i < lo.cells.size(); ++i) {
          if (lo.cells[i]) CHECK(hi.cells[i]);
        }
      }
    }
  }
}

TEST_CASE("family images") {
  const auto ident = family_image(*builtins::identity(2), 3, 3);
  CHECK(ident.occupied == 8);
  CHECK(ident.fraction() == doctest::Approx(0.125));

  CHECK(family_image(*builtins::digitwise_add(2), 4, 4).fraction() == doctest::Approx(1.0));
  CHECK(family_image(*builtins::digitwise_add(3), 2, 2).fraction() == doctest::Approx(1.0));

  const auto constant = family_image(*builtins::constant(3, 0), 3, 2);
  CHECK(constant.occupied == 9);
  for (std::uint64_t c = 0; c < 9; ++c) CHECK(constant.cell(c, 0));

  CHECK_THROWS_AS(family_image(*builtins::echo(2, 1), 3, 3), InputError);
}

TEST_CASE("automaton graph examples") {
  const auto ident = automaton_graph(*builtins::identity(2), 2);
  CHECK(ident.frame == Frame::GraphSquare);
  CHECK(ident.points.size() == 2 + 4);
  CHECK(as_q(ident.points[0].x_num, ident.points[0].x_den) == Q(1));  // word [0]
  for (const auto& pt : ident.points) {
    CHECK(as_q(pt.x_num, pt.x_den) == as_q(pt.y_num, pt.y_den));
    CHECK(as_q(pt.x_num, pt.x_den) >= Q(1));
    CHECK(as_q(pt.x_num, pt.x_den) <= Q(3));
  }
  bool found = false;
  for (const auto& pt : ident.points) found |= as_q(pt.x_num, pt.x_den) == Q(7, 3);  // word [1, 0]
  CHECK(found);

  const auto odo = automaton_graph(*builtins::odometer(2), 3);
  const auto report = cover_fraction(odo, 3);
  CHECK(report.occupied == reference_cells(odo, 3).size());
}

TEST_CASE("pgm encoding") {
  CoverReport blank;
  blank.p = 2;
  blank.side = 2;
  blank.cells.assign(4, 0);
  CHECK(encode_pgm(blank) == std::string("P5\n2 2\n255\n") + std::string(4, '\xff'));

  const auto ident = family_image(*builtins::identity(2), 3, 3);
  const std::string bytes = encode_pgm(ident);
  const std::string header = "P5\n8 8\n255\n";
  REQUIRE(bytes.size() == header.size() + 64);
  CHECK(bytes.compare(0, header.size(), header) == 0);
  int black = 0;
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      const char v = bytes[header.size() + r * 8 + c];
      if (v == '\x00') ++black;
      // Top row of the file is the highest y, so the diagonal runs bottom-left to top-right.
      CHECK((v == '\x00') == (c == 7 - r));
    }
  }
  CHECK(black == 8);

  const auto path = std::filesystem::temp_directory_path() / "padyn_test_geometry.pgm";
  render_pgm(ident, path);
  CHECK(read_text_file(path) == bytes);
  std::filesystem::remove(path);
}
