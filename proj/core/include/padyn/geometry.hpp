#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "padyn/oracle.hpp"
#include "padyn/quotient.hpp"
#include "padyn/transducer.hpp"

namespace padyn {

// x_num / x_den, y_num / y_den; denominators are powers of p (unit square)
// or powers of p + 1 (automaton graph).
struct RationalPoint {
  std::uint64_t x_num;
  std::uint64_t x_den;
  std::uint64_t y_num;
  std::uint64_t y_den;

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

enum class Frame {
  UnitSquare,   // [0, 1]^2
  GraphSquare,  // [1, p + 1]^2
};

struct PointSet2D {
  std::uint64_t p = 0;
  int delay = 0;
  Frame frame = Frame::UnitSquare;
  std::vector<int> levels;
  std::vector<RationalPoint> points;
};

/// Points (x mod p^{n+k} / p^{n+k}, f(x) mod p^k / p^k) over all residues x.
PointSet2D image_points(const FunctionOracle& f, int k, const Budget& budget = {});

// Union of image_points for k = 1 .. levels.
PointSet2D image_points_upto(const FunctionOracle& f, int levels, const Budget& budget = {});

/// Occupancy of the p^m x p^m grid over the frame.
struct CoverReport {
  std::uint64_t p = 0;
  int delay = 0;
  int levels = 0;  // K for function images, D for family images
  int resolution = 0;
  std::uint64_t side = 0;  // p^m
  std::uint64_t occupied = 0;
  // Row-major side x side occupancy, row 0 = lowest y.
  std::vector<std::uint8_t> cells;

  double fraction() const;
  bool cell(std::uint64_t column, std::uint64_t row) const { return cells[row * side + column] != 0; }
};

/// A point (x, y) lands in cell (floor(x p^m), floor(y p^m)), clamped to the
/// grid; graph-square points are first mapped affinely onto the unit square.
CoverReport cover_fraction(std::span<const PointSet2D> sets, int m, const Budget& budget = {});
CoverReport cover_fraction(const PointSet2D& set, int m, const Budget& budget = {});

/// Occupancy of the points (u / p^j, A_s(u) / p^j) for every word u of length
/// 1 <= j <= depth and every state s reachable within depth.
CoverReport family_image(const Transducer& t, int depth, int m, const Budget& budget = {});

/// Geometric image in [1, p+1]^2: for each input word u of length 1..depth with
/// output w, the point (code(u), code(w)) where code(a_0 a_1 ...) =
/// c(a_0) + c(a_1)/(p+1) + c(a_2)/(p+1)^2 + ..., c(a) = a + 1.
PointSet2D automaton_graph(const Transducer& t, int depth, const Budget& budget = {});

/// Binary PGM (P5) of the grid: occupied cells black, origin at lower left.
std::string encode_pgm(const CoverReport& report);
void render_pgm(const CoverReport& report, const std::filesystem::path& path);
void render_pgm(const PointSet2D& points, int m, const std::filesystem::path& path);

}  // namespace padyn
