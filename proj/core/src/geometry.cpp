#include "padyn/geometry.hpp"

#include <algorithm>
#include <fstream>

#include "padyn/errors.hpp"

namespace padyn {

namespace {

Residue checked_size(std::uint64_t p, int digits, const Budget& budget, const char* what) {
  const Residue size = checked_pow(p, digits);
  if (size > budget.max_entries) {
    throw BudgetError(std::string(what) + " needs " + std::to_string(size) +
                      " entries, budget is " + std::to_string(budget.max_entries));
  }
  return size;
}

std::uint64_t cell_index(std::uint64_t num, std::uint64_t den, std::uint64_t side) {
  const auto c = static_cast<std::uint64_t>(static_cast<unsigned __int128>(num) * side / den);
  return std::min(c, side - 1);
}

// Affine map of a graph-square coordinate v in [1, p+1] onto [0, 1]: (v - 1) / p.
std::uint64_t graph_cell_index(std::uint64_t num, std::uint64_t den, std::uint64_t p,
                               std::uint64_t side) {
  const auto shifted = static_cast<unsigned __int128>(num - den);
  const auto c = static_cast<std::uint64_t>(shifted * side / (static_cast<unsigned __int128>(den) * p));
  return std::min(c, side - 1);
}

CoverReport empty_report(std::uint64_t p, int delay, int levels, int m, const Budget& budget) {
  if (m < 1) throw InputError("resolution must be at least 1");
  CoverReport r;
  r.p = p;
  r.delay = delay;
  r.levels = levels;
  r.resolution = m;
  r.side = checked_pow(p, m);
  checked_size(p, 2 * m, budget, "cover grid");
  r.cells.assign(r.side * r.side, 0);
  return r;
}

void mark(CoverReport& r, std::uint64_t column, std::uint64_t row) {
  auto& c = r.cells[row * r.side + column];
  if (c == 0) {
    c = 1;
    ++r.occupied;
  }
}

}  // namespace

PointSet2D image_points(const FunctionOracle& f, int k, const Budget& budget) {
  if (k < 1) throw InputError("level must be at least 1");
  const std::uint64_t p = f.prime();
  const Residue count = checked_size(p, f.delay() + k, budget, "image level");
  const Residue x_den = count;
  const Residue y_den = checked_pow(p, k);
  const auto values = f.table(count, k);
  PointSet2D set;
  set.p = p;
  set.delay = f.delay();
  set.levels = {k};
  set.points.reserve(count);
  for (Residue x = 0; x < count; ++x) set.points.push_back({x, x_den, values[x], y_den});
  return set;
}

PointSet2D image_points_upto(const FunctionOracle& f, int levels, const Budget& budget) {
  if (levels < 1) throw InputError("level count must be at least 1");
  PointSet2D all;
  all.p = f.prime();
  all.delay = f.delay();
  for (int k = 1; k <= levels; ++k) {
    auto level = image_points(f, k, budget);
    all.levels.push_back(k);
    all.points.insert(all.points.end(), level.points.begin(), level.points.end());
  }
  return all;
}

double CoverReport::fraction() const {
  return static_cast<double>(occupied) / static_cast<double>(side * side);
}

CoverReport cover_fraction(std::span<const PointSet2D> sets, int m, const Budget& budget) {
  if (sets.empty()) throw InputError("no point sets to cover");
  int levels = 0;
  for (const auto& s : sets) {
    if (s.p != sets.front().p) throw InputError("point sets disagree on p");
    for (int k : s.levels) levels = std::max(levels, k);
  }
  CoverReport r = empty_report(sets.front().p, sets.front().delay, levels, m, budget);
  for (const auto& s : sets) {
    for (const auto& pt : s.points) {
      if (s.frame == Frame::UnitSquare) {
        mark(r, cell_index(pt.x_num, pt.x_den, r.side), cell_index(pt.y_num, pt.y_den, r.side));
      } else {
        mark(r, graph_cell_index(pt.x_num, pt.x_den, s.p, r.side),
             graph_cell_index(pt.y_num, pt.y_den, s.p, r.side));
      }
    }
  }
  return r;
}

CoverReport cover_fraction(const PointSet2D& set, int m, const Budget& budget) {
  return cover_fraction(std::span<const PointSet2D>(&set, 1), m, budget);
}

CoverReport family_image(const Transducer& t, int depth, int m, const Budget& budget) {
  if (!t.synchronous()) throw InputError("family images need a synchronous transducer");
  if (depth < 1) throw InputError("depth must be at least 1");
  const std::uint64_t p = t.prime();
  CoverReport r = empty_report(p, 0, depth, m, budget);
  const auto states = reachable_states(t, depth, budget.max_entries);
  const Residue words = checked_size(p, depth, budget, "family image words");
  if (states.size() > budget.max_entries / words) {
    throw BudgetError("family image over " + std::to_string(states.size()) +
                      " states exceeds budget");
  }

  std::vector<Residue> place(static_cast<std::size_t>(depth) + 1, 1);
  for (int i = 1; i <= depth; ++i) place[static_cast<std::size_t>(i)] = place[i - 1] * p;

  // Depth-first over input words; each node is the word of length j read so far.
  auto walk = [&](auto&& self, StateId s, int j, Residue u, Residue v) -> void {
    if (j > 0) {
      const Residue den = place[static_cast<std::size_t>(j)];
      mark(r, cell_index(u, den, r.side), cell_index(v, den, r.side));
    }
    if (j == depth) return;
    for (std::uint64_t a = 0; a < p; ++a) {
      const auto tr = t.step(s, static_cast<Letter>(a));
      const Residue w = place[static_cast<std::size_t>(j)];
      self(self, tr.next, j + 1, u + a * w, v + tr.output.front() * w);
    }
  };
  for (StateId s : states) walk(walk, s, 0, 0, 0);
  return r;
}

PointSet2D automaton_graph(const Transducer& t, int depth, const Budget& budget) {
  if (!t.synchronous()) throw InputError("automaton graphs need a synchronous transducer");
  if (depth < 1) throw InputError("depth must be at least 1");
  const std::uint64_t p = t.prime();
  checked_size(p, depth, budget, "automaton graph");
  const std::uint64_t base = p + 1;
  // code(u) sits over the common denominator (p+1)^(len-1); the first letter
  // read carries the largest weight.
  checked_pow(base, depth);  // throws if numerators could overflow
  PointSet2D set;
  set.p = p;
  set.frame = Frame::GraphSquare;
  for (int j = 1; j <= depth; ++j) set.levels.push_back(j);

  std::vector<std::uint64_t> weight(static_cast<std::size_t>(depth), 1);
  for (int i = 1; i < depth; ++i) weight[static_cast<std::size_t>(i)] = weight[i - 1] * base;

  std::vector<Letter> in, out;
  auto walk = [&](auto&& self, StateId s) -> void {
    const auto len = in.size();
    if (len > 0) {
      std::uint64_t xn = 0, yn = 0;
      for (std::size_t i = 0; i < len; ++i) {
        xn += (in[i] + 1) * weight[len - 1 - i];
        yn += (out[i] + 1) * weight[len - 1 - i];
      }
      const std::uint64_t den = weight[len - 1];
      set.points.push_back({xn, den, yn, den});
    }
    if (len == static_cast<std::size_t>(depth)) return;
    for (std::uint64_t a = 0; a < p; ++a) {
      const auto tr = t.step(s, static_cast<Letter>(a));
      in.push_back(static_cast<Letter>(a));
      out.push_back(tr.output.front());
      self(self, tr.next);
      in.pop_back();
      out.pop_back();
    }
  };
  walk(walk, t.initial_state());
  return set;
}

std::string encode_pgm(const CoverReport& r) {
  std::string out = "P5\n" + std::to_string(r.side) + " " + std::to_string(r.side) + "\n255\n";
  out.reserve(out.size() + r.cells.size());
  for (std::uint64_t row = r.side; row-- > 0;) {
    for (std::uint64_t col = 0; col < r.side; ++col) {
      out.push_back(r.cell(col, row) ? '\x00' : '\xff');
    }
  }
  return out;
}

void render_pgm(const CoverReport& report, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot open '" + path.string() + "' for writing");
  const std::string bytes = encode_pgm(report);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw InputError("failed writing '" + path.string() + "'");
}

void render_pgm(const PointSet2D& points, int m, const std::filesystem::path& path) {
  render_pgm(cover_fraction(points, m), path);
}

}  // namespace padyn
