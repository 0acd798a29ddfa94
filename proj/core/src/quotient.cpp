#include "padyn/quotient.hpp"

#include <algorithm>

#include "padyn/errors.hpp"

namespace padyn {

namespace {

Residue checked_domain(std::uint64_t p, int digits, const Budget& budget) {
  const Residue size = checked_pow(p, digits);
  if (size > budget.max_entries) {
    throw BudgetError("table of p^" + std::to_string(digits) + " = " + std::to_string(size) +
                      " entries exceeds budget " + std::to_string(budget.max_entries));
  }
  return size;
}

int first_level(int delay) { return delay == 0 ? 1 : 2; }

}  // namespace

LevelShape level_shape(int delay, int k) {
  if (delay < 0) throw InputError("delay must be nonnegative");
  if (k < first_level(delay)) {
    throw InputError("level must be at least " + std::to_string(first_level(delay)));
  }
  if (delay == 0) return {k, k};
  return {delay * k, delay * (k - 1)};
}

ReducedMap reduce(const FunctionOracle& f, int k, const Budget& budget) {
  if (k < first_level(f.delay())) {
    throw InputError("reduction level must be at least " + std::to_string(first_level(f.delay())));
  }
  ReducedMap out;
  out.p = f.prime();
  out.delay = f.delay();
  out.level = k;
  out.shape = level_shape(f.delay(), k);
  const Residue size = checked_domain(f.prime(), out.shape.domain_digits, budget);
  out.table = f.table(size, out.shape.codomain_digits);
  return out;
}

std::vector<std::uint64_t> preimage_counts(const ReducedMap& reduced) {
  std::vector<std::uint64_t> counts(checked_pow(reduced.p, reduced.shape.codomain_digits), 0);
  for (Residue y : reduced.table) ++counts.at(y);
  return counts;
}

MeasureVerdict is_measure_preserving_upto(const FunctionOracle& f, int k_max,
                                          const Budget& budget) {
  MeasureVerdict verdict;
  verdict.k_max = k_max;
  verdict.first_level = first_level(f.delay());
  if (k_max < verdict.first_level) throw InputError("k_max below the first level");
  const std::uint64_t fibre = checked_pow(f.prime(), f.delay());
  for (int k = verdict.first_level; k <= k_max; ++k) {
    auto counts = preimage_counts(reduce(f, k, budget));
    const auto bad = std::find_if(counts.begin(), counts.end(),
                                  [fibre](std::uint64_t c) { return c != fibre; });
    if (bad != counts.end()) {
      verdict.failing_level = k;
      verdict.failing_point = static_cast<Residue>(bad - counts.begin());
      verdict.failing_count = *bad;
      verdict.histograms.push_back(std::move(counts));
      return verdict;
    }
    verdict.histograms.push_back(std::move(counts));
  }
  verdict.holds = true;
  return verdict;
}

std::vector<Residue> endomap(const FunctionOracle& f, int k, const Budget& budget) {
  if (k < 1) throw InputError("endomap level must be at least 1");
  const int digits = k * std::max(f.delay(), 1);
  const Residue size = checked_domain(f.prime(), digits, budget);
  // f(x) mod p^digits reads digits + n input digits; the table indexed by
  // canonical representatives below p^digits is exactly the zero extension.
  return f.table(size, digits);
}

CycleReport cycles(std::span<const Residue> table, int level) {
  CycleReport report;
  report.level = level;
  const std::size_t n = table.size();
  for (Residue y : table) {
    if (y >= n) throw InputError("table is not a self-map");
  }
  // 0 = unvisited, otherwise 1 + id of the walk that first reached the point.
  std::vector<std::uint64_t> mark(n, 0);
  std::vector<bool> on_cycle(n, false);
  std::vector<Residue> path;
  for (std::size_t start = 0; start < n; ++start) {
    if (mark[start] != 0) continue;
    path.clear();
    Residue x = start;
    while (mark[x] == 0) {
      mark[x] = start + 1;
      path.push_back(x);
      x = table[x];
    }
    if (mark[x] == start + 1) {
      // New cycle closed inside this walk; it begins where x first appeared.
      const auto begin = std::find(path.begin(), path.end(), x);
      std::vector<Residue> cycle(begin, path.end());
      for (Residue c : cycle) on_cycle[c] = true;
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      report.cycles.push_back(std::move(cycle));
    }
  }
  report.transient_points =
      static_cast<std::uint64_t>(std::count(on_cycle.begin(), on_cycle.end(), false));
  std::sort(report.cycles.begin(), report.cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return report;
}

CycleVerdict unique_cycle_upto(const FunctionOracle& f, int k_max, const Budget& budget) {
  if (k_max < 1) throw InputError("k_max must be at least 1");
  CycleVerdict verdict;
  verdict.k_max = k_max;
  for (int k = 1; k <= k_max; ++k) {
    const auto table = endomap(f, k, budget);
    verdict.levels.push_back(cycles(table, k));
    if (verdict.levels.back().cycles.size() != 1) {
      verdict.failing_level = k;
      return verdict;
    }
  }
  verdict.holds = true;
  return verdict;
}

}  // namespace padyn
