#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "padyn/oracle.hpp"
#include "padyn/padic.hpp"

namespace padyn {

struct Budget {
  // Largest table (domain size) any single enumeration may build.
  std::uint64_t max_entries = std::uint64_t{1} << 24;
};

/// Digit counts at level k. For delay n >= 1 the reduction F_k runs
/// Z/p^{nk} -> Z/p^{n(k-1)}; for n = 0 it is the classical f mod p^k on Z/p^k.
struct LevelShape {
  int domain_digits;
  int codomain_digits;
};

LevelShape level_shape(int delay, int k);

/// F_k(x) = f(x) mod p^{codomain} for every residue x of the domain.
struct ReducedMap {
  std::uint64_t p = 0;
  int delay = 0;
  int level = 0;
  LevelShape shape{};
  std::vector<Residue> table;
};

ReducedMap reduce(const FunctionOracle& f, int k, const Budget& budget = {});

// #F^{-1}(y) for each y of the codomain; the counts sum to the domain size.
std::vector<std::uint64_t> preimage_counts(const ReducedMap& reduced);

struct MeasureVerdict {
  bool holds = false;
  int k_max = 0;
  std::optional<int> failing_level;
  std::optional<Residue> failing_point;   // codomain point with the wrong count
  std::uint64_t failing_count = 0;
  std::vector<std::vector<std::uint64_t>> histograms;  // per level, from k = first level
  int first_level = 2;
};

/// Whether every F_k-fibre has exactly p^n points for all levels up to k_max.
/// A pass only certifies the levels checked.
MeasureVerdict is_measure_preserving_upto(const FunctionOracle& f, int k_max,
                                          const Budget& budget = {});

/// x -> f(x) mod p^{nk} on Z/p^{nk} (Z/p^k when n = 0), where f is applied to
/// the canonical representative of x, i.e. its zero extension.
std::vector<Residue> endomap(const FunctionOracle& f, int k, const Budget& budget = {});

struct CycleReport {
  int level = 0;
  // Each cycle starts at its least element; cycles sorted by that element.
  std::vector<std::vector<Residue>> cycles;
  std::uint64_t transient_points = 0;
};

/// Functional-graph decomposition of a self-map of {0, ..., size-1}.
CycleReport cycles(std::span<const Residue> table, int level = 0);

struct CycleVerdict {
  bool holds = false;
  int k_max = 0;
  std::optional<int> failing_level;
  std::vector<CycleReport> levels;  // k = 1 .. checked
};

/// Whether the endomap has exactly one cycle at every level 1..k_max.
CycleVerdict unique_cycle_upto(const FunctionOracle& f, int k_max, const Budget& budget = {});

}  // namespace padyn
