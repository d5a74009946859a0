#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmlab/structures.hpp"

namespace fmlab {

// A bijection on 0..n-1, stored as the image array.
class Permutation {
 public:
  explicit Permutation(std::vector<Elem> image);  // InputError if not bijective
  static Permutation identity(int n);

  int size() const { return static_cast<int>(image_.size()); }
  Elem operator()(Elem a) const { return image_[a]; }
  const std::vector<Elem>& image() const { return image_; }

  bool is_identity() const;
  // (p.compose(q))(a) = p(q(a))
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  std::string cycle_notation() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Elem> image_;
};

// Partition of the universe into automorphism orbits; blocks are sorted and
// ordered by their minimum.
struct OrbitPartition {
  std::vector<std::vector<Elem>> blocks;
};

struct OrbitStatistics {
  std::size_t orbit_count = 0;
  std::size_t finite_orbit_count = 0;  // everything here is finite; kept as
                                       // a separate field for the statistics
                                       // record shape
  std::size_t max_orbit_size = 0;
  std::size_t nontrivial_orbit_count = 0;
};

// True iff p maps every relation's tuple set onto itself.
bool is_automorphism(const Structure& s, const Permutation& p);

// All automorphisms (or the first `limit` in the search's canonical order:
// branching on the smallest non-singleton color class, images ascending).
// The search individualizes over an equitable color refinement whose initial
// colors combine degree with the per-symbol incidence profile.
std::vector<Permutation> automorphisms(
    const Structure& s, std::optional<std::uint64_t> limit = std::nullopt);

// |Aut(s)|, exact, by pruned enumeration. Throws BudgetError past `budget`.
std::uint64_t group_order(const Structure& s,
                          std::uint64_t budget = 1'000'000);

// Stops at the first non-identity automorphism.
bool is_rigid(const Structure& s);

OrbitPartition orbits(const Structure& s);
OrbitStatistics orbit_statistics(const Structure& s);

// {a : p(a) != a}
std::vector<Elem> support(const Permutation& p);

// Multiset of support sizes over the full automorphism group, as a
// size -> multiplicity map. Refuses with BudgetError when the group is
// larger than `budget`.
std::map<std::size_t, std::uint64_t> support_spectrum(
    const Structure& s, std::uint64_t budget = 1'000'000);

}  // namespace fmlab
