#include "fmlab/autgroup.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "fmlab/errors.hpp"

namespace fmlab {

// --- Permutation ---------------------------------------------------------------

Permutation::Permutation(std::vector<Elem> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (Elem v : image_) {
    if (v < 0 || v >= static_cast<Elem>(image_.size()) || seen[v]) {
      throw InputError("permutation image is not a bijection");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<Elem> image(n);
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (image_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (size() != other.size()) {
    throw InputError("compose: size mismatch");
  }
  std::vector<Elem> image(size());
  for (int i = 0; i < size(); ++i) image[i] = image_[other.image_[i]];
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<Elem> image(size());
  for (int i = 0; i < size(); ++i) image[image_[i]] = i;
  return Permutation(std::move(image));
}

std::string Permutation::cycle_notation() const {
  std::ostringstream out;
  std::vector<char> seen(size(), 0);
  bool any = false;
  for (int i = 0; i < size(); ++i) {
    if (seen[i] || image_[i] == i) continue;
    any = true;
    out << '(';
    int j = i;
    bool first = true;
    do {
      if (!first) out << ' ';
      first = false;
      out << j;
      seen[j] = 1;
      j = image_[j];
    } while (j != i);
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

// --- automorphism test -----------------------------------------------------------

bool is_automorphism(const Structure& s, const Permutation& p) {
  if (p.size() != s.size()) {
    throw InputError("is_automorphism: size mismatch");
  }
  for (const auto& [name, tuples] : s.relations()) {
    for (const Tuple& t : tuples) {
      Tuple mapped(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = p(t[i]);
      if (!tuples.count(mapped)) return false;
    }
  }
  // p permutes each finite tuple set into itself, which forces equality in
  // both directions.
  return true;
}

// --- search core -----------------------------------------------------------------

namespace {

// Individualization-refinement over a pair of colorings: colors_a holds the
// source-side individualizations, colors_b the target side. An equitable
// refinement step recolors elements by (color, degree, multiset of incident
// tuple patterns); both sides are refined in lockstep and pruned as soon as
// their color histograms diverge.
class AutSearch {
 public:
  explicit AutSearch(const Structure& s)
      : s_(s), n_(s.size()), incidence_(s.size()) {
    const auto& symbols = s.signature().symbols();
    for (std::size_t sym = 0; sym < symbols.size(); ++sym) {
      for (const Tuple& t : s.relation(symbols[sym].first)) {
        int id = static_cast<int>(tuples_.size());
        tuples_.push_back(&t);
        tuple_symbol_.push_back(static_cast<int>(sym));
        for (std::size_t pos = 0; pos < t.size(); ++pos) {
          incidence_[t[pos]].push_back({id, static_cast<int>(pos)});
        }
      }
    }
  }

  // Visits automorphisms in canonical order until the callback returns
  // false. Returns false if the visit was cut short.
  bool search(const std::function<bool(const Permutation&)>& visit) {
    if (n_ == 0) {
      return visit(Permutation::identity(0));
    }
    // initial color = degree; the first refinement pass folds in the
    // per-symbol incidence profile
    std::vector<int> colors(n_);
    for (int v = 0; v < n_; ++v) {
      colors[v] = static_cast<int>(s_.neighbors(v).size());
    }
    normalize(colors);
    return descend(colors, colors, visit);
  }

 private:
  const Structure& s_;
  int n_;
  std::vector<const Tuple*> tuples_;
  std::vector<int> tuple_symbol_;
  std::vector<std::vector<std::pair<int, int>>> incidence_;

  // Renumbers colors to dense ranks; relative order of color values is kept
  // so both sides stay aligned.
  static void normalize(std::vector<int>& colors) {
    std::vector<int> sorted(colors);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int& c : colors) {
      c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) -
                           sorted.begin());
    }
  }

  using Key = std::vector<int>;

  Key element_key(const std::vector<int>& colors, int v) const {
    Key key;
    key.push_back(colors[v]);
    std::vector<Key> parts;
    for (const auto& [tuple_id, pos] : incidence_[v]) {
      const Tuple& t = *tuples_[tuple_id];
      Key part;
      part.push_back(tuple_symbol_[tuple_id]);
      part.push_back(pos);
      for (Elem e : t) part.push_back(colors[e]);
      parts.push_back(std::move(part));
    }
    std::sort(parts.begin(), parts.end());
    for (const Key& part : parts) {
      key.insert(key.end(), part.begin(), part.end());
      key.push_back(-1);  // separator
    }
    return key;
  }

  // One lockstep refinement pass; false when the two sides cannot be
  // related by any automorphism.
  bool refine_pair(std::vector<int>& colors_a,
                   std::vector<int>& colors_b) const {
    while (true) {
      std::vector<std::pair<Key, int>> keyed_a(n_), keyed_b(n_);
      for (int v = 0; v < n_; ++v) {
        keyed_a[v] = {element_key(colors_a, v), v};
        keyed_b[v] = {element_key(colors_b, v), v};
      }
      std::sort(keyed_a.begin(), keyed_a.end());
      std::sort(keyed_b.begin(), keyed_b.end());
      for (int i = 0; i < n_; ++i) {
        if (keyed_a[i].first != keyed_b[i].first) return false;
      }
      int color_count = 0;
      int old_count = count_colors(colors_a);
      std::vector<int> next_a(n_), next_b(n_);
      for (int i = 0; i < n_; ++i) {
        if (i > 0 && keyed_a[i].first != keyed_a[i - 1].first) ++color_count;
        next_a[keyed_a[i].second] = color_count;
        next_b[keyed_b[i].second] = color_count;
      }
      colors_a.swap(next_a);
      colors_b.swap(next_b);
      if (color_count + 1 == old_count) return true;  // stable
    }
  }

  static int count_colors(const std::vector<int>& colors) {
    return colors.empty()
               ? 0
               : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  bool descend(std::vector<int> colors_a, std::vector<int> colors_b,
               const std::function<bool(const Permutation&)>& visit) const {
    if (!refine_pair(colors_a, colors_b)) return true;
    int color_count = count_colors(colors_a);
    if (color_count == n_) {
      // discrete: read the candidate bijection off matching colors
      std::vector<Elem> by_color(n_), image(n_);
      for (int v = 0; v < n_; ++v) by_color[colors_b[v]] = v;
      for (int v = 0; v < n_; ++v) image[v] = by_color[colors_a[v]];
      Permutation p(std::move(image));
      if (is_automorphism(s_, p)) {
        return visit(p);
      }
      return true;
    }

    // target cell: smallest non-singleton color class, lowest color first
    std::vector<int> cell_size(color_count, 0);
    for (int v = 0; v < n_; ++v) ++cell_size[colors_a[v]];
    int target = -1;
    for (int c = 0; c < color_count; ++c) {
      if (cell_size[c] > 1 &&
          (target < 0 || cell_size[c] < cell_size[target])) {
        target = c;
      }
    }

    int u = -1;
    for (int v = 0; v < n_; ++v) {
      if (colors_a[v] == target) {
        u = v;
        break;
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (colors_b[v] != target) continue;
      std::vector<int> next_a(colors_a), next_b(colors_b);
      next_a[u] = color_count;
      next_b[v] = color_count;
      if (!descend(std::move(next_a), std::move(next_b), visit)) return false;
    }
    return true;
  }
};

}  // namespace

std::vector<Permutation> automorphisms(const Structure& s,
                                       std::optional<std::uint64_t> limit) {
  std::vector<Permutation> out;
  if (limit && *limit == 0) return out;
  AutSearch(s).search([&](const Permutation& p) {
    out.push_back(p);
    return !limit || out.size() < *limit;
  });
  return out;
}

std::uint64_t group_order(const Structure& s, std::uint64_t budget) {
  std::uint64_t count = 0;
  bool finished = AutSearch(s).search([&](const Permutation&) {
    ++count;
    return count <= budget;
  });
  if (!finished) {
    throw BudgetError("group_order: more than " + std::to_string(budget) +
                      " automorphisms");
  }
  return count;
}

bool is_rigid(const Structure& s) {
  bool rigid = true;
  AutSearch(s).search([&](const Permutation& p) {
    if (!p.is_identity()) {
      rigid = false;
      return false;
    }
    return true;
  });
  return rigid;
}

OrbitPartition orbits(const Structure& s) {
  std::vector<int> parent(s.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  constexpr std::uint64_t kOrbitBudget = 1'000'000;
  std::uint64_t seen = 0;
  bool finished = AutSearch(s).search([&](const Permutation& p) {
    for (int v = 0; v < s.size(); ++v) {
      int a = find(v), b = find(p(v));
      if (a != b) parent[a] = b;
    }
    return ++seen <= kOrbitBudget;
  });
  if (!finished) {
    throw BudgetError("orbits: automorphism enumeration over budget");
  }

  std::map<int, std::vector<Elem>> grouped;
  for (int v = 0; v < s.size(); ++v) grouped[find(v)].push_back(v);
  OrbitPartition out;
  for (auto& [root, block] : grouped) {
    std::sort(block.begin(), block.end());
    out.blocks.push_back(std::move(block));
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

OrbitStatistics orbit_statistics(const Structure& s) {
  OrbitPartition partition = orbits(s);
  OrbitStatistics stats;
  stats.orbit_count = partition.blocks.size();
  stats.finite_orbit_count = partition.blocks.size();
  for (const auto& block : partition.blocks) {
    stats.max_orbit_size = std::max(stats.max_orbit_size, block.size());
    if (block.size() > 1) ++stats.nontrivial_orbit_count;
  }
  return stats;
}

std::vector<Elem> support(const Permutation& p) {
  std::vector<Elem> moved;
  for (int v = 0; v < p.size(); ++v) {
    if (p(v) != v) moved.push_back(v);
  }
  return moved;
}

std::map<std::size_t, std::uint64_t> support_spectrum(const Structure& s,
                                                      std::uint64_t budget) {
  std::map<std::size_t, std::uint64_t> spectrum;
  std::uint64_t seen = 0;
  bool finished = AutSearch(s).search([&](const Permutation& p) {
    ++spectrum[support(p).size()];
    return ++seen <= budget;
  });
  if (!finished) {
    throw BudgetError("support_spectrum: group larger than budget " +
                      std::to_string(budget));
  }
  return spectrum;
}

}  // namespace fmlab
