#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fockweyl/errors.hpp"

namespace fockweyl {

/// An ordered finite set of mode identifiers (small nonnegative integers,
/// strictly increasing).
class ModeSet {
 public:
  ModeSet() = default;

  explicit ModeSet(std::vector<int> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
      throw precondition_error("ModeSet: duplicate mode id");
    if (!ids_.empty() && ids_.front() < 0)
      throw precondition_error("ModeSet: negative mode id");
  }

  /// Modes {0, 1, ..., n-1}.
  static ModeSet range(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return ModeSet(std::move(v));
  }

  const std::vector<int>& ids() const { return ids_; }
  int size() const { return static_cast<int>(ids_.size()); }
  bool empty() const { return ids_.empty(); }
  int id(int pos) const { return ids_.at(static_cast<std::size_t>(pos)); }

  bool contains(int id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  /// Position of `id` in the ordered list; -1 if absent.
  int index_of(int id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return -1;
    return static_cast<int>(it - ids_.begin());
  }

  bool subset_of(const ModeSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                         ids_.end());
  }

  ModeSet set_union(const ModeSet& other) const {
    std::vector<int> out;
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(),
                   other.ids_.end(), std::back_inserter(out));
    return ModeSet(std::move(out));
  }

  ModeSet set_minus(const ModeSet& other) const {
    std::vector<int> out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                        other.ids_.end(), std::back_inserter(out));
    return ModeSet(std::move(out));
  }

  /// Complement within an ambient set; this must be a subset of `ambient`.
  ModeSet complement_in(const ModeSet& ambient) const {
    if (!subset_of(ambient))
      throw precondition_error("ModeSet::complement_in: not a subset");
    return ambient.set_minus(*this);
  }

  bool operator==(const ModeSet& other) const { return ids_ == other.ids_; }

 private:
  std::vector<int> ids_;
};

/// Finitely supported map mode-id -> exponent >= 1; indexes Hermite / Fock
/// basis elements.  Entries are kept sorted by mode id.
class MultiIndex {
 public:
  MultiIndex() = default;

  explicit MultiIndex(std::vector<std::pair<int, int>> entries)
      : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end());
    std::erase_if(entries_, [](const auto& e) { return e.second == 0; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].second < 0)
        throw precondition_error("MultiIndex: negative exponent");
      if (i > 0 && entries_[i].first == entries_[i - 1].first)
        throw precondition_error("MultiIndex: duplicate mode id");
    }
  }

  /// Unit index delta_j.
  static MultiIndex unit(int mode) { return MultiIndex({{mode, 1}}); }

  /// Build from a dense exponent vector aligned with `modes`.
  static MultiIndex from_exponents(const ModeSet& modes,
                                   const std::vector<int>& exps) {
    std::vector<std::pair<int, int>> e;
    for (int p = 0; p < modes.size(); ++p)
      if (exps[static_cast<std::size_t>(p)] != 0)
        e.emplace_back(modes.id(p), exps[static_cast<std::size_t>(p)]);
    return MultiIndex(std::move(e));
  }

  const std::vector<std::pair<int, int>>& entries() const { return entries_; }

  int degree(int mode) const {
    for (const auto& [id, e] : entries_)
      if (id == mode) return e;
    return 0;
  }

  /// |alpha|, the total degree.
  int total() const {
    int t = 0;
    for (const auto& [id, e] : entries_) t += e;
    return t;
  }

  /// alpha! as a double (entries stay small in practice).
  double factorial() const {
    double f = 1.0;
    for (const auto& [id, e] : entries_)
      for (int k = 2; k <= e; ++k) f *= k;
    return f;
  }

  /// S(alpha): the modes carrying a nonzero exponent.
  ModeSet support() const {
    std::vector<int> ids;
    ids.reserve(entries_.size());
    for (const auto& [id, e] : entries_) ids.push_back(id);
    return ModeSet(std::move(ids));
  }

  /// Dense exponents aligned with `modes`; support must lie inside `modes`.
  std::vector<int> exponents_on(const ModeSet& modes) const {
    std::vector<int> out(static_cast<std::size_t>(modes.size()), 0);
    for (const auto& [id, e] : entries_) {
      int pos = modes.index_of(id);
      if (pos < 0)
        throw precondition_error("MultiIndex: support outside mode set");
      out[static_cast<std::size_t>(pos)] = e;
    }
    return out;
  }

  MultiIndex raised(int mode) const {
    auto e = entries_;
    for (auto& [id, x] : e)
      if (id == mode) {
        ++x;
        return MultiIndex(std::move(e));
      }
    e.emplace_back(mode, 1);
    return MultiIndex(std::move(e));
  }

  /// Lower the exponent at `mode`; throws if the exponent is already zero.
  MultiIndex lowered(int mode) const {
    auto e = entries_;
    for (auto& [id, x] : e)
      if (id == mode) {
        --x;
        return MultiIndex(std::move(e));
      }
    throw precondition_error("MultiIndex::lowered: zero exponent");
  }

  bool operator==(const MultiIndex& other) const {
    return entries_ == other.entries_;
  }
  bool operator!=(const MultiIndex& other) const { return !(*this == other); }

 private:
  std::vector<std::pair<int, int>> entries_;
};

/// Graded order: by total degree, ties broken by the exponent of the earliest
/// mode (larger first).  The zero index is first and the relative order of two
/// indices never depends on the truncation they are enumerated in.
inline bool graded_before(const MultiIndex& a, const MultiIndex& b,
                          const ModeSet& modes) {
  int ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  auto ea = a.exponents_on(modes), eb = b.exponents_on(modes);
  return ea > eb;  // lexicographic, larger leading exponent first
}

/// Finite truncation of the multi-index family: support inside `modes`,
/// per-mode exponents <= per_mode_cap, total degree <= total_degree_cap.
struct Truncation {
  ModeSet modes;
  int per_mode_cap = 0;
  int total_degree_cap = 0;

  int effective_cap(int /*mode*/) const {
    return std::min(per_mode_cap, total_degree_cap);
  }
};

/// Complete, duplicate-free, graded-lex enumeration; the zero index is first.
inline std::vector<MultiIndex> enumerate_multiindices(const Truncation& t) {
  if (t.per_mode_cap < 0 || t.total_degree_cap < 0)
    throw precondition_error("Truncation: negative cap");
  const int n = t.modes.size();
  std::vector<MultiIndex> out;
  std::vector<int> exps(static_cast<std::size_t>(n), 0);
  // Odometer over admissible exponent vectors.
  while (true) {
    int total = std::accumulate(exps.begin(), exps.end(), 0);
    if (total <= t.total_degree_cap)
      out.push_back(MultiIndex::from_exponents(t.modes, exps));
    int pos = 0;
    for (; pos < n; ++pos) {
      if (exps[static_cast<std::size_t>(pos)] <
          std::min(t.per_mode_cap, t.total_degree_cap)) {
        ++exps[static_cast<std::size_t>(pos)];
        break;
      }
      exps[static_cast<std::size_t>(pos)] = 0;
    }
    if (pos == n) break;
    if (n == 0) break;
  }
  std::sort(out.begin(), out.end(),
            [&](const MultiIndex& a, const MultiIndex& b) {
              return graded_before(a, b, t.modes);
            });
  return out;
}

enum class IndexFamilyKind {
  i_m,        // 0 <= alpha_j, beta_j <= m
  i_tilde_2,  // additionally alpha_j + beta_j >= 1 for all j in E
  i_tilde_4,  // additionally alpha_j + beta_j >= 2 for all j in E
};

/// The pair families I_m(E) and their tilde variants, materialized for the
/// small mode sets they are consumed on.
inline std::vector<std::pair<MultiIndex, MultiIndex>> index_families(
    const ModeSet& E, int m, IndexFamilyKind kind = IndexFamilyKind::i_m) {
  if (m != 1 && m != 2 && m != 4)
    throw precondition_error("index_families: unsupported m");
  if (kind == IndexFamilyKind::i_tilde_2 && m != 2)
    throw precondition_error("index_families: tilde-2 requires m = 2");
  if (kind == IndexFamilyKind::i_tilde_4 && m != 4)
    throw precondition_error("index_families: tilde-4 requires m = 4");
  const int n = E.size();
  std::vector<std::pair<MultiIndex, MultiIndex>> out;
  std::vector<int> a(static_cast<std::size_t>(n), 0),
      b(static_cast<std::size_t>(n), 0);
  auto admissible = [&]() {
    if (kind == IndexFamilyKind::i_m) return true;
    int lower = (kind == IndexFamilyKind::i_tilde_2) ? 1 : 2;
    for (int j = 0; j < n; ++j)
      if (a[static_cast<std::size_t>(j)] + b[static_cast<std::size_t>(j)] <
          lower)
        return false;
    return true;
  };
  while (true) {
    if (admissible())
      out.emplace_back(MultiIndex::from_exponents(E, a),
                       MultiIndex::from_exponents(E, b));
    int pos = 0;
    const int total = 2 * n;
    for (; pos < total; ++pos) {
      int* v = (pos < n) ? &a[static_cast<std::size_t>(pos)]
                         : &b[static_cast<std::size_t>(pos - n)];
      if (*v < m) {
        ++*v;
        break;
      }
      *v = 0;
    }
    if (pos == total) break;
    if (n == 0) break;
  }
  return out;
}

}  // namespace fockweyl
