#ifndef PRODLAB_CANONICAL_HPP
#define PRODLAB_CANONICAL_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "product.hpp"

namespace prodlab {

/// A Wallis-type product restated at period Q with every residue in (0, Q].
///
/// `boundary` maps an integer m to a signed count: +c means the numerator
/// of the source product skips the factor m c times (the canonical residue
/// lists include it), -c the same on the denominator side. Entries of
/// opposite sign for the same integer cancel, so zero counts never appear.
struct CanonicalWallisForm {
  Residue period = 1;
  std::vector<Residue> num;  // sorted
  std::vector<Residue> den;  // sorted
  std::map<Residue, long> boundary;

  friend bool operator==(const CanonicalWallisForm&, const CanonicalWallisForm&) = default;
};

namespace detail {

inline void add_boundary(std::map<Residue, long>& b, Residue value, long count) {
  auto& c = b[value];
  c += count;
  if (c == 0) b.erase(value);
}

// Reduces a residue r > Q into (0, Q], recording the skipped integers
// r', r'+Q, ..., r-Q with the given sign.
inline Residue reduce_residue(Residue r, Residue Q, long sign, std::map<Residue, long>& boundary) {
  const Residue reduced = (r - 1) % Q + 1;
  for (Residue skipped = reduced; skipped < r; skipped += Q) add_boundary(boundary, skipped, sign);
  return reduced;
}

}  // namespace detail

/// Restates `prod` at period Q (a multiple of its period).
inline CanonicalWallisForm canonicalize(const WallisProduct& prod, Residue Q) {
  if (Q < 1 || Q % prod.period != 0)
    throw Error(ErrorKind::InvalidArgument,
                "canonical period " + std::to_string(Q) + " is not a multiple of " + std::to_string(prod.period));
  CanonicalWallisForm form;
  form.period = Q;
  const Residue copies = Q / prod.period;
  auto expand = [&](const std::vector<Residue>& residues, long sign, std::vector<Residue>& out) {
    for (Residue u : residues) {
      for (Residue i = 0; i < copies; ++i) {
        const Residue r = u + i * prod.period;
        out.push_back(r > Q ? detail::reduce_residue(r, Q, sign, form.boundary) : r);
      }
    }
    std::sort(out.begin(), out.end());
  };
  expand(prod.num, +1, form.num);
  expand(prod.den, -1, form.den);
  return form;
}

/// Restates an already canonical form at a multiple Q2 of its period.
inline CanonicalWallisForm recanonicalize(const CanonicalWallisForm& form, Residue Q2) {
  if (Q2 < 1 || Q2 % form.period != 0)
    throw Error(ErrorKind::InvalidArgument, "new period must be a multiple of the old one");
  CanonicalWallisForm out;
  out.period = Q2;
  out.boundary = form.boundary;
  const Residue copies = Q2 / form.period;
  auto expand = [&](const std::vector<Residue>& residues, std::vector<Residue>& dst) {
    for (Residue u : residues)
      for (Residue i = 0; i < copies; ++i) dst.push_back(u + i * form.period);
    std::sort(dst.begin(), dst.end());
  };
  expand(form.num, out.num);
  expand(form.den, out.den);
  return out;
}

inline Residue lcm_of_periods(const std::vector<WallisProduct>& prods) {
  Residue q = 1;
  for (const auto& p : prods) q = std::lcm(q, p.period);
  return q;
}

/// Canonical form of the product of all `prods`, at the lcm of their periods.
inline CanonicalWallisForm disjoint_union(const std::vector<WallisProduct>& prods, std::optional<Residue> Q = {}) {
  if (prods.empty()) throw Error(ErrorKind::InvalidArgument, "disjoint_union needs at least one product");
  const Residue period = Q.value_or(lcm_of_periods(prods));
  CanonicalWallisForm merged;
  merged.period = period;
  for (const auto& p : prods) {
    const auto f = canonicalize(p, period);
    merged.num.insert(merged.num.end(), f.num.begin(), f.num.end());
    merged.den.insert(merged.den.end(), f.den.begin(), f.den.end());
    for (const auto& [value, count] : f.boundary) detail::add_boundary(merged.boundary, value, count);
  }
  std::sort(merged.num.begin(), merged.num.end());
  std::sort(merged.den.begin(), merged.den.end());
  return merged;
}

/// Human-readable first difference between two canonical forms, or nullopt
/// when they are equal.
inline std::optional<std::string> first_difference(const CanonicalWallisForm& a, const CanonicalWallisForm& b) {
  if (a.period != b.period)
    return "periods differ: " + std::to_string(a.period) + " vs " + std::to_string(b.period);
  auto compare = [](const std::vector<Residue>& x, const std::vector<Residue>& y,
                    const char* side) -> std::optional<std::string> {
    const auto n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] != y[i]) {
        const Residue r = std::min(x[i], y[i]);
        return std::string(side) + " residue " + std::to_string(r) + " occurs on one side only";
      }
    }
    if (x.size() != y.size())
      return std::string(side) + " residue " + std::to_string(x.size() > y.size() ? x[n] : y[n]) +
             " occurs on one side only";
    return std::nullopt;
  };
  if (auto d = compare(a.num, b.num, "numerator")) return d;
  if (auto d = compare(a.den, b.den, "denominator")) return d;
  if (a.boundary != b.boundary) {
    for (const auto& [v, c] : a.boundary) {
      auto it = b.boundary.find(v);
      if (it == b.boundary.end() || it->second != c)
        return "boundary correction differs at integer " + std::to_string(v);
    }
    for (const auto& [v, c] : b.boundary)
      if (!a.boundary.count(v)) return "boundary correction differs at integer " + std::to_string(v);
  }
  return std::nullopt;
}

}  // namespace prodlab

#endif  // PRODLAB_CANONICAL_HPP
