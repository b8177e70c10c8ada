#pragma once

#include "skelpot/metgraph/pl_function.hpp"

namespace skelpot::metgraph {

struct Atom {
  GraphPoint point;
  Rat mass;
};

/// Finitely supported measure with rational masses (signed masses are
/// allowed so the same type carries dd^c F). Supports are kept sorted and
/// distinct.
class AtomicMeasure {
public:
  AtomicMeasure() = default;

  void add(const GraphPoint &x, const Rat &mass) {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                               [](const Atom &a, const GraphPoint &p) { return a.point < p; });
    if (it != atoms_.end() && it->point == x)
      it->mass += mass;
    else
      atoms_.insert(it, Atom{x, mass});
  }

  const std::vector<Atom> &atoms() const { return atoms_; }

  Rat mass_at(const GraphPoint &x) const {
    for (const auto &a : atoms_)
      if (a.point == x)
        return a.mass;
    return 0;
  }

  Rat total_mass() const {
    Rat s = 0;
    for (const auto &a : atoms_)
      s += a.mass;
    return s;
  }

  bool is_nonnegative() const {
    return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom &a) { return a.mass >= 0; });
  }

  AtomicMeasure without_zeros() const {
    AtomicMeasure m;
    for (const auto &a : atoms_)
      if (a.mass != 0)
        m.atoms_.push_back(a);
    return m;
  }

  /// Integral of a PL function against the measure.
  Rat integrate(const MetrizedGraph &g, const PLFunction &f) const {
    Rat s = 0;
    for (const auto &a : atoms_)
      s += a.mass * f(g, a.point);
    return s;
  }

  /// Equality as measures: zero atoms are ignored.
  friend bool operator==(const AtomicMeasure &x, const AtomicMeasure &y) {
    auto a = x.without_zeros(), b = y.without_zeros();
    if (a.atoms_.size() != b.atoms_.size())
      return false;
    for (std::size_t i = 0; i < a.atoms_.size(); ++i)
      if (!(a.atoms_[i].point == b.atoms_[i].point) || a.atoms_[i].mass != b.atoms_[i].mass)
        return false;
    return true;
  }

private:
  std::vector<Atom> atoms_;
};

inline Rat total_mass(const AtomicMeasure &m) { return m.total_mass(); }

inline AtomicMeasure sum(const AtomicMeasure &a, const AtomicMeasure &b) {
  AtomicMeasure m = a;
  for (const auto &at : b.atoms())
    m.add(at.point, at.mass);
  return m;
}

} // namespace skelpot::metgraph
