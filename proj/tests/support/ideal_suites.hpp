#pragma once

#include "skelpot/testideals/asymptotic.hpp"
#include "support/generators.hpp"
#include "support/newton_oracle.hpp"
#include "support/suite.hpp"

namespace suite {

using namespace skelpot::testideals;
using skelpot::Rat;

inline std::string describe(const MonomialIdeal &a, const Rat &lambda, std::int64_t p) {
  return to_string(a) + " lambda=" + skelpot::to_string(lambda) + " p=" + std::to_string(p);
}

/// Every exponent in {0..side}^n.
inline std::vector<Exponent> exponent_box(std::size_t n, std::int64_t side) {
  std::vector<Exponent> out;
  Exponent u(n, 0);
  for (;;) {
    out.push_back(u);
    std::size_t i = 0;
    while (i < n && u[i] == side)
      u[i++] = 0;
    if (i == n)
      return out;
    ++u[i];
  }
}

/// One randomized instance exercises every identity; failures name the law.
inline Outcome test_ideal_identities(std::uint64_t seed, int count) {
  gen::Rng rng(seed);
  Outcome o;
  for (int i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    auto a = gen::ideal(rng, n, 3, 4);
    const std::int64_t p = gen::prime(rng);
    const Rat lambda = gen::rational(rng, 0, 2, 6);
    const int e = static_cast<int>(gen::uniform(rng, 1, 2));
    const std::int64_t q = checked_pow(p, e);
    ++o.instances;
    const std::string at = "identities #" + std::to_string(i) + " " + describe(a, lambda, p);
    guarded(o, at, [&] {
      // x^u in a iff x^(q u) in a^[q], over the box of side 6.
      auto aq = frobenius_power(a, p, e);
      for (const auto &u : exponent_box(n, 6)) {
        Exponent qu = u;
        for (auto &x : qu)
          x *= q;
        if (a.contains(u) != aq.contains(qu)) {
          o.fail(at + ": Frobenius membership at e=" + std::to_string(e));
          break;
        }
      }

      // (a^[q])^[1/q] = a and a inside (a^[1/q])^[q].
      if (!(frobenius_root(aq, p, e) == a))
        o.fail(at + ": root of the Frobenius power");
      if (!frobenius_power(frobenius_root(a, p, e), p, e).contains(a))
        o.fail(at + ": a not inside the power of its root");

      // a inside tau(a).
      if (!test_ideal(a, Rat(1), p).contains(a))
        o.fail(at + ": a not inside tau(a)");

      // Monotonicity: a inside b gives tau(a^l) inside tau(b^l).
      auto b = ideal_sum(a, gen::ideal(rng, n, 2, 4));
      if (!test_ideal(b, lambda, p).contains(test_ideal(a, lambda, p)))
        o.fail(at + ": monotonicity with b=" + to_string(b));

      // Power compatibility: tau((a^m)^l) = tau(a^(l m)), unexpanded and expanded.
      const std::int64_t m = gen::uniform(rng, 2, 3);
      auto lhs = test_ideal(IdealPower{a, m}, lambda, p);
      if (!(lhs == test_ideal(a, lambda * Rat(static_cast<long>(m)), p)))
        o.fail(at + ": power compatibility m=" + std::to_string(m));
      if (!(lhs == test_ideal(power(a, m), lambda, p)))
        o.fail(at + ": unexpanded power differs from a^m");

      // tau(a_m) inside tau(a_.^m) for the powers sequence.
      auto seq = GradedSequence::powers(a);
      for (std::int64_t k = 1; k <= 2; ++k)
        if (!asymptotic_test_ideal(seq, Rat(static_cast<long>(k)), p).contains(test_ideal(power(a, k), Rat(1), p)))
          o.fail(at + ": tau(a_m) not inside the asymptotic ideal at m=" + std::to_string(k));

      // Subadditivity: tau(a_.^(m l)) inside tau(a_.^l)^m.
      if (lambda > 0) {
        const Rat small = lambda / 2;
        auto base = asymptotic_test_ideal(seq, small, p);
        for (std::int64_t k = 2; k <= 3; ++k) {
          auto big = asymptotic_test_ideal(seq, small * Rat(static_cast<long>(k)), p);
          if (!power(base, k).contains(big))
            o.fail(at + ": subadditivity m=" + std::to_string(k));
        }
      }
    });
  }
  return o;
}

/// tau(a^lambda) against the Newton polyhedron description.
inline Outcome newton_agreement(std::uint64_t seed, int count) {
  gen::Rng rng(seed);
  Outcome o;
  for (int i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 2, 3));
    auto a = gen::ideal(rng, n, 4, 5);
    const std::int64_t p = gen::prime(rng);
    const Rat lambda = gen::rational(rng, 0, 2, 6);
    ++o.instances;
    const std::string at = "newton #" + std::to_string(i) + " " + describe(a, lambda, p);
    guarded(o, at, [&] {
      auto mine = test_ideal(a, lambda, p);
      auto theirs = oracle::newton_test_ideal(a, lambda);
      if (!(mine == theirs))
        o.fail(at + ": " + to_string(mine) + " vs oracle " + to_string(theirs));
    });
  }
  return o;
}

} // namespace suite
