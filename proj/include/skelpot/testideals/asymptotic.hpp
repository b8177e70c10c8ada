#pragma once

#include "skelpot/testideals/test_ideal.hpp"

#include <variant>

namespace skelpot::testideals {

/// Graded sequence of monomial ideals: a_m a_n inside a_(m+n).
class GradedSequence {
public:
  /// a_m = b^m.
  static GradedSequence powers(MonomialIdeal b) {
    GradedSequence s;
    s.rule_ = std::move(b);
    return s;
  }

  /// a_1, ..., a_M given explicitly; multiplicativity is checked for m + n <= M.
  static GradedSequence table(std::vector<MonomialIdeal> terms) {
    if (terms.empty())
      throw IdealError("empty graded sequence table");
    for (const auto &t : terms)
      terms.front().require_same_ring(t);
    for (std::size_t m = 1; m <= terms.size(); ++m)
      for (std::size_t n = m; m + n <= terms.size(); ++n)
        if (!terms[m + n - 1].contains(product(terms[m - 1], terms[n - 1])))
          throw IdealError("table is not graded: a_" + std::to_string(m) + " a_" +
                           std::to_string(n) + " is not inside a_" + std::to_string(m + n));
    GradedSequence s;
    s.rule_ = std::move(terms);
    return s;
  }

  std::size_t num_vars() const {
    if (auto *b = std::get_if<MonomialIdeal>(&rule_))
      return b->num_vars();
    return std::get<std::vector<MonomialIdeal>>(rule_).front().num_vars();
  }

  /// Largest m available; 0 means unbounded.
  std::int64_t horizon() const {
    if (std::holds_alternative<MonomialIdeal>(rule_))
      return 0;
    return static_cast<std::int64_t>(std::get<std::vector<MonomialIdeal>>(rule_).size());
  }

  /// a_m, unexpanded when the rule is a power.
  IdealPower term(std::int64_t m) const {
    if (m <= 0)
      throw IdealError("graded sequences are indexed by m >= 1");
    if (auto *b = std::get_if<MonomialIdeal>(&rule_))
      return IdealPower{*b, m};
    const auto &t = std::get<std::vector<MonomialIdeal>>(rule_);
    if (m > static_cast<std::int64_t>(t.size()))
      throw IdealError("graded sequence table ends at m = " + std::to_string(t.size()));
    return IdealPower{t[static_cast<std::size_t>(m - 1)], 1};
  }

private:
  GradedSequence() = default;
  std::variant<MonomialIdeal, std::vector<MonomialIdeal>> rule_;
};

struct AsymptoticTrace {
  std::vector<std::int64_t> indices;  // m0, 2 m0, 4 m0, ...
  std::vector<MonomialIdeal> values;  // tau(a_m^(lambda/m))
  MonomialIdeal result;
};

/// tau(a_.^lambda) = union over m of tau(a_m^(lambda/m)), evaluated along
/// m = m0 2^j, m0 the denominator of lambda, until two consecutive values
/// agree or the table ends. The union of the evaluated terms is returned.
inline AsymptoticTrace asymptotic_test_ideal_trace(const GradedSequence &seq, const Rat &lambda,
                                                   std::int64_t p, int max_doublings = 6,
                                                   const TestIdealOptions &opts = {}) {
  if (lambda < 0)
    throw IdealError("negative exponent lambda");
  const std::size_t n = seq.num_vars();
  AsymptoticTrace tr{{}, {}, MonomialIdeal::zero(n)};
  if (lambda == 0) {
    tr.result = MonomialIdeal::unit(n);
    return tr;
  }
  Int den = lambda.get_den();
  if (!den.fits_slong_p())
    throw std::overflow_error("denominator of lambda too large");
  std::int64_t m = den.get_si();
  bool any_nonzero = false;
  for (int j = 0; j <= max_doublings; ++j, m *= 2) {
    if (seq.horizon() != 0 && m > seq.horizon())
      break;
    IdealPower am = seq.term(m);
    any_nonzero = any_nonzero || !am.base.is_zero();
    MonomialIdeal t = test_ideal(am, lambda / Rat(static_cast<long>(m)), p, opts);
    tr.indices.push_back(m);
    tr.values.push_back(t);
    tr.result = ideal_sum(tr.result, t);
    if (tr.values.size() >= 2 && tr.values[tr.values.size() - 2] == t)
      break;
  }
  if (tr.indices.empty())
    throw IdealError("graded sequence table is too short for the denominator of lambda");
  if (!any_nonzero)
    throw IdealError("every evaluated term of the graded sequence is the zero ideal");
  return tr;
}

inline MonomialIdeal asymptotic_test_ideal(const GradedSequence &seq, const Rat &lambda,
                                           std::int64_t p) {
  return asymptotic_test_ideal_trace(seq, lambda, p).result;
}

} // namespace skelpot::testideals
