#pragma once

// Milnor numbers, second-kind verdicts, delta-hat and the multiplicity
// formulas relating the foliation and its separatrix curve.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foliage/curvecomb.hpp"
#include "foliage/reduction.hpp"

namespace foliage {

struct MilnorResult {
  enum class Code { Ok, NotIsolated, CapExceeded } code = Code::Ok;
  long value = 0;
  int stabilized_at = 0;  // the N with d_N = d_{N+1}
  bool ok() const { return code == Code::Ok; }
};

MilnorResult milnor_number(const Poly2& a, const Poly2& b, int cap = 256);

// Greatest common divisor over Q[x, y] (forms over Q only), made monic in the
// leading y-coefficient sense; the constant 1 when coprime.
Poly2 poly_gcd(const Poly2& a, const Poly2& b);
// Exact quotient a / g; throws Status::Internal if g does not divide a.
Poly2 poly_exact_div(const Poly2& a, const Poly2& g);

struct SecondKindVerdict {
  bool value = true;
  std::vector<int> witnesses;  // tangent saddle-node cime points
};
SecondKindVerdict is_second_kind(const ReductionTree& tree);
bool is_semi_hyperbolic(const ReductionTree& tree);

long delta_hat(const ReductionTree& tree);

struct MultiplicityFormula {
  bool applicable = true;
  long lhs = 0;  // nu0 + 1
  long rhs = 0;
  bool ok() const { return !applicable || lhs == rhs; }
};
MultiplicityFormula multiplicity_formula_check(const ReductionTree& tree);

struct CrossCheck {
  bool second_kind = true;
  int nu0_omega = 0;
  int nu0_df = 0;
  std::map<int, int> m_omega, m_df;
  bool nu_equal = true;
  bool all_m_equal = true;
  bool some_m_equal = false;
  bool consistent = true;  // the four equivalent booleans agree
  std::vector<std::string> messages;
};
CrossCheck second_kind_crosscheck(const ReductionTree& tree, const SeparatrixModel& sep);

enum class EpsilonStatus { Certified0, Certified1, Probed1, Assumed0, Unknown };
const char* epsilon_name(EpsilonStatus e);

// Bounded search for a basic non-tangent polynomial field X (L_X w ^ w = 0,
// w(X) != 0) and for a polynomial integrating factor h (dh ^ w = h dw)
// vanishing at the origin.
struct EpsilonSearch {
  EpsilonStatus status = EpsilonStatus::Unknown;
  int degree = 0;                       // bound on deg X
  std::optional<std::pair<Poly2, Poly2>> basic_field;  // (P, Q) of P d/dx + Q d/dy
  std::optional<Poly2> integrating_factor;
  std::string note;
};
// `certified_red`: the nerve has a vertex whose red color is certified.
EpsilonSearch epsilon_search(const OneForm& w, bool certified_red, int max_deg = 6);

struct BetaBounds {
  long lo = 0, hi = 0;
  EpsilonStatus epsilon = EpsilonStatus::Unknown;
};
BetaBounds beta_bounds(long delta, long tau, EpsilonStatus eps, bool second_kind);

}  // namespace foliage
