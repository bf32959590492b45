#pragma once

// Mechanical checks of the elimination chain for minimal translation
// surfaces. Each check compares two exact expressions and reports
// exact-match, match-up-to-factor, or mismatch together with the canonical
// difference polynomial. The printed polynomials under test are passed in
// explicitly so that corrupted variants can be checked as well.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "htrans/poly.hpp"

namespace htrans::algebra {

enum class NamedPoly {
  q1,       // b z X^2 - 5 X + 4 a z + 3 b z
  q2,       // b X^3 - 5 a X + 4 a^2 z + 2 a b z
  q3,       // -5 X^2 + 3 z (3a + b) X - 2 a z^2 (2a + b)
  eqg2,     // X^3 - a z X^2 - a z          (g'^3 - a z g'^2 - a z, X = g')
  eqg3,     // 3 b X^3 - 2 a b z X^2 - 5 a X + 4 a^2 z
  final7,   // 4a^2b^3(2a+b)^2 z^7 - b^2(16a^3 - 109a^2b - 108ab^2 - 27b^3) z^5 - 125 a b^2 z^3
  b0branch, // -16/125 a^3 z^3 - a z
  x_num,    // (-20a - 15b + 4a^2 b z^2 + 2 a b^2 z^2) z
  x_den,    // (9a + 3b) b z^2 - 25
};

MultiPoly build_named(NamedPoly id);
std::string to_string(NamedPoly id);

enum class ProofStatus { exact_match, match_up_to_factor, mismatch };
std::string to_string(ProofStatus status);

struct ProofReport {
  std::string id;
  ProofStatus status = ProofStatus::mismatch;
  MultiPoly difference;           // zero unless mismatch
  std::optional<Rational> factor; // lhs = factor * rhs, when known
  std::string combination;        // how the two sides were produced
  RationalFunction lhs;
  RationalFunction rhs;

  ProofReport(std::string id_, RationalFunction lhs_, RationalFunction rhs_)
      : id(std::move(id_)), lhs(std::move(lhs_)), rhs(std::move(rhs_)) {}

  bool holds() const { return status != ProofStatus::mismatch; }
};

/// How two sides may agree. Polynomial equations "P = 0" are unchanged by a
/// nonzero constant factor; equalities between expressions are not.
enum class Agreement { exact, up_to_factor };

/// Compares lhs and rhs as rational functions: exact-match when equal,
/// match-up-to-factor when `agreement` allows it and lhs = c * rhs for a
/// nonzero rational c != 1, mismatch otherwise.
ProofReport compare(std::string id, RationalFunction lhs, RationalFunction rhs, std::string combination,
                    Agreement agreement = Agreement::exact);

/// X q1 - z q2 = q3.
ProofReport verify_q3_combination(const MultiPoly &q1 = build_named(NamedPoly::q1),
                                  const MultiPoly &q2 = build_named(NamedPoly::q2),
                                  const MultiPoly &q3 = build_named(NamedPoly::q3));

/// eqg3 - 3b eqg2 = a q1 and eqg3 - 2b eqg2 = q2.
ProofReport verify_q1_from_eqg(const MultiPoly &q1 = build_named(NamedPoly::q1));
ProofReport verify_q2_from_eqg(const MultiPoly &q2 = build_named(NamedPoly::q2));

struct EliminationResult {
  RationalFunction x;      // X solved from q1 and q3
  MultiPoly eliminated;    // numerator of q1 after substituting X
  ProofReport x_report;    // against the printed X
  ProofReport final_report; // against the printed degree-7 polynomial
};

/// Eliminates X^2 between q1 and q3, solves the result for X, substitutes
/// into q1 and clears denominators.
EliminationResult solve_X_and_eliminate(const MultiPoly &q1 = build_named(NamedPoly::q1),
                                        const MultiPoly &q3 = build_named(NamedPoly::q3),
                                        const RationalFunction &printed_x = RationalFunction(
                                            build_named(NamedPoly::x_num), build_named(NamedPoly::x_den)),
                                        const MultiPoly &printed_final = build_named(NamedPoly::final7));

/// With f'' = a (1 + p^2)^power and f''' its x-derivative, checks
/// -4 p f''^2 + (1 + p^2) f''' = 0. Only power 2 is a first integral.
ProofReport verify_first_integral(int power = 2);

/// d/dx [f'' / (1+f'^2)^2] = (f''' (1+f'^2) - coefficient f' f''^2) / (1+f'^2)^3,
/// the same for g, and the mixed x/y derivative of 8 f'' g'' / ((1+f'^2)^2 (1+g'^2)^2)
/// as the product of the two factors.
ProofReport verify_factorization_step(const Rational &coefficient = 4);

/// d/dz [X^3 - a z X^2 - a z] = (3X^2 - 2azX) X' - a X^2 - a, and that the
/// printed g'' = a (1 + X^2) / (X (3X - 2az)) solves it.
ProofReport verify_implicit_g(const RationalFunction &printed_g2 = RationalFunction(
                                  MultiPoly::var(Var::a) * (MultiPoly(1) + MultiPoly::var(Var::X, 2)),
                                  MultiPoly::var(Var::X) * (MultiPoly::monomial(3, {{Var::X, 1}}) -
                                                            MultiPoly::monomial(2, {{Var::a, 1}, {Var::z, 1}}))));

/// b = 0: solve eqg3 for X and substitute into eqg2.
ProofReport verify_b0_branch(const MultiPoly &printed = build_named(NamedPoly::b0branch));

/// From the displayed relation after substituting g'' and f''/(1+f'^2) to
/// X (3 X^2 - 2 a z X) * (...) = X * eqg3.
ProofReport verify_eqg3_simplification(const MultiPoly &printed_eqg3 = build_named(NamedPoly::eqg3));

/// The displayed relation b + 2a/P + a/(X(3X-2az)) = 2a (P + X^2)/(P X^2),
/// P = 1 + f'^2, re-derived from the type II minimality equation: z times its
/// difference equals the type II residual plus 2 (P + X^2) eqg2 / (P X^2 (1 + X^2)).
ProofReport verify_type2_display();

/// (f''/(1+f'^2))' = -4 a f' f'' / (1+f'^2)^2 integrates to f''/(1+f'^2) = 2a/(1+f'^2) + b.
ProofReport verify_type2_first_integral();

/// Every identity above with the printed coefficients, in a fixed order.
std::vector<ProofReport> verify_all();

struct SampleOutcome {
  int evaluated = 0; // points where both denominators were nonzero
  int disagreements = 0;
};

/// Evaluates lhs and factor * rhs at random rationals (numerators and
/// denominators in [-range, range]) and counts disagreements.
SampleOutcome sample_check(const ProofReport &report, int points, std::uint64_t seed, long range = 50);

} // namespace htrans::algebra
