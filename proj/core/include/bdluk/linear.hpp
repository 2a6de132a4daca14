#pragma once

#include "bdluk/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bdluk {

// ============================================================================
// Exact feasibility of systems of linear constraints with mixed strict and
// non-strict comparisons over [0,1]-bounded (or nonnegative unbounded)
// variables.
//
// Strictness is handled by one shared infinitesimal: t < b is solved as
// t <= b - eps over the ordered field of pairs a + b*eps with lexicographic
// order.  Coefficients stay rational; only right-hand sides carry eps.  A
// feasible eps-solution is turned into a rational witness by substituting a
// small enough positive rational for eps, and the witness is re-checked
// against every original constraint before being returned.
// ============================================================================

struct EpsRat {
  Rat a;  // standard part
  Rat b;  // eps coefficient

  EpsRat() : a(0), b(0) {}
  EpsRat(Rat std_part) : a(std::move(std_part)), b(0) {}
  EpsRat(Rat std_part, Rat eps_part) : a(std::move(std_part)), b(std::move(eps_part)) {}

  EpsRat operator+(const EpsRat& o) const { return {a + o.a, b + o.b}; }
  EpsRat operator-(const EpsRat& o) const { return {a - o.a, b - o.b}; }
  EpsRat operator-() const { return {-a, -b}; }
  EpsRat scaled(const Rat& k) const { return {a * k, b * k}; }

  bool operator==(const EpsRat& o) const { return a == o.a && b == o.b; }
  bool operator<(const EpsRat& o) const { return a < o.a || (a == o.a && b < o.b); }
  bool operator<=(const EpsRat& o) const { return *this < o || *this == o; }
  bool operator>(const EpsRat& o) const { return o < *this; }
  bool operator>=(const EpsRat& o) const { return o <= *this; }

  bool is_zero() const { return a == 0 && b == 0; }
};

std::string eps_to_string(const EpsRat& v);

// Affine combination of named variables plus a constant.  Zero coefficients
// are never stored, which makes equality structural.
struct AffineTerm {
  Rat constant{0};
  std::map<std::string, Rat> coeff;

  static AffineTerm of_const(Rat c);
  static AffineTerm of_var(const std::string& name, Rat k = Rat(1));

  AffineTerm operator+(const AffineTerm& o) const;
  AffineTerm operator-(const AffineTerm& o) const;
  AffineTerm scaled(const Rat& k) const;
  bool operator==(const AffineTerm& o) const = default;

  Rat eval(const std::map<std::string, Rat>& assignment) const;  // absent vars read 0
};

std::string affine_to_string(const AffineTerm& t);

enum class Rel { Le, Lt, Eq };

struct LinConstraint {
  AffineTerm lhs;
  Rel rel;
  AffineTerm rhs;

  bool holds(const std::map<std::string, Rat>& assignment) const;
};

std::string constraint_to_string(const LinConstraint& c);

// Lower bounds are fixed at zero.  Upper bounds default to one; an entry
// mapped to nullopt makes the variable unbounded above.
struct VarBounds {
  std::map<std::string, std::optional<Rat>> upper;

  std::optional<Rat> upper_of(const std::string& name) const {
    auto it = upper.find(name);
    return it == upper.end() ? std::optional<Rat>(Rat(1)) : it->second;
  }
};

struct Feasibility {
  bool feasible = false;
  std::map<std::string, Rat> assignment;  // meaningful when feasible
};

// Decides feasibility over the reals.  A returned assignment satisfies every
// constraint, including the strict ones, exactly.
Feasibility feasible(const std::vector<LinConstraint>& system, const VarBounds& bounds);

// Same decision, but the witness is a basic feasible point of the slack
// formulation: among variables without a finite upper bound, at most
// (number of constraints) take nonzero values.
Feasibility vertex_solution(const std::vector<LinConstraint>& system, const VarBounds& bounds);

}  // namespace bdluk
