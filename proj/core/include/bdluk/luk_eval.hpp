#pragma once

#include "bdluk/bd_semantics.hpp"
#include "bdluk/rational.hpp"
#include "bdluk/syntax.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace bdluk {

// ============================================================================
// Scalar algebra on [0,1].
// ============================================================================

enum class LukOp { Neg, Delta, And, Or, Implies, Strong, Plus, Minus, Iff };

Rat luk_apply(LukOp op, const Rat& a);                // Neg, Delta
Rat luk_apply(LukOp op, const Rat& a, const Rat& b);  // the rest

// ============================================================================
// Pair algebra: independent degrees of truth-support and falsity-support.
// The paraconsistent negation swaps the coordinates; the second coordinate
// of each connective follows the falsity clauses of the two-layered
// semantics.  Derived connectives are composed from the primitives by the
// standard definitions (a | b := (a -> b) -> b, and so on), so they only
// have one source of truth.
// ============================================================================

struct PairValue {
  Rat truth;
  Rat falsity;
  bool operator==(const PairValue&) const = default;
};

enum class PairOp { ParNeg, LukNeg, Delta, Implies, Iff, And, Or, Strong, Plus, Minus };

PairValue pair_apply(PairOp op, const PairValue& a);
PairValue pair_apply(PairOp op, const PairValue& a, const PairValue& b);

// ============================================================================
// Weighted models.
// ============================================================================

// Nonnegative weights covering exactly the model's worlds and totalling one.
struct WorldWeights {
  std::map<std::string, Rat> weight;
  WorldWeights(const BDModel& m, std::map<std::string, Rat> w);
  const Rat& at(const std::string& world) const;
};

// Total weight of the chosen extension of f.
Rat measure_of(const BDModel& m, const WorldWeights& w, const BDRef& f, ExtensionKind k);

// Evaluation of a two-layered formula over a weighted model.
//   eval_pm:   Pr atoms become (measure of Plus, measure of Minus) pairs.
//   eval_four: Bl/Db/Cf/Uc atoms become the measures of the four regions.
// Both throw DialectError when the formula is outside their dialect.
PairValue eval_pm(const BDModel& m, const WorldWeights& w, const OuterRef& f);
Rat eval_four(const BDModel& m, const WorldWeights& w, const OuterRef& f);

// Pair evaluation with externally supplied atom values (modal atoms and bare
// atoms are both resolved through the callback).
PairValue eval_with_atoms(const OuterRef& f,
                          const std::function<PairValue(const OuterRef&)>& atom_value);

// ============================================================================
// Measure tables and axiom audits.
//
// A SetMeasureTable maps world sets to values; it stands in for an arbitrary
// (not necessarily weight-induced) assignment of measures to the sets an
// audit needs.  The verifiers check the measure axioms on a probe family of
// inner formulas and report each violated instance.
// ============================================================================

struct SetMeasureTable {
  // key: sorted, deduplicated world ids
  std::map<std::vector<std::string>, Rat> entries;

  static std::vector<std::string> key_of(std::vector<std::string> worlds);
  void set(std::vector<std::string> worlds, Rat value);
  // nullptr when absent
  const Rat* find(const std::vector<std::string>& worlds) const;
};

struct DescribedSet {
  std::string desc;                 // e.g. "|p & q|+"
  std::vector<std::string> worlds;  // model order
};

// The sets each verifier will consult for the given probe, with printable
// descriptions.  Useful for building tables (see induced_table).
std::vector<DescribedSet> needed_sets_pm(const BDModel& m, const std::vector<BDRef>& probe);
std::vector<DescribedSet> needed_sets_four(const BDModel& m, const std::vector<BDRef>& probe);

// Table assigning each described set its total weight.
SetMeasureTable induced_table(const WorldWeights& w, const std::vector<DescribedSet>& sets);

struct Violation {
  std::string axiom;   // "mon", "neg", "ex", "part", "negfour", "contr", "bcmon", "bcex"
  std::string detail;  // offending instance with formulas and measure values
};

// Checks the plus/minus measure axioms over the probe:
//   mon: monotone w.r.t. inclusion among all collected sets
//   neg: measure of |f|- equals measure of |-f|+
//   ex:  measure of |f v g|+ = |f|+ + |g|+ - |f & g|+
// Throws InputError when the table lacks a needed entry.
std::vector<Violation> verify_pm_axioms(const BDModel& m, const SetMeasureTable& t,
                                        const std::vector<BDRef>& probe);

// Checks the four-region measure axioms over the probe:
//   part:    the four regions of f total one
//   negfour: |-f| true-only region matches |f| false-only; conflict regions match
//   contr:   |f & -f| true-only region has measure zero; its conflict region
//            matches that of f
//   bcmon:   when f entails g, truth mass (true-only plus conflict) is monotone
//   bcex:    truth masses satisfy inclusion-exclusion across & and |
std::vector<Violation> verify_four_axioms(const BDModel& m, const SetMeasureTable& t,
                                          const std::vector<BDRef>& probe);

// ============================================================================
// Dual models: per variable and world, swap "both supports" with "neither
// support"; classical values and weights are untouched.  vars, when given,
// must cover every variable of interest (defaults to the model's own).
// ============================================================================

std::pair<BDModel, WorldWeights> dual_model(const BDModel& m, const WorldWeights& w,
                                            const std::set<std::string>* vars = nullptr);

}  // namespace bdluk
