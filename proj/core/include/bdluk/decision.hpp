#pragma once

#include "bdluk/bd_semantics.hpp"
#include "bdluk/luk_eval.hpp"
#include "bdluk/syntax.hpp"
#include "bdluk/tableau.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bdluk {

// ============================================================================
// Decision procedures for the two outer probability languages.
//
// Pipeline for the pair-valued language (dialect PM):
//   1. rewrite to negation normal form (all outer negations absorbed into
//      measured bodies),
//   2. star transform: put every body into inner negation normal form and
//      replace negated inner variables by fresh companion variables, so the
//      bodies become negation-free,
//   3. abstract the measured atoms into fresh propositional names,
//   4. run the constraint tableau on the abstracted formula,
//   5. close each open branch against a coherence system that ties every
//      atom's value to a common weighted set of classical valuations of the
//      extended variables.
//
// The formula is valid exactly when every branch closes.  A feasible branch
// yields a countermodel: a weighted model decoded from the valuation weights,
// which is re-verified by direct evaluation before being returned.
//
// The four-valued language (dialect Four) is decided through its faithful
// translation into the pair-valued language.
// ============================================================================

// ===== star transform =======================================================

// Companion-variable naming for negated inner variables.  Names never
// collide with existing variables or with one another.
struct StarMap {
  std::map<std::string, std::string> star_of;

  // reverse lookup: companion name -> original variable
  std::map<std::string, std::string> original_of;
};

// Replaces every measured body by its negation normal form with negated
// variables renamed through a shared StarMap.  All input formulas contribute
// to (and share) the same map.  Bodies of the results are negation-free.
std::pair<std::vector<OuterRef>, StarMap> star_transform_all(const std::vector<OuterRef>& fs);
std::pair<OuterRef, StarMap> star_transform(const OuterRef& f);

// ===== atom abstraction =====================================================

// Measured atoms replaced by fresh propositional names q1, q2, ... in order
// of first occurrence (duplicates by rendered text share a name).  Existing
// free atoms are left alone; generated names avoid them.
struct AtomAbstraction {
  std::vector<OuterRef> atoms;          // distinct modal atoms, first-occurrence order
  std::vector<std::string> names;       // fresh names, parallel to atoms
  std::vector<OuterRef> abstracted;     // inputs with atoms replaced, parallel to inputs
  std::map<std::string, std::size_t> index;  // rendered atom -> slot
};

AtomAbstraction make_abstraction(const std::vector<OuterRef>& fs);

// ===== coherence system =====================================================

enum class CoherenceMode {
  Exhaustive,   // all classical valuations of the extended variables
  SparseGuess,  // caller-supplied valuations only (may miss countermodels)
};

// Weighted-valuation constraints tying atom values to a common measure:
//   sum_v u_v = 1,   and per atom i:  sum_v a[i][v] * u_v  =  z_i
// where a[i][v] says whether the (negation-free) body of atom i is true
// under classical valuation v, and z_i names the atom's tableau variable.
struct CoherenceSystem {
  std::vector<std::string> vars;                  // extended variables, sorted
  std::vector<std::set<std::string>> valuations;  // subsets of vars, fixed order
  std::vector<std::string> u_names;               // weight variables, parallel
  std::vector<std::vector<bool>> truth;           // truth[i][v] for atom i
  std::vector<LinConstraint> constraints;
};

inline constexpr int kDefaultCoherenceVarCap = 12;

// atom_vars[i] is the tableau variable carrying atom i's value.  Exhaustive
// mode enumerates all 2^m valuations and refuses m beyond var_cap; the guess
// mode takes the supplied valuations as given.
CoherenceSystem build_coherence(const std::vector<OuterRef>& atoms,
                                const std::vector<std::string>& atom_vars, CoherenceMode mode,
                                const std::vector<std::set<std::string>>* guess = nullptr,
                                int var_cap = kDefaultCoherenceVarCap);

// ===== verdicts =============================================================

struct WitnessModel {
  BDModel model;
  WorldWeights weights;
};

struct DecisionStats {
  std::size_t branches = 0;             // tableau leaves examined
  std::size_t atom_count = 0;           // distinct measured atoms
  std::size_t coherence_rows = 0;       // coherence constraints added per leaf
  std::size_t tableau_constraints = 0;  // constraints of the decisive branch
  std::size_t nonzero_u = 0;            // supporting valuations of the witness
};

struct Verdict {
  bool affirmative = false;  // valid / satisfiable / entailed
  std::optional<WitnessModel> witness;
  DecisionStats stats;
};

struct DecisionOptions {
  int max_branches = 50000;
  int max_coherence_vars = kDefaultCoherenceVarCap;
  CoherenceMode mode = CoherenceMode::Exhaustive;
  const std::vector<std::set<std::string>>* guess = nullptr;
  // pair-valued satisfiability only: additionally require the second
  // coordinate to be zero, through a joint root for the swapped reflection.
  // Ignored by validity (already implied there); rejected by the four-valued
  // entry points, whose evaluation has a single coordinate.
  bool require_e2_zero = false;
};

// ===== decision procedures ==================================================

// Validity on the first coordinate for the pair-valued language.  A negative
// verdict carries a verified countermodel (the formula evaluates below one).
Verdict decide_valid_pm(const OuterRef& f, const DecisionOptions& opts = {});

// Satisfiability: some weighted model gives the formula first coordinate
// one (and, under require_e2_zero, second coordinate zero).  An affirmative
// verdict carries a verified witness model.
Verdict decide_sat_pm(const OuterRef& f, const DecisionOptions& opts = {});

// Four-valued validity / satisfiability via translation.  Witnesses are
// re-verified against the four-valued evaluation.
Verdict decide_valid_four(const OuterRef& f, const DecisionOptions& opts = {});
Verdict decide_sat_four(const OuterRef& f, const DecisionOptions& opts = {});

// Finite-premise consequence for the four-valued language: gamma entails
// alpha iff (!g1 * !g2 * ... * !gk) -> alpha is valid.  A negative verdict
// carries a model satisfying every premise (value one) but not alpha.
Verdict decide_entails_four(const std::vector<OuterRef>& gamma, const OuterRef& alpha,
                            const DecisionOptions& opts = {});

}  // namespace bdluk
