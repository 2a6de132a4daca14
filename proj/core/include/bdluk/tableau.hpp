#pragma once

#include "bdluk/linear.hpp"
#include "bdluk/luk_eval.hpp"
#include "bdluk/syntax.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bdluk {

// ============================================================================
// Constraint tableaux for the two-coordinate outer logic.
//
// Labelled formulas bound one coordinate of a formula's value by an affine
// term over branch variables: (f, side, dir, t) reads "coordinate <side> of
// f is <dir> t".  Rules decompose by the outermost connective of the core
// language {-, ~, !, ->}; derived connectives are unfolded before expansion.
// Atomic labels translate into linear constraints over per-atom variables,
// one per coordinate.  A saturated branch is closed when its constraint
// system is infeasible over [0,1]; a feasible system yields a refuting
// valuation of the atoms.
//
// Validity of f is tested from the root {f <=1 c, c < 1}: f is valid on the
// first coordinate exactly when every branch closes.
// ============================================================================

enum class Side { One, Two };
enum class Dir { Le, Ge };

struct LabelledFormula {
  OuterRef f;
  Side side;
  Dir dir;
  AffineTerm bound;
};

std::string labelled_to_string(const LabelledFormula& lf);

// LP variable naming for atom coordinates: "L(a)" and "R(a)" where a is the
// rendered atom.
std::string atom_var_name(const OuterRef& atom, Side side);

// Translation of an atomic labelled formula into a linear constraint.
LinConstraint tau(const LabelledFormula& lf);

struct DumpNode {
  std::vector<std::string> lines;
  std::vector<std::unique_ptr<DumpNode>> kids;
  std::string verdict;  // leaves only
};

struct Branch {
  std::vector<LabelledFormula> open;       // awaiting expansion
  std::vector<LabelledFormula> expanded;   // kept for inspection
  std::vector<LinConstraint> constraints;  // numeric side conditions + atom translations
  std::map<std::string, OuterRef> atoms;   // rendered atom -> formula
  std::set<std::string> lp_vars;           // atom coordinates and branch variables
  int next_fresh = 1;
  bool refuted = false;    // interval propagation found a contradiction
  bool one_sided = false;  // negation-free input: second-coordinate labels are bugs

  // interval state per variable, starting at [0, 1]
  std::map<std::string, std::pair<EpsRat, EpsRat>> intervals;

  DumpNode* dump_node = nullptr;

  std::string fresh_var();
  // Adds a labelled formula: atomic ones are translated immediately through
  // tau, compound ones are queued.
  void add(const LabelledFormula& lf);
  // Adds a numeric constraint and folds it into the interval state.
  void add_constraint(const LinConstraint& c);
};

struct TableauOptions {
  int max_branches = 50000;
};

// Expands the chosen open formula of the branch by its rule; returns the
// resulting branches (one or two).  The premise is consumed.
std::vector<Branch> apply_rule(const Branch& b, std::size_t open_index);

// Depth-first saturation; returns the leaves (refuted or fully expanded).
// Throws CapExceeded when the branch budget runs out.
std::vector<Branch> saturate(Branch root, const TableauOptions& opts,
                             DumpNode* dump_root = nullptr);

struct ClosedLeaf {
  std::vector<LinConstraint> system;  // infeasible certificate, re-checkable
  bool by_propagation = false;
};

struct TableauResult {
  bool closed = false;
  std::vector<ClosedLeaf> closed_leaves;
  // open case: rational values for every LP variable of the open branch
  std::map<std::string, Rat> assignment;
  // pair values of the atoms reconstructed from the assignment
  std::map<std::string, PairValue> atom_values;
};

// Decides first-coordinate validity.  Open results carry a verified refuting
// valuation: the root formula evaluates below one on it.
TableauResult prove_luk_valid(const OuterRef& f, const TableauOptions& opts = {});

// Rendered branch tree with per-leaf verdicts.
std::string tableau_dump(const OuterRef& f, const TableauOptions& opts = {});

}  // namespace bdluk
