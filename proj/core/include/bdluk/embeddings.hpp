#pragma once

#include "bdluk/syntax.hpp"

#include <string>
#include <vector>

namespace bdluk {

// ============================================================================
// Rewrites shared by the translations.
//
//   nnf      pushes the outer paraconsistent negation inward until it only
//            sits on inner formulas:
//              -Pr{f}     =>  Pr{-f}
//              --A        =>  A
//              -~A        =>  ~-A
//              -(A -> B)  =>  ~(-B -> -A)
//              -!A        =>  ~!~-A
//            Derived connectives met under a negation are first unfolded
//            into the {~, !, ->} core by the standard definitions.
//   to_four  maps Pr{f} to Bl{f} (+) Cf{f}, homomorphic elsewhere; input
//            must be negation-free (run nnf first).
//   to_pm    maps the four-valued atoms onto Pr arithmetic:
//              Bl{f}  =>  Pr{f} (-) Pr{f & -f}
//              Db{f}  =>  Pr{-f} (-) Pr{f & -f}
//              Cf{f}  =>  Pr{f & -f}
//              Uc{f}  =>  ~Pr{f | -f}
//
// Every translation preserves the evaluation of the formula on each weighted
// model (pair evaluation for nnf, scalar against first coordinate across the
// embeddings).
// ============================================================================

enum class RewriteRule {
  NegPr,            // -Pr{f}      => Pr{-f}
  NegNeg,           // --A         => A
  NegLukNeg,        // -~A         => ~-A
  NegImplies,       // -(A -> B)   => ~(-B -> -A)
  NegDelta,         // -!A         => ~!~-A
  UnfoldUnderNeg,   // -<derived>  => -<core expansion of the derived node>
  PrToBlCf,         // Pr{f}       => Bl{f} (+) Cf{f}
  BlToPr,           // Bl{f}       => Pr{f} (-) Pr{f & -f}
  DbToPr,           // Db{f}       => Pr{-f} (-) Pr{f & -f}
  CfToPr,           // Cf{f}       => Pr{f & -f}
  UcToPr,           // Uc{f}       => ~Pr{f | -f}
};

const char* rewrite_rule_name(RewriteRule r);

struct RewriteStep {
  RewriteRule rule;
  std::vector<int> path;  // child indices from the root at application time
};

struct TranslationTrace {
  OuterRef input;
  OuterRef output;
  std::vector<RewriteStep> steps;
};

// Applies one rewrite at the given path; used to replay traces.
OuterRef apply_rewrite(const OuterRef& f, RewriteRule rule, const std::vector<int>& path);

// Replays a recorded step list; equals the trace output by construction.
OuterRef replay(const OuterRef& input, const std::vector<RewriteStep>& steps);

OuterRef nnf(const OuterRef& f);
TranslationTrace nnf_traced(const OuterRef& f);

OuterRef to_four(const OuterRef& f);
TranslationTrace to_four_traced(const OuterRef& f);

OuterRef to_pm(const OuterRef& f);
TranslationTrace to_pm_traced(const OuterRef& f);

// Unfolds derived connectives into the {~, !, ->} core (with the
// paraconsistent negation untouched):
//   A | B    =>  (A -> B) -> B
//   A & B    =>  ~(~A | ~B)
//   A (+) B  =>  ~A -> B
//   A (*) B  =>  ~(A -> ~B)
//   A (-) B  =>  A (*) ~B
//   A <-> B  =>  (A -> B) (*) (B -> A)
// unfold_step rewrites the root only (one definition); unfold runs to the
// core language.
OuterRef unfold_step(const OuterRef& f);
OuterRef unfold(const OuterRef& f);

}  // namespace bdluk
