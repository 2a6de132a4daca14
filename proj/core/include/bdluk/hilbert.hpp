#pragma once

#include "bdluk/syntax.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace bdluk {

// ============================================================================
// Hilbert-style calculus for the four-valued outer language: axiom-schema
// instantiation, exhaustive instance generation for soundness audits, and a
// line-by-line proof checker.
//
// Schemas (phi, chi range over inner formulas; X over the four modalities):
//   LukTaut  any outer tautology; justified by the tableau, not instantiated
//   Equiv    X{phi} <-> X{chi}                      when phi and chi are
//            interderivable
//   Contr    ~Bl{phi & -phi}                        (variant 0)
//            Cf{phi} <-> Cf{phi & -phi}             (variant 1)
//   Neg      Bl{-phi} <-> Db{phi}                   (variant 0)
//            Cf{-phi} <-> Cf{phi}                   (variant 1)
//   Mon      (Bl{phi}(+)Cf{phi}) -> (Bl{chi}(+)Cf{chi})   when phi entails chi
//   Part1    Bl{phi}(+)Db{phi}(+)Cf{phi}(+)Uc{phi}
//   Part2    ((X1{phi}(+)X2{phi}(+)X3{phi}(+)X4{phi})(-)X4{phi})
//              <-> (X1{phi}(+)X2{phi}(+)X3{phi})    X1..X4 a permutation
//   Ex       (Bl{pOr}(+)Cf{pOr}) <->
//              ((Bl{phi}(+)Cf{phi}) (-) (Bl{pAnd}(+)Cf{pAnd}) (+) (Bl{chi}(+)Cf{chi}))
//            with pOr = phi|chi, pAnd = phi&chi; additive chains associate left
//
// Inference rules: modus ponens, and necessitation of ! restricted to lines
// with no premise ancestry.
// ============================================================================

enum class AxiomSchema { LukTaut, Equiv, Contr, Neg, Mon, Part1, Part2, Ex };

std::string schema_name(AxiomSchema s);

// arity in inner-formula arguments; LukTaut is not instantiable
std::size_t schema_arity(AxiomSchema s);
// number of variants: Equiv 4 (modality), Contr/Neg 2 (halves), Part2 24
// (modality permutations), others 1
std::size_t schema_variants(AxiomSchema s);

// Builds one instance.  Throws InputError for LukTaut, wrong arity, a
// variant out of range, or a failed side condition (reporting which inner
// check failed).
OuterRef instantiate(AxiomSchema s, const std::vector<BDRef>& args, std::size_t variant = 0);

// Every variant whose side condition holds for these arguments; empty when
// the side condition rules them all out.  Throws InputError on wrong arity.
std::vector<OuterRef> instances_for(AxiomSchema s, const std::vector<BDRef>& args);

// ===== instance generation ==================================================

// Inner-formula pool: representatives of equivalence classes of formulas of
// height at most `depth` over `vars`, deterministic first-seen order.
std::vector<BDRef> bd_pool(const std::vector<std::string>& vars, int depth,
                           std::size_t cap = 10000);

struct AxiomInstance {
  AxiomSchema schema;
  std::string label;  // e.g. "equiv[Bl](p, p & p)" or "mon(p, p | q)"
  OuterRef formula;
};

// All schema instances over the pool, deduplicated by inner equivalence of
// the argument tuples, in deterministic order.  Throws CapExceeded when the
// instance count would pass `cap`.
std::vector<AxiomInstance> generate_instances(const std::vector<std::string>& vars, int depth,
                                              std::size_t cap = 100000);

// ===== proofs ===============================================================

// Justification kinds, written in proof files as:
//   premise <i>          i-th premise (1-based)
//   axiom <name>(<args>) schema instance; args are comma-separated inner
//                        formulas; name in {equiv, contr, neg, mon, part1,
//                        part2, ex}
//   taut                 outer tautology, checked by the tableau after
//                        abstracting measured atoms
//   mp <i> <j>           modus ponens: line j must be (line i) -> (this)
//   dnec <i>             !-necessitation of line i; line i must not depend
//                        on any premise
enum class JustKind { Premise, Axiom, Taut, MP, DNec };

struct ProofLine {
  OuterRef formula;
  JustKind kind;
  std::size_t ref1 = 0;  // premise index or first cited line (1-based)
  std::size_t ref2 = 0;  // second cited line (MP)
  AxiomSchema schema = AxiomSchema::LukTaut;  // Axiom lines only
  std::vector<BDRef> args;                    // Axiom lines only
};

struct Proof {
  std::vector<OuterRef> premises;
  std::vector<ProofLine> lines;
};

// File format: optional comment (#) and blank lines; `premise <formula>`
// lines first; then `<k>. <formula> ; <justification>` with k equal to the
// line's 1-based position.  Formulas are in the four-valued dialect.
Proof parse_proof(const std::string& text);

struct CheckResult {
  bool accepted = false;
  std::size_t failed_line = 0;  // 1-based; 0 when accepted
  std::string reason;
};

// Validates every line; when `goal` is given, the last line must equal it.
CheckResult check_proof(const Proof& p, const OuterRef* goal = nullptr);

}  // namespace bdluk
