#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace bdluk {

// ============================================================================
// Inner layer: Belnap-Dunn formulas over propositional variables.
// ============================================================================

enum class BDKind { Var, Neg, And, Or };

struct BDFormula;
using BDRef = std::shared_ptr<const BDFormula>;

// Immutable; nodes are shared freely, including across threads.
struct BDFormula {
  BDKind kind;
  std::string var;    // Var only
  BDRef left, right;  // Neg uses left only
};

BDRef bd_var(std::string name);
BDRef bd_neg(BDRef f);
BDRef bd_and(BDRef l, BDRef r);
BDRef bd_or(BDRef l, BDRef r);

bool bd_struct_eq(const BDRef& a, const BDRef& b);

// Pushes inner negation down to variables: --f => f, -(a & b) => -a | -b,
// -(a | b) => -a & -b.  Preserves both supports in every model.
BDRef bd_nnf(const BDRef& f);

// ============================================================================
// Outer layer: two-layered formulas whose atoms wrap inner formulas in a
// probability modality, plus bare atoms for the plain outer-logic dialect.
// ============================================================================

enum class Modality { Pr, Bl, Db, Cf, Uc };

const char* modality_name(Modality m);

enum class OuterKind {
  ModalAtom,  // Pr{...}, Bl{...}, Db{...}, Cf{...}, Uc{...}
  FreeAtom,   // bare identifier (plain outer dialect, abstracted formulas)
  ParNeg,     // -   paraconsistent negation
  LukNeg,     // ~   Lukasiewicz negation
  Delta,      // !   Baaz Delta
  Implies,    // ->
  Iff,        // <->
  And,        // &   (min)
  Or,         // |   (max)
  Strong,     // (*) strong conjunction
  Plus,       // (+) strong disjunction
  Minus,      // (-) truncated difference
};

struct OuterFormula;
using OuterRef = std::shared_ptr<const OuterFormula>;

struct OuterFormula {
  OuterKind kind;
  Modality mod{};        // ModalAtom only
  BDRef body;            // ModalAtom only
  std::string name;      // FreeAtom only
  OuterRef left, right;  // unary kinds use left only
};

OuterRef modal_atom(Modality m, BDRef body);
OuterRef free_atom(std::string name);
OuterRef par_neg(OuterRef f);
OuterRef luk_neg(OuterRef f);
OuterRef delta(OuterRef f);
OuterRef implies(OuterRef a, OuterRef b);
OuterRef iff(OuterRef a, OuterRef b);
OuterRef outer_and(OuterRef a, OuterRef b);
OuterRef outer_or(OuterRef a, OuterRef b);
OuterRef strong(OuterRef a, OuterRef b);
OuterRef plus(OuterRef a, OuterRef b);
OuterRef minus(OuterRef a, OuterRef b);

bool outer_struct_eq(const OuterRef& a, const OuterRef& b);

// ============================================================================
// Dialects.
//   PM:       modal atoms are Pr only; paraconsistent negation allowed at the
//             outer layer; no bare atoms.
//   Four:     modal atoms are Bl/Db/Cf/Uc; no outer paraconsistent negation;
//             no bare atoms.
//   PlainLuk: bare identifiers are atoms and every connective is allowed;
//             modal atoms are treated as opaque atoms.
// ============================================================================

enum class Dialect { PM, Four, PlainLuk };

// Throws DialectError naming the offending construct.
void check_dialect(const OuterRef& f, Dialect d);

// ============================================================================
// Canonical rendering with minimal parentheses.  parse(render(f)) == f.
// ============================================================================

std::string render(const BDRef& f);
std::string render(const OuterRef& f);

// ============================================================================
// Metadata.
// ============================================================================

std::set<std::string> props(const BDRef& f);
// For outer formulas: variables of all modal-atom bodies plus bare atom names.
std::set<std::string> props(const OuterRef& f);

// Literals occurring in an inner formula, rendered: "p", "-p".
std::set<std::string> lits(const BDRef& f);

// All distinct subformulas including the formula itself, in first-visit
// (pre-order) order.  Outer subformulas do not descend into modal bodies.
std::vector<BDRef> subformulas(const BDRef& f);
std::vector<OuterRef> subformulas(const OuterRef& f);

// Node counts; outer formulas include the nodes of their modal bodies.
int node_count(const BDRef& f);
int node_count(const OuterRef& f);

// ============================================================================
// Parsing.  ASCII, whitespace-insensitive.  Errors carry byte offsets.
//
//   inner  := ident | "-" inner | inner "&" inner | inner "|" inner | "(...)"
//             precedence:  -  >  &  >  |
//   outer  := modal atom | ident | unary outer | outer bin outer | "(...)"
//             unary: "-", "~", "!"
//             binary, tightest first:
//               (*)            left-assoc
//               (+) (-)        left-assoc, one level
//               & |            left-assoc, one level
//               ->             right-assoc
//               <->            left-assoc
//   atoms  := ("Pr"|"Bl"|"Db"|"Cf"|"Uc") "{" inner "}"
//
// Identifiers must not begin with a modality name.
// ============================================================================

BDRef parse_bd(const std::string& text);
OuterRef parse_outer(const std::string& text, Dialect d);

}  // namespace bdluk
