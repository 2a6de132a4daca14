#include "bdluk/syntax.hpp"

#include "bdluk/errors.hpp"

#include <algorithm>
#include <cassert>

namespace bdluk {

// ===== construction =========================================================

BDRef bd_var(std::string name) {
  auto f = std::make_shared<BDFormula>();
  f->kind = BDKind::Var;
  f->var = std::move(name);
  return f;
}

static BDRef bd_node(BDKind k, BDRef l, BDRef r) {
  auto f = std::make_shared<BDFormula>();
  f->kind = k;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

BDRef bd_neg(BDRef f) { return bd_node(BDKind::Neg, std::move(f), nullptr); }
BDRef bd_and(BDRef l, BDRef r) { return bd_node(BDKind::And, std::move(l), std::move(r)); }
BDRef bd_or(BDRef l, BDRef r) { return bd_node(BDKind::Or, std::move(l), std::move(r)); }

OuterRef modal_atom(Modality m, BDRef body) {
  auto f = std::make_shared<OuterFormula>();
  f->kind = OuterKind::ModalAtom;
  f->mod = m;
  f->body = std::move(body);
  return f;
}

OuterRef free_atom(std::string name) {
  auto f = std::make_shared<OuterFormula>();
  f->kind = OuterKind::FreeAtom;
  f->name = std::move(name);
  return f;
}

static OuterRef outer_node(OuterKind k, OuterRef l, OuterRef r) {
  auto f = std::make_shared<OuterFormula>();
  f->kind = k;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

OuterRef par_neg(OuterRef f) { return outer_node(OuterKind::ParNeg, std::move(f), nullptr); }
OuterRef luk_neg(OuterRef f) { return outer_node(OuterKind::LukNeg, std::move(f), nullptr); }
OuterRef delta(OuterRef f) { return outer_node(OuterKind::Delta, std::move(f), nullptr); }
OuterRef implies(OuterRef a, OuterRef b) { return outer_node(OuterKind::Implies, std::move(a), std::move(b)); }
OuterRef iff(OuterRef a, OuterRef b) { return outer_node(OuterKind::Iff, std::move(a), std::move(b)); }
OuterRef outer_and(OuterRef a, OuterRef b) { return outer_node(OuterKind::And, std::move(a), std::move(b)); }
OuterRef outer_or(OuterRef a, OuterRef b) { return outer_node(OuterKind::Or, std::move(a), std::move(b)); }
OuterRef strong(OuterRef a, OuterRef b) { return outer_node(OuterKind::Strong, std::move(a), std::move(b)); }
OuterRef plus(OuterRef a, OuterRef b) { return outer_node(OuterKind::Plus, std::move(a), std::move(b)); }
OuterRef minus(OuterRef a, OuterRef b) { return outer_node(OuterKind::Minus, std::move(a), std::move(b)); }

// ===== structural equality ==================================================

bool bd_struct_eq(const BDRef& a, const BDRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case BDKind::Var: return a->var == b->var;
    case BDKind::Neg: return bd_struct_eq(a->left, b->left);
    case BDKind::And:
    case BDKind::Or:
      return bd_struct_eq(a->left, b->left) && bd_struct_eq(a->right, b->right);
  }
  return false;
}

bool outer_struct_eq(const OuterRef& a, const OuterRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case OuterKind::ModalAtom:
      return a->mod == b->mod && bd_struct_eq(a->body, b->body);
    case OuterKind::FreeAtom:
      return a->name == b->name;
    case OuterKind::ParNeg:
    case OuterKind::LukNeg:
    case OuterKind::Delta:
      return outer_struct_eq(a->left, b->left);
    default:
      return outer_struct_eq(a->left, b->left) && outer_struct_eq(a->right, b->right);
  }
}

// ===== inner negation normal form ===========================================

BDRef bd_nnf(const BDRef& f) {
  switch (f->kind) {
    case BDKind::Var: return f;
    case BDKind::And: return bd_and(bd_nnf(f->left), bd_nnf(f->right));
    case BDKind::Or: return bd_or(bd_nnf(f->left), bd_nnf(f->right));
    case BDKind::Neg: {
      const BDRef& g = f->left;
      switch (g->kind) {
        case BDKind::Var: return f;
        case BDKind::Neg: return bd_nnf(g->left);
        case BDKind::And: return bd_or(bd_nnf(bd_neg(g->left)), bd_nnf(bd_neg(g->right)));
        case BDKind::Or: return bd_and(bd_nnf(bd_neg(g->left)), bd_nnf(bd_neg(g->right)));
      }
    }
  }
  return f;
}

// ===== modalities ===========================================================

const char* modality_name(Modality m) {
  switch (m) {
    case Modality::Pr: return "Pr";
    case Modality::Bl: return "Bl";
    case Modality::Db: return "Db";
    case Modality::Cf: return "Cf";
    case Modality::Uc: return "Uc";
  }
  return "?";
}

// ===== dialects =============================================================

static void check_dialect_rec(const OuterRef& f, Dialect d) {
  switch (f->kind) {
    case OuterKind::ModalAtom:
      if (d == Dialect::PM && f->mod != Modality::Pr)
        throw DialectError(std::string("modal atom ") + modality_name(f->mod) +
                           "{...} is not part of this dialect (only Pr atoms)");
      if (d == Dialect::Four && f->mod == Modality::Pr)
        throw DialectError("modal atom Pr{...} is not part of this dialect "
                           "(only Bl/Db/Cf/Uc atoms)");
      return;
    case OuterKind::FreeAtom:
      if (d != Dialect::PlainLuk)
        throw DialectError("bare atom '" + f->name + "' is not part of this dialect");
      return;
    case OuterKind::ParNeg:
      if (d == Dialect::Four)
        throw DialectError("outer paraconsistent negation '-' is not part of this dialect");
      check_dialect_rec(f->left, d);
      return;
    case OuterKind::LukNeg:
    case OuterKind::Delta:
      check_dialect_rec(f->left, d);
      return;
    default:
      check_dialect_rec(f->left, d);
      check_dialect_rec(f->right, d);
      return;
  }
}

void check_dialect(const OuterRef& f, Dialect d) { check_dialect_rec(f, d); }

// ===== rendering ============================================================
//
// Inner precedence:  3 unary, 2 &, 1 |.
// Outer precedence:  6 unary, 5 (*), 4 (+)/(-), 3 &/|=
//                    2 -> (right-assoc), 1 <-> (left-assoc).
// A child is parenthesized when its level is below the required context, or
// equal on the non-associating side.

namespace {

int bd_level(const BDRef& f) {
  switch (f->kind) {
    case BDKind::Var: return 4;
    case BDKind::Neg: return 3;
    case BDKind::And: return 2;
    case BDKind::Or: return 1;
  }
  return 0;
}

void render_bd_rec(const BDRef& f, int min_level, std::string& out) {
  bool paren = bd_level(f) < min_level;
  if (paren) out += '(';
  switch (f->kind) {
    case BDKind::Var:
      out += f->var;
      break;
    case BDKind::Neg:
      out += '-';
      render_bd_rec(f->left, 3, out);
      break;
    case BDKind::And:
      render_bd_rec(f->left, 2, out);
      out += " & ";
      render_bd_rec(f->right, 3, out);
      break;
    case BDKind::Or:
      render_bd_rec(f->left, 1, out);
      out += " | ";
      render_bd_rec(f->right, 2, out);
      break;
  }
  if (paren) out += ')';
}

int outer_level(const OuterRef& f) {
  switch (f->kind) {
    case OuterKind::ModalAtom:
    case OuterKind::FreeAtom: return 7;
    case OuterKind::ParNeg:
    case OuterKind::LukNeg:
    case OuterKind::Delta: return 6;
    case OuterKind::Strong: return 5;
    case OuterKind::Plus:
    case OuterKind::Minus: return 4;
    case OuterKind::And:
    case OuterKind::Or: return 3;
    case OuterKind::Implies: return 2;
    case OuterKind::Iff: return 1;
  }
  return 0;
}

const char* outer_op_text(OuterKind k) {
  switch (k) {
    case OuterKind::Strong: return " (*) ";
    case OuterKind::Plus: return " (+) ";
    case OuterKind::Minus: return " (-) ";
    case OuterKind::And: return " & ";
    case OuterKind::Or: return " | ";
    case OuterKind::Implies: return " -> ";
    case OuterKind::Iff: return " <-> ";
    default: return "?";
  }
}

void render_outer_rec(const OuterRef& f, int min_level, std::string& out) {
  int level = outer_level(f);
  bool paren = level < min_level;
  if (paren) out += '(';
  switch (f->kind) {
    case OuterKind::ModalAtom:
      out += modality_name(f->mod);
      out += '{';
      render_bd_rec(f->body, 0, out);
      out += '}';
      break;
    case OuterKind::FreeAtom:
      out += f->name;
      break;
    case OuterKind::ParNeg:
      out += '-';
      render_outer_rec(f->left, 6, out);
      break;
    case OuterKind::LukNeg:
      out += '~';
      render_outer_rec(f->left, 6, out);
      break;
    case OuterKind::Delta:
      out += '!';
      render_outer_rec(f->left, 6, out);
      break;
    case OuterKind::Implies:
      // right-associative
      render_outer_rec(f->left, level + 1, out);
      out += outer_op_text(f->kind);
      render_outer_rec(f->right, level, out);
      break;
    default:
      // remaining binaries are left-associative within their level
      render_outer_rec(f->left, level, out);
      out += outer_op_text(f->kind);
      render_outer_rec(f->right, level + 1, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string render(const BDRef& f) {
  std::string out;
  render_bd_rec(f, 0, out);
  return out;
}

std::string render(const OuterRef& f) {
  std::string out;
  render_outer_rec(f, 0, out);
  return out;
}

// ===== metadata =============================================================

static void collect_props_bd(const BDRef& f, std::set<std::string>& out) {
  switch (f->kind) {
    case BDKind::Var: out.insert(f->var); return;
    case BDKind::Neg: collect_props_bd(f->left, out); return;
    default:
      collect_props_bd(f->left, out);
      collect_props_bd(f->right, out);
      return;
  }
}

std::set<std::string> props(const BDRef& f) {
  std::set<std::string> out;
  collect_props_bd(f, out);
  return out;
}

static void collect_props_outer(const OuterRef& f, std::set<std::string>& out) {
  switch (f->kind) {
    case OuterKind::ModalAtom: collect_props_bd(f->body, out); return;
    case OuterKind::FreeAtom: out.insert(f->name); return;
    case OuterKind::ParNeg:
    case OuterKind::LukNeg:
    case OuterKind::Delta: collect_props_outer(f->left, out); return;
    default:
      collect_props_outer(f->left, out);
      collect_props_outer(f->right, out);
      return;
  }
}

std::set<std::string> props(const OuterRef& f) {
  std::set<std::string> out;
  collect_props_outer(f, out);
  return out;
}

static void collect_lits(const BDRef& f, std::set<std::string>& out) {
  switch (f->kind) {
    case BDKind::Var: out.insert(f->var); return;
    case BDKind::Neg:
      if (f->left->kind == BDKind::Var) {
        out.insert("-" + f->left->var);
      } else {
        collect_lits(f->left, out);
      }
      return;
    default:
      collect_lits(f->left, out);
      collect_lits(f->right, out);
      return;
  }
}

std::set<std::string> lits(const BDRef& f) {
  std::set<std::string> out;
  collect_lits(f, out);
  return out;
}

std::vector<BDRef> subformulas(const BDRef& f) {
  std::vector<BDRef> out;
  std::set<std::string> seen;
  auto visit = [&](auto&& self, const BDRef& g) -> void {
    if (seen.insert(render(g)).second) out.push_back(g);
    switch (g->kind) {
      case BDKind::Var: return;
      case BDKind::Neg: self(self, g->left); return;
      default:
        self(self, g->left);
        self(self, g->right);
        return;
    }
  };
  visit(visit, f);
  return out;
}

std::vector<OuterRef> subformulas(const OuterRef& f) {
  std::vector<OuterRef> out;
  std::set<std::string> seen;
  auto visit = [&](auto&& self, const OuterRef& g) -> void {
    if (seen.insert(render(g)).second) out.push_back(g);
    switch (g->kind) {
      case OuterKind::ModalAtom:
      case OuterKind::FreeAtom: return;
      case OuterKind::ParNeg:
      case OuterKind::LukNeg:
      case OuterKind::Delta: self(self, g->left); return;
      default:
        self(self, g->left);
        self(self, g->right);
        return;
    }
  };
  visit(visit, f);
  return out;
}

int node_count(const BDRef& f) {
  switch (f->kind) {
    case BDKind::Var: return 1;
    case BDKind::Neg: return 1 + node_count(f->left);
    default: return 1 + node_count(f->left) + node_count(f->right);
  }
}

int node_count(const OuterRef& f) {
  switch (f->kind) {
    case OuterKind::ModalAtom: return 1 + node_count(f->body);
    case OuterKind::FreeAtom: return 1;
    case OuterKind::ParNeg:
    case OuterKind::LukNeg:
    case OuterKind::Delta: return 1 + node_count(f->left);
    default: return 1 + node_count(f->left) + node_count(f->right);
  }
}

}  // namespace bdluk
