#include "bdluk/embeddings.hpp"

#include "bdluk/errors.hpp"

#include <stdexcept>

namespace bdluk {

const char* rewrite_rule_name(RewriteRule r) {
  switch (r) {
    case RewriteRule::NegPr: return "neg-pr";
    case RewriteRule::NegNeg: return "neg-neg";
    case RewriteRule::NegLukNeg: return "neg-luk-neg";
    case RewriteRule::NegImplies: return "neg-implies";
    case RewriteRule::NegDelta: return "neg-delta";
    case RewriteRule::UnfoldUnderNeg: return "unfold-under-neg";
    case RewriteRule::PrToBlCf: return "pr-to-bl-cf";
    case RewriteRule::BlToPr: return "bl-to-pr";
    case RewriteRule::DbToPr: return "db-to-pr";
    case RewriteRule::CfToPr: return "cf-to-pr";
    case RewriteRule::UcToPr: return "uc-to-pr";
  }
  return "?";
}

// ===== unfolding derived connectives ========================================

OuterRef unfold_step(const OuterRef& f) {
  switch (f->kind) {
    case OuterKind::Or:
      return implies(implies(f->left, f->right), f->right);
    case OuterKind::And:
      return luk_neg(outer_or(luk_neg(f->left), luk_neg(f->right)));
    case OuterKind::Plus:
      return implies(luk_neg(f->left), f->right);
    case OuterKind::Strong:
      return luk_neg(implies(f->left, luk_neg(f->right)));
    case OuterKind::Minus:
      return strong(f->left, luk_neg(f->right));
    case OuterKind::Iff:
      return strong(implies(f->left, f->right), implies(f->right, f->left));
    default:
      return f;
  }
}

OuterRef unfold(const OuterRef& f) {
  switch (f->kind) {
    case OuterKind::ModalAtom:
    case OuterKind::FreeAtom:
      return f;
    case OuterKind::ParNeg:
      return par_neg(unfold(f->left));
    case OuterKind::LukNeg:
      return luk_neg(unfold(f->left));
    case OuterKind::Delta:
      return delta(unfold(f->left));
    case OuterKind::Implies:
      return implies(unfold(f->left), unfold(f->right));
    default: {
      OuterRef g = f;
      while (g->kind != OuterKind::Implies && g->kind != OuterKind::LukNeg) g = unfold_step(g);
      return unfold(g);
    }
  }
}

// ===== single rewrites and replay ===========================================

namespace {

OuterRef rewrite_here(const OuterRef& f, RewriteRule rule) {
  auto need = [&](bool ok) {
    if (!ok)
      throw std::logic_error(std::string("rewrite ") + rewrite_rule_name(rule) +
                             " does not apply at this node");
  };
  switch (rule) {
    case RewriteRule::NegPr:
      need(f->kind == OuterKind::ParNeg && f->left->kind == OuterKind::ModalAtom &&
           f->left->mod == Modality::Pr);
      return modal_atom(Modality::Pr, bd_neg(f->left->body));
    case RewriteRule::NegNeg:
      need(f->kind == OuterKind::ParNeg && f->left->kind == OuterKind::ParNeg);
      return f->left->left;
    case RewriteRule::NegLukNeg:
      need(f->kind == OuterKind::ParNeg && f->left->kind == OuterKind::LukNeg);
      return luk_neg(par_neg(f->left->left));
    case RewriteRule::NegImplies:
      need(f->kind == OuterKind::ParNeg && f->left->kind == OuterKind::Implies);
      return luk_neg(implies(par_neg(f->left->right), par_neg(f->left->left)));
    case RewriteRule::NegDelta:
      need(f->kind == OuterKind::ParNeg && f->left->kind == OuterKind::Delta);
      return luk_neg(delta(luk_neg(par_neg(f->left->left))));
    case RewriteRule::UnfoldUnderNeg: {
      need(f->kind == OuterKind::ParNeg);
      OuterRef unfolded = unfold_step(f->left);
      need(unfolded != f->left);
      return par_neg(unfolded);
    }
    case RewriteRule::PrToBlCf:
      need(f->kind == OuterKind::ModalAtom && f->mod == Modality::Pr);
      return plus(modal_atom(Modality::Bl, f->body), modal_atom(Modality::Cf, f->body));
    case RewriteRule::BlToPr:
      need(f->kind == OuterKind::ModalAtom && f->mod == Modality::Bl);
      return minus(modal_atom(Modality::Pr, f->body),
                   modal_atom(Modality::Pr, bd_and(f->body, bd_neg(f->body))));
    case RewriteRule::DbToPr:
      need(f->kind == OuterKind::ModalAtom && f->mod == Modality::Db);
      return minus(modal_atom(Modality::Pr, bd_neg(f->body)),
                   modal_atom(Modality::Pr, bd_and(f->body, bd_neg(f->body))));
    case RewriteRule::CfToPr:
      need(f->kind == OuterKind::ModalAtom && f->mod == Modality::Cf);
      return modal_atom(Modality::Pr, bd_and(f->body, bd_neg(f->body)));
    case RewriteRule::UcToPr:
      need(f->kind == OuterKind::ModalAtom && f->mod == Modality::Uc);
      return luk_neg(modal_atom(Modality::Pr, bd_or(f->body, bd_neg(f->body))));
  }
  throw std::logic_error("unknown rewrite rule");
}

OuterRef rebuild_with_child(const OuterRef& f, int index, OuterRef child) {
  auto g = std::make_shared<OuterFormula>(*f);
  if (index == 0)
    g->left = std::move(child);
  else
    g->right = std::move(child);
  return g;
}

}  // namespace

OuterRef apply_rewrite(const OuterRef& f, RewriteRule rule, const std::vector<int>& path) {
  if (path.empty()) return rewrite_here(f, rule);
  std::vector<int> rest(path.begin() + 1, path.end());
  int index = path.front();
  const OuterRef& child = index == 0 ? f->left : f->right;
  if (!child) throw std::logic_error("rewrite path leaves the formula");
  return rebuild_with_child(f, index, apply_rewrite(child, rule, rest));
}

OuterRef replay(const OuterRef& input, const std::vector<RewriteStep>& steps) {
  OuterRef f = input;
  for (const auto& s : steps) f = apply_rewrite(f, s.rule, s.path);
  return f;
}

// ===== negation normal form =================================================

namespace {

class Tracer {
 public:
  explicit Tracer(std::vector<RewriteStep>* steps) : steps_(steps) {}

  void log(RewriteRule rule, const std::vector<int>& path) {
    if (steps_) steps_->push_back({rule, path});
  }

 private:
  std::vector<RewriteStep>* steps_;
};

OuterRef nnf_rec(const OuterRef& f, std::vector<int>& path, Tracer& tr);

// Handles a ParNeg node: f == -g.  path addresses f.
OuterRef push_neg(const OuterRef& f, std::vector<int>& path, Tracer& tr) {
  const OuterRef& g = f->left;
  switch (g->kind) {
    case OuterKind::ModalAtom:
      if (g->mod != Modality::Pr)
        throw DialectError("outer paraconsistent negation over " +
                           std::string(modality_name(g->mod)) + "{...} has no rewrite");
      tr.log(RewriteRule::NegPr, path);
      return rewrite_here(f, RewriteRule::NegPr);
    case OuterKind::FreeAtom:
      throw DialectError("outer paraconsistent negation over bare atom '" + g->name +
                         "' has no rewrite");
    case OuterKind::ParNeg: {
      tr.log(RewriteRule::NegNeg, path);
      return nnf_rec(g->left, path, tr);
    }
    case OuterKind::LukNeg: {
      tr.log(RewriteRule::NegLukNeg, path);
      // ~-A: recurse into the new inner negation
      path.push_back(0);
      OuterRef inner = push_neg(par_neg(g->left), path, tr);
      path.pop_back();
      return luk_neg(inner);
    }
    case OuterKind::Delta: {
      tr.log(RewriteRule::NegDelta, path);
      // ~!~-A
      path.push_back(0);
      path.push_back(0);
      path.push_back(0);
      OuterRef inner = push_neg(par_neg(g->left), path, tr);
      path.pop_back();
      path.pop_back();
      path.pop_back();
      return luk_neg(delta(luk_neg(inner)));
    }
    case OuterKind::Implies: {
      tr.log(RewriteRule::NegImplies, path);
      // ~(-B -> -A)
      path.push_back(0);
      path.push_back(0);
      OuterRef nb = push_neg(par_neg(g->right), path, tr);
      path.pop_back();
      path.push_back(1);
      OuterRef na = push_neg(par_neg(g->left), path, tr);
      path.pop_back();
      path.pop_back();
      return luk_neg(implies(nb, na));
    }
    default: {
      tr.log(RewriteRule::UnfoldUnderNeg, path);
      return push_neg(par_neg(unfold_step(g)), path, tr);
    }
  }
}

OuterRef nnf_rec(const OuterRef& f, std::vector<int>& path, Tracer& tr) {
  switch (f->kind) {
    case OuterKind::ModalAtom:
    case OuterKind::FreeAtom:
      return f;
    case OuterKind::ParNeg:
      return push_neg(f, path, tr);
    case OuterKind::LukNeg:
    case OuterKind::Delta: {
      path.push_back(0);
      OuterRef l = nnf_rec(f->left, path, tr);
      path.pop_back();
      return f->kind == OuterKind::LukNeg ? luk_neg(l) : delta(l);
    }
    default: {
      path.push_back(0);
      OuterRef l = nnf_rec(f->left, path, tr);
      path.pop_back();
      path.push_back(1);
      OuterRef r = nnf_rec(f->right, path, tr);
      path.pop_back();
      auto g = std::make_shared<OuterFormula>(*f);
      g->left = std::move(l);
      g->right = std::move(r);
      return g;
    }
  }
}

}  // namespace

TranslationTrace nnf_traced(const OuterRef& f) {
  TranslationTrace t;
  t.input = f;
  Tracer tr(&t.steps);
  std::vector<int> path;
  t.output = nnf_rec(f, path, tr);
  return t;
}

OuterRef nnf(const OuterRef& f) {
  Tracer tr(nullptr);
  std::vector<int> path;
  return nnf_rec(f, path, tr);
}

// ===== embeddings ===========================================================

namespace {

OuterRef atoms_rec(const OuterRef& f, std::vector<int>& path, Tracer& tr, bool to_four_lang) {
  switch (f->kind) {
    case OuterKind::ModalAtom: {
      if (to_four_lang) {
        if (f->mod != Modality::Pr)
          throw DialectError("expected a Pr atom, got '" + render(f) + "'");
        tr.log(RewriteRule::PrToBlCf, path);
        return rewrite_here(f, RewriteRule::PrToBlCf);
      }
      RewriteRule rule;
      switch (f->mod) {
        case Modality::Bl: rule = RewriteRule::BlToPr; break;
        case Modality::Db: rule = RewriteRule::DbToPr; break;
        case Modality::Cf: rule = RewriteRule::CfToPr; break;
        case Modality::Uc: rule = RewriteRule::UcToPr; break;
        default:
          throw DialectError("Pr atoms are not part of the four-valued dialect");
      }
      tr.log(rule, path);
      return rewrite_here(f, rule);
    }
    case OuterKind::FreeAtom:
      throw DialectError("bare atom '" + f->name + "' cannot be translated");
    case OuterKind::ParNeg:
      if (to_four_lang)
        throw DialectError(
            "translation needs a negation-free formula; push the outer negation inward first");
      throw DialectError("outer paraconsistent negation is not part of the four-valued dialect");
    case OuterKind::LukNeg:
    case OuterKind::Delta: {
      path.push_back(0);
      OuterRef l = atoms_rec(f->left, path, tr, to_four_lang);
      path.pop_back();
      auto g = std::make_shared<OuterFormula>(*f);
      g->left = std::move(l);
      return g;
    }
    default: {
      path.push_back(0);
      OuterRef l = atoms_rec(f->left, path, tr, to_four_lang);
      path.pop_back();
      path.push_back(1);
      OuterRef r = atoms_rec(f->right, path, tr, to_four_lang);
      path.pop_back();
      auto g = std::make_shared<OuterFormula>(*f);
      g->left = std::move(l);
      g->right = std::move(r);
      return g;
    }
  }
}

}  // namespace

TranslationTrace to_four_traced(const OuterRef& f) {
  TranslationTrace t;
  t.input = f;
  Tracer tr(&t.steps);
  std::vector<int> path;
  t.output = atoms_rec(f, path, tr, true);
  return t;
}

OuterRef to_four(const OuterRef& f) {
  Tracer tr(nullptr);
  std::vector<int> path;
  return atoms_rec(f, path, tr, true);
}

TranslationTrace to_pm_traced(const OuterRef& f) {
  TranslationTrace t;
  t.input = f;
  Tracer tr(&t.steps);
  std::vector<int> path;
  t.output = atoms_rec(f, path, tr, false);
  return t;
}

OuterRef to_pm(const OuterRef& f) {
  Tracer tr(nullptr);
  std::vector<int> path;
  return atoms_rec(f, path, tr, false);
}

}  // namespace bdluk
