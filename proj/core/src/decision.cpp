#include "bdluk/decision.hpp"

#include "bdluk/embeddings.hpp"
#include "bdluk/errors.hpp"
#include "bdluk/linear.hpp"

#include <algorithm>
#include <stdexcept>

namespace bdluk {

// ===== star transform =======================================================

namespace {

void collect_body_props(const OuterRef& f, std::set<std::string>& out) {
  for (const auto& sf : subformulas(f))
    if (sf->kind == OuterKind::ModalAtom) {
      auto ps = props(sf->body);
      out.insert(ps.begin(), ps.end());
    }
}

// body in inner negation normal form; negated variables renamed
BDRef star_body(const BDRef& b, const StarMap& sm) {
  switch (b->kind) {
    case BDKind::Var:
      return b;
    case BDKind::Neg:
      if (b->left->kind != BDKind::Var)
        throw std::logic_error("star transform expects a body in negation normal form");
      return bd_var(sm.star_of.at(b->left->var));
    case BDKind::And:
      return bd_and(star_body(b->left, sm), star_body(b->right, sm));
    case BDKind::Or:
      return bd_or(star_body(b->left, sm), star_body(b->right, sm));
  }
  throw std::logic_error("unreachable");
}

OuterRef star_outer(const OuterRef& f, const StarMap& sm) {
  switch (f->kind) {
    case OuterKind::ModalAtom:
      return modal_atom(f->mod, star_body(bd_nnf(f->body), sm));
    case OuterKind::FreeAtom:
      return f;
    case OuterKind::ParNeg:
      return par_neg(star_outer(f->left, sm));
    case OuterKind::LukNeg:
      return luk_neg(star_outer(f->left, sm));
    case OuterKind::Delta:
      return delta(star_outer(f->left, sm));
    case OuterKind::Implies:
      return implies(star_outer(f->left, sm), star_outer(f->right, sm));
    case OuterKind::Iff:
      return iff(star_outer(f->left, sm), star_outer(f->right, sm));
    case OuterKind::And:
      return outer_and(star_outer(f->left, sm), star_outer(f->right, sm));
    case OuterKind::Or:
      return outer_or(star_outer(f->left, sm), star_outer(f->right, sm));
    case OuterKind::Strong:
      return strong(star_outer(f->left, sm), star_outer(f->right, sm));
    case OuterKind::Plus:
      return plus(star_outer(f->left, sm), star_outer(f->right, sm));
    case OuterKind::Minus:
      return minus(star_outer(f->left, sm), star_outer(f->right, sm));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::pair<std::vector<OuterRef>, StarMap> star_transform_all(const std::vector<OuterRef>& fs) {
  std::set<std::string> used;
  for (const auto& f : fs) collect_body_props(f, used);

  StarMap sm;
  std::set<std::string> taken = used;
  for (const auto& p : used) {
    std::string candidate = p + "STAR";
    while (taken.count(candidate)) candidate += "STAR";
    sm.star_of[p] = candidate;
    sm.original_of[candidate] = p;
    taken.insert(candidate);
  }

  std::vector<OuterRef> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(star_outer(f, sm));
  return {std::move(out), std::move(sm)};
}

std::pair<OuterRef, StarMap> star_transform(const OuterRef& f) {
  auto [v, sm] = star_transform_all({f});
  return {v.at(0), std::move(sm)};
}

// ===== atom abstraction =====================================================

namespace {

void collect_free_names(const OuterRef& f, std::set<std::string>& out) {
  for (const auto& sf : subformulas(f))
    if (sf->kind == OuterKind::FreeAtom) out.insert(sf->name);
}

OuterRef substitute_atoms(const OuterRef& f, const AtomAbstraction& abs) {
  switch (f->kind) {
    case OuterKind::ModalAtom:
      return free_atom(abs.names.at(abs.index.at(render(f))));
    case OuterKind::FreeAtom:
      return f;
    case OuterKind::ParNeg:
      return par_neg(substitute_atoms(f->left, abs));
    case OuterKind::LukNeg:
      return luk_neg(substitute_atoms(f->left, abs));
    case OuterKind::Delta:
      return delta(substitute_atoms(f->left, abs));
    case OuterKind::Implies:
      return implies(substitute_atoms(f->left, abs), substitute_atoms(f->right, abs));
    case OuterKind::Iff:
      return iff(substitute_atoms(f->left, abs), substitute_atoms(f->right, abs));
    case OuterKind::And:
      return outer_and(substitute_atoms(f->left, abs), substitute_atoms(f->right, abs));
    case OuterKind::Or:
      return outer_or(substitute_atoms(f->left, abs), substitute_atoms(f->right, abs));
    case OuterKind::Strong:
      return strong(substitute_atoms(f->left, abs), substitute_atoms(f->right, abs));
    case OuterKind::Plus:
      return plus(substitute_atoms(f->left, abs), substitute_atoms(f->right, abs));
    case OuterKind::Minus:
      return minus(substitute_atoms(f->left, abs), substitute_atoms(f->right, abs));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

AtomAbstraction make_abstraction(const std::vector<OuterRef>& fs) {
  AtomAbstraction abs;
  std::set<std::string> reserved;
  for (const auto& f : fs) collect_free_names(f, reserved);

  int counter = 1;
  auto next_name = [&]() {
    std::string name;
    do {
      name = "q" + std::to_string(counter++);
    } while (reserved.count(name));
    reserved.insert(name);
    return name;
  };

  for (const auto& f : fs)
    for (const auto& sf : subformulas(f))
      if (sf->kind == OuterKind::ModalAtom) {
        std::string key = render(sf);
        if (abs.index.count(key)) continue;
        abs.index[key] = abs.atoms.size();
        abs.atoms.push_back(sf);
        abs.names.push_back(next_name());
      }

  abs.abstracted.reserve(fs.size());
  for (const auto& f : fs) abs.abstracted.push_back(substitute_atoms(f, abs));
  return abs;
}

// ===== coherence system =====================================================

namespace {

bool classical_true(const BDRef& b, const std::set<std::string>& val) {
  switch (b->kind) {
    case BDKind::Var:
      return val.count(b->var) > 0;
    case BDKind::Neg:
      throw std::logic_error("coherence bodies must be negation-free");
    case BDKind::And:
      return classical_true(b->left, val) && classical_true(b->right, val);
    case BDKind::Or:
      return classical_true(b->left, val) || classical_true(b->right, val);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

CoherenceSystem build_coherence(const std::vector<OuterRef>& atoms,
                                const std::vector<std::string>& atom_vars, CoherenceMode mode,
                                const std::vector<std::set<std::string>>* guess, int var_cap) {
  if (atoms.size() != atom_vars.size())
    throw std::logic_error("one tableau variable per atom is required");

  CoherenceSystem cs;
  std::set<std::string> var_set;
  for (const auto& a : atoms) {
    if (a->kind != OuterKind::ModalAtom)
      throw std::logic_error("coherence expects measured atoms");
    auto ps = props(a->body);
    var_set.insert(ps.begin(), ps.end());
  }
  cs.vars.assign(var_set.begin(), var_set.end());

  if (mode == CoherenceMode::Exhaustive) {
    if (static_cast<int>(cs.vars.size()) > var_cap)
      throw CapExceeded("coherence over " + std::to_string(cs.vars.size()) +
                        " variables exceeds the cap of " + std::to_string(var_cap));
    std::size_t count = std::size_t{1} << cs.vars.size();
    cs.valuations.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
      std::set<std::string> val;
      for (std::size_t k = 0; k < cs.vars.size(); ++k)
        if (mask & (std::size_t{1} << k)) val.insert(cs.vars[k]);
      cs.valuations.push_back(std::move(val));
    }
  } else {
    if (!guess) throw InputError("guessed valuations are required in sparse mode");
    for (const auto& val : *guess)
      for (const auto& v : val)
        if (!var_set.count(v))
          throw InputError("guessed valuation mentions unknown variable '" + v + "'");
    cs.valuations = *guess;
  }

  cs.u_names.reserve(cs.valuations.size());
  for (std::size_t i = 0; i < cs.valuations.size(); ++i)
    cs.u_names.push_back("u" + std::to_string(i));

  cs.truth.assign(atoms.size(), {});
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    cs.truth[i].reserve(cs.valuations.size());
    for (const auto& val : cs.valuations)
      cs.truth[i].push_back(classical_true(atoms[i]->body, val));
  }

  AffineTerm total;
  for (const auto& u : cs.u_names) total = total + AffineTerm::of_var(u);
  cs.constraints.push_back({total, Rel::Eq, AffineTerm::of_const(Rat(1))});
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    AffineTerm sum;
    for (std::size_t v = 0; v < cs.valuations.size(); ++v)
      if (cs.truth[i][v]) sum = sum + AffineTerm::of_var(cs.u_names[v]);
    cs.constraints.push_back({sum, Rel::Eq, AffineTerm::of_var(atom_vars[i])});
  }
  return cs;
}

// ===== decision core ========================================================

namespace {

std::vector<std::string> coherence_vars(const AtomAbstraction& abs) {
  std::vector<std::string> zvars;
  zvars.reserve(abs.names.size());
  for (const auto& name : abs.names)
    zvars.push_back(atom_var_name(free_atom(name), Side::One));
  return zvars;
}

WitnessModel decode_witness(const CoherenceSystem& cs, const StarMap& sm,
                            const std::map<std::string, Rat>& assignment,
                            DecisionStats& stats) {
  std::vector<std::string> ids;
  std::map<std::string, Rat> weights;
  std::vector<const std::set<std::string>*> vals;
  for (std::size_t i = 0; i < cs.valuations.size(); ++i) {
    auto it = assignment.find(cs.u_names[i]);
    Rat u = it == assignment.end() ? Rat(0) : it->second;
    if (u > 0) {
      std::string id = "w" + std::to_string(ids.size());
      weights[id] = u;
      ids.push_back(std::move(id));
      vals.push_back(&cs.valuations[i]);
    }
  }
  stats.nonzero_u = ids.size();

  std::map<std::string, std::set<std::string>> vplus, vminus;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    std::set<std::string> pv, mv;
    for (const auto& [p, star] : sm.star_of) {
      if (vals[k]->count(p)) pv.insert(p);
      if (vals[k]->count(star)) mv.insert(p);
    }
    vplus[ids[k]] = std::move(pv);
    vminus[ids[k]] = std::move(mv);
  }

  BDModel model(ids, std::move(vplus), std::move(vminus));
  WorldWeights ww(model, std::move(weights));
  return {std::move(model), std::move(ww)};
}

struct PipelineOutcome {
  bool open_found = false;
  std::optional<WitnessModel> witness;
  DecisionStats stats;
};

// shared skeleton: negation normal form, star transform, abstraction, joint
// tableau roots, per-leaf feasibility against the coherence system, witness
// decoding.  Dir::Le roots ask for a value below one (validity refutation),
// Dir::Ge roots for a value at one (satisfaction).
PipelineOutcome run_pipeline(const std::vector<OuterRef>& goals, Dir dir,
                             const DecisionOptions& opts) {
  std::vector<OuterRef> normal;
  normal.reserve(goals.size());
  for (const auto& g : goals) normal.push_back(nnf(g));

  auto [starred, stars] = star_transform_all(normal);
  AtomAbstraction abs = make_abstraction(starred);
  CoherenceSystem cs = build_coherence(abs.atoms, coherence_vars(abs), opts.mode, opts.guess,
                                       opts.max_coherence_vars);

  Branch root;
  root.one_sided = true;  // goals are negation normal: first coordinate only
  for (std::size_t i = 0; i < abs.abstracted.size(); ++i) {
    std::string cvar = i == 0 ? "c" : "c" + std::to_string(i + 1);
    root.lp_vars.insert(cvar);
    root.intervals.emplace(cvar, std::make_pair(EpsRat(Rat(0)), EpsRat(Rat(1))));
    AffineTerm ct = AffineTerm::of_var(cvar);
    root.add({unfold(abs.abstracted[i]), Side::One, dir, ct});
    if (dir == Dir::Le)
      root.add_constraint({ct, Rel::Lt, AffineTerm::of_const(Rat(1))});
    else
      root.add_constraint({AffineTerm::of_const(Rat(1)), Rel::Le, ct});
  }

  TableauOptions topts;
  topts.max_branches = opts.max_branches;
  std::vector<Branch> leaves = saturate(std::move(root), topts);

  PipelineOutcome out;
  out.stats.atom_count = abs.atoms.size();
  out.stats.coherence_rows = cs.constraints.size();
  out.stats.branches = leaves.size();

  VarBounds bounds;
  for (const auto& u : cs.u_names) bounds.upper[u] = std::nullopt;

  for (const Branch& leaf : leaves) {
    out.stats.tableau_constraints =
        std::max(out.stats.tableau_constraints, leaf.constraints.size());
    if (leaf.refuted) continue;
    std::vector<LinConstraint> system = leaf.constraints;
    system.insert(system.end(), cs.constraints.begin(), cs.constraints.end());
    Feasibility lp = vertex_solution(system, bounds);
    if (!lp.feasible) continue;
    out.open_found = true;
    out.stats.tableau_constraints = leaf.constraints.size();
    out.witness = decode_witness(cs, stars, lp.assignment, out.stats);
    return out;
  }
  return out;
}

void reject_e2_flag(const DecisionOptions& opts) {
  if (opts.require_e2_zero)
    throw InputError(
        "the zero-second-coordinate requirement applies to the pair-valued "
        "language only; the four-valued evaluation has a single coordinate");
}

}  // namespace

Verdict decide_valid_pm(const OuterRef& f, const DecisionOptions& opts) {
  check_dialect(f, Dialect::PM);
  // require_e2_zero is a no-op here: a formula whose first coordinate is one
  // on every model has second coordinate zero on every model
  PipelineOutcome out = run_pipeline({f}, Dir::Le, opts);
  Verdict v;
  v.stats = out.stats;
  v.affirmative = !out.open_found;
  if (out.open_found) {
    PairValue val = eval_pm(out.witness->model, out.witness->weights, f);
    if (!(val.truth < 1))
      throw std::logic_error("countermodel failed verification: value not below one");
    v.witness = std::move(out.witness);
  }
  return v;
}

Verdict decide_sat_pm(const OuterRef& f, const DecisionOptions& opts) {
  check_dialect(f, Dialect::PM);
  std::vector<OuterRef> goals{f};
  // second coordinate zero iff the swapped reflection has first coordinate one
  if (opts.require_e2_zero) goals.push_back(par_neg(luk_neg(f)));
  PipelineOutcome out = run_pipeline(goals, Dir::Ge, opts);
  Verdict v;
  v.stats = out.stats;
  v.affirmative = out.open_found;
  if (out.open_found) {
    PairValue val = eval_pm(out.witness->model, out.witness->weights, f);
    if (val.truth != 1)
      throw std::logic_error("witness failed verification: value not one");
    if (opts.require_e2_zero && val.falsity != 0)
      throw std::logic_error("witness failed verification: second coordinate not zero");
    v.witness = std::move(out.witness);
  }
  return v;
}

Verdict decide_valid_four(const OuterRef& f, const DecisionOptions& opts) {
  check_dialect(f, Dialect::Four);
  reject_e2_flag(opts);
  OuterRef g = to_pm(f);
  PipelineOutcome out = run_pipeline({g}, Dir::Le, opts);
  Verdict v;
  v.stats = out.stats;
  v.affirmative = !out.open_found;
  if (out.open_found) {
    Rat val = eval_four(out.witness->model, out.witness->weights, f);
    if (!(val < 1))
      throw std::logic_error("countermodel failed verification: value not below one");
    v.witness = std::move(out.witness);
  }
  return v;
}

Verdict decide_sat_four(const OuterRef& f, const DecisionOptions& opts) {
  check_dialect(f, Dialect::Four);
  reject_e2_flag(opts);
  OuterRef g = to_pm(f);
  PipelineOutcome out = run_pipeline({g}, Dir::Ge, opts);
  Verdict v;
  v.stats = out.stats;
  v.affirmative = out.open_found;
  if (out.open_found) {
    Rat val = eval_four(out.witness->model, out.witness->weights, f);
    if (val != 1) throw std::logic_error("witness failed verification: value not one");
    v.witness = std::move(out.witness);
  }
  return v;
}

Verdict decide_entails_four(const std::vector<OuterRef>& gamma, const OuterRef& alpha,
                            const DecisionOptions& opts) {
  for (const auto& g : gamma) check_dialect(g, Dialect::Four);
  check_dialect(alpha, Dialect::Four);
  reject_e2_flag(opts);

  OuterRef body = alpha;
  if (!gamma.empty()) {
    OuterRef chain = delta(gamma[0]);
    for (std::size_t i = 1; i < gamma.size(); ++i) chain = strong(chain, delta(gamma[i]));
    body = implies(chain, alpha);
  }

  Verdict inner = decide_valid_four(body, opts);
  Verdict v;
  v.stats = inner.stats;
  v.affirmative = inner.affirmative;
  if (!inner.affirmative) {
    const WitnessModel& w = *inner.witness;
    for (const auto& g : gamma)
      if (eval_four(w.model, w.weights, g) != 1)
        throw std::logic_error("countermodel failed verification: a premise is not satisfied");
    if (eval_four(w.model, w.weights, alpha) == 1)
      throw std::logic_error("countermodel failed verification: the conclusion is satisfied");
    v.witness = std::move(inner.witness);
  }
  return v;
}

}  // namespace bdluk
