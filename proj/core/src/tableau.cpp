#include "bdluk/tableau.hpp"

#include "bdluk/embeddings.hpp"
#include "bdluk/errors.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace bdluk {

// ===== labels and atom variables ============================================

std::string labelled_to_string(const LabelledFormula& lf) {
  const char* op = lf.dir == Dir::Le ? (lf.side == Side::One ? "<=1" : "<=2")
                                     : (lf.side == Side::One ? ">=1" : ">=2");
  return render(lf.f) + " " + op + " " + affine_to_string(lf.bound);
}

std::string atom_var_name(const OuterRef& atom, Side side) {
  return (side == Side::One ? "L(" : "R(") + render(atom) + ")";
}

static bool is_atomic(const OuterRef& f) {
  return f->kind == OuterKind::ModalAtom || f->kind == OuterKind::FreeAtom;
}

LinConstraint tau(const LabelledFormula& lf) {
  if (!is_atomic(lf.f)) throw std::logic_error("tau expects an atomic labelled formula");
  AffineTerm var = AffineTerm::of_var(atom_var_name(lf.f, lf.side));
  if (lf.dir == Dir::Le) return {var, Rel::Le, lf.bound};
  return {lf.bound, Rel::Le, var};
}

// ===== branch state =========================================================

std::string Branch::fresh_var() {
  std::string name = "j" + std::to_string(next_fresh++);
  lp_vars.insert(name);
  intervals.emplace(name, std::make_pair(EpsRat(Rat(0)), EpsRat(Rat(1))));
  return name;
}

namespace {

// one round of interval tightening for a normalized row sum(coeff) <= rhs
// (eps-valued rhs); returns false on a detected contradiction
bool tighten_le(std::map<std::string, std::pair<EpsRat, EpsRat>>& iv,
                const std::map<std::string, Rat>& coeff, const EpsRat& rhs, bool* changed) {
  // lower bound of the whole sum
  EpsRat low;
  for (const auto& [v, k] : coeff) {
    const auto& [lo, hi] = iv.at(v);
    low = low + (k > 0 ? lo.scaled(k) : hi.scaled(k));
  }
  if (rhs < low) return false;
  for (const auto& [v, k] : coeff) {
    auto& [lo, hi] = iv.at(v);
    EpsRat others = low - (k > 0 ? lo.scaled(k) : hi.scaled(k));
    EpsRat room = rhs - others;  // k * x_v <= room
    if (k > 0) {
      EpsRat cap = room.scaled(1 / k);
      if (cap < hi) {
        hi = cap;
        *changed = true;
        if (hi < lo) return false;
      }
    } else {
      EpsRat floor = room.scaled(1 / k);  // negative k flips the comparison
      if (lo < floor) {
        lo = floor;
        *changed = true;
        if (hi < lo) return false;
      }
    }
  }
  return true;
}

struct NormalRow {
  std::map<std::string, Rat> coeff;
  EpsRat rhs;
};

// a constraint as one or two <=-rows over eps-valued right-hand sides
std::vector<NormalRow> normal_rows(const LinConstraint& c) {
  AffineTerm t = c.lhs - c.rhs;
  NormalRow fwd;
  fwd.coeff = t.coeff;
  switch (c.rel) {
    case Rel::Le: fwd.rhs = EpsRat(-t.constant); return {fwd};
    case Rel::Lt: fwd.rhs = EpsRat(-t.constant, Rat(-1)); return {fwd};
    case Rel::Eq: {
      fwd.rhs = EpsRat(-t.constant);
      NormalRow bwd;
      for (const auto& [v, k] : t.coeff) bwd.coeff[v] = -k;
      bwd.rhs = EpsRat(t.constant);
      return {fwd, bwd};
    }
  }
  return {};
}

}  // namespace

void Branch::add_constraint(const LinConstraint& c) {
  constraints.push_back(c);
  if (refuted) return;
  for (const auto& [v, k] : c.lhs.coeff) {
    (void)k;
    lp_vars.insert(v);
    intervals.emplace(v, std::make_pair(EpsRat(Rat(0)), EpsRat(Rat(1))));
  }
  for (const auto& [v, k] : c.rhs.coeff) {
    (void)k;
    lp_vars.insert(v);
    intervals.emplace(v, std::make_pair(EpsRat(Rat(0)), EpsRat(Rat(1))));
  }
  // propagate to a local fixed point; sound but deliberately incomplete
  std::vector<NormalRow> rows;
  for (const auto& cc : constraints) {
    auto nr = normal_rows(cc);
    rows.insert(rows.end(), nr.begin(), nr.end());
  }
  for (int round = 0; round < 8; ++round) {
    bool changed = false;
    for (const auto& row : rows) {
      if (row.coeff.empty()) {
        if (EpsRat() <= row.rhs) continue;
        refuted = true;
        return;
      }
      if (!tighten_le(intervals, row.coeff, row.rhs, &changed)) {
        refuted = true;
        return;
      }
    }
    if (!changed) break;
  }
}

void Branch::add(const LabelledFormula& lf) {
  if (one_sided && lf.side == Side::Two)
    throw std::logic_error("second-coordinate label produced from a negation-free input");
  if (is_atomic(lf.f)) {
    std::string name = atom_var_name(lf.f, lf.side);
    atoms.emplace(render(lf.f), lf.f);
    lp_vars.insert(name);
    intervals.emplace(name, std::make_pair(EpsRat(Rat(0)), EpsRat(Rat(1))));
    expanded.push_back(lf);
    add_constraint(tau(lf));
    return;
  }
  open.push_back(lf);
}

// ===== rules ================================================================

namespace {

AffineTerm one_minus(const AffineTerm& t) {
  return AffineTerm::of_const(Rat(1)) - t;
}

bool rule_branches(const OuterRef& f, Side side, Dir dir) {
  switch (f->kind) {
    case OuterKind::Delta:
      return true;
    case OuterKind::Implies:
      return (side == Side::One && dir == Dir::Le) || (side == Side::Two && dir == Dir::Ge);
    default:
      return false;
  }
}

}  // namespace

std::vector<Branch> apply_rule(const Branch& b, std::size_t open_index) {
  assert(open_index < b.open.size());
  LabelledFormula lf = b.open[open_index];

  Branch base = b;
  base.open.erase(base.open.begin() + static_cast<std::ptrdiff_t>(open_index));
  base.expanded.push_back(lf);

  const OuterRef& f = lf.f;
  Side side = lf.side;
  Dir dir = lf.dir;
  const AffineTerm& t = lf.bound;

  auto lab = [&](const OuterRef& g, Side s, Dir d, AffineTerm bound) {
    return LabelledFormula{g, s, d, std::move(bound)};
  };

  switch (f->kind) {
    case OuterKind::ParNeg: {
      // swap coordinates
      Side other = side == Side::One ? Side::Two : Side::One;
      base.add(lab(f->left, other, dir, t));
      return {std::move(base)};
    }
    case OuterKind::LukNeg: {
      // reflect the bound
      Dir flipped = dir == Dir::Le ? Dir::Ge : Dir::Le;
      base.add(lab(f->left, side, flipped, one_minus(t)));
      return {std::move(base)};
    }
    case OuterKind::Delta: {
      Branch degen = base;  // the bound is already slack
      Branch live = std::move(base);
      if (dir == Dir::Ge) {
        // Delta f >= t: either t <= 0, or f reaches the top region
        degen.add_constraint({t, Rel::Le, AffineTerm::of_const(Rat(0))});
        std::string j = live.fresh_var();
        AffineTerm jt = AffineTerm::of_var(j);
        live.add(lab(f->left, side, Dir::Ge, jt));
        if (side == Side::One)
          live.add_constraint({AffineTerm::of_const(Rat(1)), Rel::Le, jt});
        else
          live.add_constraint({AffineTerm::of_const(Rat(0)), Rel::Lt, jt});
      } else {
        // Delta f <= t: either t >= 1, or f sits below the top region
        degen.add_constraint({AffineTerm::of_const(Rat(1)), Rel::Le, t});
        std::string j = live.fresh_var();
        AffineTerm jt = AffineTerm::of_var(j);
        live.add(lab(f->left, side, Dir::Le, jt));
        if (side == Side::One)
          live.add_constraint({jt, Rel::Lt, AffineTerm::of_const(Rat(1))});
        else
          live.add_constraint({jt, Rel::Le, AffineTerm::of_const(Rat(0))});
      }
      return {std::move(degen), std::move(live)};
    }
    case OuterKind::Implies: {
      const OuterRef& f1 = f->left;
      const OuterRef& f2 = f->right;
      if (side == Side::One && dir == Dir::Le) {
        // min(1, 1 - v(f1) + v(f2)) <= t: either t >= 1, or the difference
        // itself stays below t
        Branch degen = base;
        Branch live = std::move(base);
        degen.add_constraint({AffineTerm::of_const(Rat(1)), Rel::Le, t});
        std::string j = live.fresh_var();
        AffineTerm jt = AffineTerm::of_var(j);
        live.add(lab(f1, Side::One, Dir::Ge, one_minus(t) + jt));
        live.add(lab(f2, Side::One, Dir::Le, jt));
        live.add_constraint({jt, Rel::Le, t});
        return {std::move(degen), std::move(live)};
      }
      if (side == Side::One && dir == Dir::Ge) {
        std::string j = base.fresh_var();
        AffineTerm jt = AffineTerm::of_var(j);
        base.add(lab(f1, Side::One, Dir::Le, one_minus(t) + jt));
        base.add(lab(f2, Side::One, Dir::Ge, jt));
        return {std::move(base)};
      }
      if (side == Side::Two && dir == Dir::Le) {
        std::string j = base.fresh_var();
        AffineTerm jt = AffineTerm::of_var(j);
        base.add(lab(f1, Side::Two, Dir::Ge, jt));
        base.add(lab(f2, Side::Two, Dir::Le, t + jt));
        return {std::move(base)};
      }
      // side two, >=: either t <= 0, or the second coordinates are separated
      Branch degen = base;
      Branch live = std::move(base);
      degen.add_constraint({t, Rel::Le, AffineTerm::of_const(Rat(0))});
      std::string j = live.fresh_var();
      AffineTerm jt = AffineTerm::of_var(j);
      live.add(lab(f1, Side::Two, Dir::Le, jt));
      live.add(lab(f2, Side::Two, Dir::Ge, t + jt));
      live.add_constraint({jt, Rel::Le, one_minus(t)});
      return {std::move(degen), std::move(live)};
    }
    default:
      throw std::logic_error("apply_rule: premise '" + render(f) +
                             "' is not in the core language; unfold it first");
  }
}

// ===== saturation ===========================================================

namespace {

// prefer non-branching premises to keep the tree narrow
std::size_t pick_open(const Branch& b) {
  for (std::size_t i = 0; i < b.open.size(); ++i)
    if (!rule_branches(b.open[i].f, b.open[i].side, b.open[i].dir)) return i;
  return 0;
}

struct BranchShape {
  std::size_t expanded, open, constraints;
  DumpNode* dump_node;
};

void note_lines(Branch& b, const BranchShape& before) {
  if (!b.dump_node) return;
  // everything the rule appended beyond the prefix shared with the parent;
  // the first new expanded entry is the consumed premise itself, already
  // printed when it was introduced
  for (std::size_t i = before.expanded + 1; i < b.expanded.size(); ++i)
    b.dump_node->lines.push_back(labelled_to_string(b.expanded[i]));
  for (std::size_t i = before.open > 0 ? before.open - 1 : 0; i < b.open.size(); ++i)
    b.dump_node->lines.push_back(labelled_to_string(b.open[i]));
  for (std::size_t i = before.constraints; i < b.constraints.size(); ++i)
    b.dump_node->lines.push_back(constraint_to_string(b.constraints[i]));
}

}  // namespace

std::vector<Branch> saturate(Branch root, const TableauOptions& opts, DumpNode* dump_root) {
  root.dump_node = dump_root;
  std::vector<Branch> leaves;
  std::vector<Branch> stack;
  stack.push_back(std::move(root));
  int created = 1;

  while (!stack.empty()) {
    Branch b = std::move(stack.back());
    stack.pop_back();
    if (b.refuted || b.open.empty()) {
      leaves.push_back(std::move(b));
      continue;
    }
    std::size_t choice = pick_open(b);
    BranchShape before{b.expanded.size(), b.open.size(), b.constraints.size(), b.dump_node};
    std::vector<Branch> next = apply_rule(b, choice);
    created += static_cast<int>(next.size());
    if (created > opts.max_branches)
      throw CapExceeded("tableau exceeded the branch budget of " +
                        std::to_string(opts.max_branches));
    if (next.size() > 1 && before.dump_node) {
      for (auto& child : next) {
        before.dump_node->kids.push_back(std::make_unique<DumpNode>());
        child.dump_node = before.dump_node->kids.back().get();
      }
    }
    for (auto& child : next) note_lines(child, before);
    // depth-first, first branch explored first
    for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(std::move(*it));
  }
  return leaves;
}

// ===== proving ==============================================================

namespace {

VarBounds branch_bounds(const Branch& b) {
  VarBounds bounds;
  for (const auto& v : b.lp_vars) bounds.upper[v] = Rat(1);
  return bounds;
}

// pair values of every atom appearing in the branch, defaulting untouched
// coordinates to zero
std::map<std::string, PairValue> atom_values_of(const Branch& b,
                                                const std::map<std::string, Rat>& assignment) {
  std::map<std::string, PairValue> out;
  for (const auto& [key, atom] : b.atoms) {
    PairValue v{Rat(0), Rat(0)};
    auto lit = assignment.find(atom_var_name(atom, Side::One));
    if (lit != assignment.end()) v.truth = lit->second;
    auto rit = assignment.find(atom_var_name(atom, Side::Two));
    if (rit != assignment.end()) v.falsity = rit->second;
    out[key] = v;
  }
  return out;
}

}  // namespace

namespace {

TableauResult prove_with_dump(const OuterRef& f, const TableauOptions& opts, DumpNode* dump_root);

}  // namespace

TableauResult prove_luk_valid(const OuterRef& f, const TableauOptions& opts) {
  return prove_with_dump(f, opts, nullptr);
}

namespace {

TableauResult prove_with_dump(const OuterRef& f, const TableauOptions& opts, DumpNode* dump_root) {
  OuterRef core = unfold(f);

  Branch root;
  std::string c = "c";
  root.lp_vars.insert(c);
  root.intervals.emplace(c, std::make_pair(EpsRat(Rat(0)), EpsRat(Rat(1))));
  root.next_fresh = 1;
  root.one_sided = true;
  for (const auto& sf : subformulas(core))
    if (sf->kind == OuterKind::ParNeg) {
      root.one_sided = false;
      break;
    }
  if (dump_root) root.dump_node = dump_root;

  LabelledFormula goal{core, Side::One, Dir::Le, AffineTerm::of_var(c)};
  if (dump_root) dump_root->lines.push_back(labelled_to_string(goal));
  root.add(goal);
  LinConstraint strict{AffineTerm::of_var(c), Rel::Lt, AffineTerm::of_const(Rat(1))};
  if (dump_root) dump_root->lines.push_back(constraint_to_string(strict));
  root.add_constraint(strict);

  std::vector<Branch> leaves = saturate(std::move(root), opts, dump_root);

  TableauResult result;
  bool open_found = false;
  for (Branch& leaf : leaves) {
    if (leaf.refuted) {
      if (leaf.dump_node) leaf.dump_node->verdict = "closed (interval bounds)";
      result.closed_leaves.push_back({leaf.constraints, true});
      continue;
    }
    if (open_found) {
      // reached only while dumping: later feasibility is irrelevant once a
      // refuting branch exists, so skip the LP work
      if (leaf.dump_node) leaf.dump_node->verdict = "not examined";
      continue;
    }
    Feasibility lp = feasible(leaf.constraints, branch_bounds(leaf));
    if (!lp.feasible) {
      if (leaf.dump_node) leaf.dump_node->verdict = "closed (infeasible constraints)";
      result.closed_leaves.push_back({leaf.constraints, false});
      continue;
    }
    if (leaf.dump_node) leaf.dump_node->verdict = "open";
    open_found = true;
    result.assignment = lp.assignment;
    for (const auto& v : leaf.lp_vars)
      if (!result.assignment.count(v)) result.assignment[v] = 0;
    result.atom_values = atom_values_of(leaf, result.assignment);

    // the open branch must actually refute first-coordinate validity
    PairValue value = eval_with_atoms(core, [&](const OuterRef& atom) {
      return result.atom_values.at(render(atom));
    });
    Rat cval = result.assignment.at("c");
    if (!(value.truth <= cval && cval < 1))
      throw std::logic_error("open tableau branch failed its evaluation check");
    if (!dump_root) return result;
  }
  result.closed = !open_found;
  return result;
}

}  // namespace

// ===== dumping ==============================================================

namespace {

void render_dump(const DumpNode& node, int depth, std::string& out) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& line : node.lines) out += indent + line + "\n";
  if (!node.verdict.empty()) out += indent + "* " + node.verdict + "\n";
  for (std::size_t i = 0; i < node.kids.size(); ++i) {
    out += indent + "branch " + std::to_string(i + 1) + ":\n";
    render_dump(*node.kids[i], depth + 1, out);
  }
}

}  // namespace

std::string tableau_dump(const OuterRef& f, const TableauOptions& opts) {
  DumpNode root;
  TableauResult result = prove_with_dump(f, opts, &root);
  std::string out;
  render_dump(root, 0, out);
  out += result.closed ? "CLOSED\n" : "OPEN\n";
  return out;
}

}  // namespace bdluk
