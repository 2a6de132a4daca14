#include "bdluk/luk_eval.hpp"

#include "bdluk/errors.hpp"

#include <algorithm>
#include <cassert>

namespace bdluk {

// ===== scalar algebra =======================================================

namespace {

void check_unit(const Rat& a) {
  assert(a >= 0 && a <= 1);
  (void)a;
}

Rat luk_impl(const Rat& a, const Rat& b) { return std::min(Rat(1), Rat(1 - a + b)); }

}  // namespace

Rat luk_apply(LukOp op, const Rat& a) {
  check_unit(a);
  switch (op) {
    case LukOp::Neg: return 1 - a;
    case LukOp::Delta: return a == 1 ? Rat(1) : Rat(0);
    default: throw std::logic_error("luk_apply: operation is not unary");
  }
}

Rat luk_apply(LukOp op, const Rat& a, const Rat& b) {
  check_unit(a);
  check_unit(b);
  switch (op) {
    case LukOp::And: return std::min(a, b);
    case LukOp::Or: return std::max(a, b);
    case LukOp::Implies: return luk_impl(a, b);
    case LukOp::Strong: return std::max(Rat(0), Rat(a + b - 1));
    case LukOp::Plus: return std::min(Rat(1), Rat(a + b));
    case LukOp::Minus: return std::max(Rat(0), Rat(a - b));
    case LukOp::Iff: return luk_apply(LukOp::Strong, luk_impl(a, b), luk_impl(b, a));
    default: throw std::logic_error("luk_apply: operation is not binary");
  }
}

// ===== pair algebra =========================================================

namespace {

PairValue pair_impl(const PairValue& a, const PairValue& b) {
  return {luk_impl(a.truth, b.truth), luk_apply(LukOp::Minus, b.falsity, a.falsity)};
}

PairValue pair_luk_neg(const PairValue& a) { return {1 - a.truth, 1 - a.falsity}; }

PairValue pair_delta(const PairValue& a) {
  // second coordinate: zero exactly when the falsity degree is zero
  return {luk_apply(LukOp::Delta, a.truth), a.falsity == 0 ? Rat(0) : Rat(1)};
}

}  // namespace

PairValue pair_apply(PairOp op, const PairValue& a) {
  switch (op) {
    case PairOp::ParNeg: return {a.falsity, a.truth};
    case PairOp::LukNeg: return pair_luk_neg(a);
    case PairOp::Delta: return pair_delta(a);
    default: throw std::logic_error("pair_apply: operation is not unary");
  }
}

PairValue pair_apply(PairOp op, const PairValue& a, const PairValue& b) {
  switch (op) {
    case PairOp::Implies: return pair_impl(a, b);
    case PairOp::Or: return pair_impl(pair_impl(a, b), b);
    case PairOp::And:
      return pair_luk_neg(pair_apply(PairOp::Or, pair_luk_neg(a), pair_luk_neg(b)));
    case PairOp::Plus: return pair_impl(pair_luk_neg(a), b);
    case PairOp::Strong: return pair_luk_neg(pair_impl(a, pair_luk_neg(b)));
    case PairOp::Minus: return pair_apply(PairOp::Strong, a, pair_luk_neg(b));
    case PairOp::Iff: return pair_apply(PairOp::Strong, pair_impl(a, b), pair_impl(b, a));
    default: throw std::logic_error("pair_apply: operation is not binary");
  }
}

// ===== weighted models ======================================================

WorldWeights::WorldWeights(const BDModel& m, std::map<std::string, Rat> w)
    : weight(std::move(w)) {
  Rat total(0);
  for (const auto& id : m.worlds) {
    auto it = weight.find(id);
    if (it == weight.end()) throw InputError("world '" + id + "' has no weight");
    if (it->second < 0) throw InputError("negative weight for world '" + id + "'");
    total += it->second;
  }
  if (weight.size() != m.worlds.size())
    throw InputError("weights mention a world that is not in the model");
  if (total != 1)
    throw InputError("weights must total 1, got " + rat_to_string(total));
}

const Rat& WorldWeights::at(const std::string& world) const {
  auto it = weight.find(world);
  if (it == weight.end()) throw InputError("world '" + world + "' has no weight");
  return it->second;
}

Rat measure_of(const BDModel& m, const WorldWeights& w, const BDRef& f, ExtensionKind k) {
  Rat total(0);
  for (const auto& id : extension(m, f, k)) total += w.at(id);
  return total;
}

// ===== evaluation ===========================================================

namespace {

PairOp pair_op_of(OuterKind k) {
  switch (k) {
    case OuterKind::ParNeg: return PairOp::ParNeg;
    case OuterKind::LukNeg: return PairOp::LukNeg;
    case OuterKind::Delta: return PairOp::Delta;
    case OuterKind::Implies: return PairOp::Implies;
    case OuterKind::Iff: return PairOp::Iff;
    case OuterKind::And: return PairOp::And;
    case OuterKind::Or: return PairOp::Or;
    case OuterKind::Strong: return PairOp::Strong;
    case OuterKind::Plus: return PairOp::Plus;
    case OuterKind::Minus: return PairOp::Minus;
    default: throw std::logic_error("not a connective");
  }
}

LukOp luk_op_of(OuterKind k) {
  switch (k) {
    case OuterKind::LukNeg: return LukOp::Neg;
    case OuterKind::Delta: return LukOp::Delta;
    case OuterKind::Implies: return LukOp::Implies;
    case OuterKind::Iff: return LukOp::Iff;
    case OuterKind::And: return LukOp::And;
    case OuterKind::Or: return LukOp::Or;
    case OuterKind::Strong: return LukOp::Strong;
    case OuterKind::Plus: return LukOp::Plus;
    case OuterKind::Minus: return LukOp::Minus;
    default: throw std::logic_error("not a scalar connective");
  }
}

}  // namespace

PairValue eval_with_atoms(const OuterRef& f,
                          const std::function<PairValue(const OuterRef&)>& atom_value) {
  switch (f->kind) {
    case OuterKind::ModalAtom:
    case OuterKind::FreeAtom:
      return atom_value(f);
    case OuterKind::ParNeg:
    case OuterKind::LukNeg:
    case OuterKind::Delta:
      return pair_apply(pair_op_of(f->kind), eval_with_atoms(f->left, atom_value));
    default:
      return pair_apply(pair_op_of(f->kind), eval_with_atoms(f->left, atom_value),
                        eval_with_atoms(f->right, atom_value));
  }
}

PairValue eval_pm(const BDModel& m, const WorldWeights& w, const OuterRef& f) {
  return eval_with_atoms(f, [&](const OuterRef& atom) -> PairValue {
    if (atom->kind != OuterKind::ModalAtom || atom->mod != Modality::Pr)
      throw DialectError("expected a Pr atom, got '" + render(atom) + "'");
    return {measure_of(m, w, atom->body, ExtensionKind::Plus),
            measure_of(m, w, atom->body, ExtensionKind::Minus)};
  });
}

Rat eval_four(const BDModel& m, const WorldWeights& w, const OuterRef& f) {
  switch (f->kind) {
    case OuterKind::ModalAtom: {
      ExtensionKind k;
      switch (f->mod) {
        case Modality::Bl: k = ExtensionKind::TrueOnly; break;
        case Modality::Db: k = ExtensionKind::FalseOnly; break;
        case Modality::Cf: k = ExtensionKind::Both; break;
        case Modality::Uc: k = ExtensionKind::Neither; break;
        default: throw DialectError("Pr atoms are not part of the four-valued dialect");
      }
      return measure_of(m, w, f->body, k);
    }
    case OuterKind::FreeAtom:
      throw DialectError("bare atom '" + f->name + "' cannot be evaluated over a model");
    case OuterKind::ParNeg:
      throw DialectError("outer paraconsistent negation is not part of the four-valued dialect");
    case OuterKind::LukNeg:
    case OuterKind::Delta:
      return luk_apply(luk_op_of(f->kind), eval_four(m, w, f->left));
    default:
      return luk_apply(luk_op_of(f->kind), eval_four(m, w, f->left), eval_four(m, w, f->right));
  }
}

// ===== measure tables =======================================================

std::vector<std::string> SetMeasureTable::key_of(std::vector<std::string> worlds) {
  std::sort(worlds.begin(), worlds.end());
  worlds.erase(std::unique(worlds.begin(), worlds.end()), worlds.end());
  return worlds;
}

void SetMeasureTable::set(std::vector<std::string> worlds, Rat value) {
  entries[key_of(std::move(worlds))] = std::move(value);
}

const Rat* SetMeasureTable::find(const std::vector<std::string>& worlds) const {
  auto it = entries.find(key_of(worlds));
  return it == entries.end() ? nullptr : &it->second;
}

namespace {

std::string ext_suffix(ExtensionKind k) {
  switch (k) {
    case ExtensionKind::Plus: return "+";
    case ExtensionKind::Minus: return "-";
    case ExtensionKind::TrueOnly: return "b";
    case ExtensionKind::FalseOnly: return "d";
    case ExtensionKind::Both: return "c";
    case ExtensionKind::Neither: return "u";
  }
  return "?";
}

DescribedSet described(const BDModel& m, const BDRef& f, ExtensionKind k) {
  return {"|" + render(f) + "|" + ext_suffix(k), extension(m, f, k)};
}

void push_unique(std::vector<DescribedSet>& out, std::set<std::string>& seen, DescribedSet s) {
  if (seen.insert(s.desc).second) out.push_back(std::move(s));
}

}  // namespace

std::vector<DescribedSet> needed_sets_pm(const BDModel& m, const std::vector<BDRef>& probe) {
  std::vector<DescribedSet> out;
  std::set<std::string> seen;
  for (const auto& f : probe) {
    push_unique(out, seen, described(m, f, ExtensionKind::Plus));
    push_unique(out, seen, described(m, f, ExtensionKind::Minus));
    push_unique(out, seen, described(m, bd_neg(f), ExtensionKind::Plus));
  }
  for (const auto& f : probe) {
    for (const auto& g : probe) {
      push_unique(out, seen, described(m, bd_and(f, g), ExtensionKind::Plus));
      push_unique(out, seen, described(m, bd_or(f, g), ExtensionKind::Plus));
    }
  }
  return out;
}

std::vector<DescribedSet> needed_sets_four(const BDModel& m, const std::vector<BDRef>& probe) {
  std::vector<DescribedSet> out;
  std::set<std::string> seen;
  for (const auto& f : probe) {
    for (ExtensionKind k : {ExtensionKind::TrueOnly, ExtensionKind::FalseOnly,
                            ExtensionKind::Both, ExtensionKind::Neither}) {
      push_unique(out, seen, described(m, f, k));
    }
    BDRef nf = bd_neg(f);
    push_unique(out, seen, described(m, nf, ExtensionKind::TrueOnly));
    push_unique(out, seen, described(m, nf, ExtensionKind::Both));
    BDRef contradiction = bd_and(f, nf);
    push_unique(out, seen, described(m, contradiction, ExtensionKind::TrueOnly));
    push_unique(out, seen, described(m, contradiction, ExtensionKind::Both));
  }
  for (const auto& f : probe) {
    for (const auto& g : probe) {
      for (ExtensionKind k : {ExtensionKind::TrueOnly, ExtensionKind::Both}) {
        push_unique(out, seen, described(m, bd_and(f, g), k));
        push_unique(out, seen, described(m, bd_or(f, g), k));
      }
    }
  }
  return out;
}

SetMeasureTable induced_table(const WorldWeights& w, const std::vector<DescribedSet>& sets) {
  SetMeasureTable t;
  for (const auto& s : sets) {
    Rat total(0);
    for (const auto& id : s.worlds) total += w.at(id);
    t.set(s.worlds, total);
  }
  return t;
}

// ===== audits ===============================================================

namespace {

struct TableReader {
  const SetMeasureTable& t;

  Rat get(const BDModel& m, const BDRef& f, ExtensionKind k) const {
    std::vector<std::string> s = extension(m, f, k);
    const Rat* v = t.find(s);
    if (!v)
      throw InputError("measure table lacks an entry for |" + render(f) + "|" + ext_suffix(k));
    return *v;
  }
};

std::string set_text(const std::vector<std::string>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += s[i];
  }
  return out + "}";
}

}  // namespace

std::vector<Violation> verify_pm_axioms(const BDModel& m, const SetMeasureTable& t,
                                        const std::vector<BDRef>& probe) {
  std::vector<Violation> out;
  TableReader r{t};

  // monotonicity across every pair of collected sets; measures are keyed by
  // the world set, so one representative per distinct set covers all pairs
  std::vector<DescribedSet> sets = needed_sets_pm(m, probe);
  std::map<std::vector<std::string>, const DescribedSet*> distinct;
  for (const auto& s : sets) distinct.emplace(SetMeasureTable::key_of(s.worlds), &s);
  for (const auto& [ka, a] : distinct) {
    const Rat* va = t.find(a->worlds);
    if (!va) throw InputError("measure table lacks an entry for " + a->desc);
    for (const auto& [kb, b] : distinct) {
      if (a == b || !std::includes(kb.begin(), kb.end(), ka.begin(), ka.end())) continue;
      const Rat* vb = t.find(b->worlds);
      if (!vb) throw InputError("measure table lacks an entry for " + b->desc);
      if (*va > *vb)
        out.push_back({"mon", a->desc + " = " + set_text(a->worlds) + " is included in " +
                                  b->desc + " = " + set_text(b->worlds) + " but " +
                                  rat_to_string(*va) + " > " + rat_to_string(*vb)});
    }
  }

  for (const auto& f : probe) {
    Rat lhs = r.get(m, f, ExtensionKind::Minus);
    Rat rhs = r.get(m, bd_neg(f), ExtensionKind::Plus);
    if (lhs != rhs)
      out.push_back({"neg", "|" + render(f) + "|- has measure " + rat_to_string(lhs) +
                                " but |" + render(bd_neg(f)) + "|+ has measure " +
                                rat_to_string(rhs)});
  }

  for (const auto& f : probe) {
    for (const auto& g : probe) {
      Rat vf = r.get(m, f, ExtensionKind::Plus);
      Rat vg = r.get(m, g, ExtensionKind::Plus);
      Rat vand = r.get(m, bd_and(f, g), ExtensionKind::Plus);
      Rat vor = r.get(m, bd_or(f, g), ExtensionKind::Plus);
      if (vor != vf + vg - vand)
        out.push_back({"ex", "inclusion-exclusion fails for " + render(f) + " and " + render(g) +
                                 ": " + rat_to_string(vor) + " != " + rat_to_string(vf) + " + " +
                                 rat_to_string(vg) + " - " + rat_to_string(vand)});
    }
  }
  return out;
}

std::vector<Violation> verify_four_axioms(const BDModel& m, const SetMeasureTable& t,
                                          const std::vector<BDRef>& probe) {
  std::vector<Violation> out;
  TableReader r{t};

  auto truth_mass = [&](const BDRef& f) {
    return r.get(m, f, ExtensionKind::TrueOnly) + r.get(m, f, ExtensionKind::Both);
  };

  for (const auto& f : probe) {
    Rat total = r.get(m, f, ExtensionKind::TrueOnly) + r.get(m, f, ExtensionKind::FalseOnly) +
                r.get(m, f, ExtensionKind::Both) + r.get(m, f, ExtensionKind::Neither);
    if (total != 1)
      out.push_back({"part", "the four regions of " + render(f) + " total " +
                                 rat_to_string(total) + " instead of 1"});

    BDRef nf = bd_neg(f);
    Rat nb = r.get(m, nf, ExtensionKind::TrueOnly);
    Rat fd = r.get(m, f, ExtensionKind::FalseOnly);
    if (nb != fd)
      out.push_back({"negfour", "|" + render(nf) + "|b = " + rat_to_string(nb) + " but |" +
                                    render(f) + "|d = " + rat_to_string(fd)});
    Rat nc = r.get(m, nf, ExtensionKind::Both);
    Rat fc = r.get(m, f, ExtensionKind::Both);
    if (nc != fc)
      out.push_back({"negfour", "|" + render(nf) + "|c = " + rat_to_string(nc) + " but |" +
                                    render(f) + "|c = " + rat_to_string(fc)});

    BDRef contradiction = bd_and(f, nf);
    Rat cb = r.get(m, contradiction, ExtensionKind::TrueOnly);
    if (cb != 0)
      out.push_back({"contr", "|" + render(contradiction) + "|b has nonzero measure " +
                                  rat_to_string(cb)});
    Rat cc = r.get(m, contradiction, ExtensionKind::Both);
    if (cc != fc)
      out.push_back({"contr", "|" + render(contradiction) + "|c = " + rat_to_string(cc) +
                                  " but |" + render(f) + "|c = " + rat_to_string(fc)});
  }

  for (const auto& f : probe) {
    for (const auto& g : probe) {
      if (bd_entails(f, g)) {
        Rat mf = truth_mass(f);
        Rat mg = truth_mass(g);
        if (mf > mg)
          out.push_back({"bcmon", render(f) + " entails " + render(g) +
                                      " but their truth masses are " + rat_to_string(mf) +
                                      " > " + rat_to_string(mg)});
      }
      Rat sum_fg = truth_mass(f) + truth_mass(g);
      Rat sum_lattice = truth_mass(bd_and(f, g)) + truth_mass(bd_or(f, g));
      if (sum_fg != sum_lattice)
        out.push_back({"bcex", "truth masses of " + render(f) + ", " + render(g) +
                                   " total " + rat_to_string(sum_fg) + " but their meet and join total " +
                                   rat_to_string(sum_lattice)});
    }
  }
  return out;
}

// ===== dual models ==========================================================

std::pair<BDModel, WorldWeights> dual_model(const BDModel& m, const WorldWeights& w,
                                            const std::set<std::string>* vars) {
  std::set<std::string> universe = m.vars();
  if (vars) {
    for (const auto& v : *vars) universe.insert(v);
  }
  std::map<std::string, std::set<std::string>> plus, minus;
  for (const auto& id : m.worlds) {
    for (const auto& v : universe) {
      bool t = m.plus_at(id).count(v) > 0;
      bool f = m.minus_at(id).count(v) > 0;
      if (t && f) {
        // conflict becomes silence
      } else if (!t && !f) {
        plus[id].insert(v);
        minus[id].insert(v);
      } else {
        if (t) plus[id].insert(v);
        if (f) minus[id].insert(v);
      }
    }
  }
  BDModel dual(m.worlds, std::move(plus), std::move(minus));
  return {dual, WorldWeights(dual, w.weight)};
}

}  // namespace bdluk
