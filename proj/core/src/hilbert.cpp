#include "bdluk/hilbert.hpp"

#include "bdluk/bd_semantics.hpp"
#include "bdluk/decision.hpp"
#include "bdluk/errors.hpp"
#include "bdluk/tableau.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace bdluk {

// ===== schema table =========================================================

std::string schema_name(AxiomSchema s) {
  switch (s) {
    case AxiomSchema::LukTaut: return "luktaut";
    case AxiomSchema::Equiv: return "equiv";
    case AxiomSchema::Contr: return "contr";
    case AxiomSchema::Neg: return "neg";
    case AxiomSchema::Mon: return "mon";
    case AxiomSchema::Part1: return "part1";
    case AxiomSchema::Part2: return "part2";
    case AxiomSchema::Ex: return "ex";
  }
  throw std::logic_error("unreachable");
}

std::size_t schema_arity(AxiomSchema s) {
  switch (s) {
    case AxiomSchema::LukTaut: break;
    case AxiomSchema::Equiv: return 2;
    case AxiomSchema::Contr: return 1;
    case AxiomSchema::Neg: return 1;
    case AxiomSchema::Mon: return 2;
    case AxiomSchema::Part1: return 1;
    case AxiomSchema::Part2: return 1;
    case AxiomSchema::Ex: return 2;
  }
  throw InputError("outer tautologies are justified by 'taut', not instantiated");
}

std::size_t schema_variants(AxiomSchema s) {
  switch (s) {
    case AxiomSchema::Equiv: return 4;
    case AxiomSchema::Contr: return 2;
    case AxiomSchema::Neg: return 2;
    case AxiomSchema::Part2: return 24;
    default: return 1;
  }
}

namespace {

constexpr std::array<Modality, 4> kFourMods{Modality::Bl, Modality::Db, Modality::Cf,
                                            Modality::Uc};

const std::vector<std::array<int, 4>>& permutations4() {
  static const std::vector<std::array<int, 4>> table = [] {
    std::vector<std::array<int, 4>> t;
    std::array<int, 4> p{0, 1, 2, 3};
    do {
      t.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return t;
  }();
  return table;
}

OuterRef bl_cf(const BDRef& b) {
  return plus(modal_atom(Modality::Bl, b), modal_atom(Modality::Cf, b));
}

}  // namespace

OuterRef instantiate(AxiomSchema s, const std::vector<BDRef>& args, std::size_t variant) {
  std::size_t arity = schema_arity(s);  // rejects LukTaut
  if (args.size() != arity)
    throw InputError(schema_name(s) + " takes " + std::to_string(arity) + " argument(s), got " +
                     std::to_string(args.size()));
  if (variant >= schema_variants(s))
    throw InputError("variant " + std::to_string(variant) + " is out of range for " +
                     schema_name(s));

  switch (s) {
    case AxiomSchema::LukTaut:
      break;  // unreachable: schema_arity threw
    case AxiomSchema::Equiv: {
      if (!bd_equiv(args[0], args[1]))
        throw InputError("equiv requires interderivable arguments, and '" + render(args[0]) +
                         "' is not equivalent to '" + render(args[1]) + "'");
      Modality m = kFourMods[variant];
      return iff(modal_atom(m, args[0]), modal_atom(m, args[1]));
    }
    case AxiomSchema::Contr: {
      BDRef contradiction = bd_and(args[0], bd_neg(args[0]));
      if (variant == 0) return luk_neg(modal_atom(Modality::Bl, contradiction));
      return iff(modal_atom(Modality::Cf, args[0]), modal_atom(Modality::Cf, contradiction));
    }
    case AxiomSchema::Neg: {
      if (variant == 0)
        return iff(modal_atom(Modality::Bl, bd_neg(args[0])), modal_atom(Modality::Db, args[0]));
      return iff(modal_atom(Modality::Cf, bd_neg(args[0])), modal_atom(Modality::Cf, args[0]));
    }
    case AxiomSchema::Mon: {
      if (!bd_entails(args[0], args[1]))
        throw InputError("mon requires the first argument to entail the second, and '" +
                         render(args[0]) + "' does not entail '" + render(args[1]) + "'");
      return implies(bl_cf(args[0]), bl_cf(args[1]));
    }
    case AxiomSchema::Part1: {
      const BDRef& a = args[0];
      return plus(plus(plus(modal_atom(Modality::Bl, a), modal_atom(Modality::Db, a)),
                       modal_atom(Modality::Cf, a)),
                  modal_atom(Modality::Uc, a));
    }
    case AxiomSchema::Part2: {
      const auto& perm = permutations4()[variant];
      std::array<OuterRef, 4> x;
      for (int i = 0; i < 4; ++i) x[i] = modal_atom(kFourMods[perm[i]], args[0]);
      OuterRef chain3 = plus(plus(x[0], x[1]), x[2]);
      OuterRef chain4 = plus(chain3, x[3]);
      return iff(minus(chain4, x[3]), chain3);
    }
    case AxiomSchema::Ex: {
      BDRef dis = bd_or(args[0], args[1]);
      BDRef con = bd_and(args[0], args[1]);
      return iff(bl_cf(dis), plus(minus(bl_cf(args[0]), bl_cf(con)), bl_cf(args[1])));
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<OuterRef> instances_for(AxiomSchema s, const std::vector<BDRef>& args) {
  std::size_t arity = schema_arity(s);  // rejects LukTaut
  if (args.size() != arity)
    throw InputError(schema_name(s) + " takes " + std::to_string(arity) + " argument(s), got " +
                     std::to_string(args.size()));
  std::vector<OuterRef> out;
  for (std::size_t v = 0; v < schema_variants(s); ++v) {
    try {
      out.push_back(instantiate(s, args, v));
    } catch (const InputError&) {
      // a failed side condition rules this variant (and its siblings) out
    }
  }
  return out;
}

// ===== instance generation ==================================================

std::vector<BDRef> bd_pool(const std::vector<std::string>& vars, int depth, std::size_t cap) {
  std::vector<BDRef> reps;
  auto add = [&](const BDRef& f) {
    for (const auto& r : reps)
      if (bd_equiv(r, f)) return;
    if (reps.size() >= cap)
      throw CapExceeded("inner-formula pool exceeds the cap of " + std::to_string(cap));
    reps.push_back(f);
  };

  std::vector<std::string> names = vars;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto& v : names) add(bd_var(v));

  for (int level = 1; level <= depth; ++level) {
    std::vector<BDRef> prev = reps;  // height < level
    for (const auto& f : prev) add(bd_neg(f));
    for (const auto& f : prev)
      for (const auto& g : prev) add(bd_and(f, g));
    for (const auto& f : prev)
      for (const auto& g : prev) add(bd_or(f, g));
  }
  return reps;
}

namespace {

std::string perm_label(std::size_t variant) {
  const auto& perm = permutations4()[variant];
  std::string out;
  for (int i : perm) out += modality_name(kFourMods[i]);
  return out;
}

}  // namespace

std::vector<AxiomInstance> generate_instances(const std::vector<std::string>& vars, int depth,
                                              std::size_t cap) {
  std::vector<BDRef> pool = bd_pool(vars, depth, cap);
  std::vector<AxiomInstance> out;
  auto push = [&](AxiomSchema s, std::string label, OuterRef f) {
    if (out.size() >= cap)
      throw CapExceeded("instance list exceeds the cap of " + std::to_string(cap));
    out.push_back({s, std::move(label), std::move(f)});
  };

  // equiv: over pairwise non-equivalent representatives the side condition
  // forces both arguments onto the same representative
  for (const auto& f : pool)
    for (std::size_t v = 0; v < 4; ++v)
      push(AxiomSchema::Equiv,
           "equiv[" + std::string(modality_name(kFourMods[v])) + "](" + render(f) + ", " +
               render(f) + ")",
           instantiate(AxiomSchema::Equiv, {f, f}, v));

  for (const auto& f : pool)
    for (std::size_t v = 0; v < 2; ++v)
      push(AxiomSchema::Contr, "contr[" + std::to_string(v + 1) + "](" + render(f) + ")",
           instantiate(AxiomSchema::Contr, {f}, v));

  for (const auto& f : pool)
    for (std::size_t v = 0; v < 2; ++v)
      push(AxiomSchema::Neg, "neg[" + std::to_string(v + 1) + "](" + render(f) + ")",
           instantiate(AxiomSchema::Neg, {f}, v));

  for (const auto& f : pool)
    for (const auto& g : pool)
      if (bd_entails(f, g))
        push(AxiomSchema::Mon, "mon(" + render(f) + ", " + render(g) + ")",
             instantiate(AxiomSchema::Mon, {f, g}));

  for (const auto& f : pool)
    push(AxiomSchema::Part1, "part1(" + render(f) + ")", instantiate(AxiomSchema::Part1, {f}));

  for (const auto& f : pool)
    for (std::size_t v = 0; v < 24; ++v)
      push(AxiomSchema::Part2, "part2[" + perm_label(v) + "](" + render(f) + ")",
           instantiate(AxiomSchema::Part2, {f}, v));

  for (const auto& f : pool)
    for (const auto& g : pool)
      push(AxiomSchema::Ex, "ex(" + render(f) + ", " + render(g) + ")",
           instantiate(AxiomSchema::Ex, {f, g}));

  return out;
}

// ===== proof files ==========================================================

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_index(const std::string& s, std::size_t* out) {
  if (s.empty()) return false;
  std::size_t v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
    v = v * 10 + static_cast<std::size_t>(ch - '0');
    if (v > 1000000) return false;
  }
  *out = v;
  return true;
}

AxiomSchema schema_by_name(const std::string& name, std::size_t where) {
  if (name == "equiv") return AxiomSchema::Equiv;
  if (name == "contr") return AxiomSchema::Contr;
  if (name == "neg") return AxiomSchema::Neg;
  if (name == "mon") return AxiomSchema::Mon;
  if (name == "part1") return AxiomSchema::Part1;
  if (name == "part2") return AxiomSchema::Part2;
  if (name == "ex") return AxiomSchema::Ex;
  throw ParseError(where, "unknown axiom schema '" + name + "'");
}

// justification text after ';'
void parse_just(const std::string& text, std::size_t where, ProofLine* line) {
  std::istringstream in(text);
  std::string head;
  in >> head;
  if (head == "taut") {
    std::string extra;
    if (in >> extra) throw ParseError(where, "trailing input after 'taut'");
    line->kind = JustKind::Taut;
    return;
  }
  if (head == "premise" || head == "dnec") {
    std::string idx, extra;
    if (!(in >> idx) || !parse_index(idx, &line->ref1))
      throw ParseError(where, "'" + head + "' needs a numeric reference");
    if (in >> extra) throw ParseError(where, "trailing input after '" + head + "' reference");
    line->kind = head == "premise" ? JustKind::Premise : JustKind::DNec;
    return;
  }
  if (head == "mp") {
    std::string i, j, extra;
    if (!(in >> i >> j) || !parse_index(i, &line->ref1) || !parse_index(j, &line->ref2))
      throw ParseError(where, "'mp' needs two numeric references");
    if (in >> extra) throw ParseError(where, "trailing input after 'mp' references");
    line->kind = JustKind::MP;
    return;
  }
  if (head == "axiom") {
    std::string rest = trim(text.substr(text.find("axiom") + 5));
    std::size_t open = rest.find('(');
    if (open == std::string::npos || rest.back() != ')')
      throw ParseError(where, "axiom citation must look like name(arguments)");
    std::string name = trim(rest.substr(0, open));
    std::string argtext = rest.substr(open + 1, rest.size() - open - 2);
    line->kind = JustKind::Axiom;
    line->schema = schema_by_name(name, where);
    // inner formulas contain no commas, so splitting is unambiguous
    std::size_t start = 0;
    while (true) {
      std::size_t comma = argtext.find(',', start);
      std::string piece =
          trim(comma == std::string::npos ? argtext.substr(start)
                                          : argtext.substr(start, comma - start));
      if (piece.empty()) throw ParseError(where, "empty axiom argument");
      line->args.push_back(parse_bd(piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return;
  }
  throw ParseError(where, "unknown justification '" + head + "'");
}

}  // namespace

Proof parse_proof(const std::string& text) {
  Proof proof;
  std::size_t pos = 0;
  std::size_t expect = 1;
  bool numbered_started = false;

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::size_t line_start = pos;
    std::string raw =
        eol == std::string::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;

    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.rfind("premise", 0) == 0 &&
        (line.size() == 7 || line[7] == ' ' || line[7] == '\t')) {
      if (numbered_started)
        throw ParseError(line_start, "premises must precede the numbered lines");
      std::string body = trim(line.substr(7));
      if (body.empty()) throw ParseError(line_start, "premise line needs a formula");
      try {
        proof.premises.push_back(parse_outer(body, Dialect::Four));
      } catch (const ParseError& e) {
        throw ParseError(line_start, std::string("bad premise formula: ") + e.what());
      }
      continue;
    }

    numbered_started = true;
    std::size_t dot = line.find('.');
    std::size_t number = 0;
    if (dot == std::string::npos || !parse_index(trim(line.substr(0, dot)), &number))
      throw ParseError(line_start, "proof line must start with '<number>.'");
    if (number != expect)
      throw ParseError(line_start, "expected line number " + std::to_string(expect) + ", got " +
                                       std::to_string(number));
    ++expect;

    std::size_t semi = line.find(';', dot + 1);
    if (semi == std::string::npos)
      throw ParseError(line_start, "proof line needs '; <justification>'");
    std::string ftext = trim(line.substr(dot + 1, semi - dot - 1));
    std::string jtext = trim(line.substr(semi + 1));
    if (ftext.empty()) throw ParseError(line_start, "proof line needs a formula");
    if (jtext.empty()) throw ParseError(line_start, "proof line needs a justification");

    ProofLine pl;
    try {
      pl.formula = parse_outer(ftext, Dialect::Four);
    } catch (const ParseError& e) {
      throw ParseError(line_start, std::string("bad formula: ") + e.what());
    }
    parse_just(jtext, line_start, &pl);
    proof.lines.push_back(std::move(pl));
  }
  return proof;
}

// ===== proof checking =======================================================

CheckResult check_proof(const Proof& p, const OuterRef* goal) {
  std::vector<char> uses_premise(p.lines.size(), 0);
  auto fail = [](std::size_t k, std::string reason) {
    return CheckResult{false, k, std::move(reason)};
  };

  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    const ProofLine& ln = p.lines[k];
    switch (ln.kind) {
      case JustKind::Premise: {
        if (ln.ref1 < 1 || ln.ref1 > p.premises.size())
          return fail(k + 1, "premise index " + std::to_string(ln.ref1) + " is out of range");
        if (!outer_struct_eq(ln.formula, p.premises[ln.ref1 - 1]))
          return fail(k + 1, "line does not match premise " + std::to_string(ln.ref1));
        uses_premise[k] = 1;
        break;
      }
      case JustKind::Axiom: {
        std::vector<OuterRef> family;
        try {
          family = instances_for(ln.schema, ln.args);
        } catch (const InputError& e) {
          return fail(k + 1, e.what());
        }
        bool matched = false;
        for (const auto& inst : family)
          if (outer_struct_eq(inst, ln.formula)) {
            matched = true;
            break;
          }
        if (!matched)
          return fail(k + 1, family.empty()
                                 ? "the schema's side condition fails for the cited arguments"
                                 : "line is not an instance of '" + schema_name(ln.schema) +
                                       "' for the cited arguments");
        break;
      }
      case JustKind::Taut: {
        AtomAbstraction abs = make_abstraction({ln.formula});
        TableauResult tr = prove_luk_valid(abs.abstracted.at(0));
        if (!tr.closed)
          return fail(k + 1, "not an outer tautology (the tableau stays open)");
        break;
      }
      case JustKind::MP: {
        if (ln.ref1 < 1 || ln.ref1 > k || ln.ref2 < 1 || ln.ref2 > k)
          return fail(k + 1, "cited lines must precede this line");
        const OuterRef& minor = p.lines[ln.ref1 - 1].formula;
        const OuterRef& major = p.lines[ln.ref2 - 1].formula;
        if (major->kind != OuterKind::Implies)
          return fail(k + 1, "line " + std::to_string(ln.ref2) + " is not an implication");
        if (!outer_struct_eq(major->left, minor))
          return fail(k + 1, "the antecedent of line " + std::to_string(ln.ref2) +
                                 " does not match line " + std::to_string(ln.ref1));
        if (!outer_struct_eq(major->right, ln.formula))
          return fail(k + 1, "the consequent of line " + std::to_string(ln.ref2) +
                                 " does not match this line");
        uses_premise[k] = uses_premise[ln.ref1 - 1] || uses_premise[ln.ref2 - 1];
        break;
      }
      case JustKind::DNec: {
        if (ln.ref1 < 1 || ln.ref1 > k)
          return fail(k + 1, "cited line must precede this line");
        if (uses_premise[ln.ref1 - 1])
          return fail(k + 1, "necessitation applies to theorem lines only, and line " +
                                 std::to_string(ln.ref1) + " depends on a premise");
        if (ln.formula->kind != OuterKind::Delta ||
            !outer_struct_eq(ln.formula->left, p.lines[ln.ref1 - 1].formula))
          return fail(k + 1, "line is not the necessitation of line " + std::to_string(ln.ref1));
        break;
      }
    }
  }

  if (p.lines.empty()) return {false, 0, "proof has no lines"};
  if (goal && !outer_struct_eq(p.lines.back().formula, *goal))
    return {false, p.lines.size(), "the last line is not the stated goal"};
  return {true, 0, ""};
}

}  // namespace bdluk
