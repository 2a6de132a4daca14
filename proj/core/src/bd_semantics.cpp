#include "bdluk/bd_semantics.hpp"

#include "bdluk/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>

namespace bdluk {

// ===== model basics =========================================================

BDModel::BDModel(std::vector<std::string> world_ids,
                 std::map<std::string, std::set<std::string>> plus,
                 std::map<std::string, std::set<std::string>> minus)
    : worlds(std::move(world_ids)), vplus(std::move(plus)), vminus(std::move(minus)) {
  if (worlds.empty()) throw InputError("a model needs at least one world");
  std::set<std::string> seen;
  for (const auto& w : worlds)
    if (!seen.insert(w).second) throw InputError("duplicate world id '" + w + "'");
  for (const auto& [w, _] : vplus)
    if (!seen.count(w)) throw InputError("truth support for unknown world '" + w + "'");
  for (const auto& [w, _] : vminus)
    if (!seen.count(w)) throw InputError("falsity support for unknown world '" + w + "'");
}

bool BDModel::has_world(const std::string& id) const {
  return std::find(worlds.begin(), worlds.end(), id) != worlds.end();
}

static const std::set<std::string>& empty_set() {
  static const std::set<std::string> e;
  return e;
}

const std::set<std::string>& BDModel::plus_at(const std::string& world) const {
  auto it = vplus.find(world);
  return it == vplus.end() ? empty_set() : it->second;
}

const std::set<std::string>& BDModel::minus_at(const std::string& world) const {
  auto it = vminus.find(world);
  return it == vminus.end() ? empty_set() : it->second;
}

std::set<std::string> BDModel::vars() const {
  std::set<std::string> out;
  for (const auto& [w, s] : vplus) out.insert(s.begin(), s.end());
  for (const auto& [w, s] : vminus) out.insert(s.begin(), s.end());
  return out;
}

// ===== support recursion ====================================================

static Supports supports_rec(const BDModel& m, const std::string& w, const BDRef& f) {
  switch (f->kind) {
    case BDKind::Var:
      return {m.plus_at(w).count(f->var) > 0, m.minus_at(w).count(f->var) > 0};
    case BDKind::Neg: {
      Supports s = supports_rec(m, w, f->left);
      return {s.falsity, s.truth};
    }
    case BDKind::And: {
      Supports a = supports_rec(m, w, f->left);
      Supports b = supports_rec(m, w, f->right);
      return {a.truth && b.truth, a.falsity || b.falsity};
    }
    case BDKind::Or: {
      Supports a = supports_rec(m, w, f->left);
      Supports b = supports_rec(m, w, f->right);
      return {a.truth || b.truth, a.falsity && b.falsity};
    }
  }
  return {};
}

Supports supports(const BDModel& m, const std::string& world, const BDRef& f) {
  if (!m.has_world(world)) throw InputError("unknown world '" + world + "'");
  return supports_rec(m, world, f);
}

std::vector<std::string> extension(const BDModel& m, const BDRef& f, ExtensionKind k) {
  std::vector<std::string> out;
  for (const auto& w : m.worlds) {
    Supports s = supports_rec(m, w, f);
    bool in = false;
    switch (k) {
      case ExtensionKind::Plus: in = s.truth; break;
      case ExtensionKind::Minus: in = s.falsity; break;
      case ExtensionKind::TrueOnly: in = s.truth && !s.falsity; break;
      case ExtensionKind::FalseOnly: in = s.falsity && !s.truth; break;
      case ExtensionKind::Both: in = s.truth && s.falsity; break;
      case ExtensionKind::Neither: in = !s.truth && !s.falsity; break;
    }
    if (in) out.push_back(w);
  }
  return out;
}

Supports eval_bd(const BDValuation& v, const BDRef& f) {
  switch (f->kind) {
    case BDKind::Var: {
      auto it = v.find(f->var);
      return it == v.end() ? Supports{} : it->second;
    }
    case BDKind::Neg: {
      Supports s = eval_bd(v, f->left);
      return {s.falsity, s.truth};
    }
    case BDKind::And: {
      Supports a = eval_bd(v, f->left);
      Supports b = eval_bd(v, f->right);
      return {a.truth && b.truth, a.falsity || b.falsity};
    }
    case BDKind::Or: {
      Supports a = eval_bd(v, f->left);
      Supports b = eval_bd(v, f->right);
      return {a.truth || b.truth, a.falsity && b.falsity};
    }
  }
  return {};
}

// ===== entailment by valuation enumeration ==================================
//
// The inner logic is truth-functional, so entailment over all models reduces
// to checking every four-valuation of the variables involved.  Formulas are
// compiled to postfix over variable indices once; valuations are two bitmasks.

namespace {

struct CompiledBD {
  // ops: 0 = push var (operand = index), 1 = neg, 2 = and, 3 = or
  std::vector<std::pair<std::uint8_t, std::uint32_t>> code;
};

void compile_bd(const BDRef& f, const std::map<std::string, std::uint32_t>& index,
                CompiledBD& out) {
  switch (f->kind) {
    case BDKind::Var:
      out.code.emplace_back(0, index.at(f->var));
      return;
    case BDKind::Neg:
      compile_bd(f->left, index, out);
      out.code.emplace_back(1, 0);
      return;
    case BDKind::And:
      compile_bd(f->left, index, out);
      compile_bd(f->right, index, out);
      out.code.emplace_back(2, 0);
      return;
    case BDKind::Or:
      compile_bd(f->left, index, out);
      compile_bd(f->right, index, out);
      out.code.emplace_back(3, 0);
      return;
  }
}

Supports run_compiled(const CompiledBD& c, std::uint32_t tmask, std::uint32_t fmask,
                      std::uint8_t* stack) {
  // stack of support pairs packed as two bits
  int sp = 0;
  for (const auto& [op, arg] : c.code) {
    switch (op) {
      case 0:
        stack[sp++] = static_cast<std::uint8_t>(((tmask >> arg) & 1u) | (((fmask >> arg) & 1u) << 1));
        break;
      case 1: {
        std::uint8_t a = stack[sp - 1];
        stack[sp - 1] = static_cast<std::uint8_t>(((a >> 1) & 1u) | ((a & 1u) << 1));
        break;
      }
      case 2: {
        std::uint8_t b = stack[--sp];
        std::uint8_t a = stack[sp - 1];
        stack[sp - 1] = static_cast<std::uint8_t>((a & b & 1u) | (((a | b) & 2u)));
        break;
      }
      case 3: {
        std::uint8_t b = stack[--sp];
        std::uint8_t a = stack[sp - 1];
        stack[sp - 1] = static_cast<std::uint8_t>(((a | b) & 1u) | ((a & b) & 2u));
        break;
      }
    }
  }
  return {(stack[0] & 1u) != 0, (stack[0] & 2u) != 0};
}

}  // namespace

bool bd_entails(const BDRef& f, const BDRef& g, int max_vars) {
  std::set<std::string> vars = props(f);
  std::set<std::string> gv = props(g);
  vars.insert(gv.begin(), gv.end());
  if (static_cast<int>(vars.size()) > max_vars)
    throw CapExceeded("entailment check over " + std::to_string(vars.size()) +
                      " variables exceeds the cap of " + std::to_string(max_vars));

  std::map<std::string, std::uint32_t> index;
  std::uint32_t n = 0;
  for (const auto& v : vars) index[v] = n++;

  CompiledBD cf, cg;
  compile_bd(f, index, cf);
  compile_bd(g, index, cg);
  std::vector<std::uint8_t> scratch(cf.code.size() + cg.code.size() + 2);

  const std::uint32_t lim = 1u << n;
  for (std::uint32_t tmask = 0; tmask < lim; ++tmask) {
    for (std::uint32_t fmask = 0; fmask < lim; ++fmask) {
      Supports sf = run_compiled(cf, tmask, fmask, scratch.data());
      Supports sg = run_compiled(cg, tmask, fmask, scratch.data());
      if (sf.truth && !sg.truth) return false;
      if (sg.falsity && !sf.falsity) return false;
    }
  }
  return true;
}

bool bd_equiv(const BDRef& f, const BDRef& g, int max_vars) {
  return bd_entails(f, g, max_vars) && bd_entails(g, f, max_vars);
}

// ===== model files ==========================================================

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

ParsedModel parse_model(const std::string& text) {
  std::vector<std::string> worlds;
  std::map<std::string, std::set<std::string>> vplus, vminus;
  std::map<std::string, Rat> weights;
  bool saw_weight = false;

  std::size_t line_start = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    std::string body = hash == std::string::npos ? line : line.substr(0, hash);

    std::istringstream ls(body);
    std::string kw;
    if (!(ls >> kw)) {
      line_start += line.size() + 1;
      continue;
    }
    if (kw == "world") {
      std::string id, brace;
      if (!(ls >> id)) throw ParseError(line_start, "world line needs an id");
      if (!(ls >> brace) || brace != "{")
        throw ParseError(line_start, "expected '{' after world id");
      if (std::count(worlds.begin(), worlds.end(), id))
        throw ParseError(line_start, "duplicate world id '" + id + "'");
      worlds.push_back(id);
      std::string entry;
      bool closed = false;
      while (ls >> entry) {
        if (entry == "}") {
          closed = true;
          break;
        }
        if (entry.size() < 2 || (entry[0] != '+' && entry[0] != '-'))
          throw ParseError(line_start, "support entry must be +var or -var, got '" + entry + "'");
        std::string var = entry.substr(1);
        for (char c : var)
          if (!is_ident_char(c))
            throw ParseError(line_start, "bad variable name '" + var + "'");
        if (entry[0] == '+')
          vplus[id].insert(var);
        else
          vminus[id].insert(var);
      }
      if (!closed) throw ParseError(line_start, "world line missing closing '}'");
      std::string extra;
      if (ls >> extra) throw ParseError(line_start, "trailing input after '}'");
    } else if (kw == "weight") {
      std::string id, value;
      if (!(ls >> id >> value)) throw ParseError(line_start, "weight line needs an id and a value");
      if (!std::count(worlds.begin(), worlds.end(), id))
        throw ParseError(line_start, "weight for unknown world '" + id + "'");
      if (weights.count(id)) throw ParseError(line_start, "duplicate weight for world '" + id + "'");
      Rat w = parse_rat(value);
      if (w < 0) throw ParseError(line_start, "negative weight for world '" + id + "'");
      weights[id] = w;
      saw_weight = true;
      std::string extra;
      if (ls >> extra) throw ParseError(line_start, "trailing input after weight value");
    } else {
      throw ParseError(line_start, "expected 'world' or 'weight', got '" + kw + "'");
    }
    line_start += line.size() + 1;
  }

  ParsedModel out{BDModel(std::move(worlds), std::move(vplus), std::move(vminus)), std::nullopt};
  if (saw_weight) out.weights = std::move(weights);
  return out;
}

std::string serialize_model(const BDModel& m, const std::map<std::string, Rat>* weights) {
  std::string out;
  for (const auto& w : m.worlds) {
    out += "world " + w + " {";
    for (const auto& v : m.plus_at(w)) out += " +" + v;
    for (const auto& v : m.minus_at(w)) out += " -" + v;
    out += " }\n";
  }
  if (weights) {
    for (const auto& w : m.worlds) {
      auto it = weights->find(w);
      if (it != weights->end()) out += "weight " + w + " " + rat_to_string(it->second) + "\n";
    }
  }
  return out;
}

}  // namespace bdluk
