#include "bdluk/bd_semantics.hpp"
#include "bdluk/decision.hpp"
#include "bdluk/embeddings.hpp"
#include "bdluk/errors.hpp"
#include "bdluk/hilbert.hpp"
#include "bdluk/luk_eval.hpp"
#include "bdluk/rational.hpp"
#include "bdluk/syntax.hpp"
#include "bdluk/tableau.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace bdluk;

// exit codes: 0 affirmative, 1 negative, 2 input error, 3 resource cap
constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;
constexpr int kCapExceeded = 3;

Dialect dialect_of(const std::string& name) {
  if (name == "pm") return Dialect::PM;
  if (name == "four") return Dialect::Four;
  if (name == "plain") return Dialect::PlainLuk;
  throw InputError("unknown dialect '" + name + "' (expected pm, four, or plain)");
}

Dialect logic_of(const std::string& name) {
  if (name == "pm") return Dialect::PM;
  if (name == "four") return Dialect::Four;
  throw InputError("unknown logic '" + name + "' (expected pm or four)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << content;
  if (!out.flush()) throw InputError("failed writing file '" + path + "'");
}

std::string pair_to_string(const PairValue& v) {
  return "(" + rat_to_string(v.truth) + ", " + rat_to_string(v.falsity) + ")";
}

// ===== subcommand bodies ====================================================

int run_parse(const std::string& dialect, const std::string& formula) {
  std::cout << render(parse_outer(formula, dialect_of(dialect))) << "\n";
  return kYes;
}

int run_bd(bool equiv_mode, const std::string& ftext, const std::string& gtext) {
  BDRef f = parse_bd(ftext);
  BDRef g = parse_bd(gtext);
  bool holds = equiv_mode ? bd_equiv(f, g) : bd_entails(f, g);
  std::cout << (holds ? "YES" : "NO") << "\n";
  return holds ? kYes : kNo;
}

int run_eval(const std::string& model_path, const std::string& logic,
             const std::string& formula) {
  ParsedModel parsed = parse_model(read_file(model_path));
  if (!parsed.weights)
    throw InputError("model file '" + model_path + "' has no weight lines; eval needs a measure");
  WorldWeights ww(parsed.model, *parsed.weights);
  Dialect d = logic_of(logic);
  OuterRef f = parse_outer(formula, d);
  if (d == Dialect::PM)
    std::cout << pair_to_string(eval_pm(parsed.model, ww, f)) << "\n";
  else
    std::cout << rat_to_string(eval_four(parsed.model, ww, f)) << "\n";
  return kYes;
}

int run_decide(bool sat_mode, const std::string& logic, const std::string& formula,
               const DecisionOptions& opts, const std::string& witness_path) {
  Dialect d = logic_of(logic);
  OuterRef f = parse_outer(formula, d);
  Verdict v;
  if (sat_mode)
    v = d == Dialect::PM ? decide_sat_pm(f, opts) : decide_sat_four(f, opts);
  else
    v = d == Dialect::PM ? decide_valid_pm(f, opts) : decide_valid_four(f, opts);
  const char* word = sat_mode ? (v.affirmative ? "SAT" : "UNSAT")
                              : (v.affirmative ? "VALID" : "INVALID");
  std::cout << word << "\n";
  if (v.witness && !witness_path.empty()) {
    write_file(witness_path, serialize_model(v.witness->model, &v.witness->weights.weight));
    std::cout << "witness: " << witness_path << "\n";
  }
  return v.affirmative ? kYes : kNo;
}

int run_translate(const std::string& target, const std::string& formula) {
  if (target == "nnf") {
    std::cout << render(nnf(parse_outer(formula, Dialect::PM))) << "\n";
  } else if (target == "four") {
    std::cout << render(to_four(nnf(parse_outer(formula, Dialect::PM)))) << "\n";
  } else if (target == "pm") {
    std::cout << render(to_pm(parse_outer(formula, Dialect::Four))) << "\n";
  } else {
    throw InputError("unknown translation target '" + target + "' (expected nnf, four, or pm)");
  }
  return kYes;
}

int run_tableau(const std::string& formula, bool dump, int max_branches) {
  OuterRef f = parse_outer(formula, Dialect::PlainLuk);
  TableauOptions opts;
  opts.max_branches = max_branches;
  if (dump) {
    std::string out = tableau_dump(f, opts);
    std::cout << out;
    bool closed = out.size() >= 7 && out.substr(out.size() - 7) == "CLOSED\n";
    return closed ? kYes : kNo;
  }
  TableauResult r = prove_luk_valid(f, opts);
  std::cout << (r.closed ? "CLOSED" : "OPEN") << "\n";
  return r.closed ? kYes : kNo;
}

int run_axioms(int var_count, int depth, bool check, std::size_t cap) {
  if (var_count < 1) throw InputError("--vars must be at least 1");
  static const char* kLetters[] = {"p", "q", "r", "s", "t"};
  std::vector<std::string> vars;
  for (int i = 0; i < var_count; ++i)
    vars.push_back(i < 5 ? kLetters[i] : "p" + std::to_string(i + 1));

  bool all_ok = true;
  for (const auto& inst : generate_instances(vars, depth, cap)) {
    std::cout << inst.label << " ; " << render(inst.formula);
    if (check) {
      Verdict v = decide_valid_four(inst.formula);
      std::cout << (v.affirmative ? " ; ok" : " ; FAIL");
      if (!v.affirmative) all_ok = false;
    }
    std::cout << "\n";
  }
  return all_ok ? kYes : kNo;
}

int run_proof_check(const std::string& path) {
  Proof p = parse_proof(read_file(path));
  CheckResult r = check_proof(p);
  if (r.accepted) {
    std::cout << "ACCEPTED\n";
    return kYes;
  }
  if (r.failed_line == 0)
    std::cout << "REJECTED: " << r.reason << "\n";
  else
    std::cout << "REJECTED line " << r.failed_line << ": " << r.reason << "\n";
  return kNo;
}

int run_selftest() {
  ParsedModel parsed = parse_model(
      "world w0 { +p -p }\n"
      "world w1 { -p -q }\n"
      "weight w0 2/3\n"
      "weight w1 1/3\n");
  WorldWeights ww(parsed.model, *parsed.weights);

  int failures = 0;
  auto check_pm = [&](const std::string& text, const std::string& want) {
    std::string got = pair_to_string(eval_pm(parsed.model, ww, parse_outer(text, Dialect::PM)));
    if (got == want) {
      std::cout << "ok   eval pm " << text << " = " << got << "\n";
    } else {
      std::cout << "FAIL eval pm " << text << " = " << got << ", expected " << want << "\n";
      ++failures;
    }
  };
  auto check_four = [&](const std::string& text, const std::string& want) {
    std::string got =
        rat_to_string(eval_four(parsed.model, ww, parse_outer(text, Dialect::Four)));
    if (got == want) {
      std::cout << "ok   eval four " << text << " = " << got << "\n";
    } else {
      std::cout << "FAIL eval four " << text << " = " << got << ", expected " << want << "\n";
      ++failures;
    }
  };

  check_pm("Pr{p | q}", "(2/3, 1/3)");
  check_pm("Pr{p}", "(2/3, 1)");
  check_four("Bl{p | q}", "2/3");
  check_four("Db{p | q}", "1/3");
  check_four("Cf{p | q}", "0");
  check_four("Uc{p | q}", "0");
  check_four("Bl{p}", "0");
  check_four("Uc{p}", "0");
  check_four("Cf{p}", "2/3");
  check_four("Db{p}", "1/3");

  std::cout << (failures ? "SELFTEST FAILED\n" : "SELFTEST OK\n");
  return failures ? kNo : kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision engine for two-layered paraconsistent probability logics"};
  app.require_subcommand(1);
  int code = kYes;

  // parse
  std::string p_dialect, p_formula;
  auto* cmd_parse = app.add_subcommand("parse", "parse a formula and echo its rendering");
  cmd_parse->add_option("dialect", p_dialect, "pm, four, or plain")->required();
  cmd_parse->add_option("formula", p_formula, "formula text")->required();
  cmd_parse->callback([&] { code = run_parse(p_dialect, p_formula); });

  // bd entails|equiv
  std::string b_f, b_g;
  auto* cmd_bd = app.add_subcommand("bd", "inner-logic entailment and equivalence");
  cmd_bd->require_subcommand(1);
  auto* cmd_bd_ent = cmd_bd->add_subcommand("entails", "does the first formula entail the second");
  cmd_bd_ent->add_option("f", b_f, "inner formula")->required();
  cmd_bd_ent->add_option("g", b_g, "inner formula")->required();
  cmd_bd_ent->callback([&] { code = run_bd(false, b_f, b_g); });
  auto* cmd_bd_eq = cmd_bd->add_subcommand("equiv", "are the two formulas interderivable");
  cmd_bd_eq->add_option("f", b_f, "inner formula")->required();
  cmd_bd_eq->add_option("g", b_g, "inner formula")->required();
  cmd_bd_eq->callback([&] { code = run_bd(true, b_f, b_g); });

  // eval
  std::string e_model, e_logic, e_formula;
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a formula over a weighted model file");
  cmd_eval->add_option("--model", e_model, "model file")->required();
  cmd_eval->add_option("--logic", e_logic, "pm or four")->required();
  cmd_eval->add_option("formula", e_formula, "formula text")->required();
  cmd_eval->callback([&] { code = run_eval(e_model, e_logic, e_formula); });

  // valid / sat
  std::string d_logic, d_formula, d_witness;
  bool d_e2 = false;
  int d_max_branches = DecisionOptions{}.max_branches;
  int d_max_vars = DecisionOptions{}.max_coherence_vars;
  auto add_decide = [&](const char* name, const char* help, bool sat_mode) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--logic", d_logic, "pm or four")->required();
    cmd->add_flag("--require-e2-zero", d_e2,
                  "also require the second coordinate to be zero (pm satisfiability)");
    cmd->add_option("--witness", d_witness, "write the witness model to this file");
    cmd->add_option("--max-branches", d_max_branches, "tableau branch budget");
    cmd->add_option("--max-vars", d_max_vars, "coherence variable cap");
    cmd->add_option("formula", d_formula, "formula text")->required();
    cmd->callback([&, sat_mode] {
      DecisionOptions opts;
      opts.max_branches = d_max_branches;
      opts.max_coherence_vars = d_max_vars;
      opts.require_e2_zero = d_e2;
      code = run_decide(sat_mode, d_logic, d_formula, opts, d_witness);
    });
  };
  add_decide("valid", "decide validity", false);
  add_decide("sat", "decide satisfiability", true);

  // translate
  std::string t_target, t_formula;
  auto* cmd_tr = app.add_subcommand("translate", "rewrite a formula");
  cmd_tr->add_option("--to", t_target, "nnf, four, or pm")->required();
  cmd_tr->add_option("formula", t_formula, "formula text")->required();
  cmd_tr->callback([&] { code = run_translate(t_target, t_formula); });

  // tableau
  std::string tb_formula;
  bool tb_dump = false;
  int tb_max_branches = TableauOptions{}.max_branches;
  auto* cmd_tb = app.add_subcommand("tableau", "prove an outer formula by constraint tableau");
  cmd_tb->add_flag("--dump", tb_dump, "print the branch tree");
  cmd_tb->add_option("--max-branches", tb_max_branches, "branch budget");
  cmd_tb->add_option("formula", tb_formula, "formula text (plain dialect)")->required();
  cmd_tb->callback([&] { code = run_tableau(tb_formula, tb_dump, tb_max_branches); });

  // axioms
  int a_vars = 2, a_depth = 1;
  bool a_check = false;
  std::size_t a_cap = 100000;
  auto* cmd_ax = app.add_subcommand("axioms", "enumerate axiom-schema instances");
  cmd_ax->add_option("--vars", a_vars, "number of inner variables")->required();
  cmd_ax->add_option("--depth", a_depth, "inner formula height bound")->required();
  cmd_ax->add_flag("--check", a_check, "decide validity of every instance");
  cmd_ax->add_option("--cap", a_cap, "instance count cap");
  cmd_ax->callback([&] { code = run_axioms(a_vars, a_depth, a_check, a_cap); });

  // proof check
  std::string pr_path;
  auto* cmd_proof = app.add_subcommand("proof", "proof-file operations");
  cmd_proof->require_subcommand(1);
  auto* cmd_proof_check = cmd_proof->add_subcommand("check", "check a proof file line by line");
  cmd_proof_check->add_option("file", pr_path, "proof file")->required();
  cmd_proof_check->callback([&] { code = run_proof_check(pr_path); });

  // selftest
  auto* cmd_self = app.add_subcommand("selftest", "run the built-in golden evaluation suite");
  cmd_self->callback([&] { code = run_selftest(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int cli_code = app.exit(e);
    return cli_code == 0 ? 0 : kInputError;
  } catch (const bdluk::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const bdluk::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapExceeded;
  }
  return code;
}
