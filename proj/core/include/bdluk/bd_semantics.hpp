#pragma once

#include "bdluk/rational.hpp"
#include "bdluk/syntax.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace bdluk {

// A model assigns each world two independent supports per variable: a
// variable may be supported true, supported false, both, or neither at a
// world.  World order is significant and preserved (it fixes serialization
// and extension order).
struct BDModel {
  std::vector<std::string> worlds;
  std::map<std::string, std::set<std::string>> vplus;
  std::map<std::string, std::set<std::string>> vminus;

  // Validates: at least one world, unique ids, support keys drawn from the
  // world set.  Missing support entries are treated as empty.
  BDModel(std::vector<std::string> world_ids,
          std::map<std::string, std::set<std::string>> plus,
          std::map<std::string, std::set<std::string>> minus);

  bool has_world(const std::string& id) const;
  const std::set<std::string>& plus_at(const std::string& world) const;
  const std::set<std::string>& minus_at(const std::string& world) const;

  // Every variable mentioned by either support.
  std::set<std::string> vars() const;
};

struct Supports {
  bool truth = false;
  bool falsity = false;
  bool operator==(const Supports&) const = default;
};

// Support of f at a world.  Throws InputError for an unknown world id.
Supports supports(const BDModel& m, const std::string& world, const BDRef& f);

// The six extensions of a formula:
//   Plus      worlds supporting truth
//   Minus     worlds supporting falsity
//   TrueOnly  Plus minus Minus
//   FalseOnly Minus minus Plus
//   Both      Plus intersect Minus
//   Neither   complement of (Plus union Minus)
enum class ExtensionKind { Plus, Minus, TrueOnly, FalseOnly, Both, Neither };

// Worlds in model order.
std::vector<std::string> extension(const BDModel& m, const BDRef& f, ExtensionKind k);

// Truth-functional four-valuation: assigns supports per variable directly.
// Variables absent from the map have neither support.
using BDValuation = std::map<std::string, Supports>;
Supports eval_bd(const BDValuation& v, const BDRef& f);

inline constexpr int kDefaultBDVarCap = 12;

// Entailment over all models: truth support of f carries to g and falsity
// support of g carries back to f, under every four-valuation of the shared
// variables.  Enumerates 4^n valuations; throws CapExceeded past max_vars.
bool bd_entails(const BDRef& f, const BDRef& g, int max_vars = kDefaultBDVarCap);
bool bd_equiv(const BDRef& f, const BDRef& g, int max_vars = kDefaultBDVarCap);

// ============================================================================
// Model files.
//
//   # comment
//   world w0 { +p -p }
//   world w1 { -p -q }
//   weight w0 2/3
//   weight w1 1/3
//
// Worlds appear before weights are assigned to them; "+v" marks truth
// support, "-v" falsity support.  Weights are optional as far as the file
// format is concerned; consumers that need a measure validate totals.
// ============================================================================

struct ParsedModel {
  BDModel model;
  // Present when the file contains weight lines; raw, not yet validated
  // against the total-one requirement.
  std::optional<std::map<std::string, Rat>> weights;
};

ParsedModel parse_model(const std::string& text);
std::string serialize_model(const BDModel& m,
                            const std::map<std::string, Rat>* weights = nullptr);

}  // namespace bdluk
