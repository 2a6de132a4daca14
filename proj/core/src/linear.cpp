#include "bdluk/linear.hpp"

#include "bdluk/errors.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace bdluk {

// ===== terms and constraints ================================================

AffineTerm AffineTerm::of_const(Rat c) {
  AffineTerm t;
  t.constant = std::move(c);
  return t;
}

AffineTerm AffineTerm::of_var(const std::string& name, Rat k) {
  AffineTerm t;
  if (k != 0) t.coeff[name] = std::move(k);
  return t;
}

AffineTerm AffineTerm::operator+(const AffineTerm& o) const {
  AffineTerm t = *this;
  t.constant += o.constant;
  for (const auto& [v, k] : o.coeff) {
    Rat nk = (t.coeff.count(v) ? t.coeff[v] : Rat(0)) + k;
    if (nk == 0)
      t.coeff.erase(v);
    else
      t.coeff[v] = nk;
  }
  return t;
}

AffineTerm AffineTerm::operator-(const AffineTerm& o) const {
  return *this + o.scaled(Rat(-1));
}

AffineTerm AffineTerm::scaled(const Rat& k) const {
  AffineTerm t;
  if (k == 0) return t;
  t.constant = constant * k;
  for (const auto& [v, c] : coeff) t.coeff[v] = c * k;
  return t;
}

Rat AffineTerm::eval(const std::map<std::string, Rat>& assignment) const {
  Rat out = constant;
  for (const auto& [v, k] : coeff) {
    auto it = assignment.find(v);
    if (it != assignment.end()) out += k * it->second;
  }
  return out;
}

std::string affine_to_string(const AffineTerm& t) {
  std::string out;
  if (t.constant != 0 || t.coeff.empty()) out = rat_to_string(t.constant);
  for (const auto& [v, k] : t.coeff) {
    Rat a = k < 0 ? Rat(-k) : k;
    std::string mag = a == 1 ? v : rat_to_string(a) + "*" + v;
    if (out.empty())
      out = (k < 0 ? "-" : "") + mag;
    else
      out += (k < 0 ? " - " : " + ") + mag;
  }
  return out;
}

bool LinConstraint::holds(const std::map<std::string, Rat>& assignment) const {
  Rat l = lhs.eval(assignment);
  Rat r = rhs.eval(assignment);
  switch (rel) {
    case Rel::Le: return l <= r;
    case Rel::Lt: return l < r;
    case Rel::Eq: return l == r;
  }
  return false;
}

std::string constraint_to_string(const LinConstraint& c) {
  const char* op = c.rel == Rel::Le ? " <= " : c.rel == Rel::Lt ? " < " : " = ";
  return affine_to_string(c.lhs) + op + affine_to_string(c.rhs);
}

std::string eps_to_string(const EpsRat& v) {
  if (v.b == 0) return rat_to_string(v.a);
  std::string eps = v.b == 1 ? "eps" : v.b == -1 ? "-eps" : rat_to_string(v.b) + "*eps";
  if (v.a == 0) return eps;
  return rat_to_string(v.a) + (v.b > 0 ? " + " : " - ") +
         (v.b == 1 || v.b == -1 ? "eps" : rat_to_string(v.b < 0 ? Rat(-v.b) : v.b) + "*eps");
}

// ===== simplex ==============================================================
//
// Phase-1 simplex over the eps-extended rationals with implicit variable
// bounds.  The tableau keeps rational coefficients; only the transformed
// right-hand side column carries eps parts.  Bland's smallest-index rule is
// used for both the entering and the leaving choice, so the iteration
// terminates.

namespace {

struct Row {
  std::map<std::string, Rat> coeff;
  EpsRat rhs;
  bool equality;
};

struct SimplexResult {
  bool feasible;
  std::map<std::string, EpsRat> values;  // structural variables
};

class Simplex {
 public:
  Simplex(const std::vector<Row>& rows, const std::vector<std::string>& vars,
          const VarBounds& bounds) {
    n_ = vars.size();
    m_ = rows.size();
    var_names_ = vars;
    upper_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) upper_[j] = bounds.upper_of(vars[j]);

    std::map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < n_; ++j) index[vars[j]] = j;

    // column layout: structurals, then one slack per inequality row, then
    // one artificial per row that needs it
    std::size_t slack_count = 0;
    for (const auto& r : rows)
      if (!r.equality) ++slack_count;
    total_ = n_ + slack_count;  // artificials appended below

    a_.assign(m_, std::vector<Rat>(total_, Rat(0)));
    bt_.resize(m_);
    basis_.assign(m_, SIZE_MAX);

    std::size_t next_slack = n_;
    std::vector<std::size_t> needs_artificial;
    for (std::size_t i = 0; i < m_; ++i) {
      const Row& r = rows[i];
      bool negate = r.rhs < EpsRat(Rat(0));
      Rat sign = negate ? Rat(-1) : Rat(1);
      for (const auto& [v, k] : r.coeff) a_[i][index.at(v)] = k * sign;
      bt_[i] = negate ? -r.rhs : r.rhs;
      if (!r.equality) {
        std::size_t s = next_slack++;
        a_[i][s] = sign;
        if (!negate) {
          basis_[i] = s;  // slack starts basic at bt
        } else {
          needs_artificial.push_back(i);
        }
      } else {
        needs_artificial.push_back(i);
      }
    }

    for (std::size_t i : needs_artificial) {
      for (auto& row : a_) row.push_back(Rat(0));
      a_[i][total_] = 1;
      artificial_.insert(total_);
      basis_[i] = total_;
      ++total_;
    }

    upper_.resize(total_);  // slacks and artificials are unbounded above
    at_upper_.assign(total_, false);
    banned_.assign(total_, false);

    // phase-1 reduced costs: artificials cost one; eliminate basic columns
    cost_.assign(total_, Rat(0));
    for (std::size_t c : artificial_) cost_[c] = 1;
    for (std::size_t i = 0; i < m_; ++i) {
      if (artificial_.count(basis_[i])) {
        for (std::size_t k = 0; k < total_; ++k) cost_[k] -= a_[i][k];
      }
    }
  }

  SimplexResult run() {
    // Bland's rule terminates; the guard turns a latent bookkeeping bug into
    // a loud failure instead of a hang.
    std::size_t guard = 1000 + 200 * (m_ + total_);
    for (std::size_t iter = 0;; ++iter) {
      if (iter > guard) throw std::logic_error("simplex exceeded its iteration guard");
      if (objective().is_zero()) break;

      std::size_t enter = SIZE_MAX;
      for (std::size_t j = 0; j < total_; ++j) {
        if (banned_[j] || is_basic(j)) continue;
        bool eligible = at_upper_[j] ? cost_[j] > 0 : cost_[j] < 0;
        if (eligible) {
          enter = j;
          break;
        }
      }
      if (enter == SIZE_MAX) break;  // optimal

      pivot_or_flip(enter);
    }

    SimplexResult out;
    out.feasible = objective().is_zero();
    if (out.feasible) {
      std::vector<EpsRat> beta = basic_values();
      std::map<std::size_t, EpsRat> value;
      for (std::size_t i = 0; i < m_; ++i) value[basis_[i]] = beta[i];
      for (std::size_t j = 0; j < n_; ++j) {
        EpsRat v;
        if (auto it = value.find(j); it != value.end())
          v = it->second;
        else if (at_upper_[j])
          v = EpsRat(*upper_[j]);
        out.values[var_names_[j]] = v;
      }
    }
    return out;
  }

 private:
  bool is_basic(std::size_t j) const {
    return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
  }

  std::vector<EpsRat> basic_values() const {
    std::vector<EpsRat> beta = bt_;
    for (std::size_t j = 0; j < total_; ++j) {
      if (!at_upper_[j] || is_basic(j)) continue;
      const Rat& u = *upper_[j];
      for (std::size_t i = 0; i < m_; ++i) {
        if (a_[i][j] != 0) beta[i] = beta[i] - EpsRat(a_[i][j] * u);
      }
    }
    return beta;
  }

  EpsRat objective() const {
    std::vector<EpsRat> beta = basic_values();
    EpsRat obj;
    for (std::size_t i = 0; i < m_; ++i)
      if (artificial_.count(basis_[i])) obj = obj + beta[i];
    return obj;
  }

  void pivot_or_flip(std::size_t enter) {
    // direction: +1 when rising from the lower bound, -1 when falling from
    // the upper bound
    Rat sigma = at_upper_[enter] ? Rat(-1) : Rat(1);

    std::vector<EpsRat> beta = basic_values();

    bool own_limit = upper_[enter].has_value();
    EpsRat own_t = own_limit ? EpsRat(*upper_[enter]) : EpsRat();

    bool have_row_limit = false;
    EpsRat best_t;
    std::size_t best_row = SIZE_MAX;
    bool leaves_at_upper = false;

    for (std::size_t i = 0; i < m_; ++i) {
      Rat w = a_[i][enter] * sigma;
      if (w > 0) {
        EpsRat t = beta[i].scaled(1 / w);
        if (!have_row_limit || t < best_t ||
            (t == best_t && basis_[i] < basis_[best_row])) {
          have_row_limit = true;
          best_t = t;
          best_row = i;
          leaves_at_upper = false;
        }
      } else if (w < 0 && upper_[basis_[i]].has_value()) {
        EpsRat gap = EpsRat(*upper_[basis_[i]]) - beta[i];
        EpsRat t = gap.scaled(1 / Rat(-w));
        if (!have_row_limit || t < best_t ||
            (t == best_t && basis_[i] < basis_[best_row])) {
          have_row_limit = true;
          best_t = t;
          best_row = i;
          leaves_at_upper = true;
        }
      }
    }

    if (!have_row_limit && !own_limit)
      throw std::logic_error("phase-1 objective is unbounded, which cannot happen");

    if (own_limit && (!have_row_limit || own_t < best_t)) {
      at_upper_[enter] = !at_upper_[enter];  // bound flip, no basis change
      return;
    }

    std::size_t r = best_row;
    std::size_t leave = basis_[r];

    // row operations
    Rat pv = a_[r][enter];
    for (std::size_t k = 0; k < total_; ++k) a_[r][k] /= pv;
    bt_[r] = bt_[r].scaled(1 / pv);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || a_[i][enter] == 0) continue;
      Rat factor = a_[i][enter];
      for (std::size_t k = 0; k < total_; ++k) a_[i][k] -= factor * a_[r][k];
      bt_[i] = bt_[i] - bt_[r].scaled(factor);
    }
    if (cost_[enter] != 0) {
      Rat factor = cost_[enter];
      for (std::size_t k = 0; k < total_; ++k) cost_[k] -= factor * a_[r][k];
    }

    basis_[r] = enter;
    at_upper_[enter] = false;
    at_upper_[leave] = leaves_at_upper;
    if (artificial_.count(leave)) banned_[leave] = true;
  }

  std::size_t n_ = 0, m_ = 0, total_ = 0;
  std::vector<std::string> var_names_;
  std::vector<std::optional<Rat>> upper_;
  std::vector<std::vector<Rat>> a_;
  std::vector<EpsRat> bt_;
  std::vector<std::size_t> basis_;
  std::vector<bool> at_upper_;
  std::vector<bool> banned_;
  std::vector<Rat> cost_;
  std::set<std::size_t> artificial_;
};

// Normalizes user constraints to rows over free (non-fixed) variables and
// collects the variable universe.
struct Prepared {
  std::vector<Row> rows;
  std::vector<std::string> vars;          // free variables, sorted
  std::vector<std::string> fixed;         // variables clamped to zero by upper == 0
  bool trivially_infeasible = false;
};

Prepared prepare(const std::vector<LinConstraint>& system, const VarBounds& bounds) {
  Prepared p;
  std::set<std::string> vars;
  for (const auto& c : system) {
    for (const auto& [v, k] : c.lhs.coeff) vars.insert(v);
    for (const auto& [v, k] : c.rhs.coeff) vars.insert(v);
  }
  for (const auto& [v, u] : bounds.upper) vars.insert(v);

  std::set<std::string> fixed;
  for (const auto& v : vars) {
    auto u = bounds.upper_of(v);
    if (u.has_value() && *u == 0) fixed.insert(v);
  }

  for (const auto& v : vars) {
    if (fixed.count(v))
      p.fixed.push_back(v);
    else
      p.vars.push_back(v);
  }

  for (const auto& c : system) {
    AffineTerm t = c.lhs - c.rhs;
    Row row;
    for (const auto& [v, k] : t.coeff) {
      if (!fixed.count(v)) row.coeff[v] = k;
    }
    Rat rhs_const = -t.constant;
    switch (c.rel) {
      case Rel::Le:
        row.rhs = EpsRat(rhs_const);
        row.equality = false;
        break;
      case Rel::Lt:
        row.rhs = EpsRat(rhs_const, Rat(-1));
        row.equality = false;
        break;
      case Rel::Eq:
        row.rhs = EpsRat(rhs_const);
        row.equality = true;
        break;
    }
    if (row.coeff.empty()) {
      // ground facts are decided immediately
      bool ok = row.equality ? row.rhs.is_zero() : EpsRat() <= row.rhs;
      if (!ok) p.trivially_infeasible = true;
      continue;
    }
    p.rows.push_back(std::move(row));
  }
  return p;
}

// Turns an eps-assignment into a rational one: substitute a positive delta
// for eps, small enough that every constraint and bound keeps its (possibly
// strict) status.
std::map<std::string, Rat> rationalize(const std::vector<LinConstraint>& system,
                                       const VarBounds& bounds,
                                       const std::map<std::string, EpsRat>& values) {
  std::vector<Rat> limits;  // collected strict-positive upper limits for delta

  auto consider = [&](const Rat& p, const Rat& q) {
    // need p + q*delta (<)= 0 given p (<)= 0 in the lex sense handled by caller;
    // only the q > 0, p < 0 case limits delta
    if (q > 0 && p < 0) limits.push_back(Rat(-p / q));
  };

  for (const auto& c : system) {
    AffineTerm t = c.lhs - c.rhs;
    Rat p = t.constant, q(0);
    for (const auto& [v, k] : t.coeff) {
      auto it = values.find(v);
      if (it == values.end()) continue;  // fixed-at-zero variable
      p += k * it->second.a;
      q += k * it->second.b;
    }
    switch (c.rel) {
      case Rel::Eq:
        if (p != 0 || q != 0)
          throw std::logic_error("equality constraint not satisfied by the eps-solution");
        break;
      case Rel::Le:
      case Rel::Lt:
        consider(p, q);
        break;
    }
  }
  for (const auto& [v, val] : values) {
    // lower bound zero: need a + b*delta >= 0
    consider(-val.a, -val.b);
    auto u = bounds.upper_of(v);
    if (u.has_value()) consider(val.a - *u, val.b);
  }

  Rat delta(1, 2);
  for (const Rat& lim : limits) delta = std::min(delta, Rat(lim / 2));

  std::map<std::string, Rat> out;
  for (const auto& [v, val] : values) out[v] = val.a + val.b * delta;
  return out;
}

Feasibility solve(const std::vector<LinConstraint>& system, const VarBounds& bounds) {
  Prepared p = prepare(system, bounds);
  if (p.trivially_infeasible) return {};

  SimplexResult r = Simplex(p.rows, p.vars, bounds).run();
  if (!r.feasible) return {};

  Feasibility out;
  out.feasible = true;
  out.assignment = rationalize(system, bounds, r.values);
  for (const auto& v : p.fixed) out.assignment[v] = 0;

  for (const auto& c : system) {
    if (!c.holds(out.assignment))
      throw std::logic_error("solver produced a witness violating '" + constraint_to_string(c) +
                             "'");
  }
  for (const auto& [v, val] : out.assignment) {
    auto u = bounds.upper_of(v);
    if (val < 0 || (u.has_value() && val > *u))
      throw std::logic_error("solver produced a witness out of bounds for '" + v + "'");
  }
  return out;
}

}  // namespace

Feasibility feasible(const std::vector<LinConstraint>& system, const VarBounds& bounds) {
  return solve(system, bounds);
}

Feasibility vertex_solution(const std::vector<LinConstraint>& system, const VarBounds& bounds) {
  return solve(system, bounds);
}

}  // namespace bdluk
