#include <algorithm>
#include <set>

#include "vault/query.hpp"

namespace vault {

namespace {

// Translates one pattern under a binding into a concrete scan filter.
// nullopt result = a bound variable landed somewhere it cannot match
// (a literal as subject or predicate), so there are no solutions.
std::optional<TriplePattern> ground(const QueryPattern& qp, const Binding& b) {
  TriplePattern out;

  auto iri_pos = [&](const PatternTerm& pt, std::optional<Iri>& slot) {
    if (const auto* t = std::get_if<Term>(&pt)) {
      if (!t->is_iri()) return false;
      slot = t->iri();
      return true;
    }
    const auto& v = std::get<Variable>(pt);
    auto it = b.find(v.name);
    if (it == b.end()) return true;  // wildcard
    if (!it->second.is_iri()) return false;
    slot = it->second.iri();
    return true;
  };

  if (!iri_pos(qp.subject, out.subject)) return std::nullopt;
  if (!iri_pos(qp.predicate, out.predicate)) return std::nullopt;

  if (const auto* t = std::get_if<Term>(&qp.object)) {
    out.object = *t;
  } else {
    const auto& v = std::get<Variable>(qp.object);
    auto it = b.find(v.name);
    if (it != b.end()) out.object = it->second;
  }
  return out;
}

// Extends b with the variable bindings this triple induces; false on clash
// (same variable already bound to a different term).
bool unify(const QueryPattern& qp, const Triple& t, Binding& b) {
  auto bind = [&](const PatternTerm& pt, const Term& value) {
    if (const auto* v = std::get_if<Variable>(&pt)) {
      auto [it, fresh] = b.emplace(v->name, value);
      return fresh || it->second == value;
    }
    return true;  // concrete position, scan already matched it
  };
  return bind(qp.subject, Term(t.subject)) && bind(qp.predicate, Term(t.predicate)) &&
         bind(qp.object, t.object);
}

void match_rec(const Graph& g, std::span<const QueryPattern> patterns, std::size_t i,
               Binding& b, std::vector<Binding>& out) {
  if (i == patterns.size()) {
    out.push_back(b);
    return;
  }
  auto concrete = ground(patterns[i], b);
  if (!concrete) return;
  for (const Triple& t : g.scan(*concrete)) {
    Binding next = b;
    if (unify(patterns[i], t, next)) match_rec(g, patterns, i + 1, next, out);
  }
}

const Term* operand_value(const FilterOperand& op, const Binding& b,
                          std::optional<Term>& now_storage, const Date& now) {
  switch (op.kind) {
    case FilterOperand::Kind::Var: {
      auto it = b.find(op.var);
      return it == b.end() ? nullptr : &it->second;
    }
    case FilterOperand::Kind::Lit:
      return &op.lit.front();
    case FilterOperand::Kind::Now:
      if (!now_storage) now_storage = Term(Literal(now.str(), xsd::date_type()));
      return &*now_storage;
  }
  return nullptr;
}

bool filter_passes(const Filter& f, const Binding& b, const Date& now) {
  std::optional<Term> now_l, now_r;
  const Term* lhs = operand_value(f.lhs, b, now_l, now);
  const Term* rhs = operand_value(f.rhs, b, now_r, now);
  if (!lhs || !rhs) return false;
  if (!lhs->is_literal() || !rhs->is_literal()) return false;
  const Literal& a = lhs->literal();
  const Literal& c = rhs->literal();
  if (!(a.datatype() == c.datatype())) return false;

  int cmp;
  if (a.is_date()) {
    auto da = Date::parse(a.lexical());
    auto dc = Date::parse(c.lexical());
    cmp = da->to_days() < dc->to_days() ? -1 : (da->to_days() == dc->to_days() ? 0 : 1);
  } else {
    int raw = a.lexical().compare(c.lexical());
    cmp = raw < 0 ? -1 : (raw == 0 ? 0 : 1);
  }

  switch (f.op) {
    case Cmp::Lt: return cmp < 0;
    case Cmp::Le: return cmp <= 0;
    case Cmp::Eq: return cmp == 0;
    case Cmp::Ne: return cmp != 0;
    case Cmp::Ge: return cmp >= 0;
    case Cmp::Gt: return cmp > 0;
  }
  return false;
}

}  // namespace

std::vector<Binding> match_patterns(const Graph& g, std::span<const QueryPattern> patterns) {
  std::vector<Binding> out;
  Binding b;
  match_rec(g, patterns, 0, b, out);
  return out;
}

std::vector<Binding> select(const Graph& g, const Query& q, std::span<const Rule> rules,
                            const Date& now) {
  Graph closed = inference_closure(g, rules);

  std::vector<Binding> solutions = match_patterns(closed, q.patterns);

  // project to select_vars, de-duplicate, order by canonical forms
  std::vector<std::pair<std::vector<std::string>, Binding>> rows;
  std::set<std::vector<std::string>> seen;
  for (const Binding& sol : solutions) {
    bool pass = true;
    for (const Filter& f : q.filters) {
      if (!filter_passes(f, sol, now)) {
        pass = false;
        break;
      }
    }
    if (!pass) continue;

    std::vector<std::string> key;
    Binding projected;
    for (const std::string& var : q.select_vars) {
      const Term& t = sol.at(var);
      key.push_back(t.canonical());
      projected.emplace(var, t);
    }
    if (seen.insert(key).second) rows.emplace_back(std::move(key), std::move(projected));
  }

  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Binding> out;
  out.reserve(rows.size());
  for (auto& [key, binding] : rows) out.push_back(std::move(binding));
  return out;
}

}  // namespace vault
