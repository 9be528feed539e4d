#include "srl/approx.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace srl {

LTermPtr LTerm::var(std::string name) {
  auto t = std::make_shared<LTerm>();
  t->kind = Var;
  t->name = std::move(name);
  return t;
}

LTermPtr LTerm::lam(std::string name, LTermPtr body) {
  auto t = std::make_shared<LTerm>();
  t->kind = Lam;
  t->name = std::move(name);
  t->body = std::move(body);
  return t;
}

LTermPtr LTerm::app(LTermPtr fun, LTermPtr arg) {
  auto t = std::make_shared<LTerm>();
  t->kind = App;
  t->fun = std::move(fun);
  t->arg = std::move(arg);
  return t;
}

std::string show_lterm(const LTermPtr& m) {
  switch (m->kind) {
    case LTerm::Var:
      return m->name;
    case LTerm::Lam:
      return "\\" + m->name + ". " + show_lterm(m->body);
    case LTerm::App: {
      std::string f = show_lterm(m->fun);
      if (m->fun->kind == LTerm::Lam) f = "(" + f + ")";
      std::string a = show_lterm(m->arg);
      if (m->arg->kind != LTerm::Var) a = "(" + a + ")";
      return f + " " + a;
    }
  }
  return "?";
}

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

bool env_match(const Env& env, const std::string& x, const std::string& y) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == x || it->second == y) return it->first == x && it->second == y;
  return x == y;
}

bool leq(const LTermPtr& a, const LTermPtr& b, Env& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case LTerm::Var:
      return env_match(env, a->name, b->name);
    case LTerm::Lam: {
      env.emplace_back(a->name, b->name);
      bool r = leq(a->body, b->body, env);
      env.pop_back();
      return r;
    }
    case LTerm::App: {
      Env e2 = env;
      return leq(a->fun, b->fun, env) && leq(a->arg, b->arg, e2);
    }
  }
  return false;
}

}  // namespace

bool lterm_eq(const LTermPtr& a, const LTermPtr& b) {
  Env env;
  return leq(a, b, env);
}

namespace {

void lfv(const LTermPtr& m, std::vector<std::string>& bound, std::vector<std::string>& out) {
  switch (m->kind) {
    case LTerm::Var:
      if (std::find(bound.begin(), bound.end(), m->name) == bound.end() &&
          std::find(out.begin(), out.end(), m->name) == out.end())
        out.push_back(m->name);
      break;
    case LTerm::Lam:
      bound.push_back(m->name);
      lfv(m->body, bound, out);
      bound.pop_back();
      break;
    case LTerm::App:
      lfv(m->fun, bound, out);
      lfv(m->arg, bound, out);
      break;
  }
}

LTermPtr lfreshen(const LTermPtr& m, std::map<std::string, std::string>& ren,
                  std::set<std::string>& taken, int& counter) {
  switch (m->kind) {
    case LTerm::Var: {
      auto it = ren.find(m->name);
      return LTerm::var(it == ren.end() ? m->name : it->second);
    }
    case LTerm::Lam: {
      std::string fresh = m->name;
      while (taken.count(fresh)) fresh = m->name + "_" + std::to_string(++counter);
      taken.insert(fresh);
      auto saved = ren.find(m->name) == ren.end() ? std::optional<std::string>{}
                                                  : std::optional<std::string>{ren[m->name]};
      ren[m->name] = fresh;
      LTermPtr body = lfreshen(m->body, ren, taken, counter);
      if (saved)
        ren[m->name] = *saved;
      else
        ren.erase(m->name);
      return LTerm::lam(fresh, body);
    }
    case LTerm::App:
      return LTerm::app(lfreshen(m->fun, ren, taken, counter),
                        lfreshen(m->arg, ren, taken, counter));
  }
  return m;
}

LTermPtr lfreshen_avoiding(const LTermPtr& m, const std::vector<std::string>& avoid) {
  std::map<std::string, std::string> ren;
  std::set<std::string> taken(avoid.begin(), avoid.end());
  for (const std::string& v : lterm_free_vars(m)) taken.insert(v);
  int counter = 0;
  return lfreshen(m, ren, taken, counter);
}

}  // namespace

std::vector<std::string> lterm_free_vars(const LTermPtr& m) {
  std::vector<std::string> bound, out;
  lfv(m, bound, out);
  return out;
}

LTermPtr lterm_freshen(const LTermPtr& m) { return lfreshen_avoiding(m, {}); }

LTermPtr lsubst(const LTermPtr& m, const std::string& x, const LTermPtr& n) {
  switch (m->kind) {
    case LTerm::Var:
      return m->name == x ? n : m;
    case LTerm::Lam: {
      if (m->name == x) return m;
      std::vector<std::string> nfv = lterm_free_vars(n);
      if (std::find(nfv.begin(), nfv.end(), m->name) != nfv.end()) {
        nfv.push_back(x);
        for (const std::string& v : lterm_free_vars(m->body)) nfv.push_back(v);
        int c = 0;
        std::string fresh = m->name;
        while (std::find(nfv.begin(), nfv.end(), fresh) != nfv.end())
          fresh = m->name + "_" + std::to_string(++c);
        LTermPtr body = lsubst(m->body, m->name, LTerm::var(fresh));
        return LTerm::lam(fresh, lsubst(body, x, n));
      }
      return LTerm::lam(m->name, lsubst(m->body, x, n));
    }
    case LTerm::App:
      return LTerm::app(lsubst(m->fun, x, n), lsubst(m->arg, x, n));
  }
  return m;
}

namespace {

void lredexes(const LTermPtr& m, std::vector<int>& here, std::vector<std::vector<int>>& out) {
  switch (m->kind) {
    case LTerm::Var:
      break;
    case LTerm::Lam:
      here.push_back(0);
      lredexes(m->body, here, out);
      here.pop_back();
      break;
    case LTerm::App:
      if (m->fun->kind == LTerm::Lam) out.push_back(here);
      here.push_back(0);
      lredexes(m->fun, here, out);
      here.back() = 1;
      lredexes(m->arg, here, out);
      here.pop_back();
      break;
  }
}

}  // namespace

std::vector<std::vector<int>> lbeta_redexes(const LTermPtr& m) {
  std::vector<int> here;
  std::vector<std::vector<int>> out;
  lredexes(m, here, out);
  return out;
}

LTermPtr lbeta_step(const LTermPtr& m, const std::vector<int>& pos) {
  if (pos.empty()) {
    if (m->kind != LTerm::App || m->fun->kind != LTerm::Lam)
      throw CheckError("InvalidPosition", "no beta-redex at the given position");
    return lsubst(m->fun->body, m->fun->name, m->arg);
  }
  std::vector<int> rest(pos.begin() + 1, pos.end());
  switch (m->kind) {
    case LTerm::Lam:
      if (pos[0] == 0) return LTerm::lam(m->name, lbeta_step(m->body, rest));
      break;
    case LTerm::App:
      if (pos[0] == 0) return LTerm::app(lbeta_step(m->fun, rest), m->arg);
      if (pos[0] == 1) return LTerm::app(m->fun, lbeta_step(m->arg, rest));
      break;
    default:
      break;
  }
  throw CheckError("InvalidPosition", "path leaves the term");
}

namespace {

bool approx_rec(const TermPtr& s, const LTermPtr& m, Env& env) {
  switch (s->kind) {
    case Term::Var:
      return m->kind == LTerm::Var && env_match(env, s->name, m->name);
    case Term::Abs: {
      if (m->kind != LTerm::Lam) return false;
      env.emplace_back(s->name, m->name);
      bool r = approx_rec(s->sub, m->body, env);
      env.pop_back();
      return r;
    }
    case Term::App: {
      if (m->kind != LTerm::App) return false;
      if (!approx_rec(s->sub, m->fun, env)) return false;
      for (const TermPtr& e : s->bag) {
        Env e2 = env;
        if (!approx_rec(e, m->arg, e2)) return false;
      }
      return true;
    }
  }
  return false;
}

struct CohMemo {
  std::map<std::string, bool> memo;

  static std::string key(const TermPtr& a, const TermPtr& b, const Env& env) {
    std::ostringstream out;
    out << a.get() << "|" << b.get();
    for (auto& [l, r] : env) out << "|" << l << "=" << r;
    return out.str();
  }

  bool coh(const TermPtr& a, const TermPtr& b, Env& env) {
    std::string k = key(a, b, env);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    bool r = coh_rec(a, b, env);
    memo[k] = r;
    return r;
  }

  bool coh_rec(const TermPtr& a, const TermPtr& b, Env& env) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Term::Var:
        return env_match(env, a->name, b->name);
      case Term::Abs: {
        env.emplace_back(a->name, b->name);
        bool r = coh(a->sub, b->sub, env);
        env.pop_back();
        return r;
      }
      case Term::App: {
        if (!coh(a->sub, b->sub, env)) return false;
        for (const TermPtr& x : a->bag)
          for (const TermPtr& y : b->bag) {
            Env e2 = env;
            if (!coh(x, y, e2)) return false;
          }
        return true;
      }
    }
    return false;
  }
};

}  // namespace

bool approximates(const TermPtr& s, const LTermPtr& m) {
  Env env;
  return approx_rec(s, m, env);
}

bool coherent(const TermPtr& s, const TermPtr& t) {
  CohMemo c;
  Env env;
  return c.coh(s, t, env);
}

bool coherent_types(const TypePtr& a, const TypePtr& b) {
  if (a->is_atom != b->is_atom) return false;
  if (a->is_atom) return true;
  return coherent_lists(a->source, b->source) && coherent_types(a->target, b->target);
}

bool coherent_lists(const TypeList& a, const TypeList& b) {
  for (const TypePtr& x : a)
    for (const TypePtr& y : b)
      if (!coherent_types(x, y)) return false;
  return true;
}

bool is_uniform(const TermPtr& s) {
  switch (s->kind) {
    case Term::Var:
      return true;
    case Term::Abs:
      if (s->ann && !s->ann->is_ground()) return false;
      return is_uniform(s->sub);
    case Term::App: {
      if (!is_uniform(s->sub)) return false;
      if (s->bag.empty()) return false;
      for (const TermPtr& e : s->bag)
        if (!is_uniform(e)) return false;
      for (size_t i = 0; i < s->bag.size(); ++i)
        for (size_t j = i; j < s->bag.size(); ++j)
          if (!coherent(s->bag[i], s->bag[j])) return false;
      return true;
    }
  }
  return false;
}

bool is_strongly_uniform(const TermPtr& s) {
  switch (s->kind) {
    case Term::Var:
      return true;
    case Term::Abs:
      if (s->ann && !s->ann->is_ground()) return false;
      return is_strongly_uniform(s->sub);
    case Term::App: {
      if (!is_strongly_uniform(s->sub)) return false;
      if (s->bag.empty()) return false;
      for (const TermPtr& e : s->bag)
        if (!is_strongly_uniform(e)) return false;
      for (size_t i = 1; i < s->bag.size(); ++i)
        if (!term_eq(s->bag[i], s->bag[0])) return false;
      return true;
    }
  }
  return false;
}

bool type_strongly_uniform(const TypePtr& a) {
  if (a->is_atom) return true;
  for (const TypePtr& x : a->source) {
    if (!type_eq(x, a->source[0])) return false;
    if (!type_strongly_uniform(x)) return false;
  }
  return type_strongly_uniform(a->target);
}

namespace {

bool type_singleton_bags(const TypePtr& a) {
  if (a->is_atom) return true;
  if (a->source.size() != 1) return false;
  return type_singleton_bags(a->source[0]) && type_singleton_bags(a->target);
}

bool term_singleton_bags(const TermPtr& s) {
  switch (s->kind) {
    case Term::Var:
      return true;
    case Term::Abs:
      return term_singleton_bags(s->sub);
    case Term::App: {
      if (s->bag.size() != 1) return false;
      if (!term_singleton_bags(s->sub)) return false;
      return term_singleton_bags(s->bag[0]);
    }
  }
  return false;
}

}  // namespace

bool is_qualitative(const DerivPtr& d) {
  TermPtr s = erase(d);
  if (!is_strongly_uniform(s)) return false;
  if (!term_singleton_bags(s)) return false;
  if (!type_singleton_bags(d->ty)) return false;
  for (const auto& [x, list] : d->ctx.entries) {
    for (const TypePtr& a : list) {
      if (!type_eq(a, list[0])) return false;
      if (!type_strongly_uniform(a)) return false;
    }
  }
  return true;
}

namespace {

// Types and type lists indexed by exact node count, filled on demand.
struct TypeTables {
  std::vector<std::vector<TypePtr>> types = {{}};   // types[k]: size exactly k
  std::vector<std::vector<TypeList>> lists = {{{}}};  // lists[k]: total exactly k

  void fill(int bound) {
    for (int k = static_cast<int>(types.size()); k <= bound; ++k) {
      std::vector<TypePtr> tk;
      if (k == 1) tk.push_back(Type::atom());
      // arrows: 1 + |source| + |target| = k
      for (int l = 0; l + 2 <= k; ++l)
        for (const TypeList& src : lists[l])
          for (const TypePtr& tgt : types[k - 1 - l]) tk.push_back(Type::arrow(src, tgt));
      types.push_back(std::move(tk));
      std::vector<TypeList> lk;
      for (int s = 1; s <= k; ++s)
        for (const TypePtr& a : types[s])
          for (const TypeList& rest : lists[k - s]) {
            TypeList next = {a};
            next.insert(next.end(), rest.begin(), rest.end());
            lk.push_back(std::move(next));
          }
      lists.push_back(std::move(lk));
    }
  }
};

TypeTables& type_tables() {
  static TypeTables t;
  return t;
}

}  // namespace

std::vector<TypePtr> enumerate_types(int bound) {
  std::vector<TypePtr> out;
  if (bound < 1) return out;
  TypeTables& t = type_tables();
  t.fill(bound);
  for (int k = 1; k <= bound; ++k)
    out.insert(out.end(), t.types[k].begin(), t.types[k].end());
  return out;
}

namespace {

struct Cand {
  TermPtr term;
  int cost;
  TypePtr ty;
  std::vector<std::pair<std::string, TypePtr>> occs;  // free occurrences in term order
};

// Equal-type partitions of the occurrence list: each occurrence joins an
// existing class of the same type or opens a new one; classes are ordered by
// first occurrence.
void partitions(const TypeList& tgt, size_t i, std::vector<int>& assign, TypeList& reps,
                std::vector<std::pair<std::vector<int>, TypeList>>& out) {
  if (i == tgt.size()) {
    out.emplace_back(assign, reps);
    return;
  }
  for (size_t c = 0; c < reps.size(); ++c) {
    if (!type_eq(reps[c], tgt[i])) continue;
    assign.push_back(static_cast<int>(c));
    partitions(tgt, i + 1, assign, reps, out);
    assign.pop_back();
  }
  reps.push_back(tgt[i]);
  assign.push_back(static_cast<int>(reps.size()) - 1);
  partitions(tgt, i + 1, assign, reps, out);
  assign.pop_back();
  reps.pop_back();
}

// Weakened (unhit) annotation entries: lists of types with total size within
// the budget.
void junk_lists(const std::vector<TypePtr>& pool, int cap, TypeList cur, int used,
                std::vector<std::pair<TypeList, int>>& out) {
  out.emplace_back(cur, used);
  for (const TypePtr& a : pool) {
    int sz = type_size(a);
    if (used + sz > cap) continue;
    TypeList next = cur;
    next.push_back(a);
    junk_lists(pool, cap, std::move(next), used + sz, out);
  }
}

// Type-directed enumeration. Candidates carry their type; demands flow from
// abstractions into bodies and from function types into argument bags, so
// blind type choices remain only at bare variable occurrences and annotation
// junk, where they are charged against the budget. In "charged" positions
// (bag elements under a variable head) the candidate's type reappears inside
// the head occurrence's type, so the budget bounds cost + type size there.
struct Enum {
  Flavor flavor;

  struct CacheEntry {
    int budget = -1;
    std::vector<Cand> cands;
  };
  std::map<std::string, CacheEntry> cache;

  static std::string key(const LTerm* m, const TypePtr* demand, bool charged) {
    std::ostringstream out;
    out << m << (charged ? "|c|" : "|f|") << (demand ? show_type(*demand) : "-");
    return out.str();
  }

  static int charge_of(const Cand& c, bool charged) {
    return charged ? c.cost + type_size(c.ty) : c.cost;
  }

  std::vector<Cand> run(const LTermPtr& m, int budget, const TypePtr* demand, bool charged) {
    if (budget <= 0) return {};
    std::string k = key(m.get(), demand, charged);
    auto it = cache.find(k);
    if (it == cache.end() || it->second.budget < budget) {
      CacheEntry e;
      e.budget = budget;
      e.cands = compute(m, budget, demand, charged);
      cache[k] = std::move(e);
      it = cache.find(k);
    }
    std::vector<Cand> out;
    for (const Cand& c : it->second.cands)
      if (charge_of(c, charged) <= budget) out.push_back(c);
    return out;
  }

  std::vector<Cand> compute(const LTermPtr& m, int budget, const TypePtr* demand, bool charged) {
    std::vector<Cand> out;
    switch (m->kind) {
      case LTerm::Var: {
        if (demand) {
          Cand c{Term::var(m->name), 1 + type_size(*demand), *demand, {{m->name, *demand}}};
          if (charge_of(c, charged) <= budget) out.push_back(std::move(c));
        } else {
          int cap = charged ? (budget - 1) / 2 : budget - 1;
          for (const TypePtr& a : enumerate_types(cap)) {
            Cand c{Term::var(m->name), 1 + type_size(a), a, {{m->name, a}}};
            if (charge_of(c, charged) <= budget) out.push_back(std::move(c));
          }
        }
        break;
      }
      case LTerm::Lam:
        if (demand)
          lam_demand(m, budget, *demand, out);
        else
          for (const Cand& c0 : run(m->body, budget - 1, nullptr, charged))
            close_lam(m, budget, c0, c0.ty, charged, true, out);
        break;
      case LTerm::App:
        app_case(m, budget, demand, charged, out);
        break;
    }
    return out;
  }

  static void split_occs(const Cand& c0, const std::string& x, TypeList& tgt,
                         std::vector<std::pair<std::string, TypePtr>>& rest) {
    for (auto& [v, a] : c0.occs)
      (v == x ? (void)tgt.push_back(a) : (void)rest.push_back({v, a}));
  }

  // Abstraction with a free source: canonical partitions plus junk. In
  // applied position the junk entries are supplied by the argument bag
  // instead (with_junk = false there).
  void close_lam(const LTermPtr& m, int budget, const Cand& c0, const TypePtr& body_ty,
                 bool charged, bool with_junk, std::vector<Cand>& out) {
    TypeList tgt;
    std::vector<std::pair<std::string, TypePtr>> rest;
    split_occs(c0, m->name, tgt, rest);
    int left = budget - c0.cost - 1;
    if (left < 0) return;
    if (flavor == Flavor::Linear) {
      Cand c{Term::abs(m->name, ListMorph::identity(tgt), c0.term), c0.cost + 1,
             Type::arrow(tgt, body_ty), rest};
      if (charge_of(c, charged) <= budget) out.push_back(std::move(c));
      return;
    }
    std::vector<std::pair<std::vector<int>, TypeList>> parts;
    std::vector<int> assign;
    TypeList reps;
    partitions(tgt, 0, assign, reps, parts);
    std::vector<std::pair<TypeList, int>> junks = {{{}, 0}};
    if (with_junk) {
      junks.clear();
      junk_lists(enumerate_types(left), left, {}, 0, junks);
    }
    for (auto& [asg, classes] : parts) {
      for (auto& [junk, jcost] : junks) {
        TypeList src = classes;
        for (const TypePtr& j : junk) src.push_back(j);
        IndexMap table;
        table.codomain = static_cast<int>(src.size());
        for (int c : asg) table.table.push_back(c + 1);
        Cand c{Term::abs(m->name, ListMorph::ground(src, std::move(table)), c0.term),
               c0.cost + 1 + jcost, Type::arrow(src, body_ty), rest};
        if (charge_of(c, charged) <= budget) out.push_back(std::move(c));
      }
    }
  }

  // Abstraction whose full type is demanded: assign each occurrence to a
  // matching entry of the demanded source; unhit entries are junk.
  void lam_demand(const LTermPtr& m, int budget, const TypePtr& demand,
                  std::vector<Cand>& out) {
    if (demand->is_atom) return;
    const TypeList& S = demand->source;
    for (const Cand& c0 : run(m->body, budget - 1, &demand->target, false)) {
      TypeList tgt;
      std::vector<std::pair<std::string, TypePtr>> rest;
      split_occs(c0, m->name, tgt, rest);
      if (flavor == Flavor::Linear && tgt.size() != S.size()) continue;
      std::vector<std::vector<int>> choices;
      bool dead = false;
      for (const TypePtr& a : tgt) {
        std::vector<int> ix;
        for (size_t j = 0; j < S.size(); ++j)
          if (type_eq(S[j], a)) ix.push_back(static_cast<int>(j));
        if (ix.empty()) {
          dead = true;
          break;
        }
        choices.push_back(std::move(ix));
      }
      if (dead) continue;
      std::vector<int> asg(tgt.size(), -1);
      std::vector<int> hits(S.size(), 0);
      assign_dfs(m, budget, demand, c0, rest, choices, 0, asg, hits, out);
    }
  }

  void assign_dfs(const LTermPtr& m, int budget, const TypePtr& demand, const Cand& c0,
                  const std::vector<std::pair<std::string, TypePtr>>& rest,
                  const std::vector<std::vector<int>>& choices, size_t i, std::vector<int>& asg,
                  std::vector<int>& hits, std::vector<Cand>& out) {
    const TypeList& S = demand->source;
    if (i == choices.size()) {
      int jcost = 0;
      for (size_t j = 0; j < S.size(); ++j)
        if (!hits[j]) {
          if (flavor == Flavor::Linear) return;
          jcost += type_size(S[j]);
        }
      int cost = c0.cost + 1 + jcost;
      if (cost > budget) return;
      IndexMap table;
      table.codomain = static_cast<int>(S.size());
      for (int a : asg) table.table.push_back(a + 1);
      out.push_back(Cand{Term::abs(m->name, ListMorph::ground(S, std::move(table)), c0.term),
                         cost, demand, rest});
      return;
    }
    for (int j : choices[i]) {
      if (flavor == Flavor::Linear && hits[j]) continue;
      asg[i] = j;
      ++hits[j];
      assign_dfs(m, budget, demand, c0, rest, choices, i + 1, asg, hits, out);
      --hits[j];
    }
  }

  void app_case(const LTermPtr& m, int budget, const TypePtr* demand, bool charged,
                std::vector<Cand>& out) {
    if (m->fun->kind == LTerm::Var) {
      // Head occurrence: the head's type is built from the bag types and the
      // (demanded or blind) result, so bag elements are charged for the copy
      // of their type inside the head.
      std::vector<Cand> elems = run(m->arg, budget - 4, nullptr, true);
      std::vector<size_t> pick;
      head_bags(m, budget, demand, charged, elems, 0, 0, 0, pick, out);
      return;
    }
    std::vector<Cand> funs;
    bool extendable = m->fun->kind == LTerm::Lam;
    if (extendable) {
      // Junkless closures; weakened entries come from the bag below.
      for (const Cand& c0 : run(m->fun->body, budget - 3, demand, false))
        close_lam(m->fun, budget - 2, c0, demand ? *demand : c0.ty, false, false, funs);
    } else {
      funs = run(m->fun, budget - 2, nullptr, false);
    }
    for (const Cand& f : funs) {
      if (f.ty->is_atom) continue;
      if (demand && !type_eq(f.ty->target, *demand)) continue;
      int rem = budget - 2 - f.cost;
      if (rem < 0) continue;
      std::vector<Cand> picked;
      bag_dfs(m, budget, charged, extendable, f, 0, rem, picked, out);
    }
  }

  void head_bags(const LTermPtr& m, int budget, const TypePtr* demand, bool charged,
                 const std::vector<Cand>& elems, size_t start, int csum, int ssum,
                 std::vector<size_t>& pick, std::vector<Cand>& out) {
    // Emit with the current bag.
    int base = 2 + csum + 2 + ssum;  // app + elements + head var + arrow node + sources
    int tcap = budget - base;
    if (charged) tcap /= 2;
    std::vector<TypePtr> results;
    if (demand) {
      if (type_size(*demand) <= tcap) results.push_back(*demand);
    } else {
      results = enumerate_types(tcap);
    }
    for (const TypePtr& t : results) {
      TypeList bag_ty;
      std::vector<TermPtr> bag;
      for (size_t i : pick) {
        bag_ty.push_back(elems[i].ty);
        bag.push_back(elems[i].term);
      }
      TypePtr head = Type::arrow(bag_ty, t);
      Cand c;
      c.term = Term::app(Term::var(m->fun->name), std::move(bag));
      c.cost = 2 + csum + 1 + type_size(head);
      c.ty = t;
      c.occs = {{m->fun->name, head}};
      for (size_t i : pick)
        for (auto& o : elems[i].occs) c.occs.push_back(o);
      if (charge_of(c, charged) <= budget) out.push_back(std::move(c));
    }
    for (size_t i = start; i < elems.size(); ++i) {
      int ec = elems[i].cost, es = type_size(elems[i].ty);
      if (2 + csum + ec + 2 + ssum + es + 1 > budget) continue;
      pick.push_back(i);
      head_bags(m, budget, demand, charged, elems, i, csum + ec, ssum + es, pick, out);
      pick.pop_back();
    }
  }

  void bag_dfs(const LTermPtr& m, int budget, bool charged, bool extendable, const Cand& f,
               size_t i, int rem, std::vector<Cand>& picked, std::vector<Cand>& out) {
    const TypeList& S = f.ty->source;
    if (i == S.size()) {
      std::vector<Cand> junk;
      emit_app(budget, charged, f, picked, junk, out);
      if (extendable && flavor != Flavor::Linear) {
        std::vector<Cand> pool = run(m->arg, rem - 1, nullptr, true);
        junk_dfs(budget, charged, f, picked, pool, 0, rem, junk, out);
      }
      return;
    }
    for (const Cand& e : run(m->arg, rem, &S[i], false)) {
      picked.push_back(e);
      bag_dfs(m, budget, charged, extendable, f, i + 1, rem - e.cost, picked, out);
      picked.pop_back();
    }
  }

  // Weakened bag elements: their types extend the abstraction's annotation
  // source as unhit entries, charged like the elements themselves.
  void junk_dfs(int budget, bool charged, const Cand& f, const std::vector<Cand>& picked,
                const std::vector<Cand>& pool, size_t start, int rem, std::vector<Cand>& junk,
                std::vector<Cand>& out) {
    for (size_t i = start; i < pool.size(); ++i) {
      int ch = pool[i].cost + type_size(pool[i].ty);
      if (ch > rem) continue;
      junk.push_back(pool[i]);
      emit_app(budget, charged, f, picked, junk, out);
      junk_dfs(budget, charged, f, picked, pool, i, rem - ch, junk, out);
      junk.pop_back();
    }
  }

  void emit_app(int budget, bool charged, const Cand& f, const std::vector<Cand>& picked,
                const std::vector<Cand>& junk, std::vector<Cand>& out) {
    Cand c;
    std::vector<TermPtr> bag;
    c.cost = f.cost + 2;
    c.ty = f.ty->target;
    c.occs = f.occs;
    TermPtr fun_term = f.term;
    for (const Cand& e : picked) {
      bag.push_back(e.term);
      c.cost += e.cost;
      for (auto& o : e.occs) c.occs.push_back(o);
    }
    if (!junk.empty()) {
      TypeList src = f.ty->source;
      for (const Cand& e : junk) {
        bag.push_back(e.term);
        src.push_back(e.ty);
        c.cost += e.cost + type_size(e.ty);
        for (auto& o : e.occs) c.occs.push_back(o);
      }
      fun_term = Term::abs(f.term->name, ListMorph::ground(src, f.term->ann->alpha),
                           f.term->sub);
    }
    c.term = Term::app(fun_term, std::move(bag));
    if (charge_of(c, charged) <= budget) out.push_back(std::move(c));
  }
};

}  // namespace

static std::vector<Approximant> enumerate_impl(const LTermPtr& m,
                                               const std::vector<std::string>& universe,
                                               const std::vector<TypePtr>* roots, int bound,
                                               Flavor flavor) {
  for (const std::string& v : lterm_free_vars(m))
    if (std::find(universe.begin(), universe.end(), v) == universe.end())
      throw CheckError("UnboundVariable", "free variable " + v + " not in the universe");
  LTermPtr mf = lfreshen_avoiding(m, universe);
  Enum en{flavor};
  std::vector<Cand> cands;
  if (roots) {
    for (const TypePtr& a : *roots)
      for (Cand& c : en.run(mf, bound, &a, false)) cands.push_back(std::move(c));
  } else {
    cands = en.run(mf, bound, nullptr, false);
  }
  std::vector<Approximant> out;
  for (const Cand& c : cands) {
    Context gamma;
    for (const std::string& v : universe) {
      TypeList l;
      for (auto& [x, a] : c.occs)
        if (x == v) l.push_back(a);
      gamma.entries.emplace_back(v, l);
    }
    DerivPtr d;
    try {
      d = check(gamma, c.term);
    } catch (const CheckError&) {
      continue;
    }
    if (flavor == Flavor::Linear && !deriv_linear(d)) continue;
    out.push_back(Approximant{c.term, gamma, d, c.cost});
  }
  return out;
}

std::vector<Approximant> enumerate_approximants(const LTermPtr& m,
                                                const std::vector<std::string>& universe,
                                                int bound, Flavor flavor) {
  return enumerate_impl(m, universe, nullptr, bound, flavor);
}

std::vector<Approximant> enumerate_approximants_typed(const LTermPtr& m,
                                                      const std::vector<std::string>& universe,
                                                      const TypePtr& ty, int bound,
                                                      Flavor flavor) {
  std::vector<TypePtr> roots{ty};
  return enumerate_impl(m, universe, &roots, bound, flavor);
}

std::vector<Approximant> enumerate_approximants_roots(const LTermPtr& m,
                                                      const std::vector<std::string>& universe,
                                                      const std::vector<TypePtr>& roots,
                                                      int bound, Flavor flavor) {
  return enumerate_impl(m, universe, &roots, bound, flavor);
}

int raw_size(const TermPtr& s) {
  switch (s->kind) {
    case Term::Var:
      return 1;
    case Term::Abs:
      return 1 + raw_size(s->sub);
    case Term::App: {
      int n = 2 + raw_size(s->sub);
      for (const TermPtr& e : s->bag) n += raw_size(e);
      return n;
    }
  }
  return 0;
}

bool deriv_linear(const DerivPtr& d) {
  if (d->kind == Deriv::Abs && !d->ann.is_perm()) return false;
  for (const DerivPtr& k : d->kids)
    if (!deriv_linear(k)) return false;
  return true;
}

}  // namespace srl
