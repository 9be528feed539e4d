#include "srl/frontend.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace srl {

// ---------------------------------------------------------------------------
// Simple types and terms.

const STypePtr& SType::star() {
  static STypePtr s = [] {
    auto t = std::make_shared<SType>();
    t->is_star = true;
    return t;
  }();
  return s;
}

STypePtr SType::arrow(STypePtr left, STypePtr right) {
  auto t = std::make_shared<SType>();
  t->is_star = false;
  t->left = std::move(left);
  t->right = std::move(right);
  return t;
}

bool stype_eq(const STypePtr& a, const STypePtr& b) {
  if (a->is_star || b->is_star) return a->is_star && b->is_star;
  return stype_eq(a->left, b->left) && stype_eq(a->right, b->right);
}

std::string show_stype(const STypePtr& a) {
  if (a->is_star) return "*";
  std::string l = show_stype(a->left);
  if (!a->left->is_star) l = "(" + l + ")";
  return l + " => " + show_stype(a->right);
}

STermPtr STerm::var(std::string name) {
  auto t = std::make_shared<STerm>();
  t->kind = Var;
  t->name = std::move(name);
  return t;
}

STermPtr STerm::lam(std::string name, STypePtr ann, STermPtr body) {
  auto t = std::make_shared<STerm>();
  t->kind = Lam;
  t->name = std::move(name);
  t->ann = std::move(ann);
  t->body = std::move(body);
  return t;
}

STermPtr STerm::app(STermPtr fun, STermPtr arg) {
  auto t = std::make_shared<STerm>();
  t->kind = App;
  t->fun = std::move(fun);
  t->arg = std::move(arg);
  return t;
}

std::string show_sterm(const STermPtr& m) {
  switch (m->kind) {
    case STerm::Var:
      return m->name;
    case STerm::Lam:
      return "\\" + m->name + ":" + show_stype(m->ann) + ". " + show_sterm(m->body);
    case STerm::App: {
      std::string f = show_sterm(m->fun);
      if (m->fun->kind == STerm::Lam) f = "(" + f + ")";
      std::string a = show_sterm(m->arg);
      if (m->arg->kind != STerm::Var) a = "(" + a + ")";
      return f + " " + a;
    }
  }
  return "?";
}

LTermPtr strip(const STermPtr& m) {
  switch (m->kind) {
    case STerm::Var:
      return LTerm::var(m->name);
    case STerm::Lam:
      return LTerm::lam(m->name, strip(m->body));
    case STerm::App:
      return LTerm::app(strip(m->fun), strip(m->arg));
  }
  return nullptr;
}

namespace {

STypePtr sinfer(const SCtx& scope, const STermPtr& m) {
  switch (m->kind) {
    case STerm::Var:
      for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (it->first == m->name) return it->second;
      throw CheckError("RuleViolation", "unbound variable " + m->name);
    case STerm::Lam: {
      SCtx inner = scope;
      inner.emplace_back(m->name, m->ann);
      return SType::arrow(m->ann, sinfer(inner, m->body));
    }
    case STerm::App: {
      STypePtr f = sinfer(scope, m->fun);
      if (f->is_star)
        throw CheckError("RuleViolation", "applied term has base type");
      STypePtr a = sinfer(scope, m->arg);
      if (!stype_eq(f->left, a))
        throw CheckError("RuleViolation", "argument type mismatch");
      return f->right;
    }
  }
  throw CheckError("RuleViolation", "unreachable");
}

void sterm_names(const STermPtr& m, std::set<std::string>& out) {
  switch (m->kind) {
    case STerm::Var:
      out.insert(m->name);
      break;
    case STerm::Lam:
      out.insert(m->name);
      sterm_names(m->body, out);
      break;
    case STerm::App:
      sterm_names(m->fun, out);
      sterm_names(m->arg, out);
      break;
  }
}

STermPtr sfreshen_rec(const STermPtr& m, std::map<std::string, std::string>& ren,
                      std::set<std::string>& taken, int& counter) {
  switch (m->kind) {
    case STerm::Var: {
      auto it = ren.find(m->name);
      return STerm::var(it == ren.end() ? m->name : it->second);
    }
    case STerm::Lam: {
      std::string fresh = m->name;
      while (taken.count(fresh)) fresh = m->name + "_" + std::to_string(++counter);
      taken.insert(fresh);
      auto saved = ren.find(m->name);
      std::optional<std::string> old;
      if (saved != ren.end()) old = saved->second;
      ren[m->name] = fresh;
      STermPtr body = sfreshen_rec(m->body, ren, taken, counter);
      if (old)
        ren[m->name] = *old;
      else
        ren.erase(m->name);
      return STerm::lam(fresh, m->ann, body);
    }
    case STerm::App:
      return STerm::app(sfreshen_rec(m->fun, ren, taken, counter),
                        sfreshen_rec(m->arg, ren, taken, counter));
  }
  return m;
}

STermPtr sfreshen_avoiding(const STermPtr& m, const std::vector<std::string>& avoid) {
  std::map<std::string, std::string> ren;
  std::set<std::string> taken(avoid.begin(), avoid.end());
  for (const std::string& v : lterm_free_vars(strip(m))) taken.insert(v);
  int counter = 0;
  return sfreshen_rec(m, ren, taken, counter);
}

STermPtr ssubst(const STermPtr& m, const std::string& x, const STermPtr& n,
                std::set<std::string>& taken, int& counter) {
  switch (m->kind) {
    case STerm::Var:
      return m->name == x ? n : m;
    case STerm::Lam: {
      if (m->name == x) return m;
      std::vector<std::string> nfv = lterm_free_vars(strip(n));
      if (std::find(nfv.begin(), nfv.end(), m->name) != nfv.end()) {
        std::string fresh = m->name;
        while (taken.count(fresh)) fresh = m->name + "_" + std::to_string(++counter);
        taken.insert(fresh);
        STermPtr body = ssubst(m->body, m->name, STerm::var(fresh), taken, counter);
        return STerm::lam(fresh, m->ann, ssubst(body, x, n, taken, counter));
      }
      return STerm::lam(m->name, m->ann, ssubst(m->body, x, n, taken, counter));
    }
    case STerm::App:
      return STerm::app(ssubst(m->fun, x, n, taken, counter),
                        ssubst(m->arg, x, n, taken, counter));
  }
  return m;
}

void sredexes(const STermPtr& m, std::vector<int>& p, std::vector<std::vector<int>>& out) {
  switch (m->kind) {
    case STerm::Var:
      break;
    case STerm::Lam:
      p.push_back(0);
      sredexes(m->body, p, out);
      p.pop_back();
      break;
    case STerm::App:
      if (m->fun->kind == STerm::Lam) out.push_back(p);
      p.push_back(0);
      sredexes(m->fun, p, out);
      p.back() = 1;
      sredexes(m->arg, p, out);
      p.pop_back();
      break;
  }
}

STermPtr sbeta_rec(const STermPtr& m, const std::vector<int>& pos, size_t i) {
  if (i == pos.size()) {
    if (m->kind != STerm::App || m->fun->kind != STerm::Lam)
      throw CheckError("InvalidPosition", "no beta redex at position");
    std::set<std::string> taken;
    sterm_names(m, taken);
    int counter = 0;
    return ssubst(m->fun->body, m->fun->name, m->arg, taken, counter);
  }
  int c = pos[i];
  switch (m->kind) {
    case STerm::Lam:
      if (c != 0) throw CheckError("InvalidPosition", "abstraction has only the body");
      return STerm::lam(m->name, m->ann, sbeta_rec(m->body, pos, i + 1));
    case STerm::App:
      if (c == 0) return STerm::app(sbeta_rec(m->fun, pos, i + 1), m->arg);
      if (c == 1) return STerm::app(m->fun, sbeta_rec(m->arg, pos, i + 1));
      throw CheckError("InvalidPosition", "application position out of range");
    case STerm::Var:
      throw CheckError("InvalidPosition", "position inside a variable");
  }
  throw CheckError("InvalidPosition", "unreachable");
}

}  // namespace

STypePtr check_simple(const SCtx& gamma, const STermPtr& m) {
  return sinfer(gamma, m);
}

STermPtr sfreshen(const STermPtr& m) {
  return sfreshen_avoiding(m, {});
}

std::vector<std::vector<int>> sbeta_redexes(const STermPtr& m) {
  std::vector<std::vector<int>> out;
  std::vector<int> p;
  sredexes(m, p, out);
  return out;
}

STermPtr sbeta_step(const STermPtr& m, const std::vector<int>& pos) {
  return sbeta_rec(m, pos, 0);
}

// ---------------------------------------------------------------------------
// Idempotent intersection types.

const ITypePtr& IType::atom() {
  static ITypePtr a = [] {
    auto t = std::make_shared<IType>();
    t->is_atom = true;
    return t;
  }();
  return a;
}

ITypePtr IType::arrow(IInter source, ITypePtr target) {
  source = make_inter(std::move(source));
  auto t = std::make_shared<IType>();
  t->is_atom = false;
  t->source = std::move(source);
  t->target = std::move(target);
  return t;
}

int itype_cmp(const ITypePtr& a, const ITypePtr& b) {
  if (a->is_atom || b->is_atom) {
    if (a->is_atom && b->is_atom) return 0;
    return a->is_atom ? -1 : 1;
  }
  if (a->source.size() != b->source.size())
    return a->source.size() < b->source.size() ? -1 : 1;
  for (size_t i = 0; i < a->source.size(); ++i)
    if (int c = itype_cmp(a->source[i], b->source[i])) return c;
  return itype_cmp(a->target, b->target);
}

bool itype_eq(const ITypePtr& a, const ITypePtr& b) { return itype_cmp(a, b) == 0; }

bool iinter_eq(const IInter& a, const IInter& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!itype_eq(a[i], b[i])) return false;
  return true;
}

IInter make_inter(std::vector<ITypePtr> members) {
  if (members.empty())
    throw CheckError("RuleViolation", "empty intersection");
  std::sort(members.begin(), members.end(),
            [](const ITypePtr& a, const ITypePtr& b) { return itype_cmp(a, b) < 0; });
  IInter out;
  for (const ITypePtr& t : members)
    if (out.empty() || itype_cmp(out.back(), t) != 0) out.push_back(t);
  return out;
}

std::string show_itype(const ITypePtr& a) {
  if (a->is_atom) return "o";
  return "(" + show_iinter(a->source) + ") => " + show_itype(a->target);
}

std::string show_iinter(const IInter& a) {
  std::string s;
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += " /\\ ";
    s += show_itype(a[i]);
  }
  return s;
}

namespace {

bool ictx_eq(const ICtx& a, const ICtx& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !iinter_eq(a[i].second, b[i].second)) return false;
  return true;
}

// Index of the entry a variable occurrence refers to (last match), or -1.
int ictx_resolve(const ICtx& ctx, const std::string& x) {
  for (int i = static_cast<int>(ctx.size()) - 1; i >= 0; --i)
    if (ctx[i].first == x) return i;
  return -1;
}

bool lterm_ident(const LTermPtr& a, const LTermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case LTerm::Var:
      return a->name == b->name;
    case LTerm::Lam:
      return a->name == b->name && lterm_ident(a->body, b->body);
    case LTerm::App:
      return lterm_ident(a->fun, b->fun) && lterm_ident(a->arg, b->arg);
  }
  return false;
}

}  // namespace

IDerivPtr IDeriv::var(const ICtx& ctx, const std::string& name, const ITypePtr& ty) {
  int i = ictx_resolve(ctx, name);
  if (i < 0) throw CheckError("RuleViolation", "unbound variable " + name);
  bool member = false;
  for (const ITypePtr& t : ctx[i].second)
    if (itype_eq(t, ty)) member = true;
  if (!member)
    throw CheckError("RuleViolation", "type not a member of the intersection of " + name);
  auto d = std::make_shared<IDeriv>();
  d->kind = Var;
  d->ctx = ctx;
  d->name = name;
  d->ty = ty;
  d->term = LTerm::var(name);
  return d;
}

IDerivPtr IDeriv::lam(const std::string& name, const IDerivPtr& body) {
  if (body->kind == Inter)
    throw CheckError("RuleViolation", "abstraction body is an intersection node");
  if (body->ctx.empty() || body->ctx.back().first != name)
    throw CheckError("RuleViolation", "body context does not end with " + name);
  auto d = std::make_shared<IDeriv>();
  d->kind = Lam;
  d->ctx.assign(body->ctx.begin(), body->ctx.end() - 1);
  d->name = name;
  d->ty = IType::arrow(body->ctx.back().second, body->ty);
  d->term = LTerm::lam(name, body->term);
  d->kids = {body};
  return d;
}

IDerivPtr IDeriv::app(const IDerivPtr& fun, const IDerivPtr& inter_d) {
  if (fun->kind == Inter || inter_d->kind != Inter)
    throw CheckError("RuleViolation", "application premises have the wrong shapes");
  if (fun->ty->is_atom)
    throw CheckError("RuleViolation", "applied term has atomic type");
  if (!iinter_eq(fun->ty->source, inter_d->itys))
    throw CheckError("RuleViolation", "argument intersection mismatch");
  if (!ictx_eq(fun->ctx, inter_d->ctx))
    throw CheckError("RuleViolation", "application contexts differ");
  auto d = std::make_shared<IDeriv>();
  d->kind = App;
  d->ctx = fun->ctx;
  d->ty = fun->ty->target;
  d->term = LTerm::app(fun->term, inter_d->term);
  d->kids = {fun, inter_d};
  return d;
}

IDerivPtr IDeriv::inter(std::vector<IDerivPtr> members) {
  if (members.empty())
    throw CheckError("RuleViolation", "empty intersection");
  for (const IDerivPtr& m : members) {
    if (m->kind == Inter)
      throw CheckError("RuleViolation", "nested intersection node");
    if (!ictx_eq(m->ctx, members[0]->ctx))
      throw CheckError("RuleViolation", "intersection contexts differ");
    if (!lterm_eq(m->term, members[0]->term))
      throw CheckError("RuleViolation", "intersection subjects differ");
  }
  std::sort(members.begin(), members.end(), [](const IDerivPtr& a, const IDerivPtr& b) {
    return itype_cmp(a->ty, b->ty) < 0;
  });
  std::vector<IDerivPtr> kids;
  for (const IDerivPtr& m : members)
    if (kids.empty() || itype_cmp(kids.back()->ty, m->ty) != 0) kids.push_back(m);
  auto d = std::make_shared<IDeriv>();
  d->kind = Inter;
  d->ctx = kids[0]->ctx;
  d->term = kids[0]->term;
  for (const IDerivPtr& m : kids) d->itys.push_back(m->ty);
  d->kids = std::move(kids);
  return d;
}

void check_idem(const IDerivPtr& d) {
  switch (d->kind) {
    case IDeriv::Var: {
      IDerivPtr v = IDeriv::var(d->ctx, d->name, d->ty);
      if (!lterm_ident(v->term, d->term))
        throw CheckError("RuleViolation", "variable subject mismatch");
      return;
    }
    case IDeriv::Lam: {
      if (d->kids.size() != 1) throw CheckError("RuleViolation", "abstraction arity");
      check_idem(d->kids[0]);
      IDerivPtr v = IDeriv::lam(d->name, d->kids[0]);
      if (!ictx_eq(v->ctx, d->ctx) || !itype_eq(v->ty, d->ty) ||
          !lterm_ident(v->term, d->term))
        throw CheckError("RuleViolation", "abstraction conclusion mismatch");
      return;
    }
    case IDeriv::App: {
      if (d->kids.size() != 2) throw CheckError("RuleViolation", "application arity");
      check_idem(d->kids[0]);
      check_idem(d->kids[1]);
      IDerivPtr v = IDeriv::app(d->kids[0], d->kids[1]);
      if (!ictx_eq(v->ctx, d->ctx) || !itype_eq(v->ty, d->ty) ||
          !lterm_ident(v->term, d->term))
        throw CheckError("RuleViolation", "application conclusion mismatch");
      return;
    }
    case IDeriv::Inter: {
      for (const IDerivPtr& k : d->kids) check_idem(k);
      IDerivPtr v = IDeriv::inter(d->kids);
      if (!ictx_eq(v->ctx, d->ctx) || !iinter_eq(v->itys, d->itys) ||
          !lterm_ident(v->term, d->term) || v->kids.size() != d->kids.size())
        throw CheckError("RuleViolation", "intersection conclusion mismatch");
      return;
    }
  }
  throw CheckError("RuleViolation", "unknown node kind");
}

namespace {

struct IFreshener {
  size_t base;
  std::set<std::string> taken;
  int counter = 0;

  // env holds the new names of the bound extension entries, in context order.
  IDerivPtr go(const IDerivPtr& d, std::vector<std::string>& env, const ICtx& root) {
    ICtx ctx = root;
    for (size_t i = base; i < d->ctx.size(); ++i)
      ctx.emplace_back(env[i - base], d->ctx[i].second);
    switch (d->kind) {
      case IDeriv::Var: {
        int i = ictx_resolve(d->ctx, d->name);
        std::string name = d->name;
        if (i >= static_cast<int>(base)) name = env[i - base];
        return IDeriv::var(ctx, name, d->ty);
      }
      case IDeriv::Lam: {
        std::string fresh = d->name;
        while (taken.count(fresh)) fresh = d->name + "_" + std::to_string(++counter);
        taken.insert(fresh);
        env.push_back(fresh);
        IDerivPtr body = go(d->kids[0], env, root);
        env.pop_back();
        return IDeriv::lam(fresh, body);
      }
      case IDeriv::App:
        return IDeriv::app(go(d->kids[0], env, root), go(d->kids[1], env, root));
      case IDeriv::Inter: {
        std::vector<IDerivPtr> kids;
        for (const IDerivPtr& k : d->kids) kids.push_back(go(k, env, root));
        return IDeriv::inter(std::move(kids));
      }
    }
    throw CheckError("RuleViolation", "unknown node kind");
  }
};

void lterm_names(const LTermPtr& m, std::set<std::string>& out) {
  switch (m->kind) {
    case LTerm::Var:
      out.insert(m->name);
      break;
    case LTerm::Lam:
      out.insert(m->name);
      lterm_names(m->body, out);
      break;
    case LTerm::App:
      lterm_names(m->fun, out);
      lterm_names(m->arg, out);
      break;
  }
}

}  // namespace

IDerivPtr ideriv_freshen(const IDerivPtr& d) {
  IFreshener f;
  f.base = d->ctx.size();
  for (const auto& [x, l] : d->ctx) f.taken.insert(x);
  lterm_names(d->term, f.taken);
  // existing names stay taken so every binder moves to a globally new name
  std::vector<std::string> env;
  return f.go(d, env, d->ctx);
}

namespace {

// Insert `extras` after the first `p` context entries of every node.
IDerivPtr ireroot(const IDerivPtr& d, size_t p, const ICtx& extras) {
  switch (d->kind) {
    case IDeriv::Var: {
      ICtx ctx(d->ctx.begin(), d->ctx.begin() + p);
      ctx.insert(ctx.end(), extras.begin(), extras.end());
      ctx.insert(ctx.end(), d->ctx.begin() + p, d->ctx.end());
      return IDeriv::var(ctx, d->name, d->ty);
    }
    case IDeriv::Lam:
      return IDeriv::lam(d->name, ireroot(d->kids[0], p, extras));
    case IDeriv::App:
      return IDeriv::app(ireroot(d->kids[0], p, extras), ireroot(d->kids[1], p, extras));
    case IDeriv::Inter: {
      std::vector<IDerivPtr> kids;
      for (const IDerivPtr& k : d->kids) kids.push_back(ireroot(k, p, extras));
      return IDeriv::inter(std::move(kids));
    }
  }
  throw CheckError("RuleViolation", "unknown node kind");
}

// Substitute the intersection premise for the variable bound at context
// index p; d ranges over the abstraction body.
IDerivPtr isubst(const IDerivPtr& d, size_t p, const std::string& x,
                 const IDerivPtr& inter_d) {
  switch (d->kind) {
    case IDeriv::Var: {
      if (d->name == x && ictx_resolve(d->ctx, x) == static_cast<int>(p)) {
        for (const IDerivPtr& k : inter_d->kids)
          if (itype_eq(k->ty, d->ty)) {
            ICtx extras(d->ctx.begin() + p + 1, d->ctx.end());
            return ireroot(k, p, extras);
          }
        throw CheckError("RuleViolation", "occurrence type missing from the premise");
      }
      ICtx ctx = d->ctx;
      ctx.erase(ctx.begin() + p);
      return IDeriv::var(ctx, d->name, d->ty);
    }
    case IDeriv::Lam:
      return IDeriv::lam(d->name, isubst(d->kids[0], p, x, inter_d));
    case IDeriv::App:
      return IDeriv::app(isubst(d->kids[0], p, x, inter_d),
                         isubst(d->kids[1], p, x, inter_d));
    case IDeriv::Inter: {
      std::vector<IDerivPtr> kids;
      for (const IDerivPtr& k : d->kids) kids.push_back(isubst(k, p, x, inter_d));
      return IDeriv::inter(std::move(kids));
    }
  }
  throw CheckError("RuleViolation", "unknown node kind");
}

IDerivPtr ibeta_rec(const IDerivPtr& d, const std::vector<int>& pos, size_t i) {
  if (i == pos.size()) {
    if (d->kind != IDeriv::App || d->kids[0]->kind != IDeriv::Lam)
      throw CheckError("InvalidPosition", "no beta redex at position");
    const IDerivPtr& fun = d->kids[0];
    return isubst(fun->kids[0], d->ctx.size(), fun->name, d->kids[1]);
  }
  int c = pos[i];
  switch (d->kind) {
    case IDeriv::Lam:
      if (c != 0) throw CheckError("InvalidPosition", "abstraction has only the body");
      return IDeriv::lam(d->name, ibeta_rec(d->kids[0], pos, i + 1));
    case IDeriv::App:
      if (c == 0) return IDeriv::app(ibeta_rec(d->kids[0], pos, i + 1), d->kids[1]);
      if (c == 1) {
        std::vector<IDerivPtr> kids;
        for (const IDerivPtr& k : d->kids[1]->kids)
          kids.push_back(ibeta_rec(k, pos, i + 1));
        return IDeriv::app(d->kids[0], IDeriv::inter(std::move(kids)));
      }
      throw CheckError("InvalidPosition", "application position out of range");
    case IDeriv::Var:
    case IDeriv::Inter:
      throw CheckError("InvalidPosition", "position inside a leaf");
  }
  throw CheckError("InvalidPosition", "unreachable");
}

}  // namespace

IDerivPtr ideriv_beta(const IDerivPtr& d, const std::vector<int>& pos) {
  IDerivPtr fresh = ideriv_freshen(d);
  IDerivPtr out = ibeta_rec(fresh, pos, 0);
  check_idem(out);
  return out;
}

namespace {

ITypePtr stype_to_itype(const STypePtr& a) {
  if (a->is_star) return IType::atom();
  return IType::arrow({stype_to_itype(a->left)}, stype_to_itype(a->right));
}

IDerivPtr s2i_rec(const ICtx& ctx, const STermPtr& m) {
  switch (m->kind) {
    case STerm::Var: {
      int i = ictx_resolve(ctx, m->name);
      if (i < 0) throw CheckError("RuleViolation", "unbound variable " + m->name);
      return IDeriv::var(ctx, m->name, ctx[i].second[0]);
    }
    case STerm::Lam: {
      ICtx inner = ctx;
      inner.emplace_back(m->name, IInter{stype_to_itype(m->ann)});
      return IDeriv::lam(m->name, s2i_rec(inner, m->body));
    }
    case STerm::App:
      return IDeriv::app(s2i_rec(ctx, m->fun), IDeriv::inter({s2i_rec(ctx, m->arg)}));
  }
  throw CheckError("RuleViolation", "unreachable");
}

}  // namespace

IDerivPtr simple_to_idem(const SCtx& gamma, const STermPtr& m) {
  check_simple(gamma, m);
  ICtx ctx;
  for (const auto& [x, a] : gamma) ctx.emplace_back(x, IInter{stype_to_itype(a)});
  return s2i_rec(ctx, m);
}

// ---------------------------------------------------------------------------
// Embeddings.

TypePtr translate_stype(const STypePtr& a) {
  if (a->is_star) return Type::atom();
  return Type::arrow({translate_stype(a->left)}, translate_stype(a->right));
}

TypePtr translate_itype(const ITypePtr& a) {
  if (a->is_atom) return Type::atom();
  return Type::arrow(translate_iinter(a->source), translate_itype(a->target));
}

TypeList translate_iinter(const IInter& a) {
  TypeList out;
  for (const ITypePtr& t : a) out.push_back(translate_itype(t));
  return out;
}

ListMorph cart(const TypePtr& a, int n) {
  IndexMap table;
  table.codomain = 1;
  table.table.assign(n, 1);
  return ListMorph::ground({a}, std::move(table));
}

namespace {

TermPtr embed_s_rec(const SCtx& scope, const STermPtr& m) {
  switch (m->kind) {
    case STerm::Var:
      return Term::var(m->name);
    case STerm::Lam: {
      SCtx inner = scope;
      inner.emplace_back(m->name, m->ann);
      TermPtr body = embed_s_rec(inner, m->body);
      int n = occurrences(body, m->name);
      return Term::abs(m->name, cart(translate_stype(m->ann), n), body);
    }
    case STerm::App:
      return Term::app(embed_s_rec(scope, m->fun), {embed_s_rec(scope, m->arg)});
  }
  return nullptr;
}

}  // namespace

Embedding embed_simple(const SCtx& gamma, const STermPtr& m0) {
  std::vector<std::string> universe;
  for (const auto& [x, a] : gamma) universe.push_back(x);
  STermPtr m = sfreshen_avoiding(m0, universe);
  check_simple(gamma, m);
  Embedding e;
  e.universe = universe;
  e.term = embed_s_rec(gamma, m);
  for (const auto& [x, a] : gamma) {
    TypeList list(occurrences(e.term, x), translate_stype(a));
    e.ctx.entries.emplace_back(x, std::move(list));
  }
  e.deriv = check(e.ctx, e.term);
  e.eterm = to_eta(e.deriv);
  return e;
}

namespace {

TermPtr embed_i_rec(const IDerivPtr& d, std::map<std::string, std::vector<ITypePtr>>& occ) {
  switch (d->kind) {
    case IDeriv::Var:
      occ[d->name].push_back(d->ty);
      return Term::var(d->name);
    case IDeriv::Lam: {
      TermPtr body = embed_i_rec(d->kids[0], occ);
      const IInter& inter = d->kids[0]->ctx.back().second;
      IndexMap table;
      table.codomain = static_cast<int>(inter.size());
      for (const ITypePtr& t : occ[d->name]) {
        int idx = 0;
        for (size_t j = 0; j < inter.size(); ++j)
          if (itype_eq(inter[j], t)) idx = static_cast<int>(j) + 1;
        table.table.push_back(idx);
      }
      occ.erase(d->name);
      return Term::abs(d->name, ListMorph::ground(translate_iinter(inter), table), body);
    }
    case IDeriv::App: {
      TermPtr fun = embed_i_rec(d->kids[0], occ);
      std::vector<TermPtr> bag;
      for (const IDerivPtr& k : d->kids[1]->kids) bag.push_back(embed_i_rec(k, occ));
      return Term::app(fun, std::move(bag));
    }
    case IDeriv::Inter:
      break;
  }
  throw CheckError("RuleViolation", "embedding an intersection node");
}

}  // namespace

Embedding embed_intersection(const IDerivPtr& d0) {
  IDerivPtr d = ideriv_freshen(d0);
  Embedding e;
  std::map<std::string, std::vector<ITypePtr>> occ;
  e.term = embed_i_rec(d, occ);
  for (const auto& [x, inter] : d->ctx) {
    e.universe.push_back(x);
    TypeList list;
    for (const ITypePtr& t : occ[x]) list.push_back(translate_itype(t));
    e.ctx.entries.emplace_back(x, std::move(list));
  }
  e.deriv = check(e.ctx, e.term);
  e.eterm = to_eta(e.deriv);
  return e;
}

namespace {

STypePtr untranslate_stype(const TypePtr& a) {
  if (a->is_atom) return SType::star();
  if (a->source.size() != 1)
    throw CheckError("NotQualitative", "non-singleton bag in a type");
  return SType::arrow(untranslate_stype(a->source[0]), untranslate_stype(a->target));
}

STermPtr unembed_rec(const DerivPtr& d) {
  switch (d->kind) {
    case Deriv::Var:
      return STerm::var(d->name);
    case Deriv::Abs: {
      if (d->ann.source.size() != 1)
        throw CheckError("NotQualitative", "non-singleton annotation source");
      return STerm::lam(d->name, untranslate_stype(d->ann.source[0]),
                        unembed_rec(d->kids[0]));
    }
    case Deriv::App: {
      if (d->kids[1]->kids.size() != 1)
        throw CheckError("NotQualitative", "non-singleton bag");
      return STerm::app(unembed_rec(d->kids[0]), unembed_rec(d->kids[1]->kids[0]));
    }
    case Deriv::Bag:
      break;
  }
  throw CheckError("NotQualitative", "unexpected node");
}

}  // namespace

SimpleTyping qualitative_to_simple(const DerivPtr& d) {
  if (!is_qualitative(d))
    throw CheckError("NotQualitative", "derivation is not qualitative");
  SimpleTyping t;
  t.term = unembed_rec(d);
  for (const auto& [x, list] : d->ctx.entries)
    t.ctx.emplace_back(x, list.empty() ? SType::star() : untranslate_stype(list[0]));
  t.ty = untranslate_stype(d->ty);
  return t;
}

// ---------------------------------------------------------------------------
// Simulation.

namespace {

int spine_arity(const LTermPtr& m) {
  if (m->kind != LTerm::App) return 0;
  return 1 + spine_arity(m->fun);
}

void mbp(ETermPtr t, int above, LTermPtr m, const std::vector<int>& lp, size_t i,
         Path prefix, std::vector<MappedRedex>& out) {
  while (m->kind != LTerm::Lam && t->kind == ETerm::Abs) {
    prefix.push_back(0);
    t = t->body;
  }
  if (i == lp.size()) {
    if (t->kind != ETerm::Redex)
      throw CheckError("InvalidPosition", "no redex at the mapped position");
    out.push_back(MappedRedex{std::move(prefix), above + 1});
    return;
  }
  int c = lp[i];
  switch (m->kind) {
    case LTerm::Lam: {
      if (c != 0) throw CheckError("InvalidPosition", "abstraction has only the body");
      if (t->kind != ETerm::Abs)
        throw CheckError("InvalidPosition", "abstraction shape mismatch");
      if (m->body->kind == LTerm::Lam) {
        mbp(t, 0, m->body, lp, i + 1, std::move(prefix), out);
      } else {
        prefix.push_back(0);
        mbp(t->body, 0, m->body, lp, i + 1, std::move(prefix), out);
      }
      return;
    }
    case LTerm::App: {
      if (c == 0) {
        if (m->fun->kind == LTerm::App) {
          mbp(t, above + 1, m->fun, lp, i + 1, std::move(prefix), out);
        } else if (m->fun->kind == LTerm::Lam) {
          if (t->kind != ETerm::Redex)
            throw CheckError("InvalidPosition", "redex shape mismatch");
          prefix.push_back(0);
          mbp(t->fun, 0, m->fun, lp, i + 1, std::move(prefix), out);
        } else {
          throw CheckError("InvalidPosition", "position inside a variable");
        }
        return;
      }
      if (c != 1) throw CheckError("InvalidPosition", "application position out of range");
      int j = spine_arity(m);
      if (t->kind != ETerm::Head && t->kind != ETerm::Redex)
        throw CheckError("InvalidPosition", "application shape mismatch");
      if (static_cast<size_t>(j) > t->args.size())
        throw CheckError("InvalidPosition", "argument bag out of range");
      const EBag& bag = t->args[j - 1];
      for (size_t e = 0; e < bag.size(); ++e) {
        Path p2 = prefix;
        p2.push_back(j);
        p2.push_back(static_cast<int>(e));
        mbp(bag[e], 0, m->arg, lp, i + 1, std::move(p2), out);
      }
      return;
    }
    case LTerm::Var:
      throw CheckError("InvalidPosition", "position inside a variable");
  }
}

ETermPtr node_at(ETermPtr t, const Path& p) {
  size_t i = 0;
  while (i < p.size()) {
    int c = p[i];
    switch (t->kind) {
      case ETerm::Abs:
        if (c != 0) throw CheckError("InvalidPosition", "abstraction has only the body");
        t = t->body;
        ++i;
        break;
      case ETerm::Redex:
        if (c == 0) {
          t = t->fun;
          ++i;
        } else {
          t = t->args.at(c - 1).at(p.at(i + 1));
          i += 2;
        }
        break;
      case ETerm::Head:
        if (c == 0) throw CheckError("InvalidPosition", "head has only arguments");
        t = t->args.at(c - 1).at(p.at(i + 1));
        i += 2;
        break;
    }
  }
  return t;
}

struct SimState {
  Context ctx;
  ETermPtr t;
  ReductionLabel lab;
  std::vector<Step>* steps;

  void step(const Path& p, StepKind k, size_t levels) {
    Step st = step_closure(ctx, t, p, k, levels);
    t = st.result;
    lab = label_compose(st.label, lab);
    ctx = st.label.ctx.target();
    steps->push_back(std::move(st));
  }
};

// One exponential then one linear step for the first binder group of the
// redex at the given position.
void primary_steps(SimState& s, const MappedRedex& mr) {
  ETermPtr n = node_at(s.t, mr.path);
  if (n->kind != ETerm::Redex)
    throw CheckError("InvalidPosition", "mapped position is not a redex");
  if (!n->fun->binders.at(0).ann.is_identity()) {
    Path fp = mr.path;
    fp.push_back(0);
    s.step(fp, StepKind::Exponential, 1);
  }
  s.step(mr.path, StepKind::Linear, 1);
}

// Eta-expansion of one of the given binders (the pure shape produced by
// eta_expand_var, possibly duplicated by ground actions).
bool expansion_of(const ETermPtr& e, const std::set<std::string>& names) {
  if (e->kind == ETerm::Head) return names.count(e->name) && e->args.empty();
  if (e->kind != ETerm::Abs || e->body->kind != ETerm::Head) return false;
  if (!names.count(e->body->name)) return false;
  if (e->binders.size() != e->body->args.size()) return false;
  for (size_t i = 0; i < e->binders.size(); ++i) {
    const EBinder& b = e->binders[i];
    if (!b.ann.is_identity()) return false;
    const EBag& bag = e->body->args[i];
    TypeList list = b.ann.target();
    if (bag.size() != list.size()) return false;
    for (size_t j = 0; j < bag.size(); ++j)
      if (!expansion_of(bag[j], {b.name})) return false;
  }
  return true;
}

// Residual redexes left over from a beta simulation, to be collapsed before
// comparing with the embedded reduct. Pattern A: a redex all of whose
// argument bags are expansions of synthetic binders of the abstraction
// directly above it (the lambda-side contractum is an abstraction, so the
// embedding has no redex there). Pattern B: a redex whose function is an
// all-synthetic expansion wrapper (a variable-headed term was substituted
// into applied position).
bool admin_above(const ETermPtr& t) {
  if (t->kind != ETerm::Abs || t->body->kind != ETerm::Redex) return false;
  const ETermPtr& r = t->body;
  if (r->fun->kind != ETerm::Abs) return false;
  if (r->args.size() != r->fun->binders.size()) return false;
  std::set<std::string> names;
  for (const EBinder& b : t->binders)
    if (b.synthetic) names.insert(b.name);
  if (names.empty()) return false;
  for (const EBag& bag : r->args)
    for (const ETermPtr& e : bag)
      if (!expansion_of(e, names)) return false;
  return true;
}

bool admin_at(const ETermPtr& t) {
  if (t->kind != ETerm::Redex || t->fun->kind != ETerm::Abs) return false;
  if (t->args.size() != t->fun->binders.size()) return false;
  if (t->fun->binders.empty()) return false;
  for (const EBinder& b : t->fun->binders)
    if (!b.synthetic) return false;
  return true;
}

// On success p addresses the redex to collapse.
bool find_admin(const ETermPtr& t, Path& p) {
  if (admin_above(t)) {
    p.push_back(0);
    return true;
  }
  if (admin_at(t)) return true;
  switch (t->kind) {
    case ETerm::Abs:
      p.push_back(0);
      if (find_admin(t->body, p)) return true;
      p.pop_back();
      return false;
    case ETerm::Redex:
      p.push_back(0);
      if (find_admin(t->fun, p)) return true;
      p.pop_back();
      [[fallthrough]];
    case ETerm::Head:
      for (size_t k = 0; k < t->args.size(); ++k)
        for (size_t e = 0; e < t->args[k].size(); ++e) {
          p.push_back(static_cast<int>(k) + 1);
          p.push_back(static_cast<int>(e));
          if (find_admin(t->args[k][e], p)) return true;
          p.pop_back();
          p.pop_back();
        }
      return false;
  }
  return false;
}

void admin_collapse(SimState& s) {
  for (int guard = 0; guard < 10000; ++guard) {
    Path rp;
    if (!find_admin(s.t, rp)) return;
    ETermPtr r = node_at(s.t, rp);
    bool need_exp = false;
    for (const EBinder& b : r->fun->binders)
      if (!b.ann.is_identity()) need_exp = true;
    if (need_exp) {
      Path fp = rp;
      fp.push_back(0);
      s.step(fp, StepKind::Exponential, 0);
    }
    s.step(rp, StepKind::Linear, 0);
  }
  throw CheckError("SimulationMismatch", "administrative collapse did not terminate");
}

void compare_endpoint(SimulationReport& rep) {
  ETermPtr a = canon_names(rep.endpoint);
  ETermPtr b = canon_names(rep.target.eterm);
  bool ctx_ok = ctx_eq(rep.end_ctx, rep.target.ctx);
  rep.on_the_nose = ctx_ok && eterm_eq(a, b);
  rep.isomorphic = rep.on_the_nose || (ctx_ok && iso(rep.target.ctx, a, b).has_value());
  if (!rep.isomorphic) {
    std::ostringstream os;
    os << "endpoint:  " << show_eterm(a) << "\n  under " << show_ctx(rep.end_ctx)
       << "\nexpected:  " << show_eterm(b) << "\n  under " << show_ctx(rep.target.ctx);
    rep.diff = os.str();
  }
}

}  // namespace

std::vector<MappedRedex> map_beta_path(const ETermPtr& t, const LTermPtr& m,
                                       const std::vector<int>& lpath) {
  std::vector<MappedRedex> out;
  mbp(t, 0, m, lpath, 0, {}, out);
  return out;
}

SimulationReport simulate_beta_simple(const SCtx& gamma, const STermPtr& m0,
                                      const std::vector<int>& pos) {
  std::vector<std::string> universe;
  for (const auto& [x, a] : gamma) universe.push_back(x);
  STermPtr m = sfreshen_avoiding(m0, universe);
  SimulationReport rep;
  rep.source = embed_simple(gamma, m);
  STermPtr n = sbeta_step(m, pos);
  rep.target = embed_simple(gamma, n);
  std::vector<MappedRedex> mapped = map_beta_path(rep.source.eterm, strip(m), pos);
  SimState s{rep.source.ctx, rep.source.eterm,
             label_identity(rep.source.ctx, etype(rep.source.eterm)), &rep.steps};
  for (const MappedRedex& mr : mapped) primary_steps(s, mr);
  admin_collapse(s);
  rep.endpoint = s.t;
  rep.end_ctx = s.ctx;
  rep.label = s.lab;
  compare_endpoint(rep);
  rep.cart_equation = true;
  for (size_t i = 0; i < gamma.size(); ++i) {
    TypePtr a = translate_stype(gamma[i].second);
    ListMorph cm = cart(a, occurrences(rep.source.term, gamma[i].first));
    ListMorph cn = cart(a, occurrences(rep.target.term, gamma[i].first));
    const ListMorph* theta = s.lab.ctx.find(gamma[i].first);
    if (!theta || !list_morph_eq(ListMorph::compose(*theta, cm), cn)) {
      rep.cart_equation = false;
      if (rep.diff.empty())
        rep.diff = "cart label equation fails at " + gamma[i].first;
    }
  }
  return rep;
}

SimulationReport simulate_beta_inter(const IDerivPtr& d0, const std::vector<int>& pos) {
  IDerivPtr d = ideriv_freshen(d0);
  SimulationReport rep;
  rep.source = embed_intersection(d);
  IDerivPtr dn = ideriv_beta(d, pos);
  rep.target = embed_intersection(dn);
  std::vector<MappedRedex> mapped = map_beta_path(rep.source.eterm, d->term, pos);
  SimState s{rep.source.ctx, rep.source.eterm,
             label_identity(rep.source.ctx, etype(rep.source.eterm)), &rep.steps};
  for (const MappedRedex& mr : mapped) primary_steps(s, mr);
  admin_collapse(s);
  rep.endpoint = s.t;
  rep.end_ctx = s.ctx;
  rep.label = s.lab;
  compare_endpoint(rep);
  rep.cart_equation = rep.isomorphic;
  return rep;
}

// ---------------------------------------------------------------------------
// Corpus.

std::vector<CorpusEntry> simple_corpus() {
  STypePtr o = SType::star();
  STypePtr o1 = SType::arrow(o, o);
  STypePtr o2 = SType::arrow(o, SType::arrow(o, o));
  STypePtr nat = SType::arrow(o1, o1);
  auto V = [](const char* x) { return STerm::var(x); };
  std::vector<CorpusEntry> out;

  out.push_back({"identity", {{"a", o}}, STerm::app(STerm::lam("x", o, V("x")), V("a"))});

  STermPtr k = STerm::lam("x", o, STerm::lam("y", o, V("x")));
  out.push_back({"k-combinator",
                 {{"a", o}, {"b", o}},
                 STerm::app(STerm::app(k, V("a")), V("b"))});

  STermPtr scomb = STerm::lam(
      "x", o2,
      STerm::lam("y", o1,
                 STerm::lam("z", o,
                            STerm::app(STerm::app(V("x"), V("z")),
                                       STerm::app(V("y"), V("z"))))));
  out.push_back({"s-combinator",
                 {{"a", o2}, {"b", o1}, {"c", o}},
                 STerm::app(STerm::app(STerm::app(scomb, V("a")), V("b")), V("c"))});

  auto church = [&](int n) {
    STermPtr body = V("x");
    for (int i = 0; i < n; ++i) body = STerm::app(V("f"), body);
    return STerm::lam("f", o1, STerm::lam("x", o, body));
  };
  for (int n = 0; n <= 3; ++n)
    out.push_back({"church" + std::to_string(n), {}, church(n)});

  STermPtr add = STerm::lam(
      "m", nat,
      STerm::lam("n", nat,
                 STerm::lam("f", o1,
                            STerm::lam("x", o,
                                       STerm::app(STerm::app(V("m"), V("f")),
                                                  STerm::app(STerm::app(V("n"), V("f")),
                                                             V("x")))))));
  out.push_back({"add-2-3",
                 {{"f", o1}, {"x", o}},
                 STerm::app(STerm::app(STerm::app(STerm::app(add, church(2)), church(3)),
                                       V("f")),
                            V("x"))});

  STermPtr bigm = STerm::lam(
      "x", o1,
      STerm::app(STerm::app(V("w"), STerm::app(V("x"), STerm::app(V("x"), V("y")))),
                 STerm::app(V("x"), V("y"))));
  STermPtr bign = STerm::lam("z", o, STerm::app(STerm::app(V("q"), V("z")), V("z")));
  out.push_back({"walkthrough",
                 {{"w", o2}, {"y", o}, {"q", o2}},
                 STerm::app(bigm, bign)});

  return out;
}

}  // namespace srl
