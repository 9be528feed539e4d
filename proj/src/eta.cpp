#include "srl/eta.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace srl {

ETermPtr ETerm::head(std::string name, std::vector<TypeList> head_ty, ESeq args) {
  auto t = std::make_shared<ETerm>();
  t->kind = Head;
  t->name = std::move(name);
  t->head_ty = std::move(head_ty);
  t->args = std::move(args);
  return t;
}

ETermPtr ETerm::abs(std::vector<EBinder> binders, ETermPtr body, bool synthetic) {
  auto t = std::make_shared<ETerm>();
  t->kind = Abs;
  t->binders = std::move(binders);
  t->body = std::move(body);
  t->synthetic = synthetic;
  return t;
}

ETermPtr ETerm::redex(ETermPtr fun, ESeq args) {
  auto t = std::make_shared<ETerm>();
  t->kind = Redex;
  t->fun = std::move(fun);
  t->args = std::move(args);
  return t;
}

TypePtr etype(const ETermPtr& t) {
  if (t->kind != ETerm::Abs) return Type::atom();
  std::vector<TypeList> seq;
  for (auto& b : t->binders) seq.push_back(b.ann.source);
  return eta_roll(seq);
}

TypeList ebag_ty(const EBag& bag) {
  TypeList out;
  for (auto& e : bag) out.push_back(etype(e));
  return out;
}

std::vector<TypeList> eseq_ty(const ESeq& args) {
  std::vector<TypeList> out;
  for (auto& b : args) out.push_back(ebag_ty(b));
  return out;
}

bool eterm_eq(const ETermPtr& a, const ETermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ETerm::Head: {
      if (a->name != b->name) return false;
      if (a->head_ty.size() != b->head_ty.size()) return false;
      for (size_t i = 0; i < a->head_ty.size(); ++i)
        if (!list_eq(a->head_ty[i], b->head_ty[i])) return false;
      return eseq_eq(a->args, b->args);
    }
    case ETerm::Abs: {
      if (a->binders.size() != b->binders.size()) return false;
      for (size_t i = 0; i < a->binders.size(); ++i) {
        if (a->binders[i].name != b->binders[i].name) return false;
        if (!list_morph_eq(a->binders[i].ann, b->binders[i].ann)) return false;
      }
      return eterm_eq(a->body, b->body);
    }
    case ETerm::Redex:
      return eterm_eq(a->fun, b->fun) && eseq_eq(a->args, b->args);
  }
  return false;
}

bool ebag_eq(const EBag& a, const EBag& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!eterm_eq(a[i], b[i])) return false;
  return true;
}

bool eseq_eq(const ESeq& a, const ESeq& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!ebag_eq(a[i], b[i])) return false;
  return true;
}

std::string show_ebag(const EBag& b) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) out << ",";
    out << show_eterm(b[i]);
  }
  out << "]";
  return out.str();
}

static std::string show_eseq(const ESeq& q) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < q.size(); ++i) {
    if (i) out << " ";
    out << show_ebag(q[i]);
  }
  out << ")";
  return out.str();
}

std::string show_eterm(const ETermPtr& t) {
  switch (t->kind) {
    case ETerm::Head:
      if (t->args.empty()) return t->name;
      return t->name + " " + show_eseq(t->args);
    case ETerm::Abs: {
      std::ostringstream out;
      out << "\\(";
      for (size_t i = 0; i < t->binders.size(); ++i) {
        if (i) out << ",";
        out << t->binders[i].name << "^{" << show_list_morph(t->binders[i].ann, false) << "}";
      }
      out << "). " << show_eterm(t->body);
      return out.str();
    }
    case ETerm::Redex:
      return "(" + show_eterm(t->fun) + ") " + show_eseq(t->args);
  }
  return "";
}

void occ_scan(const ETermPtr& t, const std::string& x, std::vector<const ETerm*>& out) {
  switch (t->kind) {
    case ETerm::Head:
      if (t->name == x) out.push_back(t.get());
      for (auto& b : t->args)
        for (auto& e : b) occ_scan(e, x, out);
      break;
    case ETerm::Abs:
      for (auto& b : t->binders)
        if (b.name == x) return;  // shadowed
      occ_scan(t->body, x, out);
      break;
    case ETerm::Redex:
      occ_scan(t->fun, x, out);
      for (auto& b : t->args)
        for (auto& e : b) occ_scan(e, x, out);
      break;
  }
}

TypeList occ_types(const ETermPtr& t, const std::string& x) {
  std::vector<const ETerm*> occ;
  occ_scan(t, x, occ);
  TypeList out;
  for (auto* o : occ) out.push_back(eta_roll(o->head_ty));
  return out;
}

std::vector<int> occ_ids(const ETermPtr& t, const std::string& x) {
  std::vector<const ETerm*> occ;
  occ_scan(t, x, occ);
  std::vector<int> out;
  for (auto* o : occ) out.push_back(o->occ_id);
  return out;
}

Context ectx(const ETermPtr& t, const std::vector<std::string>& universe) {
  Context g;
  for (auto& v : universe) g.entries.emplace_back(v, occ_types(t, v));
  return g;
}

Context ebag_ctx(const EBag& b, const std::vector<std::string>& universe) {
  Context g;
  for (auto& v : universe) {
    TypeList l;
    for (auto& e : b) {
      TypeList el = occ_types(e, v);
      l.insert(l.end(), el.begin(), el.end());
    }
    g.entries.emplace_back(v, l);
  }
  return g;
}

Context eseq_ctx(const ESeq& q, const std::vector<std::string>& universe) {
  Context g;
  for (auto& v : universe) g.entries.emplace_back(v, TypeList{});
  for (auto& b : q) g = ctx_tensor(g, ebag_ctx(b, universe));
  return g;
}

ETermPtr assign_ids(const ETermPtr& t, int& counter) {
  auto n = std::make_shared<ETerm>(*t);
  switch (t->kind) {
    case ETerm::Head: {
      n->occ_id = ++counter;
      ESeq args;
      for (auto& b : t->args) {
        EBag nb;
        for (auto& e : b) nb.push_back(assign_ids(e, counter));
        args.push_back(nb);
      }
      n->args = args;
      break;
    }
    case ETerm::Abs:
      n->body = assign_ids(t->body, counter);
      break;
    case ETerm::Redex: {
      n->fun = assign_ids(t->fun, counter);
      ESeq args;
      for (auto& b : t->args) {
        EBag nb;
        for (auto& e : b) nb.push_back(assign_ids(e, counter));
        args.push_back(nb);
      }
      n->args = args;
      break;
    }
  }
  return n;
}

namespace {

struct EValidator {
  std::map<std::string, std::pair<TypeList, size_t>> slots;  // list, used

  void take(const std::string& x, const TypePtr& a) {
    auto it = slots.find(x);
    if (it == slots.end()) throw CheckError("UnboundVariable", "variable " + x + " not in scope");
    auto& [list, used] = it->second;
    if (used >= list.size())
      throw CheckError("OccurrenceCountMismatch", "too many occurrences of " + x);
    if (!type_eq(list[used], a))
      throw CheckError("TypeClash", "occurrence of " + x + " has type " + show_type(a) +
                                        " but the context lists " + show_type(list[used]));
    ++used;
  }

  void validate_seq(const ESeq& args, const std::vector<TypeList>& want) {
    if (args.size() != want.size())
      throw CheckError("TypeClash", "sequence length does not match the head type");
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i].size() != want[i].size())
        throw CheckError("TypeClash", "bag arity does not match the demanded list");
      for (size_t j = 0; j < args[i].size(); ++j) {
        const ETermPtr& e = args[i][j];
        if (!type_eq(etype(e), want[i][j]))
          throw CheckError("TypeClash", "bag element has type " + show_type(etype(e)) +
                                            " where " + show_type(want[i][j]) + " is demanded");
        if (!want[i][j]->is_atom && e->kind != ETerm::Abs)
          throw CheckError("NotEtaLong", "arrow-typed bag element is not an abstraction");
        validate(e);
      }
    }
  }

  void validate(const ETermPtr& t) {
    switch (t->kind) {
      case ETerm::Head:
        take(t->name, eta_roll(t->head_ty));
        validate_seq(t->args, t->head_ty);
        break;
      case ETerm::Abs: {
        if (t->body->kind == ETerm::Abs)
          throw CheckError("NotEtaLong", "multi-abstraction body is an abstraction");
        for (auto& b : t->binders) {
          if (slots.count(b.name))
            throw CheckError("NotEtaLong", "shadowed binder " + b.name);
          slots[b.name] = {b.ann.target(), 0};
        }
        validate(t->body);
        for (auto& b : t->binders) {
          auto& [list, used] = slots[b.name];
          if (used != list.size())
            throw CheckError("AnnotationMismatch",
                             "annotation codomain of " + b.name + " does not match occurrences");
          slots.erase(b.name);
        }
        break;
      }
      case ETerm::Redex: {
        if (t->fun->kind != ETerm::Abs)
          throw CheckError("NotEtaLong", "redex function is not an abstraction");
        std::vector<TypeList> want;
        for (auto& b : t->fun->binders) want.push_back(b.ann.source);
        validate(t->fun);
        validate_seq(t->args, want);
        break;
      }
    }
  }
};

}  // namespace

void eta_validate(const Context& gamma, const ETermPtr& t) {
  EValidator v;
  for (auto& e : gamma.entries) v.slots[e.first] = {e.second, 0};
  v.validate(t);
  for (auto& e : gamma.entries) {
    auto& [list, used] = v.slots[e.first];
    if (used != list.size())
      throw CheckError("OccurrenceCountMismatch",
                       "context of " + e.first + " not fully consumed");
  }
}

static ETermPtr eta_expand_var_rec(const std::string& x, const TypePtr& a, int& counter,
                                   const std::string& prefix) {
  std::vector<TypeList> seq = eta_unroll(a);
  if (seq.empty()) return ETerm::head(x, {}, {});
  std::vector<EBinder> binders;
  ESeq args;
  for (auto& list : seq) {
    std::string y = prefix + "_e" + std::to_string(++counter);
    binders.push_back(EBinder{y, ListMorph::identity(list), true});
    EBag bag;
    for (auto& b : list) bag.push_back(eta_expand_var_rec(y, b, counter, prefix));
    args.push_back(bag);
  }
  return ETerm::abs(std::move(binders), ETerm::head(x, seq, std::move(args)), true);
}

ETermPtr eta_expand_var(const std::string& x, const TypePtr& a) {
  int counter = 0;
  return eta_expand_var_rec(x, a, counter, x);
}

namespace {

ETermPtr canon_rec(const ETermPtr& t, std::vector<std::pair<std::string, std::string>>& env,
                   int& counter) {
  switch (t->kind) {
    case ETerm::Head: {
      auto n = std::make_shared<ETerm>(*t);
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t->name) {
          n->name = it->second;
          break;
        }
      ESeq args;
      for (const EBag& b : t->args) {
        EBag nb;
        for (const ETermPtr& e : b) nb.push_back(canon_rec(e, env, counter));
        args.push_back(std::move(nb));
      }
      n->args = std::move(args);
      return n;
    }
    case ETerm::Redex: {
      auto n = std::make_shared<ETerm>(*t);
      n->fun = canon_rec(t->fun, env, counter);
      ESeq args;
      for (const EBag& b : t->args) {
        EBag nb;
        for (const ETermPtr& e : b) nb.push_back(canon_rec(e, env, counter));
        args.push_back(std::move(nb));
      }
      n->args = std::move(args);
      return n;
    }
    case ETerm::Abs: {
      auto n = std::make_shared<ETerm>(*t);
      size_t base = env.size();
      for (size_t i = 0; i < t->binders.size(); ++i) {
        std::string fresh = "v" + std::to_string(++counter);
        env.emplace_back(t->binders[i].name, fresh);
        n->binders[i].name = fresh;
      }
      n->body = canon_rec(t->body, env, counter);
      env.resize(base);
      return n;
    }
  }
  return t;
}

}  // namespace

ETermPtr canon_names(const ETermPtr& t) {
  std::vector<std::pair<std::string, std::string>> env;
  int counter = 0;
  return canon_rec(t, env, counter);
}

bool eterm_alpha_eq(const ETermPtr& a, const ETermPtr& b) {
  return eterm_eq(canon_names(a), canon_names(b));
}

namespace {

struct EtaConverter {
  int counter = 0;

  ETermPtr conv_term(const DerivPtr& d) {
    std::vector<TypeList> seq = eta_unroll(d->ty);
    if (seq.empty()) return conv_head(d, {}, {});
    std::vector<EBinder> binders;
    DerivPtr cur = d;
    while (cur->kind == Deriv::Abs) {
      binders.push_back(EBinder{cur->name, cur->ann, false});
      cur = cur->kids[0];
    }
    ESeq extra;
    for (size_t i = binders.size(); i < seq.size(); ++i) {
      std::string y = "_e" + std::to_string(++counter);
      binders.push_back(EBinder{y, ListMorph::identity(seq[i]), true});
      EBag bag;
      for (auto& b : seq[i]) bag.push_back(eta_expand_var_rec(y, b, counter, y));
      extra.push_back(bag);
    }
    ETermPtr body = conv_head(cur, eta_unroll(cur->ty), extra);
    return ETerm::abs(std::move(binders), body, false);
  }

  // d has an application-spine shape of type rest-o o (rest = remaining lists,
  // covered by the extra expansion bags); result has type o.
  ETermPtr conv_head(const DerivPtr& d, const std::vector<TypeList>& rest, const ESeq& extra) {
    std::vector<DerivPtr> spine_bags;
    DerivPtr cur = d;
    while (cur->kind == Deriv::App) {
      spine_bags.push_back(cur->kids[1]);
      cur = cur->kids[0];
    }
    std::reverse(spine_bags.begin(), spine_bags.end());
    ESeq args;
    for (auto& bagd : spine_bags) {
      EBag bag;
      for (auto& e : bagd->kids) bag.push_back(conv_term(e));
      args.push_back(bag);
    }
    args.insert(args.end(), extra.begin(), extra.end());
    if (cur->kind == Deriv::Var) {
      return ETerm::head(cur->name, eta_unroll(cur->ty), std::move(args));
    }
    // cur is an abstraction: a redex core.
    ETermPtr fun = conv_term(cur);
    (void)rest;
    return ETerm::redex(fun, std::move(args));
  }
};

}  // namespace

ETermPtr to_eta(const DerivPtr& d) {
  EtaConverter c;
  return c.conv_term(d);
}

TermPtr raw_of_eta(const ETermPtr& t) {
  switch (t->kind) {
    case ETerm::Head: {
      TermPtr core = Term::var(t->name);
      for (auto& b : t->args) {
        std::vector<TermPtr> bag;
        for (auto& e : b) bag.push_back(raw_of_eta(e));
        core = Term::app(core, bag);
      }
      return core;
    }
    case ETerm::Redex: {
      TermPtr core = raw_of_eta(t->fun);
      for (auto& b : t->args) {
        std::vector<TermPtr> bag;
        for (auto& e : b) bag.push_back(raw_of_eta(e));
        core = Term::app(core, bag);
      }
      return core;
    }
    case ETerm::Abs: {
      TermPtr body = raw_of_eta(t->body);
      size_t keep = t->binders.size();
      // Contract trailing synthetic binders whose expansion pattern is intact.
      while (keep > 0) {
        const EBinder& b = t->binders[keep - 1];
        if (!b.synthetic || !b.ann.is_identity()) break;
        if (body->kind != Term::App) break;
        bool ok = true;
        for (auto& e : body->bag)
          if (e->kind != Term::Var || e->name != b.name) ok = false;
        if (!ok || body->bag.size() != b.ann.source.size()) break;
        if (occurrences(body->sub, b.name) != 0) break;
        body = body->sub;
        --keep;
      }
      for (size_t i = keep; i-- > 0;) {
        const EBinder& b = t->binders[i];
        body = Term::abs(b.name, b.ann, body);
      }
      return body;
    }
  }
  return nullptr;
}

DerivPtr deriv_of_eta(const Context& gamma, const ETermPtr& t) {
  return check(gamma, raw_of_eta(t));
}

int esize(const Context& gamma, const ETermPtr& t) {
  return deriv_size(deriv_of_eta(gamma, t));
}

}  // namespace srl
