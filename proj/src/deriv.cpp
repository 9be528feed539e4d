#include "srl/deriv.hpp"

#include <map>
#include <sstream>

namespace srl {

namespace {

struct Slot {
  TypeList list;
  bool open = false;  // annotation omitted: occurrence types are collected
  size_t used = 0;
};

struct Checker {
  std::vector<std::string> scope;
  std::map<std::string, Slot> slots;

  Context ctx_of(const std::vector<std::pair<std::string, TypeList>>& assign) {
    Context g;
    for (auto& v : scope) {
      TypeList l;
      for (auto& a : assign)
        if (a.first == v) l = a.second;
      g.entries.emplace_back(v, l);
    }
    return g;
  }

  TypePtr take(const std::string& x, const TypePtr* expected) {
    auto it = slots.find(x);
    if (it == slots.end()) throw CheckError("UnboundVariable", "variable " + x + " not in scope");
    Slot& s = it->second;
    if (s.open) {
      if (!expected)
        throw CheckError("AnnotationMismatch",
                         "cannot infer the occurrence type of " + x + "; annotate its binder");
      s.list.push_back(*expected);
      ++s.used;
      return *expected;
    }
    if (s.used >= s.list.size())
      throw CheckError("OccurrenceCountMismatch",
                       "too many occurrences of " + x + " for its context list");
    TypePtr a = s.list[s.used++];
    if (expected && !type_eq(a, *expected))
      throw CheckError("TypeClash", "occurrence of " + x + " has type " + show_type(a) +
                                        " where " + show_type(*expected) + " is required");
    return a;
  }

  DerivPtr synth(const TermPtr& t) { return go(t, nullptr); }
  DerivPtr check_against(const TermPtr& t, const TypePtr& a) { return go(t, &a); }

  DerivPtr go(const TermPtr& t, const TypePtr* expected) {
    switch (t->kind) {
      case Term::Var: {
        TypePtr a = take(t->name, expected);
        auto d = std::make_shared<Deriv>();
        d->kind = Deriv::Var;
        d->ctx = ctx_of({{t->name, {a}}});
        d->ty = a;
        d->name = t->name;
        return d;
      }
      case Term::Abs: {
        if (slots.count(t->name))
          throw CheckError("AnnotationMismatch", "shadowed binder " + t->name + " (freshen first)");
        const Type* want = nullptr;
        if (expected) {
          if ((*expected)->is_atom)
            throw CheckError("TypeClash", "abstraction cannot have the atom type");
          want = expected->get();
        }
        Slot s;
        if (t->ann) {
          s.list = t->ann->target();
          if (want && !list_eq(t->ann->source, want->source))
            throw CheckError("TypeClash", "annotation domain " + show_list(t->ann->source) +
                                              " does not match the required source " +
                                              show_list(want->source));
        } else {
          s.open = true;
        }
        slots[t->name] = s;
        scope.push_back(t->name);
        DerivPtr body = want ? check_against(t->sub, want->target) : synth(t->sub);
        Slot done = slots[t->name];
        scope.pop_back();
        slots.erase(t->name);
        ListMorph ann;
        if (t->ann) {
          if (done.used != done.list.size())
            throw CheckError("AnnotationMismatch",
                             "annotation codomain of " + t->name + " lists " +
                                 std::to_string(done.list.size()) + " occurrence types but " +
                                 std::to_string(done.used) + " occur");
          ann = *t->ann;
        } else {
          ann = ListMorph::identity(done.list);
          if (want && !list_eq(ann.source, want->source))
            throw CheckError("TypeClash", "inferred identity annotation for " + t->name +
                                              " does not match the required source list");
        }
        auto d = std::make_shared<Deriv>();
        d->kind = Deriv::Abs;
        Context bodyctx = body->ctx;
        Context outer;
        for (auto& e : bodyctx.entries)
          if (e.first != t->name) outer.entries.push_back(e);
        d->ctx = outer;
        d->ty = Type::arrow(ann.source, body->ty);
        d->name = t->name;
        d->ann = ann;
        d->kids = {body};
        return d;
      }
      case Term::App: {
        DerivPtr fun = synth(t->sub);
        if (fun->ty->is_atom)
          throw CheckError("TypeClash", "application head has the atom type");
        const TypeList& src = fun->ty->source;
        if (src.size() != t->bag.size())
          throw CheckError("TypeClash", "head requires a bag of " + std::to_string(src.size()) +
                                            " elements, got " + std::to_string(t->bag.size()));
        std::vector<DerivPtr> elems;
        for (size_t i = 0; i < t->bag.size(); ++i)
          elems.push_back(check_against(t->bag[i], src[i]));
        auto bag = std::make_shared<Deriv>();
        bag->kind = Deriv::Bag;
        bag->ctx = ctx_of({});
        for (auto& e : elems) bag->ctx = ctx_tensor(bag->ctx, e->ctx);
        bag->bag_ty = src;
        bag->kids = elems;
        auto d = std::make_shared<Deriv>();
        d->kind = Deriv::App;
        d->ctx = ctx_tensor(fun->ctx, bag->ctx);
        d->ty = fun->ty->target;
        d->kids = {fun, bag};
        if (expected && !type_eq(d->ty, *expected))
          throw CheckError("TypeClash", "application has type " + show_type(d->ty) + " where " +
                                            show_type(*expected) + " is required");
        return d;
      }
    }
    throw CheckError("Internal", "unreachable");
  }
};

}  // namespace

DerivPtr check(const Context& gamma, const TermPtr& s) {
  TermPtr t = freshen(s);
  Checker c;
  for (auto& e : gamma.entries) {
    c.scope.push_back(e.first);
    c.slots[e.first] = Slot{e.second, false, 0};
  }
  DerivPtr d = c.synth(t);
  for (auto& e : gamma.entries) {
    const Slot& sl = c.slots[e.first];
    if (sl.used != sl.list.size())
      throw CheckError("OccurrenceCountMismatch",
                       "context lists " + std::to_string(sl.list.size()) + " types for " + e.first +
                           " but only " + std::to_string(sl.used) + " occurrences appear");
  }
  return d;
}

DerivPtr infer_closed(const TermPtr& s) { return check(Context{}, s); }

int deriv_size(const DerivPtr& d) {
  int n = 1;
  for (auto& k : d->kids) n += deriv_size(k);
  return n;
}

bool deriv_eq(const DerivPtr& a, const DerivPtr& b) {
  if (a->kind != b->kind || a->name != b->name) return false;
  if (!ctx_eq(a->ctx, b->ctx)) return false;
  if ((a->ty == nullptr) != (b->ty == nullptr)) return false;
  if (a->ty && !type_eq(a->ty, b->ty)) return false;
  if (!list_eq(a->bag_ty, b->bag_ty)) return false;
  if (a->kind == Deriv::Abs && !list_morph_eq(a->ann, b->ann)) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!deriv_eq(a->kids[i], b->kids[i])) return false;
  return true;
}

TermPtr erase(const DerivPtr& d) {
  switch (d->kind) {
    case Deriv::Var:
      return Term::var(d->name);
    case Deriv::Abs:
      return Term::abs(d->name, d->ann, erase(d->kids[0]));
    case Deriv::App: {
      std::vector<TermPtr> bag;
      for (auto& e : d->kids[1]->kids) bag.push_back(erase(e));
      return Term::app(erase(d->kids[0]), bag);
    }
    case Deriv::Bag:
      break;
  }
  throw CheckError("Internal", "erase applied to a bag node");
}

static void show_deriv_rec(const DerivPtr& d, int depth, std::ostringstream& out) {
  static const char* names[] = {"var", "abs", "app", "bag"};
  out << std::string(depth * 2, ' ') << names[d->kind];
  if (!d->name.empty()) out << " " << d->name;
  out << " | " << show_ctx(d->ctx) << " | ";
  if (d->kind == Deriv::Bag)
    out << show_list(d->bag_ty);
  else
    out << show_type(d->ty);
  if (d->kind == Deriv::Abs) out << " | ann " << show_list_morph(d->ann);
  out << "\n";
  for (auto& k : d->kids) show_deriv_rec(k, depth + 1, out);
}

std::string show_deriv(const DerivPtr& d) {
  std::ostringstream out;
  show_deriv_rec(d, 0, out);
  return out.str();
}

}  // namespace srl
