#include "srl/subst.hpp"

#include <map>

namespace srl {

namespace {

struct BagState {
  EBag bag;
  size_t next = 0;
};

struct SubstState {
  std::map<std::string, BagState> bags;
};

ETermPtr sub(const ETermPtr& t, SubstState& st);

// True when t is exactly an eta-expansion of its head variable: identity
// binder annotations and each bag a list of in-order expansions of the
// corresponding binder. Actions can perturb a synthetic expansion, so the
// flag alone is not enough.
bool pure_expansion(const ETermPtr& t) {
  if (t->kind != ETerm::Abs || t->body->kind != ETerm::Head) return false;
  if (t->binders.size() != t->body->args.size()) return false;
  for (size_t i = 0; i < t->binders.size(); ++i) {
    const EBinder& b = t->binders[i];
    if (!b.ann.is_identity()) return false;
    const EBag& bag = t->body->args[i];
    TypeList list = b.ann.target();
    if (bag.size() != list.size()) return false;
    for (size_t j = 0; j < bag.size(); ++j) {
      const ETermPtr& e = bag[j];
      if (list[j]->is_atom) {
        if (e->kind != ETerm::Head || e->name != b.name || !e->args.empty()) return false;
      } else {
        if (!pure_expansion(e) || e->body->name != b.name) return false;
        if (!type_eq(etype(e), list[j])) return false;
      }
    }
  }
  return true;
}

ESeq sub_seq(const ESeq& args, SubstState& st) {
  ESeq out;
  for (const EBag& b : args) {
    EBag nb;
    for (const ETermPtr& e : b) nb.push_back(sub(e, st));
    out.push_back(std::move(nb));
  }
  return out;
}

ETermPtr sub(const ETermPtr& t, SubstState& st) {
  switch (t->kind) {
    case ETerm::Head: {
      auto it = st.bags.find(t->name);
      if (it == st.bags.end()) {
        auto n = std::make_shared<ETerm>(*t);
        n->args = sub_seq(t->args, st);
        return n;
      }
      BagState& bs = it->second;
      if (bs.next >= bs.bag.size())
        throw CheckError("ArityMismatch", "bag exhausted for " + t->name);
      ETermPtr elem = bs.bag[bs.next++];
      TypePtr occ_ty = eta_roll(t->head_ty);
      if (!type_eq(etype(elem), occ_ty))
        throw CheckError("TypeMismatch", "substituted element type mismatch");
      ESeq args = sub_seq(t->args, st);
      if (args.empty()) return elem;
      if (elem->kind == ETerm::Abs && pure_expansion(elem)) {
        // eta-expansion of a variable substituted into head position
        // contracts back to a plain head application.
        auto n = std::make_shared<ETerm>(*elem->body);
        n->args = std::move(args);
        return n;
      }
      if (elem->kind != ETerm::Abs)
        throw CheckError("TypeMismatch", "applied element is not an abstraction");
      return ETerm::redex(elem, std::move(args));
    }
    case ETerm::Redex: {
      auto n = std::make_shared<ETerm>(*t);
      n->fun = sub(t->fun, st);
      n->args = sub_seq(t->args, st);
      return n;
    }
    case ETerm::Abs: {
      std::map<std::string, std::map<int, int>> before;
      for (const EBinder& b : t->binders) {
        std::vector<int> ids = occ_ids(t->body, b.name);
        for (size_t i = 0; i < ids.size(); ++i)
          before[b.name][ids[i]] = static_cast<int>(i);
      }
      ETermPtr body = sub(t->body, st);
      auto n = std::make_shared<ETerm>(*t);
      n->body = body;
      for (size_t i = 0; i < t->binders.size(); ++i) {
        const EBinder& b = t->binders[i];
        TypeList occ = b.ann.target();
        IndexMap table;
        table.codomain = static_cast<int>(occ.size());
        for (int id : occ_ids(body, b.name))
          table.table.push_back(before[b.name].at(id) + 1);
        ListMorph prime = ListMorph::ground(occ, table);
        if (!prime.is_perm())
          throw CheckError("TypeMismatch", "binder occurrences lost in substitution");
        n->binders[i].ann = ListMorph::compose(prime, b.ann);
      }
      return n;
    }
  }
  throw CheckError("TypeMismatch", "unreachable");
}

}  // namespace

SubstResult substitute_multi(const std::vector<std::string>& universe, const ETermPtr& s,
                             const std::vector<std::pair<std::string, EBag>>& bags) {
  for (const auto& [x, bag] : bags) {
    size_t occ = occ_ids(s, x).size();
    if (occ != bag.size())
      throw CheckError("ArityMismatch", "bag length != occurrences of " + x);
  }
  int counter = 0;
  ETermPtr src = assign_ids(s, counter);
  SubstState st;
  for (const auto& [x, bag] : bags) {
    BagState bs;
    for (const ETermPtr& e : bag) bs.bag.push_back(assign_ids(e, counter));
    st.bags[x] = std::move(bs);
  }
  // Source position of every id, per universe variable: occurrences in s
  // first, then the bags' occurrences in the given order.
  std::map<std::string, std::map<int, int>> idx;
  std::map<std::string, TypeList> src_lists;
  for (const std::string& y : universe) {
    std::vector<int> ids = occ_ids(src, y);
    TypeList tys = occ_types(src, y);
    for (const auto& [x, _] : bags) {
      const BagState& bs = st.bags[x];
      for (const ETermPtr& e : bs.bag) {
        for (int id : occ_ids(e, y)) ids.push_back(id);
        for (const TypePtr& a : occ_types(e, y)) tys.push_back(a);
      }
    }
    for (size_t i = 0; i < ids.size(); ++i) idx[y][ids[i]] = static_cast<int>(i);
    src_lists[y] = std::move(tys);
  }
  SubstResult r;
  r.term = sub(src, st);
  r.sigma.vars = universe;
  for (const std::string& y : universe) {
    IndexMap table;
    table.codomain = static_cast<int>(src_lists[y].size());
    for (int id : occ_ids(r.term, y)) table.table.push_back(idx[y].at(id) + 1);
    ListMorph comp = ListMorph::ground(src_lists[y], table);
    if (!comp.is_perm())
      throw CheckError("TypeMismatch", "substitution sigma is not a permutation");
    r.sigma.comps.push_back(std::move(comp));
  }
  return r;
}

SubstResult substitute(const std::vector<std::string>& universe, const ETermPtr& s,
                       const std::string& x, const EBag& bag) {
  return substitute_multi(universe, s, {{x, bag}});
}

}  // namespace srl
