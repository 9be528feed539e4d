#include "srl/action.hpp"

#include <map>

namespace srl {

namespace {

// Covariant transformation only rewrites binder annotations, so occurrence
// ids survive unchanged; residuals are recovered from ids at the public
// boundaries.
ETermPtr cov(const ETermPtr& t, const TypeMorphPtr& f) {
  if (f->is_identity()) {
    if (!type_eq(f->domain(), etype(t)))
      throw CheckError("TypeMismatch", "covariant action domain != term type");
    return t;
  }
  if (t->kind != ETerm::Abs)
    throw CheckError("TypeMismatch",
                     "non-identity covariant action at atom type");
  if (!type_eq(f->domain(), etype(t)))
    throw CheckError("TypeMismatch", "covariant action domain != term type");
  std::vector<ListMorph> lefts = arrow_parts(f);
  if (lefts.size() != t->binders.size())
    throw CheckError("TypeMismatch", "covariant action level mismatch");
  auto n = std::make_shared<ETerm>(*t);
  for (size_t i = 0; i < lefts.size(); ++i)
    n->binders[i].ann = ListMorph::compose(t->binders[i].ann, lefts[i]);
  return n;
}

EBag cov_bag(const EBag& bag, const ListMorph& m) {
  if (!list_eq(m.source, ebag_ty(bag)))
    throw CheckError("TypeMismatch", "covariant bag action source mismatch");
  EBag out;
  for (size_t j = 0; j < m.alpha.table.size(); ++j)
    out.push_back(cov(bag[m.alpha.table[j] - 1], m.nested[j]));
  return out;
}

ESeq cov_seq(const ESeq& args, const std::vector<ListMorph>& parts) {
  if (parts.size() != args.size())
    throw CheckError("TypeMismatch", "covariant sequence action arity mismatch");
  ESeq out;
  for (size_t i = 0; i < args.size(); ++i) out.push_back(cov_bag(args[i], parts[i]));
  return out;
}

// Per-variable occurrence queues for the contravariant recursion. Every
// variable in scope owns one nested piece per occurrence (identity pieces for
// binders); consumption order is term order. id_index remembers which
// occurrence each id belonged to, so residual tables can be read off results.
struct ContraState {
  std::map<std::string, std::vector<TypeMorphPtr>> pieces;
  std::map<std::string, size_t> next;
  std::map<int, int> id_index;
};

ETermPtr contra(const ETermPtr& t, ContraState& st);

EBag contra_bag(const EBag& bag, ContraState& st) {
  EBag out;
  for (const ETermPtr& e : bag) out.push_back(contra(e, st));
  return out;
}

ESeq contra_seq(const ESeq& args, ContraState& st) {
  ESeq out;
  for (const EBag& b : args) out.push_back(contra_bag(b, st));
  return out;
}

ETermPtr contra(const ETermPtr& t, ContraState& st) {
  switch (t->kind) {
    case ETerm::Head: {
      auto it = st.pieces.find(t->name);
      if (it == st.pieces.end())
        throw CheckError("ContextMismatch", "no morphism queue for " + t->name);
      size_t i = st.next[t->name]++;
      if (i >= it->second.size())
        throw CheckError("ContextMismatch",
                         "too many occurrences of " + t->name);
      TypeMorphPtr m = it->second[i];
      st.id_index[t->occ_id] = static_cast<int>(i);
      ESeq args = contra_seq(t->args, st);
      auto n = std::make_shared<ETerm>(*t);
      if (!m->is_identity()) {
        n->head_ty = eta_unroll(m->domain());
        args = cov_seq(args, arrow_parts(m));
      }
      n->args = std::move(args);
      return n;
    }
    case ETerm::Redex: {
      auto n = std::make_shared<ETerm>(*t);
      n->fun = contra(t->fun, st);
      n->args = contra_seq(t->args, st);
      return n;
    }
    case ETerm::Abs: {
      for (const EBinder& b : t->binders) {
        TypeList occ = b.ann.target();
        std::vector<TypeMorphPtr> ids;
        for (const TypePtr& a : occ) ids.push_back(TypeMorph::identity(a));
        st.pieces[b.name] = std::move(ids);
        st.next[b.name] = 0;
      }
      ETermPtr body = contra(t->body, st);
      auto n = std::make_shared<ETerm>(*t);
      n->body = body;
      for (size_t i = 0; i < t->binders.size(); ++i) {
        const EBinder& b = t->binders[i];
        if (st.next[b.name] != st.pieces[b.name].size())
          throw CheckError("ContextMismatch",
                           "unconsumed occurrences of " + b.name);
        TypeList occ = b.ann.target();
        IndexMap table;
        table.codomain = static_cast<int>(occ.size());
        for (int id : occ_ids(body, b.name))
          table.table.push_back(st.id_index.at(id) + 1);
        ListMorph nu = ListMorph::ground(occ, table);
        n->binders[i].ann = ListMorph::compose(nu, b.ann);
        st.pieces.erase(b.name);
        st.next.erase(b.name);
      }
      return n;
    }
  }
  throw CheckError("ContextMismatch", "unreachable");
}

// Residual tables from ids: src_index maps each id to its position in the
// given source list; the output's occurrences, read in term order, give the
// table entries.
ListMorph residual_comp(const TypeList& src, const std::map<int, int>& id_index,
                        const std::vector<int>& out_ids) {
  IndexMap table;
  table.codomain = static_cast<int>(src.size());
  for (int id : out_ids) table.table.push_back(id_index.at(id) + 1);
  return ListMorph::ground(src, table);
}

std::vector<int> bag_occ_ids(const EBag& b, const std::string& x) {
  std::vector<int> out;
  for (const ETermPtr& e : b)
    for (int id : occ_ids(e, x)) out.push_back(id);
  return out;
}

std::vector<int> seq_occ_ids(const ESeq& q, const std::string& x) {
  std::vector<int> out;
  for (const EBag& b : q)
    for (int id : bag_occ_ids(b, x)) out.push_back(id);
  return out;
}

}  // namespace

ActionResult covariant(const Context& gamma, const ETermPtr& t, const TypeMorphPtr& f) {
  if (!type_eq(f->domain(), etype(t)))
    throw CheckError("TypeMismatch", "covariant action domain != term type");
  ActionResult r;
  r.term = cov(t, f);
  r.residual = CtxMorph::identity(gamma);
  return r;
}

BagActionResult covariant_bag(const std::vector<std::string>& universe, const EBag& bag,
                              const ListMorph& m) {
  int counter = 0;
  EBag src;
  for (const ETermPtr& e : bag) src.push_back(assign_ids(e, counter));
  std::map<std::string, std::map<int, int>> idx;
  std::map<std::string, TypeList> src_lists;
  for (const std::string& x : universe) {
    std::vector<int> ids = bag_occ_ids(src, x);
    TypeList tys;
    for (const ETermPtr& e : src)
      for (const TypePtr& a : occ_types(e, x)) tys.push_back(a);
    for (size_t i = 0; i < ids.size(); ++i) idx[x][ids[i]] = static_cast<int>(i);
    src_lists[x] = std::move(tys);
  }
  BagActionResult r;
  r.bag = cov_bag(src, m);
  r.residual.vars = universe;
  for (const std::string& x : universe)
    r.residual.comps.push_back(residual_comp(src_lists[x], idx[x], bag_occ_ids(r.bag, x)));
  return r;
}

SeqActionResult covariant_seq(const std::vector<std::string>& universe, const ESeq& args,
                              const std::vector<ListMorph>& parts) {
  int counter = 0;
  ESeq src;
  for (const EBag& b : args) {
    EBag nb;
    for (const ETermPtr& e : b) nb.push_back(assign_ids(e, counter));
    src.push_back(std::move(nb));
  }
  std::map<std::string, std::map<int, int>> idx;
  std::map<std::string, TypeList> src_lists;
  for (const std::string& x : universe) {
    std::vector<int> ids = seq_occ_ids(src, x);
    TypeList tys;
    for (const EBag& b : src)
      for (const ETermPtr& e : b)
        for (const TypePtr& a : occ_types(e, x)) tys.push_back(a);
    for (size_t i = 0; i < ids.size(); ++i) idx[x][ids[i]] = static_cast<int>(i);
    src_lists[x] = std::move(tys);
  }
  SeqActionResult r;
  r.seq = cov_seq(src, parts);
  r.residual.vars = universe;
  for (const std::string& x : universe)
    r.residual.comps.push_back(residual_comp(src_lists[x], idx[x], seq_occ_ids(r.seq, x)));
  return r;
}

ActionResult contravariant(const Context& gamma, const ETermPtr& t, const CtxMorph& theta) {
  if (!ctx_eq(theta.target(), gamma))
    throw CheckError("ContextMismatch", "contravariant action target != context");
  int counter = 0;
  ETermPtr src = assign_ids(t, counter);
  ContraState st;
  std::vector<ListMorph> grounds;
  for (size_t v = 0; v < theta.vars.size(); ++v) {
    const ListMorph& comp = theta.comps[v];
    ListMorph g = ground_part(comp);
    ListMorph n = nest_part(comp);
    grounds.push_back(g);
    st.pieces[theta.vars[v]] = n.nested;
    st.next[theta.vars[v]] = 0;
  }
  ETermPtr out = contra(src, st);
  for (size_t v = 0; v < theta.vars.size(); ++v) {
    const std::string& x = theta.vars[v];
    if (st.next[x] != st.pieces[x].size())
      throw CheckError("ContextMismatch", "unconsumed occurrences of " + x);
  }
  ActionResult r;
  r.term = out;
  r.residual.vars = theta.vars;
  for (size_t v = 0; v < theta.vars.size(); ++v) {
    const std::string& x = theta.vars[v];
    TypeList mid = grounds[v].target();  // source list of the nested part
    ListMorph nu_nest = residual_comp(mid, st.id_index, occ_ids(out, x));
    r.residual.comps.push_back(ListMorph::compose(nu_nest, grounds[v]));
  }
  return r;
}

bool compose_check(const Context& gamma, const ETermPtr& t, const TypeMorphPtr& f,
                   const TypeMorphPtr& g) {
  ActionResult a = covariant(gamma, t, f);
  ActionResult b = covariant(gamma, a.term, g);
  ActionResult c = covariant(gamma, t, TypeMorph::compose(g, f));
  return eterm_eq(b.term, c.term) &&
         ctx_morph_eq(CtxMorph::compose(b.residual, a.residual), c.residual);
}

bool compose_check_contra(const Context& gamma, const ETermPtr& t, const CtxMorph& theta,
                          const CtxMorph& eta) {
  ActionResult a = contravariant(gamma, t, theta);
  ActionResult b = contravariant(a.residual.target(), a.term,
                                 CtxMorph::compose(a.residual, eta));
  ActionResult c = contravariant(gamma, t, CtxMorph::compose(theta, eta));
  return eterm_eq(b.term, c.term) && ctx_morph_eq(b.residual, c.residual);
}

bool interchange_check(const Context& gamma, const ETermPtr& t, const TypeMorphPtr& f,
                       const CtxMorph& theta) {
  ActionResult a = contravariant(gamma, t, theta);
  ActionResult b = covariant(a.residual.target(), a.term, f);
  ActionResult c = covariant(gamma, t, f);
  ActionResult d = contravariant(c.residual.target(), c.term,
                                 CtxMorph::compose(c.residual, theta));
  return eterm_eq(b.term, d.term);
}

}  // namespace srl
