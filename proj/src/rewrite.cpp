#include "srl/rewrite.hpp"

#include <deque>
#include <map>
#include <random>
#include <sstream>

namespace srl {

ReductionLabel label_compose(const ReductionLabel& l2, const ReductionLabel& l1) {
  ReductionLabel l;
  l.ctx = CtxMorph::compose(l2.ctx, l1.ctx);
  l.typ = TypeMorph::compose(l1.typ, l2.typ);
  return l;
}

ReductionLabel label_identity(const Context& gamma, const TypePtr& a) {
  return ReductionLabel{CtxMorph::identity(gamma), TypeMorph::identity(a)};
}

bool label_eq(const ReductionLabel& a, const ReductionLabel& b) {
  return ctx_morph_eq(a.ctx, b.ctx) && type_morph_eq(a.typ, b.typ);
}

std::string show_label(const ReductionLabel& l) {
  return "(" + show_ctx_morph(l.ctx) + " ; " + show_type_morph(l.typ) + ")";
}

namespace {

bool is_exp_redex(const ETermPtr& t) {
  if (t->kind != ETerm::Abs) return false;
  for (const EBinder& b : t->binders)
    if (!b.ann.is_identity()) return true;
  return false;
}

bool is_lin_redex(const ETermPtr& t) {
  if (t->kind != ETerm::Redex) return false;
  for (const EBinder& b : t->fun->binders)
    if (!b.ann.is_perm()) return false;
  return true;
}

void scan_redexes(const ETermPtr& t, Path& p, std::vector<std::pair<Path, StepKind>>& out) {
  switch (t->kind) {
    case ETerm::Head:
      for (size_t k = 0; k < t->args.size(); ++k)
        for (size_t e = 0; e < t->args[k].size(); ++e) {
          p.push_back(static_cast<int>(k) + 1);
          p.push_back(static_cast<int>(e));
          scan_redexes(t->args[k][e], p, out);
          p.pop_back();
          p.pop_back();
        }
      break;
    case ETerm::Redex:
      if (is_lin_redex(t)) out.emplace_back(p, StepKind::Linear);
      p.push_back(0);
      scan_redexes(t->fun, p, out);
      p.pop_back();
      for (size_t k = 0; k < t->args.size(); ++k)
        for (size_t e = 0; e < t->args[k].size(); ++e) {
          p.push_back(static_cast<int>(k) + 1);
          p.push_back(static_cast<int>(e));
          scan_redexes(t->args[k][e], p, out);
          p.pop_back();
          p.pop_back();
        }
      break;
    case ETerm::Abs:
      if (is_exp_redex(t)) out.emplace_back(p, StepKind::Exponential);
      p.push_back(0);
      scan_redexes(t->body, p, out);
      p.pop_back();
      break;
  }
}

std::vector<std::string> with_binders(const std::vector<std::string>& universe,
                                      const std::vector<EBinder>& binders) {
  std::vector<std::string> u = universe;
  for (const EBinder& b : binders) u.push_back(b.name);
  return u;
}

CtxMorph restrict_ctx(const CtxMorph& m, size_t n) {
  CtxMorph r;
  r.vars.assign(m.vars.begin(), m.vars.begin() + n);
  r.comps.assign(m.comps.begin(), m.comps.begin() + n);
  return r;
}

}  // namespace

std::vector<std::pair<Path, StepKind>> find_redexes(const ETermPtr& t) {
  std::vector<std::pair<Path, StepKind>> out;
  Path p;
  scan_redexes(t, p, out);
  return out;
}

Step exp_ground_step(const Context& gamma, const ETermPtr& t, size_t levels) {
  if (t->kind != ETerm::Abs)
    throw CheckError("NotARedex", "not an abstraction");
  size_t k = levels == 0 ? t->binders.size() : levels;
  if (k > t->binders.size())
    throw CheckError("InvalidPosition", "binder level out of range");
  bool any = false;
  for (size_t i = 0; i < k; ++i)
    if (!t->binders[i].ann.is_identity()) any = true;
  if (!any) throw CheckError("NotARedex", "annotation is the identity");
  Context gb = gamma;
  CtxMorph theta;
  for (const auto& [v, l] : gamma.entries) {
    theta.vars.push_back(v);
    theta.comps.push_back(ListMorph::identity(l));
  }
  for (size_t i = 0; i < t->binders.size(); ++i) {
    const EBinder& b = t->binders[i];
    gb.entries.emplace_back(b.name, b.ann.target());
    theta.vars.push_back(b.name);
    theta.comps.push_back(i < k ? b.ann : ListMorph::identity(b.ann.target()));
  }
  ActionResult r = contravariant(gb, t->body, theta);
  std::vector<EBinder> binders;
  std::vector<ListMorph> nus;
  size_t n = gamma.entries.size();
  for (size_t i = 0; i < t->binders.size(); ++i) {
    const ListMorph& nu = r.residual.comps[n + i];
    if (i < k) {
      binders.push_back(EBinder{t->binders[i].name, ListMorph::identity(nu.target()),
                                t->binders[i].synthetic});
      nus.push_back(nu);
    } else {
      binders.push_back(EBinder{t->binders[i].name,
                                ListMorph::compose(nu, t->binders[i].ann),
                                t->binders[i].synthetic});
      nus.push_back(ListMorph::identity(t->binders[i].ann.source));
    }
  }
  Step st;
  st.kind = StepKind::Exponential;
  st.result = ETerm::abs(std::move(binders), r.term, t->synthetic);
  st.label.ctx = restrict_ctx(r.residual, n);
  st.label.typ = seq_arrow(nus);
  return st;
}

Step lin_ground_step(const Context& gamma, const ETermPtr& t, size_t levels) {
  if (t->kind != ETerm::Redex)
    throw CheckError("NotARedex", "not a redex");
  size_t k = levels == 0 ? t->fun->binders.size() : levels;
  if (k > t->fun->binders.size())
    throw CheckError("InvalidPosition", "binder level out of range");
  for (size_t i = 0; i < k; ++i)
    if (!t->fun->binders[i].ann.is_perm())
      throw CheckError("NotARedex", "annotations are not ground permutations");
  std::vector<std::string> universe;
  for (const auto& [v, l] : gamma.entries) universe.push_back(v);
  ETermPtr s = t->fun->body;
  if (k < t->fun->binders.size()) {
    std::vector<EBinder> rest(t->fun->binders.begin() + k, t->fun->binders.end());
    s = ETerm::abs(std::move(rest), t->fun->body, t->fun->synthetic);
  }
  std::vector<ListMorph> taus;
  for (size_t i = 0; i < k; ++i) taus.push_back(t->fun->binders[i].ann);
  ESeq acted(t->args.begin(), t->args.begin() + k);
  SeqActionResult m = covariant_seq(universe, acted, taus);
  std::vector<std::pair<std::string, EBag>> bags;
  for (size_t i = 0; i < k; ++i)
    bags.emplace_back(t->fun->binders[i].name, m.seq[i]);
  SubstResult sr = substitute_multi(universe, s, bags);
  ESeq rest_args(t->args.begin() + k, t->args.end());
  Step st;
  st.kind = StepKind::Linear;
  st.result = rest_args.empty() ? sr.term : ETerm::redex(sr.term, rest_args);
  st.label.ctx.vars = universe;
  for (size_t v = 0; v < universe.size(); ++v) {
    ListMorph fun_id = ListMorph::identity(occ_types(t->fun, universe[v]));
    ListMorph head =
        ListMorph::compose(sr.sigma.comps[v], block_sum(fun_id, m.residual.comps[v]));
    for (const EBag& b : rest_args)
      head = block_sum(head, ListMorph::identity(ebag_ctx(b, {universe[v]}).entries[0].second));
    st.label.ctx.comps.push_back(std::move(head));
  }
  st.label.typ = TypeMorph::atom();
  return st;
}

namespace {

Step go(const Context& gamma, const ETermPtr& t, const Path& pos, size_t d, StepKind kind, size_t levels);

// Context-morphism component for the whole node assembled from per-block
// morphisms in term order.
ListMorph occ_identity(const ETermPtr& t, const std::string& y) {
  return ListMorph::identity(occ_types(t, y));
}

Step arg_side(const Context& gamma, const ETermPtr& t, const Path& pos, size_t d,
              StepKind kind, size_t levels) {
  size_t k = static_cast<size_t>(pos[d]) - 1;
  size_t e = static_cast<size_t>(pos[d + 1]);
  if (k >= t->args.size() || e >= t->args[k].size())
    throw CheckError("InvalidPosition", "argument index out of range");
  const ETermPtr& elem = t->args[k][e];
  Context ge = ectx(elem, [&] {
    std::vector<std::string> u;
    for (const auto& [v, l] : gamma.entries) u.push_back(v);
    return u;
  }());
  Step inner = go(ge, elem, pos, d + 2, kind, levels);

  ESeq args = t->args;
  args[k][e] = inner.result;

  auto n = std::make_shared<ETerm>(*t);
  TypeMorphPtr fe = inner.label.typ;
  TypeMorphPtr big;  // old node-head/function type -> new one
  if (!fe->is_identity()) {
    // bag-level label <id; id..fe..id> : new bag type -> old bag type
    TypeList new_bag = ebag_ty(t->args[k]);
    new_bag[e] = fe->domain();
    ListMorph m;
    m.source = new_bag;
    m.alpha = IndexMap::identity(static_cast<int>(new_bag.size()));
    for (size_t j = 0; j < new_bag.size(); ++j)
      m.nested.push_back(j == e ? fe : TypeMorph::identity(new_bag[j]));
    std::vector<ListMorph> lefts;
    std::vector<TypeList> levels =
        t->kind == ETerm::Head ? t->head_ty : eta_unroll(etype(t->fun));
    for (size_t i = 0; i < levels.size(); ++i)
      lefts.push_back(i == k ? m : ListMorph::identity(levels[i]));
    big = seq_arrow(lefts);
  }

  if (t->kind == ETerm::Head) {
    if (big) n->head_ty = eta_unroll(big->codomain());
  } else if (big) {
    std::vector<std::string> u;
    for (const auto& [v, l] : gamma.entries) u.push_back(v);
    ActionResult cr = covariant(ectx(t->fun, u), t->fun, big);
    n->fun = cr.term;
  }
  n->args = std::move(args);

  Step st;
  st.kind = inner.kind;
  st.result = n;
  st.label.typ = TypeMorph::atom();
  for (const auto& [y, l] : gamma.entries) {
    std::vector<ListMorph> blocks;
    if (t->kind == ETerm::Head) {
      if (y == t->name) {
        TypePtr old_ty = eta_roll(t->head_ty);
        if (big)
          blocks.push_back(ListMorph{{old_ty}, IndexMap{1, {1}}, {big}});
        else
          blocks.push_back(ListMorph::identity({old_ty}));
      }
    } else {
      blocks.push_back(occ_identity(t->fun, y));
    }
    for (size_t i = 0; i < t->args.size(); ++i)
      for (size_t j = 0; j < t->args[i].size(); ++j) {
        if (i == k && j == e)
          blocks.push_back(*inner.label.ctx.find(y));
        else
          blocks.push_back(occ_identity(t->args[i][j], y));
      }
    ListMorph comp = ListMorph::identity({});
    for (const ListMorph& b : blocks) comp = block_sum(comp, b);
    st.label.ctx.vars.push_back(y);
    st.label.ctx.comps.push_back(std::move(comp));
  }
  return st;
}

Step go(const Context& gamma, const ETermPtr& t, const Path& pos, size_t d, StepKind kind,
        size_t levels) {
  if (d == pos.size()) {
    Step st = kind == StepKind::Exponential ? exp_ground_step(gamma, t, levels)
                                            : lin_ground_step(gamma, t, levels);
    return st;
  }
  int c = pos[d];
  switch (t->kind) {
    case ETerm::Abs: {
      if (c != 0) throw CheckError("InvalidPosition", "abstraction has only the body");
      Context gb = gamma;
      for (const EBinder& b : t->binders) gb.entries.emplace_back(b.name, b.ann.target());
      Step inner = go(gb, t->body, pos, d + 1, kind, levels);
      auto n = std::make_shared<ETerm>(*t);
      n->body = inner.result;
      size_t base = gamma.entries.size();
      for (size_t i = 0; i < t->binders.size(); ++i)
        n->binders[i].ann =
            ListMorph::compose(inner.label.ctx.comps[base + i], t->binders[i].ann);
      Step st;
      st.kind = inner.kind;
      st.result = n;
      st.label.ctx = restrict_ctx(inner.label.ctx, base);
      st.label.typ = TypeMorph::identity(etype(t));
      return st;
    }
    case ETerm::Redex: {
      if (c == 0) {
        std::vector<std::string> u;
        for (const auto& [v, l] : gamma.entries) u.push_back(v);
        Step inner = go(ectx(t->fun, u), t->fun, pos, d + 1, kind, levels);
        std::vector<ListMorph> parts = arrow_parts(inner.label.typ);
        SeqActionResult m = covariant_seq(u, t->args, parts);
        auto n = std::make_shared<ETerm>(*t);
        n->fun = inner.result;
        n->args = m.seq;
        Step st;
        st.kind = inner.kind;
        st.result = n;
        st.label.typ = TypeMorph::atom();
        for (size_t v = 0; v < u.size(); ++v) {
          st.label.ctx.vars.push_back(u[v]);
          st.label.ctx.comps.push_back(
              block_sum(*inner.label.ctx.find(u[v]), m.residual.comps[v]));
        }
        return st;
      }
      return arg_side(gamma, t, pos, d, kind, levels);
    }
    case ETerm::Head: {
      if (c == 0) throw CheckError("InvalidPosition", "head has no position 0");
      return arg_side(gamma, t, pos, d, kind, levels);
    }
  }
  throw CheckError("InvalidPosition", "unreachable");
}

}  // namespace

Step step_closure(const Context& gamma, const ETermPtr& t, const Path& pos, StepKind kind,
                  size_t levels) {
  Step st = go(gamma, t, pos, 0, kind, levels);
  st.kind = kind;
  st.position = pos;
  return st;
}

bool is_planar(const ETermPtr& t) {
  switch (t->kind) {
    case ETerm::Head:
      for (const EBag& b : t->args)
        for (const ETermPtr& e : b)
          if (!is_planar(e)) return false;
      return true;
    case ETerm::Redex:
      if (!is_planar(t->fun)) return false;
      for (const EBag& b : t->args)
        for (const ETermPtr& e : b)
          if (!is_planar(e)) return false;
      return true;
    case ETerm::Abs:
      for (const EBinder& b : t->binders)
        if (!b.ann.is_identity()) return false;
      return is_planar(t->body);
  }
  return true;
}

NormalizeResult normalize(const Context& gamma, const ETermPtr& t, Strategy strat,
                          std::uint64_t seed, long budget, StepFilter filter) {
  std::mt19937_64 rng(seed);
  NormalizeResult r;
  r.term = t;
  r.label = label_identity(gamma, etype(t));
  Context cur = gamma;
  long steps = 0;
  for (;;) {
    std::vector<std::pair<Path, StepKind>> rs = find_redexes(r.term);
    if (filter != StepFilter::Both) {
      std::vector<std::pair<Path, StepKind>> keep;
      for (auto& p : rs)
        if ((filter == StepFilter::ExpOnly) == (p.second == StepKind::Exponential))
          keep.push_back(p);
      rs = std::move(keep);
    }
    if (rs.empty()) return r;
    if (++steps > budget)
      throw CheckError("StepBudgetExceeded", "normalization exceeded step budget");
    size_t pick = 0;
    switch (strat) {
      case Strategy::LeftmostOutermost:
        break;
      case Strategy::ExponentialFirst: {
        for (size_t i = 0; i < rs.size(); ++i)
          if (rs[i].second == StepKind::Exponential) { pick = i; break; }
        break;
      }
      case Strategy::LinearFirst: {
        for (size_t i = 0; i < rs.size(); ++i)
          if (rs[i].second == StepKind::Linear) { pick = i; break; }
        break;
      }
      case Strategy::Random:
        pick = std::uniform_int_distribution<size_t>(0, rs.size() - 1)(rng);
        break;
    }
    Step st = step_closure(cur, r.term, rs[pick].first, rs[pick].second);
    cur = st.label.ctx.target();
    r.label = label_compose(st.label, r.label);
    r.term = st.result;
    r.trace.push_back(std::move(st));
  }
}

NormalizeResult exp_normalize(const Context& gamma, const ETermPtr& t) {
  return normalize(gamma, t, Strategy::LeftmostOutermost, 0, 1000000, StepFilter::ExpOnly);
}

NormalizeResult lin_normalize(const Context& gamma, const ETermPtr& t) {
  return normalize(gamma, t, Strategy::LeftmostOutermost, 0, 1000000, StepFilter::LinOnly);
}

namespace {

std::string graph_key(const ETermPtr& t);

std::string graph_key_seq(const ESeq& q) {
  std::ostringstream out;
  for (const EBag& b : q) {
    out << "[";
    for (const ETermPtr& e : b) out << graph_key(e) << ";";
    out << "]";
  }
  return out.str();
}

std::string graph_key(const ETermPtr& t) {
  std::ostringstream out;
  switch (t->kind) {
    case ETerm::Head:
      out << "H(" << t->name;
      for (const TypeList& l : t->head_ty) out << "|" << show_list(l);
      out << ")" << graph_key_seq(t->args);
      break;
    case ETerm::Redex:
      out << "R(" << graph_key(t->fun) << ")" << graph_key_seq(t->args);
      break;
    case ETerm::Abs:
      out << "L(";
      for (const EBinder& b : t->binders)
        out << b.name << "^" << show_list_morph(b.ann, true) << ",";
      out << ")" << graph_key(t->body);
      break;
  }
  return out.str();
}

struct GraphNode {
  ETermPtr term;
  ReductionLabel label;
};

std::map<std::string, GraphNode> explore(const Context& gamma, const ETermPtr& start,
                                         const ReductionLabel& init, long budget) {
  (void)gamma;
  std::map<std::string, GraphNode> seen;
  std::deque<std::string> queue;
  std::string k0 = graph_key(start);
  seen[k0] = GraphNode{start, init};
  queue.push_back(k0);
  long expanded = 0;
  while (!queue.empty()) {
    std::string k = queue.front();
    queue.pop_front();
    GraphNode node = seen[k];
    if (++expanded > budget)
      throw CheckError("StepBudgetExceeded", "peak exploration exceeded budget");
    Context cur = node.label.ctx.target();
    for (const auto& [pos, kind] : find_redexes(node.term)) {
      Step st = step_closure(cur, node.term, pos, kind);
      std::string nk = graph_key(st.result);
      if (seen.count(nk)) continue;
      seen[nk] = GraphNode{st.result, label_compose(st.label, node.label)};
      queue.push_back(nk);
    }
  }
  return seen;
}

}  // namespace

std::optional<JoinResult> join_peak(const Context& gamma, const ETermPtr& s, const Step& s1,
                                    const Step& s2, long budget) {
  (void)s;
  auto g1 = explore(gamma, s1.result, s1.label, budget);
  auto g2 = explore(gamma, s2.result, s2.label, budget);
  for (const auto& [k, n1] : g1) {
    auto it = g2.find(k);
    if (it == g2.end()) continue;
    if (label_eq(n1.label, it->second.label))
      return JoinResult{n1.term, n1.label, it->second.label};
  }
  return std::nullopt;
}

}  // namespace srl
