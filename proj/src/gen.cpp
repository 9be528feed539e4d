#include "srl/gen.hpp"

#include <algorithm>

namespace srl {

namespace {

int ri(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

IndexMap rand_perm_table(Rng& rng, int n) {
  std::vector<int> t(n);
  for (int i = 0; i < n; ++i) t[i] = i + 1;
  std::shuffle(t.begin(), t.end(), rng);
  return IndexMap{n, std::move(t)};
}

ListMorph rand_perm_of(Rng& rng, const TypeList& tgt) {
  // A ground permutation with the given target; the table must send equal
  // types to equal types, so we only permute within equal-type groups.
  int n = static_cast<int>(tgt.size());
  std::vector<int> table(n);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    std::vector<int> cand;
    for (int j = 0; j < n; ++j)
      if (!used[j] && type_eq(tgt[j], tgt[i])) cand.push_back(j);
    int j = cand[ri(rng, 0, static_cast<int>(cand.size()) - 1)];
    used[j] = true;
    table[i] = j + 1;
  }
  TypeList src(n);
  for (int i = 0; i < n; ++i) src[table[i] - 1] = tgt[i];
  return ListMorph::ground(src, IndexMap{n, std::move(table)});
}

// Ground morphism with the given target: each target entry maps to a fresh or
// reused source entry of the same type; extra source entries are dropped.
ListMorph rand_ground_to(Rng& rng, const GenConfig& cfg, const TypeList& tgt) {
  TypeList src;
  IndexMap alpha;
  for (const TypePtr& b : tgt) {
    int reuse = 0;
    if (ri(rng, 0, 1) == 1) {
      for (size_t j = 0; j < src.size(); ++j)
        if (type_eq(src[j], b)) { reuse = static_cast<int>(j) + 1; break; }
    }
    if (reuse == 0) {
      src.push_back(b);
      reuse = static_cast<int>(src.size());
    }
    alpha.table.push_back(reuse);
  }
  if (ri(rng, 0, 3) == 0) src.push_back(rand_type(rng, cfg, 1));
  alpha.codomain = static_cast<int>(src.size());
  return ListMorph::ground(src, std::move(alpha));
}

// Ground morphism with the given source: a random table (may duplicate or
// drop entries).
ListMorph rand_ground_from(Rng& rng, const GenConfig& cfg, const TypeList& src) {
  int m = static_cast<int>(src.size());
  int n = m == 0 ? 0 : ri(rng, 0, m + cfg.max_dup);
  IndexMap alpha;
  alpha.codomain = m;
  for (int i = 0; i < n; ++i) alpha.table.push_back(ri(rng, 1, m));
  return ListMorph::ground(src, std::move(alpha));
}

}  // namespace

TypePtr rand_type(Rng& rng, const GenConfig& cfg, int depth) {
  if (depth <= 0 || ri(rng, 0, 2) == 0) return Type::atom();
  int levels = ri(rng, 1, 2);
  std::vector<TypeList> seq;
  for (int l = 0; l < levels; ++l) seq.push_back(rand_type_list(rng, cfg, depth - 1));
  return eta_roll(seq);
}

TypeList rand_type_list(Rng& rng, const GenConfig& cfg, int depth) {
  TypeList out;
  int w = ri(rng, 0, cfg.max_width);
  for (int i = 0; i < w; ++i) out.push_back(rand_type(rng, cfg, depth));
  return out;
}

TypeMorphPtr rand_type_morph_from(Rng& rng, const GenConfig& cfg, const TypePtr& a,
                                  int depth) {
  if (a->is_atom) return TypeMorph::atom();
  if (depth <= 0) return TypeMorph::identity(a);
  std::vector<TypeList> levels = eta_unroll(a);
  std::vector<ListMorph> lefts;
  for (const TypeList& l : levels) lefts.push_back(rand_list_morph_to(rng, cfg, l, depth - 1));
  return seq_arrow(lefts);
}

TypeMorphPtr rand_type_morph_to(Rng& rng, const GenConfig& cfg, const TypePtr& b, int depth) {
  if (b->is_atom) return TypeMorph::atom();
  if (depth <= 0) return TypeMorph::identity(b);
  std::vector<TypeList> levels = eta_unroll(b);
  std::vector<ListMorph> lefts;
  for (const TypeList& l : levels)
    lefts.push_back(rand_list_morph_from(rng, cfg, l, depth - 1));
  return seq_arrow(lefts);
}

ListMorph rand_list_morph_from(Rng& rng, const GenConfig& cfg, const TypeList& src,
                               int depth) {
  if (cfg.linear) {
    if (src.empty()) return ListMorph::identity(src);
    return ListMorph::ground(src, rand_perm_table(rng, static_cast<int>(src.size())));
  }
  if (depth <= 0) return rand_ground_from(rng, cfg, src);
  int m = static_cast<int>(src.size());
  int n = m == 0 ? 0 : ri(rng, 0, m + cfg.max_dup);
  ListMorph out;
  out.source = src;
  out.alpha.codomain = m;
  for (int i = 0; i < n; ++i) {
    int j = ri(rng, 1, m);
    out.alpha.table.push_back(j);
    out.nested.push_back(rand_type_morph_from(rng, cfg, src[j - 1], depth - 1));
  }
  return out;
}

ListMorph rand_list_morph_to(Rng& rng, const GenConfig& cfg, const TypeList& tgt, int depth) {
  if (cfg.linear) return rand_perm_of(rng, tgt);
  if (depth <= 0) return rand_ground_to(rng, cfg, tgt);
  ListMorph out;
  out.alpha.codomain = 0;
  for (const TypePtr& b : tgt) {
    TypeMorphPtr f = rand_type_morph_to(rng, cfg, b, depth - 1);
    TypePtr d = f->domain();
    int reuse = 0;
    if (ri(rng, 0, 1) == 1) {
      for (size_t j = 0; j < out.source.size(); ++j)
        if (type_eq(out.source[j], d)) { reuse = static_cast<int>(j) + 1; break; }
    }
    if (reuse == 0) {
      out.source.push_back(d);
      reuse = static_cast<int>(out.source.size());
    }
    out.alpha.table.push_back(reuse);
    out.nested.push_back(f);
  }
  if (ri(rng, 0, 3) == 0) out.source.push_back(rand_type(rng, cfg, 1));
  out.alpha.codomain = static_cast<int>(out.source.size());
  return out;
}

CtxMorph rand_ctx_morph_to(Rng& rng, const GenConfig& cfg, const Context& gamma) {
  CtxMorph m;
  for (const auto& [v, l] : gamma.entries) {
    m.vars.push_back(v);
    m.comps.push_back(rand_list_morph_to(rng, cfg, l, cfg.morph_depth));
  }
  return m;
}

namespace {

// Terms are sampled from the fragment on which exponential reduction is
// terminating: binder annotations are ground, and arrow-typed bag elements
// under a bound head are eta-expansions (inert). Arrow-typed elements under
// free heads and in redex argument bags may be ground-annotated abstractions.
struct Gen {
  Rng& rng;
  const GenConfig& cfg;
  std::vector<std::pair<std::string, bool>> scope;  // (name, is bound binder)
  int n_free = 0;
  int fresh = 0;

  std::string fresh_name() { return "b" + std::to_string(++fresh); }

  const std::pair<std::string, bool>& pick() {
    return scope[ri(rng, 0, static_cast<int>(scope.size()) - 1)];
  }

  std::string pick_free() { return scope[ri(rng, 0, n_free - 1)].first; }

  ListMorph rand_ann(const TypeList& occ) {
    return cfg.linear ? rand_perm_of(rng, occ) : rand_ground_to(rng, cfg, occ);
  }

  ETermPtr atom(int depth) {
    auto [h, bound] = pick();
    int levels = depth <= 0 ? 0 : ri(rng, 0, 2);
    std::vector<TypeList> hty;
    ESeq args;
    for (int l = 0; l < levels; ++l) {
      int w = ri(rng, 0, cfg.max_width);
      EBag bag;
      TypeList tl;
      for (int i = 0; i < w; ++i) {
        ETermPtr e = elem(depth - 1, bound);
        tl.push_back(etype(e));
        bag.push_back(std::move(e));
      }
      hty.push_back(std::move(tl));
      args.push_back(std::move(bag));
    }
    return ETerm::head(h, std::move(hty), std::move(args));
  }

  ETermPtr elem(int depth, bool under_bound) {
    int c = depth <= 0 ? 0 : ri(rng, 0, 4);
    switch (c) {
      case 1:
      case 2: {
        if (under_bound) {
          // Arrow-typed elements under a bound head must stay inert under any
          // morphism pushed through the head: expansions of free variables.
          TypePtr a = rand_type(rng, cfg, 2);
          if (!a->is_atom) return eta_expand_var(pick_free(), a);
          return atom(depth);
        }
        return abs(depth);
      }
      case 3: {
        TypePtr a = rand_type(rng, cfg, 1);
        if (!a->is_atom)
          return eta_expand_var(under_bound ? pick_free() : pick().first, a);
        return atom(depth);
      }
      case 4:
        return redex(depth);
      default:
        return atom(depth);
    }
  }

  ETermPtr abs(int depth) {
    int nb = ri(rng, 1, 2);
    std::vector<std::string> names;
    for (int i = 0; i < nb; ++i) names.push_back(fresh_name());
    size_t base = scope.size();
    for (const std::string& n : names) scope.emplace_back(n, true);
    ETermPtr body = atom(depth);
    scope.resize(base);
    std::vector<EBinder> binders;
    for (const std::string& n : names) {
      TypeList occ = occ_types(body, n);
      binders.push_back(EBinder{n, rand_ann(occ), false});
    }
    return ETerm::abs(std::move(binders), std::move(body));
  }

  ETermPtr redex(int depth) {
    ETermPtr fun = abs(depth);
    ESeq args;
    for (const EBinder& b : fun->binders) {
      EBag bag;
      for (const TypePtr& c : b.ann.source) bag.push_back(of_type(c, depth - 1));
      args.push_back(std::move(bag));
    }
    return ETerm::redex(std::move(fun), std::move(args));
  }

  ETermPtr of_type(const TypePtr& a, int depth) {
    if (a->is_atom) return atom(depth);
    if (depth <= 0 || ri(rng, 0, 2) == 0) return eta_expand_var(pick().first, a);
    // Forced abstraction: ground annotations pick the occurrence lists, and
    // the body spends the occurrences in order through a fresh head.
    std::vector<TypeList> levels = eta_unroll(a);
    std::vector<std::string> names;
    std::vector<ListMorph> anns;
    for (const TypeList& l : levels) {
      names.push_back(fresh_name());
      anns.push_back(cfg.linear
                         ? ListMorph::ground(l, rand_perm_table(rng, (int)l.size()))
                         : rand_ground_from(rng, cfg, l));
    }
    std::string h = pick().first;
    EBag bag;
    TypeList tl;
    for (size_t i = 0; i < names.size(); ++i)
      for (const TypePtr& c : anns[i].target()) {
        tl.push_back(c);
        bag.push_back(c->is_atom ? ETerm::head(names[i], {}, {})
                                 : eta_expand_var(names[i], c));
      }
    ETermPtr body = ETerm::head(h, {std::move(tl)}, {std::move(bag)});
    std::vector<EBinder> binders;
    for (size_t i = 0; i < names.size(); ++i)
      binders.push_back(EBinder{names[i], std::move(anns[i]), false});
    return ETerm::abs(std::move(binders), std::move(body));
  }
};

}  // namespace

GenTerm rand_term(Rng& rng, const GenConfig& cfg) {
  GenTerm g;
  g.universe = {"u1", "u2", "u3"};
  Gen gen{rng, cfg};
  for (const std::string& v : g.universe) gen.scope.emplace_back(v, false);
  gen.n_free = static_cast<int>(g.universe.size());
  switch (ri(rng, 0, 2)) {
    case 0: g.term = gen.atom(cfg.max_depth); break;
    case 1: g.term = gen.abs(cfg.max_depth); break;
    default: g.term = gen.redex(cfg.max_depth); break;
  }
  g.ctx = ectx(g.term, g.universe);
  eta_validate(g.ctx, g.term);
  return g;
}

ETermPtr rand_eterm_of(Rng& rng, const GenConfig& cfg, const std::vector<std::string>& pool,
                       const TypePtr& a, int depth) {
  Gen gen{rng, cfg};
  for (const std::string& v : pool) gen.scope.emplace_back(v, false);
  gen.n_free = static_cast<int>(pool.size());
  gen.fresh = 1000 + static_cast<int>(rng() % 1000);
  return gen.of_type(a, depth);
}

bool linear_typed(const ETermPtr& t) {
  switch (t->kind) {
    case ETerm::Head:
      for (const EBag& b : t->args)
        for (const ETermPtr& e : b)
          if (!linear_typed(e)) return false;
      return true;
    case ETerm::Redex:
      if (!linear_typed(t->fun)) return false;
      for (const EBag& b : t->args)
        for (const ETermPtr& e : b)
          if (!linear_typed(e)) return false;
      return true;
    case ETerm::Abs:
      for (const EBinder& b : t->binders)
        if (!b.ann.is_linear()) return false;
      return linear_typed(t->body);
  }
  return true;
}

}  // namespace srl
