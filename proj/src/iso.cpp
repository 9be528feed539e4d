#include "srl/rewrite.hpp"

namespace srl {

namespace {

// ann2 = sigma . ann1 for a type-preserving permutation sigma of the
// codomain: decided by multiset equality of (index, nested piece) pairs.
bool ann_iso(const ListMorph& f, const ListMorph& g) {
  if (!list_eq(f.source, g.source)) return false;
  if (f.alpha.table.size() != g.alpha.table.size()) return false;
  std::vector<bool> used(f.alpha.table.size(), false);
  for (size_t j = 0; j < g.alpha.table.size(); ++j) {
    bool found = false;
    for (size_t i = 0; i < f.alpha.table.size(); ++i) {
      if (used[i]) continue;
      if (f.alpha.table[i] == g.alpha.table[j] &&
          type_morph_eq(f.nested[i], g.nested[j])) {
        used[i] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool iso_rec(const ETermPtr& a, const ETermPtr& b);

bool iso_seq(const ESeq& a, const ESeq& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (!iso_rec(a[i][j], b[i][j])) return false;
  }
  return true;
}

bool iso_rec(const ETermPtr& a, const ETermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ETerm::Head: {
      if (a->name != b->name) return false;
      if (a->head_ty.size() != b->head_ty.size()) return false;
      for (size_t i = 0; i < a->head_ty.size(); ++i)
        if (!list_eq(a->head_ty[i], b->head_ty[i])) return false;
      return iso_seq(a->args, b->args);
    }
    case ETerm::Redex:
      return iso_rec(a->fun, b->fun) && iso_seq(a->args, b->args);
    case ETerm::Abs: {
      if (a->binders.size() != b->binders.size()) return false;
      for (size_t i = 0; i < a->binders.size(); ++i) {
        if (a->binders[i].name != b->binders[i].name) return false;
        if (!ann_iso(a->binders[i].ann, b->binders[i].ann)) return false;
      }
      return iso_rec(a->body, b->body);
    }
  }
  return false;
}

}  // namespace

std::optional<CtxMorph> iso(const Context& gamma, const ETermPtr& a, const ETermPtr& b) {
  if (!iso_rec(a, b)) return std::nullopt;
  return CtxMorph::identity(gamma);
}

}  // namespace srl
