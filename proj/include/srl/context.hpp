#pragma once

#include <string>
#include <vector>

#include "srl/morphism.hpp"
#include "srl/type.hpp"

namespace srl {

// A typing context assigns an ordered list of types to every variable of a
// fixed universe; variables with no occurrences carry the empty list.
struct Context {
  std::vector<std::pair<std::string, TypeList>> entries;

  const TypeList* find(const std::string& x) const;
  bool has_var(const std::string& x) const;
};

bool ctx_eq(const Context& a, const Context& b);
std::string show_ctx(const Context& a);

// Pointwise concatenation over a shared variable universe.
Context ctx_tensor(const Context& a, const Context& b);

// A context morphism: one list morphism per variable, aligned with the
// variable universe.
struct CtxMorph {
  std::vector<std::string> vars;
  std::vector<ListMorph> comps;

  Context source() const;
  Context target() const;
  const ListMorph* find(const std::string& x) const;
  bool is_identity() const;
  bool is_ground() const;
  bool is_perm() const;

  static CtxMorph identity(const Context& g);
  static CtxMorph compose(const CtxMorph& g, const CtxMorph& f);
  static CtxMorph tensor(const CtxMorph& a, const CtxMorph& b);
};

bool ctx_morph_eq(const CtxMorph& a, const CtxMorph& b);
std::string show_ctx_morph(const CtxMorph& f);

}  // namespace srl
