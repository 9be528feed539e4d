#pragma once

#include <random>

#include "srl/rewrite.hpp"

namespace srl {

using Rng = std::mt19937_64;

// Random generation of types, morphisms and well-typed eta-long terms, used
// by the property harness. Terms are typed by construction over a fixed pool
// of free variables and validated before being returned.
struct GenConfig {
  int max_depth = 3;      // structural depth of generated terms
  int max_width = 2;      // maximal bag width
  int morph_depth = 2;    // nesting depth of generated morphisms
  int max_dup = 2;        // extra duplications in index maps
  bool linear = false;    // restrict annotations to permutations
};

TypePtr rand_type(Rng& rng, const GenConfig& cfg, int depth);
TypeList rand_type_list(Rng& rng, const GenConfig& cfg, int depth);

// Random morphisms with one fixed boundary.
TypeMorphPtr rand_type_morph_from(Rng& rng, const GenConfig& cfg, const TypePtr& a, int depth);
TypeMorphPtr rand_type_morph_to(Rng& rng, const GenConfig& cfg, const TypePtr& b, int depth);
ListMorph rand_list_morph_from(Rng& rng, const GenConfig& cfg, const TypeList& src, int depth);
ListMorph rand_list_morph_to(Rng& rng, const GenConfig& cfg, const TypeList& tgt, int depth);
CtxMorph rand_ctx_morph_to(Rng& rng, const GenConfig& cfg, const Context& gamma);

struct GenTerm {
  std::vector<std::string> universe;
  Context ctx;
  ETermPtr term;
};

// A random well-typed eta-long term over the standard pool of free variables.
GenTerm rand_term(Rng& rng, const GenConfig& cfg);

// A random eta-long term of the demanded type over the given pool.
ETermPtr rand_eterm_of(Rng& rng, const GenConfig& cfg, const std::vector<std::string>& pool,
                       const TypePtr& a, int depth);

// All annotations of the judgment (including nested ones) are linear.
bool linear_typed(const ETermPtr& t);

}  // namespace srl
