#pragma once

#include "srl/eta.hpp"

namespace srl {

// Actions of type/context morphisms on eta-long terms. The residual is an
// all-ground context morphism from the acting morphism's source context to the
// context of the result; it records how free occurrences were reindexed.
struct ActionResult {
  ETermPtr term;
  CtxMorph residual;
};

struct BagActionResult {
  EBag bag;
  CtxMorph residual;
};

struct SeqActionResult {
  ESeq seq;
  CtxMorph residual;
};

// Covariant action [f]t. Requires domain(f) = type of t; the result has type
// codomain(f). On abstractions this composes the binder annotations with the
// left components of f; at atom type only the identity acts. The residual on
// gamma is the identity.
ActionResult covariant(const Context& gamma, const ETermPtr& t, const TypeMorphPtr& f);

// Covariant action of a list morphism on a bag / of componentwise list
// morphisms on a sequence; elements are selected by the index part and acted
// on by the nested parts. The residual duplicates/permutes context blocks
// accordingly.
BagActionResult covariant_bag(const std::vector<std::string>& universe, const EBag& bag,
                              const ListMorph& m);
SeqActionResult covariant_seq(const std::vector<std::string>& universe, const ESeq& args,
                              const std::vector<ListMorph>& parts);

// Contravariant action t{theta}. Requires target(theta) = context of t (over
// theta's variable universe). Occurrences of each variable consume the nested
// pieces of theta's components in term order; head retyping triggers the
// covariant action on the argument sequence. The residual nu satisfies:
// result context = source(theta) reindexed by nu.
ActionResult contravariant(const Context& gamma, const ETermPtr& t, const CtxMorph& theta);

// Law checks, used by the property harness.
bool compose_check(const Context& gamma, const ETermPtr& t, const TypeMorphPtr& f,
                   const TypeMorphPtr& g);
bool compose_check_contra(const Context& gamma, const ETermPtr& t, const CtxMorph& theta,
                          const CtxMorph& eta);
bool interchange_check(const Context& gamma, const ETermPtr& t, const TypeMorphPtr& f,
                       const CtxMorph& theta);

}  // namespace srl
