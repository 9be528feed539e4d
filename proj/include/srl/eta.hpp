#pragma once

#include "srl/context.hpp"
#include "srl/deriv.hpp"

namespace srl {

// Eta-long terms: head applications x q-bar at the atom, multi-abstractions
// over the unrolled arrow type, and fully applied redexes. Sequences of bags
// are kept distinct from bags. Every head occurrence stores its own type (the
// unrolled source lists) and an occurrence id used for residual bookkeeping.
struct ETerm;
using ETermPtr = std::shared_ptr<const ETerm>;
using EBag = std::vector<ETermPtr>;
using ESeq = std::vector<EBag>;

struct EBinder {
  std::string name;
  ListMorph ann;  // demanded list -> occurrence list
  bool synthetic = false;
};

struct ETerm {
  enum Kind { Head, Redex, Abs };
  Kind kind;
  // Head
  std::string name;
  std::vector<TypeList> head_ty;  // source lists of this occurrence's type
  int occ_id = 0;
  ESeq args;  // Head and Redex
  // Abs
  std::vector<EBinder> binders;
  ETermPtr body;
  bool synthetic = false;  // whole node is an eta-expansion of a bare variable
  // Redex
  ETermPtr fun;

  static ETermPtr head(std::string name, std::vector<TypeList> head_ty, ESeq args);
  static ETermPtr abs(std::vector<EBinder> binders, ETermPtr body, bool synthetic = false);
  static ETermPtr redex(ETermPtr fun, ESeq args);
};

TypePtr etype(const ETermPtr& t);                 // o for Head/Redex, rolled for Abs
std::vector<TypeList> eseq_ty(const ESeq& args);  // element types per bag
TypeList ebag_ty(const EBag& bag);

// Structural equality, ignoring occurrence ids and synthetic flags.
bool eterm_eq(const ETermPtr& a, const ETermPtr& b);
bool ebag_eq(const EBag& a, const EBag& b);
bool eseq_eq(const ESeq& a, const ESeq& b);

std::string show_eterm(const ETermPtr& t);
std::string show_ebag(const EBag& b);

// Occurrence utilities. Free occurrences are listed in term order.
void occ_scan(const ETermPtr& t, const std::string& x, std::vector<const ETerm*>& out);
TypeList occ_types(const ETermPtr& t, const std::string& x);
std::vector<int> occ_ids(const ETermPtr& t, const std::string& x);
Context ectx(const ETermPtr& t, const std::vector<std::string>& universe);
Context ebag_ctx(const EBag& b, const std::vector<std::string>& universe);
Context eseq_ctx(const ESeq& q, const std::vector<std::string>& universe);

// Reassign fresh occurrence ids (preorder) to every head node.
ETermPtr assign_ids(const ETermPtr& t, int& counter);

// Validate the eta-long typing of t against gamma (full universe); throws
// CheckError (NotEtaLong / TypeClash / OccurrenceCountMismatch / ...).
void eta_validate(const Context& gamma, const ETermPtr& t);

// Conversions. to_eta eta-expands under-applied subterms, marking the
// introduced binders/expansions as synthetic; raw_of_eta contracts synthetic
// patterns that still match, so the round trip is exact on fresh conversions.
ETermPtr to_eta(const DerivPtr& d);
TermPtr raw_of_eta(const ETermPtr& t);
DerivPtr deriv_of_eta(const Context& gamma, const ETermPtr& t);  // recheck raw form
int esize(const Context& gamma, const ETermPtr& t);  // derivation size of the raw form

// Eta-expansion of a variable occurrence at a given type (synthetic form).
ETermPtr eta_expand_var(const std::string& x, const TypePtr& a);

// Rename binders to v1, v2, ... in preorder; free names are kept, so two
// alpha-equivalent terms canonicalize to equal ones.
ETermPtr canon_names(const ETermPtr& t);
bool eterm_alpha_eq(const ETermPtr& a, const ETermPtr& b);

}  // namespace srl
