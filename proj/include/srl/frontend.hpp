#pragma once

#include "srl/approx.hpp"
#include "srl/rewrite.hpp"

namespace srl {

// ---------------------------------------------------------------------------
// Simply-typed lambda-calculus (Church style: binders carry their type).

struct SType;
using STypePtr = std::shared_ptr<const SType>;

struct SType {
  bool is_star;
  STypePtr left, right;  // meaningful iff !is_star

  static const STypePtr& star();
  static STypePtr arrow(STypePtr left, STypePtr right);
};

bool stype_eq(const STypePtr& a, const STypePtr& b);
std::string show_stype(const STypePtr& a);

struct STerm;
using STermPtr = std::shared_ptr<const STerm>;

struct STerm {
  enum Kind { Var, Lam, App };
  Kind kind;
  std::string name;   // Var subject / Lam binder
  STypePtr ann;       // Lam binder type
  STermPtr fun, arg;  // App
  STermPtr body;      // Lam

  static STermPtr var(std::string name);
  static STermPtr lam(std::string name, STypePtr ann, STermPtr body);
  static STermPtr app(STermPtr fun, STermPtr arg);
};

std::string show_sterm(const STermPtr& m);
LTermPtr strip(const STermPtr& m);  // forget types

using SCtx = std::vector<std::pair<std::string, STypePtr>>;

// Type of m under gamma; throws CheckError("RuleViolation").
STypePtr check_simple(const SCtx& gamma, const STermPtr& m);

// Rename binders apart from each other and from every free name.
STermPtr sfreshen(const STermPtr& m);

// Full beta: paths use Lam 0 = body, App 0 = fun / 1 = argument.
std::vector<std::vector<int>> sbeta_redexes(const STermPtr& m);
STermPtr sbeta_step(const STermPtr& m, const std::vector<int>& pos);

// ---------------------------------------------------------------------------
// Idempotent (strict) intersection types over untyped lambda-terms.

struct IType;
using ITypePtr = std::shared_ptr<const IType>;
// Nonempty, sorted under itype_cmp, duplicate-free.
using IInter = std::vector<ITypePtr>;

struct IType {
  bool is_atom;
  IInter source;   // meaningful iff !is_atom
  ITypePtr target;  // meaningful iff !is_atom

  static const ITypePtr& atom();
  static ITypePtr arrow(IInter source, ITypePtr target);
};

// Fixed enumeration order: atom first, then arrows lexicographically by
// (sorted source, target).
int itype_cmp(const ITypePtr& a, const ITypePtr& b);
bool itype_eq(const ITypePtr& a, const ITypePtr& b);
bool iinter_eq(const IInter& a, const IInter& b);
IInter make_inter(std::vector<ITypePtr> members);  // sort + dedup; k != 0
std::string show_itype(const ITypePtr& a);
std::string show_iinter(const IInter& a);

using ICtx = std::vector<std::pair<std::string, IInter>>;

// Derivations of the strict idempotent system. Every node stores its full
// context (lookups resolve to the last matching entry) and its subject term.
// Kids: Lam [body]; App [fun, inter]; Inter one member derivation per type,
// in enumeration order.
struct IDeriv;
using IDerivPtr = std::shared_ptr<const IDeriv>;

struct IDeriv {
  enum Kind { Var, Lam, App, Inter };
  Kind kind;
  ICtx ctx;
  LTermPtr term;
  ITypePtr ty;       // Var/Lam/App conclusion
  IInter itys;       // Inter conclusion
  std::string name;  // Var subject / Lam binder
  std::vector<IDerivPtr> kids;

  // Validating constructors; throw CheckError("RuleViolation").
  static IDerivPtr var(const ICtx& ctx, const std::string& name, const ITypePtr& ty);
  static IDerivPtr lam(const std::string& name, const IDerivPtr& body);
  static IDerivPtr app(const IDerivPtr& fun, const IDerivPtr& inter);
  static IDerivPtr inter(std::vector<IDerivPtr> members);
};

// Re-validate a derivation rule by rule; throws CheckError("RuleViolation").
void check_idem(const IDerivPtr& d);

// Rename bound entries apart (contexts, binders and variable references).
IDerivPtr ideriv_freshen(const IDerivPtr& d);

// Subject reduction: the derivation of the reduct, built by substituting the
// intersection-introduction premise into the abstraction body. The path
// addresses the subject term; inside an intersection premise it applies to
// every member derivation.
IDerivPtr ideriv_beta(const IDerivPtr& d, const std::vector<int>& pos);

// Singleton-intersection image of a simple typing.
IDerivPtr simple_to_idem(const SCtx& gamma, const STermPtr& m);

// ---------------------------------------------------------------------------
// Coarse-approximation embeddings.

TypePtr translate_stype(const STypePtr& a);
TypePtr translate_itype(const ITypePtr& a);
TypeList translate_iinter(const IInter& a);

// cart^n at a: <a> -> <a>^n (terminal at 0, identity at 1).
ListMorph cart(const TypePtr& a, int n);

struct Embedding {
  std::vector<std::string> universe;  // context variables, in order
  Context ctx;
  TermPtr term;
  DerivPtr deriv;
  ETermPtr eterm;
};

// Both embeddings rename binders apart internally; the embedded term keeps
// the input's structure but not necessarily its bound names.
Embedding embed_simple(const SCtx& gamma, const STermPtr& m);
Embedding embed_intersection(const IDerivPtr& d);

// Inverse of embed_simple on qualitative derivations.
struct SimpleTyping {
  SCtx ctx;
  STermPtr term;
  STypePtr ty;
};
SimpleTyping qualitative_to_simple(const DerivPtr& d);

// ---------------------------------------------------------------------------
// Beta-factorization simulation.

// Positions of a lambda-term redex inside the eta-long embedding. real_args
// is the number of argument bags of the redex node that come from the
// lambda-term's application spine (the rest are eta-expansion bags).
struct MappedRedex {
  Path path;
  int real_args;
};
std::vector<MappedRedex> map_beta_path(const ETermPtr& t, const LTermPtr& m,
                                       const std::vector<int>& lpath);

struct SimulationReport {
  Embedding source, target;
  std::vector<Step> steps;
  ETermPtr endpoint;
  Context end_ctx;
  ReductionLabel label;  // composite over all steps
  bool on_the_nose = false;   // endpoint alpha-equal to the target embedding
  bool isomorphic = false;    // equal up to annotation permutations
  bool cart_equation = false; // simple case: theta . cart^{n_M} = cart^{n_N}
  std::string diff;           // human-readable mismatch, empty when clean
};

SimulationReport simulate_beta_simple(const SCtx& gamma, const STermPtr& m,
                                      const std::vector<int>& pos);
SimulationReport simulate_beta_inter(const IDerivPtr& d, const std::vector<int>& pos);

// ---------------------------------------------------------------------------
// Named corpus of simply-typed terms.

struct CorpusEntry {
  std::string name;
  SCtx ctx;
  STermPtr term;
};
std::vector<CorpusEntry> simple_corpus();

}  // namespace srl
